mod oracle;

use oracle::{brute_force, instances, semi_analytic};

#[test]
fn overlap_matches_direct_integration() {
    for (n, inst) in instances().iter().enumerate() {
        let exact = semi_analytic(inst);
        let (re, im) = brute_force(inst, 400, 600, 600);
        let rel = (re / exact - 1.0).abs();
        println!("instance {n}: overlap_phi = {exact:.9e}, direct = {re:.9e}, rel = {rel:.2e}, Im = {im:.2e}");
        assert!(rel < 1e-3, "instance {n}: rel {rel:e}");
        assert!(im.abs() < 1e-6 * exact.abs(), "instance {n}: Im {im:e}");
    }
}
