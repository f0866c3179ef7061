//! Direct 3-D midpoint integration of the three-mode overlap, used as an
//! independent check of `overlap_phi`.

use spdc_core::modes::{geometry_coefficients, overlap_phi, GaussianMode, Role};

pub struct Instance {
    pub waists: [f64; 3],
    pub thetas: [f64; 2],
    pub length: f64,
    pub dk_y: f64,
    pub dk_z: f64,
}

/// Returns (Re, Im) of ∫ U_p U_s U_i e^{i(Δk_y y + Δk_z z)} over the crystal.
pub fn brute_force(inst: &Instance, nx: usize, ny: usize, nz: usize) -> (f64, f64) {
    let [wp, ws, wi] = inst.waists;
    let (sin_s, cos_s) = inst.thetas[0].sin_cos();
    let (sin_i, cos_i) = inst.thetas[1].sin_cos();
    let (ip, is, ii) = (wp.powi(-2), ws.powi(-2), wi.powi(-2));
    let w_max = wp.max(ws).max(wi);

    let x_half = 7.0 * w_max;
    let dx = 2.0 * x_half / nx as f64;
    let gx: f64 = (0..nx)
        .map(|j| {
            let x = -x_half + (j as f64 + 0.5) * dx;
            (-x * x * (ip + is + ii)).exp()
        })
        .sum::<f64>()
        * dx;

    // The tilted beams drift by at most (l/2)·tanθ across the crystal.
    let drift = 0.5 * inst.length * inst.thetas[0].tan().max(inst.thetas[1].tan());
    let y_half = 7.0 * w_max + drift;
    let dy = 2.0 * y_half / ny as f64;
    let dz = inst.length / nz as f64;

    let (mut re, mut im) = (0.0, 0.0);
    for jz in 0..nz {
        let z = -0.5 * inst.length + (jz as f64 + 0.5) * dz;
        for jy in 0..ny {
            let y = -y_half + (jy as f64 + 0.5) * dy;
            let ys = cos_s * y - sin_s * z;
            let yi = cos_i * y + sin_i * z;
            let amp = (-(y * y * ip + ys * ys * is + yi * yi * ii)).exp();
            let (s, c) = (inst.dk_y * y + inst.dk_z * z).sin_cos();
            re += amp * c;
            im += amp * s;
        }
    }
    // x separates exactly from (y, z) but is still integrated numerically.
    (re * gx * dy * dz, im * gx * dy * dz)
}

pub fn semi_analytic(inst: &Instance) -> f64 {
    let lambda = 702.2e-9;
    let pump = GaussianMode::new(Role::Pump, inst.waists[0], lambda / 2.0, 0.0, 1.7).unwrap();
    let signal = GaussianMode::new(Role::Signal, inst.waists[1], lambda, inst.thetas[0], 1.66).unwrap();
    let idler = GaussianMode::new(Role::Idler, inst.waists[2], lambda, inst.thetas[1], 1.62).unwrap();
    let geom = geometry_coefficients(&pump, &signal, &idler, inst.length).unwrap();
    overlap_phi(&geom, inst.dk_y, inst.dk_z).unwrap()
}

/// Three small-waist, non-collinear cases with distinct waists and angles.
pub fn instances() -> [Instance; 3] {
    [
        Instance {
            waists: [10e-6, 10e-6, 10e-6],
            thetas: [20f64.to_radians(), 20f64.to_radians()],
            length: 50e-6,
            dk_y: 1e5,
            dk_z: 4e4,
        },
        Instance {
            waists: [8e-6, 12e-6, 10e-6],
            thetas: [15f64.to_radians(), 25f64.to_radians()],
            length: 40e-6,
            dk_y: -6e4,
            dk_z: 1e5,
        },
        Instance {
            waists: [15e-6, 9e-6, 11e-6],
            thetas: [30f64.to_radians(), 10f64.to_radians()],
            length: 60e-6,
            dk_y: 2e4,
            dk_z: -7e4,
        },
    ]
}
