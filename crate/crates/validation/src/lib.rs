//! Shared helpers for the acceptance run.

use std::f64::consts::PI;

/// Tally of PASS/FAIL lines.
#[derive(Debug, Default)]
pub struct Report {
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn check(&mut self, id: &str, ok: bool, detail: String) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        println!("{} [{id}] {detail}", if ok { "PASS" } else { "FAIL" });
    }

    pub fn summary(&self) -> String {
        format!("acceptance: {} passed, {} failed", self.passed, self.failed)
    }
}

/// `π∫₀¹ e^{−2Ξ²u²} du` in closed form, using an independent `erf`.
pub fn parseval_s(xi: f64) -> f64 {
    if xi == 0.0 {
        PI
    } else {
        PI.powf(1.5) / (2.0 * 2f64.sqrt() * xi) * libm::erf(2f64.sqrt() * xi)
    }
}

/// `√π erf(Ξ)/(2Ξ)`, the phase-matched longitudinal overlap.
pub fn thick_overlap(xi: f64) -> f64 {
    PI.sqrt() / (2.0 * xi) * libm::erf(xi)
}

pub fn within_factor(value: f64, target: f64, factor: f64) -> bool {
    value >= target / factor && value <= target * factor
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parseval_limits() {
        assert_eq!(parseval_s(0.0), PI);
        assert!((parseval_s(1e-8) - PI).abs() < 1e-12);
        assert!((parseval_s(50.0) * 50.0 - PI.powf(1.5) / (2.0 * 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn factor_window() {
        assert!(within_factor(2e-12, 3e-12, 1.5));
        assert!(!within_factor(1.9e-12, 3e-12, 1.5));
        assert!(!within_factor(4.6e-12, 3e-12, 1.5));
    }
}
