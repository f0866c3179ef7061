//! Uniaxial crystal optics: refractive indices, effective nonlinearity,
//! refraction at the entrance face and the longitudinal wave-vector mismatch.

mod crystal;
mod database;
mod sellmeier;

pub use crystal::CrystalSpec;
pub use database::{MaterialDb, MaterialEntry};
pub use sellmeier::{SellmeierForm, SellmeierSet};

use crate::constants::SPEED_OF_LIGHT;
use crate::error::{Error, Result};

/// Default threshold on `|n_i cosθ_i − n_s cosθ_s|` below which the
/// frequency ↔ mismatch change of variables is refused.
pub const DEFAULT_DEGENERACY_EPSILON: f64 = 1e-6;

const ENERGY_TOLERANCE: f64 = 1e-12;

/// Refractive index, angular frequency and internal tilt of one beam.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wave {
    pub n: f64,
    /// rad/s
    pub omega: f64,
    /// Internal angle to the pump axis, rad.
    pub theta: f64,
}

/// Refracted angle inside a crystal whose face is normal to the pump:
/// `sin θ_ext = n·sin θ_int`.
pub fn internal_angle(theta_external: f64, n_inside: f64) -> Result<f64> {
    if !(0.0..std::f64::consts::FRAC_PI_2).contains(&theta_external) {
        return Err(Error::invalid(
            "theta_external",
            format!("{theta_external} rad must lie in [0, π/2)"),
        ));
    }
    if !(n_inside >= 1.0) {
        return Err(Error::invalid("n_inside", format!("{n_inside} must be ≥ 1")));
    }
    Ok((theta_external.sin() / n_inside).asin())
}

/// Inverse of [`internal_angle`].
pub fn external_angle(theta_internal: f64, n_inside: f64) -> Result<f64> {
    let s = n_inside * theta_internal.sin();
    if !(0.0..1.0).contains(&s) {
        return Err(Error::invalid(
            "theta_internal",
            format!("{theta_internal} rad does not leave a face of index {n_inside} (n·sinθ = {s})"),
        ));
    }
    Ok(s.asin())
}

/// Longitudinal mismatch `(n_s ω_s cosθ_s + n_i ω_i cosθ_i − n_p ω_p)/c`, 1/m.
///
/// Zero at perfect longitudinal phase matching. Only its square enters the
/// overlap, so the overall sign is a convention.
pub fn delta_k_z(signal: Wave, idler: Wave, pump_n: f64, pump_omega: f64) -> Result<f64> {
    let relative = (pump_omega - signal.omega - idler.omega).abs() / pump_omega;
    if !(relative <= ENERGY_TOLERANCE) {
        return Err(Error::EnergyMismatch { relative });
    }
    Ok((signal.n * signal.omega * signal.theta.cos() + idler.n * idler.omega * idler.theta.cos()
        - pump_n * pump_omega)
        / SPEED_OF_LIGHT)
}

/// `d(Δk_z)/dω_s`-type factor `(n_i cosθ_i − n_s cosθ_s)/c` in s/m, sign kept.
pub fn dispersion_factor(n_s: f64, n_i: f64, theta_s: f64, theta_i: f64) -> Result<f64> {
    dispersion_factor_with_epsilon(n_s, n_i, theta_s, theta_i, DEFAULT_DEGENERACY_EPSILON)
}

pub fn dispersion_factor_with_epsilon(
    n_s: f64,
    n_i: f64,
    theta_s: f64,
    theta_i: f64,
    epsilon: f64,
) -> Result<f64> {
    let difference = n_i * theta_i.cos() - n_s * theta_s.cos();
    if !(difference.abs() >= epsilon) {
        return Err(Error::DegenerateDispersion {
            value: difference.abs(),
            epsilon,
        });
    }
    Ok(difference / SPEED_OF_LIGHT)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn internal_angle_examples() {
        assert_eq!(internal_angle(0.0, 1.665).unwrap(), 0.0);
        let inside = internal_angle(3.1f64.to_radians(), 1.665).unwrap();
        let expected = (3.1f64.to_radians().sin() / 1.665).asin();
        assert!((inside - expected).abs() < 1e-15);
        assert!((inside.to_degrees() - 1.862).abs() < 1e-3);
        let theta = 0.3;
        assert_eq!(internal_angle(theta, 1.0).unwrap(), theta);
    }

    #[test]
    fn internal_angle_rejects_bad_inputs() {
        assert!(internal_angle(-0.1, 1.5).is_err());
        assert!(internal_angle(std::f64::consts::FRAC_PI_2, 1.5).is_err());
        assert!(internal_angle(0.1, 0.9).is_err());
        assert!(external_angle(1.2, 2.0).is_err());
    }

    #[test]
    fn delta_k_z_vanishes_for_index_matched_collinear_degenerate() {
        let wp = 5.0e15;
        let w = Wave { n: 1.6, omega: wp / 2.0, theta: 0.0 };
        assert_eq!(delta_k_z(w, w, 1.6, wp).unwrap(), 0.0);
    }

    #[test]
    fn delta_k_z_scales_with_frequency() {
        let s = Wave { n: 1.66, omega: 2.0e15, theta: 0.03 };
        let i = Wave { n: 1.59, omega: 3.0e15, theta: 0.031 };
        let base = delta_k_z(s, i, 1.63, 5.0e15).unwrap();
        let doubled = delta_k_z(
            Wave { omega: 4.0e15, ..s },
            Wave { omega: 6.0e15, ..i },
            1.63,
            1.0e16,
        )
        .unwrap();
        assert!((doubled - 2.0 * base).abs() <= 1e-12 * base.abs());
    }

    #[test]
    fn delta_k_z_checks_energy_conservation() {
        let s = Wave { n: 1.66, omega: 2.0e15, theta: 0.0 };
        let i = Wave { n: 1.59, omega: 3.1e15, theta: 0.0 };
        assert!(matches!(
            delta_k_z(s, i, 1.63, 5.0e15),
            Err(Error::EnergyMismatch { .. })
        ));
    }

    #[test]
    fn dispersion_factor_examples() {
        assert!(matches!(
            dispersion_factor(1.6, 1.6, 0.05, 0.05),
            Err(Error::DegenerateDispersion { .. })
        ));
        let g = dispersion_factor(1.55, 1.66, 0.0, 0.0).unwrap();
        assert!((g - 0.11 / SPEED_OF_LIGHT).abs() < 1e-12 / SPEED_OF_LIGHT);
        let swapped = dispersion_factor(1.66, 1.55, 0.0, 0.0).unwrap();
        assert_eq!(swapped, -g);
    }
}
