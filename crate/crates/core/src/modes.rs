//! Gaussian mode geometry and the three-mode overlap integral.
//!
//! Coordinates: the pump propagates along `z`, all beams lie in the `y–z`
//! plane and the crystal occupies `−l/2 ≤ z ≤ l/2`. The signal wave vector is
//! tilted towards `+y`, the idler towards `−y`:
//!
//! ```text
//! k_s = k_s ( sinθ_s ŷ + cosθ_s ẑ),   y_s = cosθ_s·y − sinθ_s·z
//! k_i = k_i (−sinθ_i ŷ + cosθ_i ẑ),   y_i = cosθ_i·y + sinθ_i·z
//! ```
//!
//! With this orientation the transverse integration of
//! `e^{iΔk·r}·U_p·U_s·U_i` gives `K = Δk_y·D/2C + Δk_z`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::constants::angular_frequency;
use crate::error::{Error, Result};
use crate::materials::Wave;
use crate::numerics::{erf, sinc, Quadrature};

/// `H` values in `[−NEGATIVE_H_CLAMP, 0)` are treated as rounding noise.
pub const NEGATIVE_H_CLAMP: f64 = 1e-18;

const PHI_Z_REL_TOL: f64 = 1e-11;
const PHI_Z_ABS_TOL: f64 = 1e-13;
const S_REL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Pump,
    Signal,
    Idler,
}

/// One paraxial beam with envelope `U = exp(−(x² + y²)/W²)` in its own frame.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianMode {
    pub role: Role,
    /// 1/e field radius, m.
    pub waist: f64,
    /// Vacuum wavelength, m.
    pub lambda_vac: f64,
    /// Internal tilt relative to the pump axis, rad. Zero for the pump.
    pub theta: f64,
    /// Refractive index seen by this beam.
    pub n: f64,
}

impl GaussianMode {
    pub fn new(role: Role, waist: f64, lambda_vac: f64, theta: f64, n: f64) -> Result<Self> {
        if !(waist > 0.0 && waist.is_finite()) {
            return Err(Error::invalid("waist", format!("{waist} m must be > 0")));
        }
        if !(lambda_vac > 0.0 && lambda_vac.is_finite()) {
            return Err(Error::invalid("lambda_vac", format!("{lambda_vac} m must be > 0")));
        }
        if !(n >= 1.0 && n.is_finite()) {
            return Err(Error::invalid("n", format!("{n} must be ≥ 1")));
        }
        if !(0.0..PI / 2.0).contains(&theta) {
            return Err(Error::invalid("theta", format!("{theta} rad must lie in [0, π/2)")));
        }
        if role == Role::Pump && theta != 0.0 {
            return Err(Error::invalid("theta", "the pump defines the z axis; its tilt must be 0"));
        }
        Ok(GaussianMode {
            role,
            waist,
            lambda_vac,
            theta,
            n,
        })
    }

    pub fn omega(&self) -> f64 {
        angular_frequency(self.lambda_vac)
    }

    pub fn alpha(&self) -> f64 {
        normalization_alpha(self.waist)
    }

    pub fn wave(&self) -> Wave {
        Wave {
            n: self.n,
            omega: self.omega(),
            theta: self.theta,
        }
    }
}

/// `α = √(2/(πW²))`, so that `α²∫|U|² dx dy = 1`.
pub fn normalization_alpha(waist: f64) -> f64 {
    (2.0 / (PI * waist * waist)).sqrt()
}

/// Relative frequency shift `√(1 + 2/(k²W²)) − 1` from transverse
/// confinement, `k = 2πn/λ`. Diagnostic only; never applied to rates.
pub fn confinement_correction(waist: f64, lambda_vac: f64, n: f64) -> f64 {
    let k = 2.0 * PI * n / lambda_vac;
    let x = 2.0 / (k * waist).powi(2);
    x / ((1.0 + x).sqrt() + 1.0)
}

/// Overlap coefficients of three Gaussian modes in a crystal of length `l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OverlapGeometry {
    /// `ΣW⁻²`, 1/m²
    pub a: f64,
    /// 1/m²
    pub c: f64,
    /// 1/m²
    pub d: f64,
    /// 1/m²
    pub f: f64,
    /// `F − D²/4C ≥ 0`, 1/m²
    pub h: f64,
    /// Walk-off parameter `Ξ = √H·l/2`.
    pub xi: f64,
    /// Crystal length, m.
    pub length: f64,
}

/// Mismatch-dependent part of the overlap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseMismatch {
    /// `K = Δk_y·D/2C + Δk_z`, 1/m
    pub k: f64,
    /// `Δφ = K·l/2`
    pub delta_phi: f64,
}

impl OverlapGeometry {
    /// Builds the geometry from raw coefficients, deriving `H` and `Ξ`.
    pub fn from_coefficients(a: f64, c: f64, d: f64, f: f64, length: f64) -> Result<Self> {
        if !(c > 0.0 && a >= c) || !(f >= 0.0) {
            return Err(Error::invalid(
                "overlap coefficients",
                format!("need A ≥ C > 0 and F ≥ 0, got A = {a:e}, C = {c:e}, F = {f:e}"),
            ));
        }
        if !(length > 0.0) {
            return Err(Error::invalid("crystal length", format!("{length} m must be > 0")));
        }
        let mut h = f - d * d / (4.0 * c);
        if h < 0.0 {
            if h < -NEGATIVE_H_CLAMP {
                return Err(Error::NegativeH { h });
            }
            h = 0.0;
        }
        Ok(OverlapGeometry {
            a,
            c,
            d,
            f,
            h,
            xi: h.sqrt() * length / 2.0,
            length,
        })
    }

    pub fn mismatch(&self, delta_k_y: f64, delta_k_z: f64) -> PhaseMismatch {
        let k = delta_k_y * self.d / (2.0 * self.c) + delta_k_z;
        PhaseMismatch {
            k,
            delta_phi: k * self.length / 2.0,
        }
    }
}

/// Coefficients `A, C, D, F, H` and `Ξ` for the given beams; angles are
/// internal (in-crystal).
pub fn geometry_coefficients(
    pump: &GaussianMode,
    signal: &GaussianMode,
    idler: &GaussianMode,
    crystal_length: f64,
) -> Result<OverlapGeometry> {
    if pump.role != Role::Pump || signal.role != Role::Signal || idler.role != Role::Idler {
        return Err(Error::invalid(
            "mode roles",
            format!(
                "expected (pump, signal, idler), got ({:?}, {:?}, {:?})",
                pump.role, signal.role, idler.role
            ),
        ));
    }
    let inv_p = pump.waist.powi(-2);
    let inv_s = signal.waist.powi(-2);
    let inv_i = idler.waist.powi(-2);
    let (sin_s, cos_s) = signal.theta.sin_cos();
    let (sin_i, cos_i) = idler.theta.sin_cos();

    let a = inv_p + inv_s + inv_i;
    let c = inv_p + cos_s * cos_s * inv_s + cos_i * cos_i * inv_i;
    let d = (2.0 * signal.theta).sin() * inv_s - (2.0 * idler.theta).sin() * inv_i;
    let f = sin_s * sin_s * inv_s + sin_i * sin_i * inv_i;
    OverlapGeometry::from_coefficients(a, c, d, f, crystal_length)
}

/// Longitudinal overlap `Φ_z/l = ∫₀¹ e^{−Ξ²u²} cos(Δφ·u) du`.
pub fn phi_z(xi: f64, delta_phi: f64) -> Result<f64> {
    if !(xi >= 0.0) {
        return Err(Error::invalid("xi", format!("{xi} must be ≥ 0")));
    }
    let xi2 = xi * xi;
    // Half an oscillation per panel before adapting.
    let panels = (delta_phi.abs() / PI).ceil().max(1.0) as usize;
    let rule = Quadrature {
        rel_tol: PHI_Z_REL_TOL,
        abs_tol: PHI_Z_ABS_TOL,
        initial_panels: panels,
        ..Quadrature::default()
    };
    let dphi = delta_phi.abs();
    Ok(rule
        .integrate(|u| (-xi2 * u * u).exp() * (dphi * u).cos(), 0.0, 1.0)?
        .value)
}

/// Thin-crystal (`Ξ = 0`) form, `sinc(Δφ)`.
pub fn phi_z_thin(delta_phi: f64) -> f64 {
    sinc(delta_phi)
}

/// Phase-matched (`Δφ = 0`) form, `√π/(2Ξ)·erf(Ξ)`, which tends to
/// `√π/(2Ξ)` once the overlap rather than the crystal limits the interaction.
pub fn phi_z_thick(xi: f64) -> f64 {
    if xi == 0.0 {
        return 1.0;
    }
    PI.sqrt() / (2.0 * xi) * erf(xi)
}

/// Full overlap `Φ(Δk) = π/√(AC) · e^{−Δk_y²/4C} · l · Φ_z/l`, in m³.
pub fn overlap_phi(geom: &OverlapGeometry, delta_k_y: f64, delta_k_z: f64) -> Result<f64> {
    let mismatch = geom.mismatch(delta_k_y, delta_k_z);
    let transverse = PI / (geom.a * geom.c).sqrt() * (-delta_k_y * delta_k_y / (4.0 * geom.c)).exp();
    Ok(transverse * geom.length * phi_z(geom.xi, mismatch.delta_phi)?)
}

/// Spectral integral `S(Ξ) = ∫ |Φ_z/l|² dΔφ` over the whole real line.
///
/// `S(0) = π`; `S` decreases monotonically with `Ξ`.
pub fn spectral_integral_s(xi: f64) -> Result<f64> {
    if !(xi >= 0.0) {
        return Err(Error::invalid("xi", format!("{xi} must be ≥ 0")));
    }
    let rule = Quadrature {
        rel_tol: S_REL_TOL,
        ..Quadrature::default()
    };
    // |Φ_z/l|² oscillates with period π in Δφ.
    let result = rule.try_integrate_symmetric_infinite(
        |x| {
            let p = phi_z(xi, x)?;
            Ok(p * p)
        },
        8.0 * PI,
    )?;
    Ok(result.value)
}
