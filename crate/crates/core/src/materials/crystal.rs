use std::f64::consts::{FRAC_PI_2, PI};

use super::SellmeierSet;
use crate::error::{Error, Result};

/// A cut, finite-length piece of a uniaxial nonlinear crystal.
#[derive(Debug, Clone, PartialEq)]
pub struct CrystalSpec {
    pub name: String,
    pub ordinary: SellmeierSet,
    /// Principal extraordinary branch `n_ē(λ)`.
    pub extraordinary: SellmeierSet,
    /// m/V
    pub d22: f64,
    /// Length along the pump, m.
    pub length: f64,
    /// Angle between pump wave vector and optic axis, rad.
    pub theta_c: f64,
    /// Azimuthal cut angle, rad.
    pub phi_c: f64,
}

impl CrystalSpec {
    pub fn new(
        name: impl Into<String>,
        ordinary: SellmeierSet,
        extraordinary: SellmeierSet,
        d22: f64,
        length: f64,
        theta_c: f64,
        phi_c: f64,
    ) -> Result<Self> {
        if !(length > 0.0 && length.is_finite()) {
            return Err(Error::invalid("crystal length", format!("{length} m must be > 0")));
        }
        if !(0.0..=FRAC_PI_2).contains(&theta_c) {
            return Err(Error::invalid("theta_c", format!("{theta_c} rad must lie in [0, π/2]")));
        }
        if !(0.0..2.0 * PI).contains(&phi_c) {
            return Err(Error::invalid("phi_c", format!("{phi_c} rad must lie in [0, 2π)")));
        }
        if !d22.is_finite() {
            return Err(Error::invalid("d22", "must be finite"));
        }
        Ok(CrystalSpec {
            name: name.into(),
            ordinary,
            extraordinary,
            d22,
            length,
            theta_c,
            phi_c,
        })
    }

    pub fn index_ordinary(&self, lambda_vac: f64) -> Result<f64> {
        self.ordinary.index(lambda_vac)
    }

    /// Extraordinary index for a wave vector at `theta` to the optic axis,
    /// from the index ellipse `1/n² = cos²θ/n_o² + sin²θ/n_ē²`.
    pub fn index_extraordinary(&self, lambda_vac: f64, theta: f64) -> Result<f64> {
        if !(0.0..=FRAC_PI_2).contains(&theta) {
            return Err(Error::invalid("theta", format!("{theta} rad must lie in [0, π/2]")));
        }
        let n_o = self.ordinary.index(lambda_vac)?;
        let n_e = self.extraordinary.index(lambda_vac)?;
        if theta == 0.0 {
            return Ok(n_o);
        }
        if theta == FRAC_PI_2 {
            return Ok(n_e);
        }
        let (s, c) = theta.sin_cos();
        Ok(1.0 / ((c / n_o).powi(2) + (s / n_e).powi(2)).sqrt())
    }

    /// `d = d₂₂·cos²θ_c·cos 3φ_c`, the contraction for BBO-class (3m) crystals.
    /// Signed; rates only depend on `d²`.
    pub fn effective_nonlinearity(&self) -> f64 {
        self.d22 * self.theta_c.cos().powi(2) * (3.0 * self.phi_c).cos()
    }
}
