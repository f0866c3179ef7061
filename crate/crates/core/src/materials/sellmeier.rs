use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Functional form of `n²(λ)`, with `λ` in micrometres.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SellmeierForm {
    /// `n² = A + B/(λ² − C) − D·λ²`; coefficients `[A, B, C, D]`.
    SellmeierUvIr,
    /// `n² = 1 + Σ Bₖ·λ²/(λ² − Cₖ)`; coefficients `[B₁, C₁, B₂, C₂, …]`.
    SellmeierStandard,
}

/// One polarisation branch of a dispersive index.
#[derive(Debug, Clone, PartialEq)]
pub struct SellmeierSet {
    label: String,
    form: SellmeierForm,
    coefficients: Vec<f64>,
    /// Validity window in metres, inclusive.
    valid_range: (f64, f64),
}

const RANGE_SAMPLES: usize = 257;

impl SellmeierSet {
    /// Validates the coefficient count and that `n² > 1` across the window.
    pub fn new(
        label: impl Into<String>,
        form: SellmeierForm,
        coefficients: Vec<f64>,
        valid_range: (f64, f64),
    ) -> Result<Self> {
        let label = label.into();
        let bad = |reason: String| Error::InvalidMaterial {
            material: label.clone(),
            reason,
        };
        let count_ok = match form {
            SellmeierForm::SellmeierUvIr => coefficients.len() == 4,
            SellmeierForm::SellmeierStandard => !coefficients.is_empty() && coefficients.len().is_multiple_of(2),
        };
        if !count_ok {
            return Err(bad(format!(
                "{} coefficients do not fit form {form:?}",
                coefficients.len()
            )));
        }
        if coefficients.iter().any(|c| !c.is_finite()) {
            return Err(bad("non-finite coefficient".into()));
        }
        let (lo, hi) = valid_range;
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            return Err(bad(format!("invalid range [{lo}, {hi}] m")));
        }

        let set = SellmeierSet {
            label: label.clone(),
            form,
            coefficients,
            valid_range,
        };
        for k in 0..RANGE_SAMPLES {
            let lambda = lo + (hi - lo) * k as f64 / (RANGE_SAMPLES - 1) as f64;
            let n2 = set.n_squared(lambda);
            if !(n2 > 1.0) || !n2.is_finite() {
                return Err(bad(format!("n² = {n2} at λ = {lambda:e} m")));
            }
        }
        Ok(set)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn form(&self) -> SellmeierForm {
        self.form
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn valid_range(&self) -> (f64, f64) {
        self.valid_range
    }

    /// Refractive index at vacuum wavelength `lambda_vac` (m). No extrapolation.
    pub fn index(&self, lambda_vac: f64) -> Result<f64> {
        let (lo, hi) = self.valid_range;
        if !(lo..=hi).contains(&lambda_vac) {
            return Err(Error::OutOfRange {
                what: self.label.clone(),
                lambda_m: lambda_vac,
                min_m: lo,
                max_m: hi,
            });
        }
        Ok(self.n_squared(lambda_vac).sqrt())
    }

    fn n_squared(&self, lambda_vac: f64) -> f64 {
        let l2 = (lambda_vac * 1e6).powi(2);
        let c = &self.coefficients;
        match self.form {
            SellmeierForm::SellmeierUvIr => c[0] + c[1] / (l2 - c[2]) - c[3] * l2,
            SellmeierForm::SellmeierStandard => {
                1.0 + c.chunks_exact(2).map(|bc| bc[0] * l2 / (l2 - bc[1])).sum::<f64>()
            }
        }
    }
}
