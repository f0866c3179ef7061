use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("quadrature did not converge: error estimate {estimate:e} above tolerance {tolerance:e} after {evaluations} evaluations")]
    NonConvergence {
        estimate: f64,
        tolerance: f64,
        evaluations: usize,
    },

    #[error("integrand is not finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },

    #[error("tail estimate {estimate:e} exceeds tolerance {tolerance:e} at half-width {half_width:e}")]
    TailBoundFailure {
        estimate: f64,
        tolerance: f64,
        half_width: f64,
    },

    #[error("wavelength {lambda_m:e} m outside the valid range [{min_m:e}, {max_m:e}] m of {what}")]
    OutOfRange {
        what: String,
        lambda_m: f64,
        min_m: f64,
        max_m: f64,
    },

    #[error("energy not conserved: |ω_p − ω_s − ω_i|/ω_p = {relative:e}")]
    EnergyMismatch { relative: f64 },

    #[error("dispersion denominator |n_i cosθ_i − n_s cosθ_s| = {value:e} below {epsilon:e}; the linearised spectral integral breaks down")]
    DegenerateDispersion { value: f64, epsilon: f64 },

    #[error("H = F − D²/4C = {h:e} m⁻² is negative; inconsistent overlap coefficients")]
    NegativeH { h: f64 },

    #[error("total rate needs equal waists, got W_p = {pump:e}, W_s = {signal:e}, W_i = {idler:e} m; use waist_scaling for the general dependence")]
    UnequalWaists { pump: f64, signal: f64, idler: f64 },

    #[error("thin-crystal closed forms need a collinear geometry, got θ_s = {theta_s}, θ_i = {theta_i} rad")]
    NotCollinear { theta_s: f64, theta_i: f64 },

    #[error("invalid material data for {material}: {reason}")]
    InvalidMaterial { material: String, reason: String },

    #[error("invalid {name}: {reason}")]
    InvalidInput { name: &'static str, reason: String },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            name,
            reason: reason.into(),
        }
    }

    /// Numerical failures as opposed to rejected inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NonConvergence { .. }
                | Error::NonFiniteIntegrand { .. }
                | Error::TailBoundFailure { .. }
                | Error::NegativeH { .. }
        )
    }
}
