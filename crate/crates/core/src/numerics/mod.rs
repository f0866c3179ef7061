//! Numerical kernels shared by the optics modules. Nothing in here knows about
//! photons; every function is pure and safe to call from any thread.

mod quadrature;
mod special;

pub use quadrature::{
    integrate_finite, integrate_symmetric_infinite, Quadrature, QuadratureResult,
    MAX_HALF_WIDTH,
};
pub use special::{erf, erfc, sinc};

/// Library-wide default relative tolerance for quadrature.
pub const DEFAULT_REL_TOL: f64 = 1e-9;
/// Library-wide default absolute tolerance for quadrature.
pub const DEFAULT_ABS_TOL: f64 = 1e-12;
/// Default cap on integrand evaluations per integration.
pub const DEFAULT_MAX_EVALUATIONS: usize = 1_000_000;
