//! Absolute emission rates of spontaneous parametric down-conversion (SPDC)
//! from a bulk uniaxial crystal into single transverse Gaussian modes.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: adaptive quadrature, `erf` and `sinc`, free of any optics.
//! * [`materials`]: Sellmeier indices, the uniaxial index ellipse, effective
//!   nonlinearity, refraction at the crystal face and longitudinal mismatch.
//! * [`modes`]: Gaussian mode geometry, the three-mode overlap integral and
//!   the spectral integral `S(Ξ)`.
//! * [`rates`]: pump field normalisation, spectral and total pair rates,
//!   thin-crystal closed forms and the waist-ratio optimum.
//!
//! All quantities are SI unless a name says otherwise.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod error;
pub mod materials;
pub mod modes;
pub mod numerics;
pub mod rates;

pub use error::{Error, Result};
