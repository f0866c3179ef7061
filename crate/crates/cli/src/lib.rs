//! Command-line front end: JSON configuration, CSV/JSON output and the
//! `spdc` subcommands.

// `!(x > 0.0)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::{run, Cli};
pub use error::{CliError, Result};
