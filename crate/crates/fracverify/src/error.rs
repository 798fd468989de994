//! Error types shared across the library.

use thiserror::Error;

/// Errors produced by function evaluation, operator kernels, and the
/// verification harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The evaluation point lies outside the domain of a function or operator.
    #[error("domain error: {0}")]
    Domain(String),

    /// Gamma function evaluated at a non-positive integer.
    #[error("gamma pole at x = {0}")]
    GammaPole(f64),

    /// A limit or extrapolation ladder failed to stabilize.
    #[error("no convergence: {what} (spread {spread:.3e} exceeds {limit:.3e})")]
    NoConvergence {
        what: String,
        spread: f64,
        limit: f64,
    },

    /// A parameter violates an operator precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A requested derivative order exceeds the available exact derivatives.
    #[error("derivative order {requested} exceeds maximum {max}")]
    DerivativeOrder { requested: usize, max: usize },

    /// Malformed function descriptor, flag value, or config file entry.
    #[error("parse error: {0}")]
    Parse(String),

    /// Report or file I/O failure (message only, to keep the error cloneable).
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
