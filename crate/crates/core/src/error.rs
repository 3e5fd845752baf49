use thiserror::Error;

/// Errors raised by parameter validation, quadrature and the batch front end.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("surface response pole: eps(omega) = -1 at omega = {omega}")]
    ResponsePole { omega: f64 },

    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (value {value:e}, error estimate {err_estimate:e}, target {target:e})"
    )]
    NonConvergence {
        subdivisions: usize,
        value: f64,
        err_estimate: f64,
        target: f64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("config line {line}: key `{key}`: {reason}")]
    Config {
        line: usize,
        key: String,
        reason: String,
    },

    #[error("i/o error on {path}: {reason}")]
    Io { path: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
