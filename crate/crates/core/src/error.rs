use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma function pole at {0}")]
    Pole(f64),
    #[error("gamma function overflows at {0}")]
    Overflow(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("function is singular at x = {0}")]
    Singular(f64),
    #[error("matrix is numerically singular (pivot {pivot:e} in column {column})")]
    SingularMatrix { column: usize, pivot: f64 },
    #[error("eigensolver did not converge for eigenvalue {0}")]
    NoConvergence(usize),
    #[error("non-finite value: {0}")]
    NonFinite(String),
    #[error("integrator exceeded {0} steps")]
    StepLimit(usize),
    #[error("step size underflow at t = {t} (h = {h:e}); problem may be stiff")]
    StepUnderflow { t: f64, h: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
