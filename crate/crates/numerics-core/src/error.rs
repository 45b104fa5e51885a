use num_complex::Complex64;
use thiserror::Error;

/// Failures raised by the numerical kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumError {
    #[error("division by exact zero")]
    DivisionByZero,
    #[error("adaptive refinement did not converge (estimate {estimate}, error {error:e})")]
    RefinementFailure { estimate: Complex64, error: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("point {0} lies on the contour and no side was specified")]
    Ambiguity(f64),
    #[error("pole of the Gamma function at {0}")]
    Pole(Complex64),
    #[error("requested accuracy not achieved: {0}")]
    Precision(String),
    #[error("step size underflow at t = {t} (h = {h:e})")]
    Stiffness { t: f64, h: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type NumResult<T> = Result<T, NumError>;
