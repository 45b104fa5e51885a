use lpd_numerics_core::NumError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PhaseError {
    #[error(transparent)]
    Numerics(#[from] NumError),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("regime error: {0}")]
    Regime(String),
}

pub type PhaseResult<T> = Result<T, PhaseError>;
