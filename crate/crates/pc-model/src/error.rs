use lpd_numerics_core::NumError;
use lpd_phase::PhaseError;
use lpd_rh_factors::RhError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PcError {
    #[error(transparent)]
    Numerics(#[from] NumError),
    #[error(transparent)]
    Phase(#[from] PhaseError),
    #[error(transparent)]
    Rh(#[from] RhError),
    #[error("regime error: {0}")]
    Regime(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("point {0} lies on the model contour; evaluate in an explicit sector")]
    OnContour(num_complex::Complex64),
}

pub type PcResult<T> = Result<T, PcError>;
