use lpd_numerics_core::NumError;
use lpd_pc_model::PcError;
use lpd_phase::PhaseError;
use lpd_rh_factors::RhError;
use lpd_scattering::ScatError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymError {
    #[error(transparent)]
    Numerics(#[from] NumError),
    #[error(transparent)]
    Scattering(#[from] ScatError),
    #[error(transparent)]
    Phase(#[from] PhaseError),
    #[error(transparent)]
    Rh(#[from] RhError),
    #[error(transparent)]
    Pc(#[from] PcError),
    #[error("regime error: {0}")]
    Regime(String),
    #[error("assumption violated: {0}")]
    Assumption(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("soliton is singular at (x, t) = ({x}, {t}); the pole locus is x = 0, ωt + α ∈ 2πℤ")]
    SingularPoint { x: f64, t: f64 },
}

pub type AsymResult<T> = Result<T, AsymError>;
