use lpd_numerics_core::NumError;
use lpd_phase::PhaseError;
use lpd_scattering::ScatError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RhError {
    #[error(transparent)]
    Numerics(#[from] NumError),
    #[error(transparent)]
    Scattering(#[from] ScatError),
    #[error(transparent)]
    Phase(#[from] PhaseError),
    #[error("branch error: {0}")]
    Branch(String),
    #[error("assumption violated: {0}")]
    Assumption(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate Blaschke-Potapov factor: u1·v2 − u2·v1 = {0}")]
    DegenerateBp(num_complex::Complex64),
    #[error("ȧ1(iξ₁) vanishes; the zero of a1 is not simple")]
    NonSimpleZero,
}

pub type RhResult<T> = Result<T, RhError>;
