use lpd_numerics_core::{Complex64, NumError};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScatError {
    #[error(transparent)]
    Numerics(#[from] NumError),
    #[error("Jost normalisation is singular at ξ = 0")]
    SingularNormalization,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("vanishing denominator: {0}")]
    Pole(String),
    #[error("inconsistent scattering data: ξ₁ = {xi1} from the trace formula but |a1(iξ₁)| = {residual:e}")]
    InconsistentData { xi1: f64, residual: f64 },
    #[error("unsupported degeneracy: a2(0) = {a2_zero} and ȧ2(0) = {a2_dot} are both below threshold")]
    UnsupportedDegeneracy { a2_zero: Complex64, a2_dot: Complex64 },
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
}

pub type ScatResult<T> = Result<T, ScatError>;
