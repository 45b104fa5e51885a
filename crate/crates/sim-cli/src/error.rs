use lpd_asymptotics::AsymError;
use lpd_numerics_core::NumError;
use lpd_pc_model::PcError;
use lpd_phase::PhaseError;
use lpd_rh_factors::RhError;
use lpd_scattering::ScatError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SimError {
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
    #[error(transparent)]
    Asymptotics(#[from] AsymError),
    #[error("grid error: {0}")]
    Grid(String),
    #[error("time step fell below {dt_min:e} at t = {time}; the integration is unstable")]
    Stability { time: f64, dt_min: f64 },
    #[error("non-finite values at t = {time}")]
    BlowUp { time: f64 },
    #[error("singular banded matrix at row {0}")]
    Singular(usize),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("output error: {0}")]
    Output(String),
    #[error("domain error: {0}")]
    Domain(String),
}

pub type SimResult<T> = Result<T, SimError>;
