//! Cross-validation tools for the nonlocal LPD equation: the pointwise PDE residual, a
//! short-time IMEX integrator, the invariant suite and the plumbing behind the `lpd` command.

pub mod banded;
pub mod checks;
pub mod commands;
pub mod config;
pub mod error;
pub mod evolve;
pub mod output;
pub mod residual;

pub use checks::{run_check, run_checks, CheckOutcome, CHECKS};
pub use commands::{run, Command, Report};
pub use config::{Grid, RunConfig};
pub use error::{SimError, SimResult};
pub use evolve::{evolve, smoothed_step, EvolveOptions, EvolveStats, FieldGrid};
pub use output::{parse_table, Cell, ParsedTable, Table};
pub use residual::{central_weights, fd_weights, pde_residual, residual_parts, ExactSoliton, Field, FiniteDifference, Jet, ResidualParts};
