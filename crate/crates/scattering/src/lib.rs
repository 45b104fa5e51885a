//! Direct scattering for the nonlocal LPD equation with step-like initial data: Jost
//! solutions, the scattering matrix, reflection coefficients and the discrete eigenvalue.

pub mod data;
pub mod error;
pub mod jost;
pub mod profile;
pub mod source;

pub use data::{a1_dot, classify_case, locate_xi1, Case, CaseChoice, ScatteringData};
pub use error::{ScatError, ScatResult};
pub use jost::{auxiliary_f, jost_at_origin, jost_column, jost_matrix, l_matrix, scattering_matrix, JostSide};
pub use profile::{InitialProfile, Perturbation, PerturbationSpec, ProfileSpec};
pub use source::{NumericScattering, PureStep, Reflectionless, Scattering, NUMERIC_EVALUATION_RADIUS};
