//! Parabolic-cylinder local models at the stationary points of the phase: the scaling maps,
//! local phases, diagonal conjugators, explicit model solutions and the leading coefficient
//! matrices that feed the long-time asymptotics.

pub mod error;
pub mod leading;
pub mod model;
pub mod scaling;

pub use error::{PcError, PcResult};
pub use leading::{LocalModelData, SaddleSet};
pub use model::{pc_coefficients, sector_of, LocalModel, PcModel, Ray, Sector, EXPONENT_CONSISTENCY, RAY_ANGLE_TOL};
pub use scaling::{inverse_scaling_map, local_phase_phi, scale_factor, scaling_map, PhiMode};
