//! Scalar and matrix factors of the Riemann–Hilbert analysis: the function `δ`, the jump
//! matrices at each deformation stage, the residue constants and the Blaschke–Potapov elements.

pub mod bp;
pub mod delta;
pub mod error;
pub mod jumps;
pub mod residue;

pub use bp::{absorb_prefactors, bp_elements, bp_leading, leading_vectors, q_from_rough, rough_vectors};
pub use delta::{
    build_delta, delta_spec, saddle_exponents, DeltaFunction, SaddleExponents, BRANCH_MARGIN, REGULARISATION_LENGTH,
    SADDLE_EXCLUSION,
};
pub use error::{RhError, RhResult};
pub use jumps::{
    jump_matrix, original_factorisations, original_jump, t_theta, Factorisations, RayContour, RayLocation, Stage,
};
pub use residue::{regularized_reflections, residue_constants, ResidueConstants};
