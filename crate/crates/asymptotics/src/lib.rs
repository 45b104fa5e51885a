//! Long-time asymptotics of the focusing nonlocal LPD equation with step-like data: the
//! leading terms on both half-lines, the rough background estimate, the exact one-soliton,
//! potential reconstruction from the Riemann–Hilbert data and the predicted error orders.

pub mod coefficients;
pub mod error;
pub mod order;
pub mod rough;
pub mod rays;

pub use coefficients::{coefficients_hln, HlnCoefficients, PowerBase, RayData, SaddleInput};
pub use error::{AsymError, AsymResult};
pub use order::{error_order, ErrorOrder, Order};
pub use rough::{
    q_rough, q_soliton, reconstruct_q, rough_background, soliton_frequency, soliton_phase_distance, HalfLine,
    SOLITON_POLE_TOL,
};
pub use rays::{
    classify_interval, q_asymptotic, AsymptoticOptions, AsymptoticResult, Branch, Interval, LeadingTerm,
    RayAsymptotics, TermKind,
};
