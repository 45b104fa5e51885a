//! Phase function `θ(ξ, μ) = ξμ − ξ² + 8γξ⁴` of the oscillatory factor `e^{2itθ}`, its
//! stationary points and the sign structure of `Re(iθ)` in the complex plane.

pub mod error;
pub mod geometry;
pub mod theta;

pub use error::{PhaseError, PhaseResult};
pub use geometry::{critical_speed, sector_probes, sign_of_re_phi, stationary_points, SectorProbe, PhaseGeometry, Regime, Sign, DEGENERACY_TOL, EDGE_GUARD};
pub use theta::{phase_theta, phase_theta_derivatives, PhaseDerivatives};
