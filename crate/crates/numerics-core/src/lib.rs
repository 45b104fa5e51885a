//! Numerical kernels shared by the scattering, Riemann–Hilbert and asymptotic layers:
//! adaptive quadrature (plain, principal value, Cauchy transform), complex `Γ`,
//! parabolic cylinder functions `D_a(z)`, cubic real roots, and adaptive ODE stepping.

pub mod error;
pub mod gamma;
pub mod mat2;
pub mod ode;
pub mod pcf;
pub mod quad;
pub mod roots;

pub use error::{NumError, NumResult};
pub use gamma::{complex_gamma, recip_gamma};
pub use mat2::{checked_div, Mat2};
pub use num_complex::Complex64;
pub use ode::{ode_integrate, ode_integrate_vec};
pub use pcf::{parabolic_cylinder_d, parabolic_cylinder_d_with_derivative};
pub use quad::{
    cauchy_transform, integrate, integrate_breaks, integrate_detailed, pv_integrate, ContourInterval, Decay,
    Estimate, QuadratureSpec, Side,
};
pub use roots::cubic_real_roots;
