//! Evaluable scattering data: numerically from a profile, or in closed form.

use crate::error::{ScatError, ScatResult};
use crate::jost::{auxiliary_f, jost_column, jost_matrix, scattering_matrix, JostSide};
use crate::profile::InitialProfile;
use lpd_numerics_core::{Complex64, Mat2};

type C = Complex64;

/// Step used for finite-difference limits at `ξ = 0`.
pub const ZERO_LIMIT_STEP: f64 = 1e-4;
/// Spectral radius beyond which integrals over numerically computed data are closed with an
/// analytic `|ξ|⁻ᵖ` tail instead of further evaluation.
pub const NUMERIC_EVALUATION_RADIUS: f64 = 64.0;

/// Scattering data `a1, a2, b` and their analytic continuations.
///
/// `S(ξ) = [[a1, b], [−b*, a2]]` with `b*(ξ) = conj b(−ξ̄)` on the real axis.
pub trait Scattering: Send + Sync {
    /// Step height `A`.
    fn amplitude(&self) -> f64;

    /// Scattering matrix, continued to complex `ξ ≠ 0`.
    fn matrix(&self, xi: C) -> ScatResult<Mat2>;

    fn a1(&self, xi: C) -> ScatResult<C> {
        Ok(self.matrix(xi)?.a11())
    }

    fn a2(&self, xi: C) -> ScatResult<C> {
        Ok(self.matrix(xi)?.a22())
    }

    fn b(&self, xi: C) -> ScatResult<C> {
        Ok(self.matrix(xi)?.a12())
    }

    /// `b*(ξ) = −S21(ξ)`, equal to `conj b(−ξ̄)` on the real axis.
    fn b_star(&self, xi: C) -> ScatResult<C> {
        Ok(-self.matrix(xi)?.a21())
    }

    /// `1 − b(ξ)·conj b(−ξ̄) = a1(ξ)a2(ξ)` on the real axis.
    fn a1a2(&self, xi: C) -> ScatResult<C> {
        Ok(self.a1(xi)? * self.a2(xi)?)
    }

    /// `a2(0)`.
    fn a2_zero(&self) -> ScatResult<C> {
        let h = ZERO_LIMIT_STEP;
        Ok(0.5 * (self.a2(C::new(h, 0.0))? + self.a2(C::new(-h, 0.0))?))
    }

    /// `ȧ2(0)` by central difference along the real axis.
    fn a2_dot_zero(&self) -> ScatResult<C> {
        let h = ZERO_LIMIT_STEP;
        Ok((self.a2(C::new(h, 0.0))? - self.a2(C::new(-h, 0.0))?) / (2.0 * h))
    }

    /// `a11 = lim_{ξ→0} ξ a1(ξ)` (meaningful when `a2(0) = 0`).
    fn a11(&self) -> ScatResult<C> {
        let h = ZERO_LIMIT_STEP;
        let g = |x: f64| -> ScatResult<C> { Ok(self.a1(C::new(x, 0.0))? * x) };
        Ok(0.5 * (g(h)? + g(-h)?))
    }

    /// `b(0)` (finite when `a2(0) = 0`).
    fn b_zero(&self) -> ScatResult<C> {
        let h = ZERO_LIMIT_STEP;
        Ok(0.5 * (self.b(C::new(h, 0.0))? + self.b(C::new(-h, 0.0))?))
    }

    /// Largest `|ξ|` at which repeated evaluation (inside quadrature) is affordable;
    /// `None` when evaluation cost does not grow with `|ξ|`.
    fn evaluation_radius(&self) -> Option<f64> {
        None
    }
}

fn nonzero(xi: C) -> ScatResult<()> {
    if xi == C::new(0.0, 0.0) {
        Err(ScatError::SingularNormalization)
    } else {
        Ok(())
    }
}

/// Closed-form data of the pure step `0 (x<0), A (x>0)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureStep {
    pub amplitude: f64,
}

impl Scattering for PureStep {
    fn amplitude(&self) -> f64 {
        self.amplitude
    }

    fn matrix(&self, xi: C) -> ScatResult<Mat2> {
        nonzero(xi)?;
        let k = C::new(self.amplitude, 0.0) / (C::new(0.0, 2.0) * xi);
        Ok(Mat2::new(1.0 - k * k, -k, k, C::new(1.0, 0.0)))
    }

    fn a2_zero(&self) -> ScatResult<C> {
        Ok(C::new(1.0, 0.0))
    }

    fn a2_dot_zero(&self) -> ScatResult<C> {
        Ok(C::new(0.0, 0.0))
    }
}

/// Reflectionless data `b ≡ 0`, `a1 = (ξ − iA/2)/ξ`, `a2 = ξ/(ξ − iA/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reflectionless {
    pub amplitude: f64,
}

impl Reflectionless {
    fn pole(&self) -> C {
        C::new(0.0, self.amplitude / 2.0)
    }
}

impl Scattering for Reflectionless {
    fn amplitude(&self) -> f64 {
        self.amplitude
    }

    fn matrix(&self, xi: C) -> ScatResult<Mat2> {
        nonzero(xi)?;
        if xi == self.pole() {
            return Err(ScatError::Pole(format!("a2 has a pole at ξ = {xi}")));
        }
        Ok(Mat2::diag((xi - self.pole()) / xi, xi / (xi - self.pole())))
    }

    fn a1(&self, xi: C) -> ScatResult<C> {
        nonzero(xi)?;
        Ok((xi - self.pole()) / xi)
    }

    fn a2(&self, xi: C) -> ScatResult<C> {
        if xi == self.pole() {
            return Err(ScatError::Pole(format!("a2 has a pole at ξ = {xi}")));
        }
        Ok(xi / (xi - self.pole()))
    }

    fn a2_zero(&self) -> ScatResult<C> {
        Ok(C::new(0.0, 0.0))
    }

    fn a2_dot_zero(&self) -> ScatResult<C> {
        Ok(-1.0 / self.pole())
    }

    fn a11(&self) -> ScatResult<C> {
        Ok(-self.pole())
    }

    fn b_zero(&self) -> ScatResult<C> {
        Ok(C::new(0.0, 0.0))
    }
}

/// Data computed from a profile by Jost-solution integration.
#[derive(Debug, Clone)]
pub struct NumericScattering {
    pub profile: InitialProfile,
}

impl NumericScattering {
    pub fn new(profile: InitialProfile) -> ScatResult<Self> {
        profile.validate()?;
        Ok(NumericScattering { profile })
    }
}

impl Scattering for NumericScattering {
    fn amplitude(&self) -> f64 {
        self.profile.amplitude
    }

    fn matrix(&self, xi: C) -> ScatResult<Mat2> {
        if xi.im == 0.0 {
            return scattering_matrix(&self.profile, xi);
        }
        let minus = jost_matrix(&self.profile, JostSide::Minus, xi)?;
        let plus = jost_matrix(&self.profile, JostSide::Plus, xi)?;
        Ok(plus.inv()? * minus)
    }

    /// Wronskian `det[φ₋⁽¹⁾, φ₊⁽²⁾]`, stable in the closed upper half-plane.
    fn a1(&self, xi: C) -> ScatResult<C> {
        if xi.im < 0.0 {
            return Ok(self.matrix(xi)?.a11());
        }
        let u = jost_column(&self.profile, JostSide::Minus, 1, xi)?;
        let v = jost_column(&self.profile, JostSide::Plus, 2, xi)?;
        Ok(u[0] * v[1] - u[1] * v[0])
    }

    /// Wronskian `det[φ₊⁽¹⁾, φ₋⁽²⁾]`, stable in the closed lower half-plane.
    fn a2(&self, xi: C) -> ScatResult<C> {
        if xi.im > 0.0 {
            return Ok(self.matrix(xi)?.a22());
        }
        let u = jost_column(&self.profile, JostSide::Plus, 1, xi)?;
        let v = jost_column(&self.profile, JostSide::Minus, 2, xi)?;
        Ok(u[0] * v[1] - u[1] * v[0])
    }

    /// `a2(0) = (4/A²)(|f2(0)|² − |f1(0)|²)`.
    fn a2_zero(&self) -> ScatResult<C> {
        let a = self.profile.amplitude;
        if a == 0.0 {
            return Ok(C::new(1.0, 0.0));
        }
        let (f1, f2) = auxiliary_f(&self.profile, 0.0)?;
        Ok(C::new(4.0 / (a * a) * (f2.norm_sqr() - f1.norm_sqr()), 0.0))
    }

    /// The Jost integration resolves `e^{±iξx}`, so its cost grows linearly in `|ξ|`.
    fn evaluation_radius(&self) -> Option<f64> {
        Some(NUMERIC_EVALUATION_RADIUS)
    }
}
