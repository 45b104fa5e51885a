//! Derived scattering data: case classification, the discrete eigenvalue `iξ₁`,
//! reflection coefficients and the residue constants needed downstream.

use crate::error::{ScatError, ScatResult};
use crate::source::Scattering;
use lpd_numerics_core::{integrate, Complex64, ContourInterval, Decay, QuadratureSpec};
use std::cell::RefCell;
use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

type C = Complex64;

/// `|a2(0)| < CASE_THRESHOLD·(1 + A)` declares a zero of `a2` at the origin.
pub const CASE_THRESHOLD: f64 = 1e-6;
/// Relative step for the imaginary-direction difference quotient of `a1` at `iξ₁`.
pub const XI1_DIFF_STEP: f64 = 1e-5;
/// Tolerance factor for the cross-check `|a1(iξ₁)| < XI1_CHECK·(1 + ξ₁|ȧ1(iξ₁)|)`.
pub const XI1_CHECK: f64 = 1e-6;
/// Upper limit of the explicit quadrature in the trace formulas; beyond it an algebraic
/// `ϑ⁻³` tail is added analytically.
pub const TRACE_CUTOFF: f64 = 256.0;

/// Which zero structure the data has at `ξ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Case {
    /// `a2` has no zero in the closed lower half-plane.
    One,
    /// `a2(0) = 0` with `ȧ2(0) ≠ 0` and `lim ξa1(ξ) ≠ 0`.
    Two,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::One => write!(f, "1"),
            Case::Two => write!(f, "2"),
        }
    }
}

/// Case selection policy: detect, or require a specific case (an error if the data
/// classify differently).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CaseChoice {
    #[default]
    Auto,
    Require(Case),
}

/// Scattering data with everything the Riemann–Hilbert analysis needs precomputed.
#[derive(Clone)]
pub struct ScatteringData {
    pub source: Arc<dyn Scattering>,
    pub case: Case,
    /// `a1(iξ₁) = 0`, `ξ₁ > 0`.
    pub xi1: f64,
    /// `ȧ1(iξ₁)`.
    pub a1_dot_xi1: C,
    /// `a2(0)`.
    pub a2_zero: C,
    /// `lim ξa1(ξ)` (Case 2 only).
    pub a11: Option<C>,
    /// `ȧ2(0)` (Case 2 only).
    pub a2dot0: Option<C>,
    /// `b(0)` (Case 2 only).
    pub b_zero: Option<C>,
    /// Norming constant of the discrete eigenvalue, `|κ| = 1`.
    pub kappa: C,
}

impl fmt::Debug for ScatteringData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScatteringData")
            .field("amplitude", &self.source.amplitude())
            .field("case", &self.case)
            .field("xi1", &self.xi1)
            .field("a1_dot_xi1", &self.a1_dot_xi1)
            .field("a2_zero", &self.a2_zero)
            .field("a11", &self.a11)
            .field("a2dot0", &self.a2dot0)
            .field("b_zero", &self.b_zero)
            .field("kappa", &self.kappa)
            .finish()
    }
}

/// Decide the case from `a2(0)`; Case 2 requires nonvanishing `ȧ2(0)` and `a11`.
pub fn classify_case(source: &dyn Scattering) -> ScatResult<Case> {
    let a2_zero = source.a2_zero()?;
    let scale = CASE_THRESHOLD * (1.0 + source.amplitude());
    if a2_zero.norm() >= scale {
        return Ok(Case::One);
    }
    let a2_dot = source.a2_dot_zero()?;
    if a2_dot.norm() < scale || source.a11()?.norm() < scale {
        return Err(ScatError::UnsupportedDegeneracy { a2_zero, a2_dot });
    }
    Ok(Case::Two)
}

/// `P = (1/2πi)·PV∫ F(ϑ)/ϑ dϑ` for `F(−ϑ) = conj F(ϑ)`, `F → 0` at infinity; reduces
/// to `(1/π)∫₀^∞ Im F(ϑ)/ϑ dϑ`. `F` is taken on the principal branch, which is checked
/// not to be crossed along a sample grid.
fn trace_integral<G>(log_arg: G) -> ScatResult<f64>
where
    G: Fn(f64) -> ScatResult<C>,
{
    let failure: RefCell<Option<ScatError>> = RefCell::new(None);
    let phase = |t: f64| -> f64 {
        match log_arg(t) {
            Ok(z) => z.arg(),
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        }
    };
    let mut t = 1e-3;
    while t < TRACE_CUTOFF {
        let p = phase(t);
        if let Some(e) = failure.borrow_mut().take() {
            return Err(e);
        }
        if p.abs() > 0.9 * PI {
            return Err(ScatError::Domain(format!(
                "the phase of a1·a2 approaches the branch cut near ϑ = {t}; trace formula undefined"
            )));
        }
        t *= 1.25;
    }
    let spec = QuadratureSpec { abs_tol: 1e-11, rel_tol: 1e-10, max_depth: 40, tail_cutoff: TRACE_CUTOFF };
    let iv = ContourInterval::with_decay(0.0, f64::INFINITY, Decay::Algebraic(3.0));
    let value = integrate(|t| C::new(phase(t) / t, 0.0), &iv, &spec)?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(value.re / PI)
}

/// Trace formula for `ξ₁` in the given case.
pub fn locate_xi1(source: &dyn Scattering, case: Case) -> ScatResult<f64> {
    let amplitude = source.amplitude();
    let xi1 = match case {
        Case::One => {
            let p = trace_integral(|t| {
                let x = C::new(t, 0.0);
                Ok(source.a1a2(x)? * (t * t / (t * t + 1.0)))
            })?;
            0.5 * amplitude * (-p).exp()
        }
        Case::Two => {
            let p = trace_integral(|t| source.a1a2(C::new(t, 0.0)))?;
            let f1 = p.exp();
            let b0 = source.b_zero()?;
            let f2 = (0.5 * (1.0 - b0.norm_sqr()).ln()).exp();
            let rb = b0.re;
            amplitude * ((rb * rb + f2 * f2).sqrt() - rb) / (2.0 * f1 * f2)
        }
    };
    if !(xi1 > 0.0 && xi1.is_finite()) {
        return Err(ScatError::Domain(format!("trace formula produced ξ₁ = {xi1}")));
    }
    Ok(xi1)
}

/// `ȧ1(iξ₁)` by a central difference along the imaginary axis.
pub fn a1_dot(source: &dyn Scattering, xi1: f64) -> ScatResult<C> {
    let h = XI1_DIFF_STEP * xi1;
    let up = source.a1(C::new(0.0, xi1 + h))?;
    let down = source.a1(C::new(0.0, xi1 - h))?;
    Ok((up - down) / C::new(0.0, 2.0 * h))
}

impl ScatteringData {
    /// Classify, locate and cross-check `ξ₁`; `kappa` must have unit modulus.
    pub fn build(source: Arc<dyn Scattering>, choice: CaseChoice, kappa: C) -> ScatResult<Self> {
        if (kappa.norm() - 1.0).abs() > 1e-12 {
            return Err(ScatError::Domain(format!("norming constant must have |κ| = 1, got {kappa}")));
        }
        let case = classify_case(source.as_ref())?;
        if let CaseChoice::Require(wanted) = choice {
            if wanted != case {
                return Err(ScatError::Domain(format!("data classify as Case {case}, not Case {wanted}")));
            }
        }
        let xi1 = locate_xi1(source.as_ref(), case)?;
        let a1_dot_xi1 = a1_dot(source.as_ref(), xi1)?;
        let residual = source.a1(C::new(0.0, xi1))?.norm();
        if residual >= XI1_CHECK * (1.0 + xi1 * a1_dot_xi1.norm()) {
            return Err(ScatError::InconsistentData { xi1, residual });
        }
        let (a11, a2dot0, b_zero) = match case {
            Case::One => (None, None, None),
            Case::Two => (Some(source.a11()?), Some(source.a2_dot_zero()?), Some(source.b_zero()?)),
        };
        Ok(ScatteringData { a2_zero: source.a2_zero()?, source, case, xi1, a1_dot_xi1, a11, a2dot0, b_zero, kappa })
    }

    pub fn amplitude(&self) -> f64 {
        self.source.amplitude()
    }

    /// `(r1, r2) = (b*/a1, b/a2)`, continued off the real axis where the entries are.
    pub fn reflection_coefficients(&self, xi: C) -> ScatResult<(C, C)> {
        let s = self.source.matrix(xi)?;
        let (a1, a2) = (s.a11(), s.a22());
        if a1 == C::new(0.0, 0.0) || a2 == C::new(0.0, 0.0) {
            return Err(ScatError::Pole(format!("a1 or a2 vanishes at ξ = {xi}")));
        }
        Ok((-s.a21() / a1, s.a12() / a2))
    }

    /// `1 + r1 r2 = 1/(a1 a2)`.
    pub fn one_plus_r1r2(&self, xi: C) -> ScatResult<C> {
        let p = self.source.a1a2(xi)?;
        if p == C::new(0.0, 0.0) {
            return Err(ScatError::Pole(format!("a1·a2 vanishes at ξ = {xi}")));
        }
        Ok(1.0 / p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::source::{PureStep, Reflectionless};

    fn one() -> C {
        C::new(1.0, 0.0)
    }

    #[test]
    fn pure_step_is_case_one_with_half_amplitude() {
        let d = ScatteringData::build(Arc::new(PureStep { amplitude: 2.0 }), CaseChoice::Auto, one()).unwrap();
        assert_eq!(d.case, Case::One);
        assert!((d.xi1 - 1.0).abs() < 1e-12);
        // a1(ξ) = 1 + A²/(4ξ²) ⇒ ȧ1(i) = −A²/(2ξ³) = −2/(−i) = −2i
        assert!((d.a1_dot_xi1 - C::new(0.0, -2.0)).norm() < 1e-8);
    }

    #[test]
    fn reflectionless_is_case_two_with_exact_half_amplitude() {
        let src = Arc::new(Reflectionless { amplitude: 3.0 });
        let d = ScatteringData::build(src, CaseChoice::Auto, one()).unwrap();
        assert_eq!(d.case, Case::Two);
        assert_eq!(d.xi1, 1.5);
        assert_eq!(d.a11, Some(C::new(0.0, -1.5)));
    }

    #[test]
    fn pure_step_reflection_identity() {
        let d = ScatteringData::build(Arc::new(PureStep { amplitude: 1.0 }), CaseChoice::Auto, one()).unwrap();
        for x in [-2.0, -0.3, 0.7, 4.0] {
            let xi = C::new(x, 0.0);
            let (r1, r2) = d.reflection_coefficients(xi).unwrap();
            let want = 4.0 * x * x / (4.0 * x * x + 1.0);
            assert!((1.0 + r1 * r2 - want).norm() < 1e-14);
            assert!((d.one_plus_r1r2(xi).unwrap() - want).norm() < 1e-14);
        }
    }

    #[test]
    fn requiring_the_wrong_case_is_an_error() {
        let r = ScatteringData::build(Arc::new(PureStep { amplitude: 1.0 }), CaseChoice::Require(Case::Two), one());
        assert!(matches!(r, Err(ScatError::Domain(_))));
        let r = ScatteringData::build(Arc::new(PureStep { amplitude: 1.0 }), CaseChoice::Require(Case::One), one());
        assert!(r.is_ok());
    }

    #[test]
    fn kappa_must_be_unimodular() {
        let r = ScatteringData::build(Arc::new(PureStep { amplitude: 1.0 }), CaseChoice::Auto, C::new(2.0, 0.0));
        assert!(matches!(r, Err(ScatError::Domain(_))));
    }
}
