//! Regularised reflection coefficients and the residue constants `c₀`, `c₁(x, t)` of the
//! pole at `iξ₁` and of the step at the origin.

use crate::delta::DeltaFunction;
use crate::error::{RhError, RhResult};
use lpd_numerics_core::Complex64;
use lpd_scattering::ScatteringData;

type C = Complex64;

/// `r₁ʳ(ξ) = ((ξ − iξ₁)/ξ)r₁(ξ)`, `r₂ʳ(ξ) = (ξ/(ξ − iξ₁))r₂(ξ)`; at `ξ = iξ₁` the pole of `r₁`
/// cancels and the limits are returned.
pub fn regularized_reflections(data: &ScatteringData, xi: C) -> RhResult<(C, C)> {
    if xi == C::new(0.0, 0.0) {
        return Err(RhError::Domain("regularised reflection coefficients have a pole at ξ = 0".into()));
    }
    let pole = C::new(0.0, data.xi1);
    if xi == pole {
        // removable: (ξ − iξ₁)/a₁(ξ) → 1/ȧ₁(iξ₁), while r₂ stays finite
        if data.a1_dot_xi1 == C::new(0.0, 0.0) {
            return Err(RhError::NonSimpleZero);
        }
        let r1r = data.source.b_star(pole)? / (pole * data.a1_dot_xi1);
        return Ok((r1r, C::new(0.0, 0.0)));
    }
    let (r1, r2) = data.reflection_coefficients(xi)?;
    let d = (xi - pole) / xi;
    Ok((d * r1, r2 / d))
}

/// Constants attached to the residue at `iξ₁` and the step at the origin on a fixed ray.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueConstants {
    /// `c₀(μ) = Aδ²(0, μ)/(2i)`.
    pub c0: C,
    /// `ξ₁`.
    pub xi1: f64,
    /// `κ/(ȧ₁(iξ₁)δ²(iξ₁))`: the `(x, t)`-independent part of `c₁`.
    pub c1_prefactor: C,
    pub gamma: f64,
}

impl ResidueConstants {
    /// `c₁(x, t) = κ/(ȧ₁(iξ₁)δ²(iξ₁))·e^{−2ξ₁x + 2iξ₁²t + 16iξ₁⁴γt}`.
    pub fn c1(&self, x: f64, t: f64) -> C {
        let k = self.xi1;
        let re = -2.0 * k * x;
        let im = 2.0 * k * k * t + 16.0 * k.powi(4) * self.gamma * t;
        self.c1_prefactor * C::new(re, im).exp()
    }
}

pub fn residue_constants(delta: &DeltaFunction) -> RhResult<ResidueConstants> {
    let data = delta.data();
    if data.a1_dot_xi1 == C::new(0.0, 0.0) {
        return Err(RhError::NonSimpleZero);
    }
    let d0 = delta.eval(C::new(0.0, 0.0), None)?;
    let dp = delta.eval(C::new(0.0, data.xi1), None)?;
    Ok(ResidueConstants {
        c0: data.amplitude() * d0 * d0 / C::new(0.0, 2.0),
        xi1: data.xi1,
        c1_prefactor: data.kappa / (data.a1_dot_xi1 * dp * dp),
        gamma: delta.geometry().gamma,
    })
}
