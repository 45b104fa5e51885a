//! The rough background `Aδ²(0, μ)`, the exact one-soliton and the reconstruction of `q`
//! from the Blaschke–Potapov elements and the large-`ξ` limits of the regular solution.

use crate::error::{AsymError, AsymResult};
use lpd_numerics_core::Complex64;
use lpd_rh_factors::DeltaFunction;
use std::f64::consts::PI;

type C = Complex64;

/// `|1 − e^{…}|` below this is treated as the soliton pole.
pub const SOLITON_POLE_TOL: f64 = 1e-12;

/// `Aδ²(0, μ)` on the ray `δ` was built for.
pub fn rough_background(delta: &DeltaFunction) -> AsymResult<C> {
    let d0 = delta.eval(C::new(0.0, 0.0), None)?;
    Ok(delta.data().amplitude() * d0 * d0)
}

/// Rough estimate: `Aδ²(0, μ)` for `x > 0` and `0` for `x < 0`, with `δ` built on the ray
/// `μ = x/t`.
pub fn q_rough(x: f64, t: f64, delta: &DeltaFunction) -> AsymResult<C> {
    if !(t > 0.0 && x.is_finite()) {
        return Err(AsymError::Domain(format!("rough estimate needs t > 0 and finite x, got ({x}, {t})")));
    }
    if x > 0.0 {
        rough_background(delta)
    } else {
        Ok(C::new(0.0, 0.0))
    }
}

/// `ω = A²/2 + A⁴γ`.
pub fn soliton_frequency(amplitude: f64, gamma: f64) -> f64 {
    0.5 * amplitude * amplitude + amplitude.powi(4) * gamma
}

/// `q = A/(1 − e^{−Ax + iωt + iα})`; singular at `x = 0`, `ωt + α ∈ 2πℤ`.
pub fn q_soliton(x: f64, t: f64, amplitude: f64, alpha: f64, gamma: f64) -> AsymResult<C> {
    let e = C::new(-amplitude * x, soliton_frequency(amplitude, gamma) * t + alpha).exp();
    let den = 1.0 - e;
    if den.norm() < SOLITON_POLE_TOL || !den.is_finite() {
        return Err(AsymError::SingularPoint { x, t });
    }
    Ok(amplitude / den)
}

/// Distance of `(x, t)` from the pole locus in the phase variable, for sampling.
pub fn soliton_phase_distance(t: f64, amplitude: f64, alpha: f64, gamma: f64) -> f64 {
    let p = (soliton_frequency(amplitude, gamma) * t + alpha).rem_euclid(2.0 * PI);
    p.min(2.0 * PI - p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfLine {
    Positive,
    Negative,
}

/// `q(x, t)` from the Blaschke–Potapov elements and `lim ξM̂ʳ`:
/// `q = −2ξ₁P₁₂ + 2i lim ξM̂ʳ₁₂` for `x > 0`, and
/// `q = −2ξ₁ conj P₂₁ − 2i conj(lim ξM̂ʳ₂₁)` for `x < 0`, where the inputs are evaluated at
/// `(−x, t)`.
pub fn reconstruct_q(p12: C, p21: C, m12_limit: C, m21_limit: C, xi1: f64, side: HalfLine) -> C {
    let i = C::new(0.0, 1.0);
    match side {
        HalfLine::Positive => -2.0 * xi1 * p12 + 2.0 * i * m12_limit,
        HalfLine::Negative => -2.0 * xi1 * p21.conj() - 2.0 * i * m21_limit.conj(),
    }
}
