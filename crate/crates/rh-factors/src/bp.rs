//! Matrix elements of the Blaschke–Potapov factor that removes the pole at `iξ₁`, in terms
//! of the vectors `u`, `v` built from the regular solution at `iξ₁` and at `0`.

use crate::error::{RhError, RhResult};
use crate::residue::ResidueConstants;
use lpd_numerics_core::{Complex64, Mat2};

type C = Complex64;

/// `P₁₂ = u₁v₁/(u₁v₂ − u₂v₁)`, `P₂₁ = −u₂v₂/(u₁v₂ − u₂v₁)`.
pub fn bp_elements(u: [C; 2], v: [C; 2]) -> RhResult<(C, C)> {
    let den = u[0] * v[1] - u[1] * v[0];
    if den == C::new(0.0, 0.0) || !den.is_finite() {
        return Err(RhError::DegenerateBp(den));
    }
    Ok((u[0] * v[0] / den, -u[1] * v[1] / den))
}

/// Vectors obtained when the regular solution is replaced by the identity:
/// `u = (iξ₁, −c₁(x, t))`, `v = (c₀, iξ₁)`.
pub fn rough_vectors(rc: &ResidueConstants, x: f64, t: f64) -> ([C; 2], [C; 2]) {
    let ik = C::new(0.0, rc.xi1);
    ([ik, -rc.c1(x, t)], [rc.c0, ik])
}

/// `q ≈ −2ξ₁P₁₂(x, t)` for `x > 0` and `q ≈ −2ξ₁ conj P₂₁(−x, t)` for `x < 0`, with the
/// rough vectors of [`rough_vectors`]; tends to `Aδ²(0, μ)` and `0` respectively.
pub fn q_from_rough(rc: &ResidueConstants, x: f64, t: f64) -> RhResult<C> {
    let (u, v) = rough_vectors(rc, x.abs(), t);
    let (p12, p21) = bp_elements(u, v)?;
    Ok(if x >= 0.0 { -2.0 * rc.xi1 * p12 } else { -2.0 * rc.xi1 * p21.conj() })
}

/// `(Ξʳ)₁₂ = λ/(λ − iξ₁)(Ξ̃)₁₂`, `(Ξʳ)₂₁ = (λ − iξ₁)/λ(Ξ̃)₂₁`: moves the regularising factor
/// `diag(1, (ξ − iξ₁)/ξ)` evaluated at `λ` into an off-diagonal coefficient matrix.
pub fn absorb_prefactors(xi_tilde: Mat2, lambda: f64, xi1: f64) -> Mat2 {
    let d = (C::new(lambda, 0.0) - C::new(0.0, xi1)) / lambda;
    Mat2::new(xi_tilde.a11(), xi_tilde.a12() / d, xi_tilde.a21() * d, xi_tilde.a22())
}

/// Vectors `u`, `v` to first order in the coefficient matrices `Ξʳⱼ`:
/// `u = (iξ₁, −iξ₁Σ(Ξʳⱼ)₂₁/(λⱼ − iξ₁))`, `v = (c₀ − iξ₁Σ(Ξʳⱼ)₁₂/λⱼ, iξ₁ − c₀Σ(Ξʳⱼ)₂₁/λⱼ)`.
pub fn leading_vectors(xi_r: &[Mat2; 3], lambdas: [f64; 3], xi1: f64, c0: C) -> ([C; 2], [C; 2]) {
    let ik = C::new(0.0, xi1);
    let mut s21_shift = C::new(0.0, 0.0);
    let mut s12 = C::new(0.0, 0.0);
    let mut s21 = C::new(0.0, 0.0);
    for (m, &l) in xi_r.iter().zip(lambdas.iter()) {
        s21_shift += m.a21() / (l - ik);
        s12 += m.a12() / l;
        s21 += m.a21() / l;
    }
    ([ik, -ik * s21_shift], [c0 - ik * s12, ik - c0 * s21])
}

/// Leading-order BP elements:
/// `P₁₂ = −ic₀/ξ₁ − Σ(Ξʳⱼ)₁₂/λⱼ + (ic₀²/ξ₁)Σ(Ξʳⱼ)₂₁/(λⱼ(λⱼ − iξ₁))`,
/// `P₂₁ = Σ(Ξʳⱼ)₂₁/(λⱼ − iξ₁)`.
pub fn bp_leading(xi_r: &[Mat2; 3], lambdas: [f64; 3], xi1: f64, c0: C) -> (C, C) {
    let ik = C::new(0.0, xi1);
    let i = C::new(0.0, 1.0);
    let mut p12 = -i * c0 / xi1;
    let mut p21 = C::new(0.0, 0.0);
    for (m, &l) in xi_r.iter().zip(lambdas.iter()) {
        p12 += -m.a12() / l + i * c0 * c0 / xi1 * m.a21() / (l * (l - ik));
        p21 += m.a21() / (l - ik);
    }
    (p12, p21)
}
