//! Per-saddle input data on one ray and the nine amplitude coefficients `H₁..H₃`,
//! `L₁..L₃`, `N₁..N₃` of the leading terms.

use crate::error::{AsymError, AsymResult};
use crate::rough::rough_background;
use lpd_numerics_core::{recip_gamma, Complex64};
use lpd_phase::PhaseGeometry;
use lpd_rh_factors::{residue_constants, DeltaFunction};
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_4, PI};

type C = Complex64;

/// Base of the power factors `(c₂/(k c₁c₃))^{±iv}` and `(1/(k c₃))^{±iv}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum PowerBase {
    /// `k = 4`: the `t`-dependence is carried entirely by the explicit `t`-powers.
    #[default]
    Four,
    /// `k = 4t`: the bases of the local conjugators, which also depend on `t`.
    FourT,
}

impl PowerBase {
    fn k(self, t: f64) -> f64 {
        match self {
            PowerBase::Four => 4.0,
            PowerBase::FourT => 4.0 * t,
        }
    }
}

/// What one stationary point contributes: location, curvature, exponent, regular part of
/// `ln δ` and the reflection coefficients there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleInput {
    pub lambda: f64,
    /// Positive curvature factor `cₛ` (`48γλₛ² − 1` at `λ₁, λ₃`, `1 − 48γλ₂²` at `λ₂`).
    pub curvature: f64,
    pub v: C,
    /// `χₛ(λₛ)`.
    pub chi: C,
    /// `r₁(λₛ)`.
    pub r1: C,
    /// `r₂(λₛ)`.
    pub r2: C,
}

/// Everything the leading-order formulas need on one ray `x = μt`, `μ > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct RayData {
    pub geometry: PhaseGeometry,
    pub saddles: [SaddleInput; 3],
    /// `c₀ = Aδ²(0, μ)/(2i)`.
    pub c0: C,
    /// `Aδ²(0, μ)`.
    pub background: C,
    pub amplitude: f64,
}

impl RayData {
    /// Collects the saddle data from `δ` and the scattering data it was built from.
    pub fn from_delta(delta: &DeltaFunction) -> AsymResult<Self> {
        let geometry = delta.geometry().clone();
        check_ray(&geometry)?;
        let ex = delta.exponents()?;
        let data = delta.data();
        let mut out = Vec::with_capacity(3);
        for s in 1..=3 {
            let lambda = geometry.lambda(s)?;
            let (r1, r2) = data.reflection_coefficients(C::new(lambda, 0.0))?;
            out.push(SaddleInput {
                lambda,
                curvature: geometry.curvature_factor(s)?,
                v: ex.v[s - 1],
                chi: ex.chi[s - 1],
                r1,
                r2,
            });
        }
        let rc = residue_constants(delta)?;
        Ok(RayData {
            geometry,
            saddles: out.try_into().expect("three saddles"),
            c0: rc.c0,
            background: rough_background(delta)?,
            amplitude: data.amplitude(),
        })
    }

    /// Ray data from explicit per-saddle values; the locations and curvatures come from the
    /// geometry.
    pub fn synthetic(
        geometry: PhaseGeometry,
        v: [C; 3],
        chi: [C; 3],
        reflections: [(C, C); 3],
        c0: C,
        amplitude: f64,
    ) -> AsymResult<Self> {
        check_ray(&geometry)?;
        let mut out = Vec::with_capacity(3);
        for s in 1..=3 {
            let (r1, r2) = reflections[s - 1];
            out.push(SaddleInput {
                lambda: geometry.lambda(s)?,
                curvature: geometry.curvature_factor(s)?,
                v: v[s - 1],
                chi: chi[s - 1],
                r1,
                r2,
            });
        }
        let background = 2.0 * C::new(0.0, 1.0) * c0;
        Ok(RayData { geometry, saddles: out.try_into().expect("three saddles"), c0, background, amplitude })
    }

    pub fn saddle(&self, s: usize) -> AsymResult<&SaddleInput> {
        self.saddles
            .get(s.wrapping_sub(1))
            .ok_or_else(|| AsymError::Domain(format!("saddle index {s} must be 1, 2 or 3")))
    }

    /// `Im v(λₛ)` for the three saddles.
    pub fn im_v(&self) -> [f64; 3] {
        [self.saddles[0].v.im, self.saddles[1].v.im, self.saddles[2].v.im]
    }
}

fn check_ray(geometry: &PhaseGeometry) -> AsymResult<()> {
    if !(geometry.mu > 0.0) {
        return Err(AsymError::Domain(format!(
            "ray data are built for μ > 0 (x < 0 uses the ray −μ), got μ = {}",
            geometry.mu
        )));
    }
    geometry.labelled()?;
    Ok(())
}

/// The nine amplitude coefficients on one ray.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HlnCoefficients {
    pub h: [C; 3],
    pub l: [C; 3],
    pub n: [C; 3],
}

/// `z^w = e^{w ln z}` for a positive real base.
fn pw(base: f64, w: C) -> C {
    (w * base.ln()).exp()
}

/// `num · (1/Γ(g))/(√c · r)`, exactly zero when `1/Γ(g)` vanishes.
fn quotient(num: C, g: C, c: f64, r: C) -> AsymResult<C> {
    let rg = recip_gamma(g);
    if rg == C::new(0.0, 0.0) {
        return Ok(rg);
    }
    if r == C::new(0.0, 0.0) {
        return Err(AsymError::Domain(format!("reflection coefficient vanishes while 1/Γ({g}) ≠ 0")));
    }
    Ok(num * rg / (c.sqrt() * r))
}

/// `H₁..H₃`, `L₁..L₃`, `N₁..N₃` on the ray of `ray`:
///
/// * `Lₛ = √(2π)e^{−πvₛ/2}e^{iπ/4}/(√cₛ r₁(λₛ)Γ(−ivₛ))·(c₂/(k c₁c₃))^{ivₛ}` for `s ∈ {1, 3}`,
///   `L₂ = √(2π)e^{−πv̄₂/2}e^{−iπ/4}/(√c₂ r̄₁(λ₂)Γ(iv̄₂))·(1/(k c₃))^{−iv₃}(c₂/c₁)^{−iv₂}`;
/// * `Nₛ = c₀²√(2π)e^{−πvₛ/2}e^{−iπ/4}/(√cₛ r₂(λₛ)Γ(ivₛ)λₛ²)·(c₂/(k c₁c₃))^{−ivₛ}`,
///   `N₂ = c₀²√(2π)e^{−πv̄₂/2}e^{iπ/4}/(√c₂ r̄₂(λ₂)Γ(−iv̄₂)λ₂²)·(1/(k c₃))^{−iv₁}(c₂/c₁)^{iv₂}`;
/// * `Hₛ = √(2π)e^{−πv̄ₛ/2}e^{iπ/4}/(√cₛ r̄₂(λₛ)Γ(−iv̄ₛ))·(c₂/(k c₁c₃))^{iv̄ₛ}`,
///   `H₂ = √(2π)e^{−πv₂/2}e^{−iπ/4}/(√c₂ r₂(λ₂)Γ(iv₂))·(1/(k c₃))^{−iv̄₃}(c₂/c₁)^{−iv̄₂}`.
///
/// `H` is meant for the ray `−μ` of a point with `x < 0`; `k` is `4` or `4t` per `base`.
/// A vanishing exponent gives a zero coefficient (`1/Γ(0) = 0`).
pub fn coefficients_hln(ray: &RayData, base: PowerBase, t: f64) -> AsymResult<HlnCoefficients> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(AsymError::Domain(format!("time t = {t} must be positive")));
    }
    let i = C::new(0.0, 1.0);
    let k = base.k(t);
    let [s1, s2, s3] = &ray.saddles;
    let (c1, c2, c3) = (s1.curvature, s2.curvature, s3.curvature);
    let outer = c2 / (k * c1 * c3);
    let inner3 = 1.0 / (k * c3);
    let ratio21 = c2 / c1;
    let root = (2.0 * PI).sqrt();
    let pre = |v: C| root * (-PI * v / 2.0).exp();
    let up = C::from_polar(1.0, FRAC_PI_4);
    let down = C::from_polar(1.0, -FRAC_PI_4);
    let c0sq = ray.c0 * ray.c0;

    let l_outer = |s: &SaddleInput| -> AsymResult<C> {
        Ok(quotient(pre(s.v) * up, -i * s.v, s.curvature, s.r1)? * pw(outer, i * s.v))
    };
    let n_outer = |s: &SaddleInput| -> AsymResult<C> {
        let q = quotient(c0sq * pre(s.v) * down, i * s.v, s.curvature, s.r2 * s.lambda * s.lambda)?;
        Ok(q * pw(outer, -i * s.v))
    };
    let h_outer = |s: &SaddleInput| -> AsymResult<C> {
        let vb = s.v.conj();
        Ok(quotient(pre(vb) * up, -i * vb, s.curvature, s.r2.conj())? * pw(outer, i * vb))
    };

    let (v1, v2, v3) = (s1.v, s2.v, s3.v);
    let l2 = quotient(pre(v2.conj()) * down, i * v2.conj(), c2, s2.r1.conj())?
        * pw(inner3, -i * v3)
        * pw(ratio21, -i * v2);
    let n2 = quotient(c0sq * pre(v2.conj()) * up, -i * v2.conj(), c2, s2.r2.conj() * s2.lambda * s2.lambda)?
        * pw(inner3, -i * v1)
        * pw(ratio21, i * v2);
    let h2 = quotient(pre(v2) * down, i * v2, c2, s2.r2)? * pw(inner3, -i * v3.conj()) * pw(ratio21, -i * v2.conj());

    Ok(HlnCoefficients {
        h: [h_outer(s1)?, h2, h_outer(s3)?],
        l: [l_outer(s1)?, l2, l_outer(s3)?],
        n: [n_outer(s1)?, n2, n_outer(s3)?],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use lpd_phase::stationary_points;

    fn ray(v: [C; 3]) -> RayData {
        let g = stationary_points(0.2, 0.1).unwrap();
        let refl = [(C::new(0.3, 0.1), C::new(-0.2, 0.4)), (C::new(0.5, -0.2), C::new(0.1, 0.3)), (C::new(-0.4, 0.0), C::new(0.2, -0.1))];
        RayData::synthetic(g, v, [C::new(0.1, 0.2); 3], refl, C::new(0.3, -0.7), 2.0).unwrap()
    }

    #[test]
    fn zero_exponents_give_zero_coefficients() {
        let z = C::new(0.0, 0.0);
        let c = coefficients_hln(&ray([z; 3]), PowerBase::Four, 10.0).unwrap();
        for s in 0..3 {
            assert_eq!(c.h[s], z);
            assert_eq!(c.l[s], z);
            assert_eq!(c.n[s], z);
        }
    }

    #[test]
    fn n_over_l_modulus_at_first_saddle() {
        let v = [C::new(0.2, 0.05), C::new(0.1, -0.03), C::new(0.15, 0.02)];
        let r = ray(v);
        let c = coefficients_hln(&r, PowerBase::Four, 10.0).unwrap();
        let s = r.saddles[0];
        let i = C::new(0.0, 1.0);
        let outer = r.saddles[1].curvature / (4.0 * s.curvature * r.saddles[2].curvature);
        let g_ratio = lpd_numerics_core::complex_gamma(-i * s.v).unwrap() / lpd_numerics_core::complex_gamma(i * s.v).unwrap();
        let expected = r.c0.norm_sqr() / (s.lambda * s.lambda) * (s.r1 / s.r2).norm() * g_ratio.norm()
            * pw(outer, -2.0 * i * s.v).norm();
        let got = (c.n[0] / c.l[0]).norm();
        assert!((got / expected - 1.0).abs() < 1e-12, "{got} vs {expected}");
    }

    #[test]
    fn four_t_base_differs_by_t_power() {
        let v = [C::new(0.2, 0.05), C::new(0.1, -0.03), C::new(0.15, 0.02)];
        let r = ray(v);
        let t = 50.0;
        let a = coefficients_hln(&r, PowerBase::Four, t).unwrap();
        let b = coefficients_hln(&r, PowerBase::FourT, t).unwrap();
        let i = C::new(0.0, 1.0);
        // (c₂/(4t c₁c₃))^{iv₁} = (c₂/(4c₁c₃))^{iv₁}·t^{−iv₁}
        let ratio = b.l[0] / a.l[0];
        assert!((ratio - pw(t, -i * v[0])).norm() < 1e-12);
    }

    #[test]
    fn h_uses_conjugated_exponents() {
        let v = [C::new(0.2, 0.05), C::new(0.1, -0.03), C::new(0.15, 0.02)];
        let r = ray(v);
        let c = coefficients_hln(&r, PowerBase::Four, 1.0).unwrap();
        // H₁ is L₁ with r₁ → r̄₂ and v → v̄
        let mut swapped = r.clone();
        for s in swapped.saddles.iter_mut() {
            s.v = s.v.conj();
            s.r1 = s.r2.conj();
        }
        let d = coefficients_hln(&swapped, PowerBase::Four, 1.0).unwrap();
        assert!((c.h[0] - d.l[0]).norm() < 1e-14 * c.h[0].norm());
        assert!((c.h[2] - d.l[2]).norm() < 1e-14 * c.h[2].norm());
    }

    #[test]
    fn negative_ray_is_rejected() {
        let g = stationary_points(-0.2, 0.1).unwrap();
        let z = C::new(0.0, 0.0);
        assert!(RayData::synthetic(g, [z; 3], [z; 3], [(z, z); 3], z, 1.0).is_err());
    }
}
