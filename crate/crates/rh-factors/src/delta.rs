//! The scalar function `δ(ξ)` solving `δ₊ = δ₋(1 + r₁r₂)` on `(−∞, λ₃) ∪ (λ₂, λ₁)`,
//! `δ → 1` at infinity, together with the saddle exponents `v(λₛ)` and the regular parts `χₛ`.

use crate::error::{RhError, RhResult};
use lpd_numerics_core::{cauchy_transform, integrate, Complex64, ContourInterval, Decay, QuadratureSpec, Side};
use lpd_phase::{PhaseGeometry, Regime};
use lpd_scattering::ScatteringData;
use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};
use std::f64::consts::PI;

type C = Complex64;

/// Points closer than this to a stationary point are rejected by the evaluators.
pub const SADDLE_EXCLUSION: f64 = 1e-8;
/// Minimum distance of `arg(1 + r₁r₂)` from `±π` on the integration intervals.
pub const BRANCH_MARGIN: f64 = 0.05;
/// Length of the subtracted segment in the regularisation at the left interval end.
pub const REGULARISATION_LENGTH: f64 = 1.0;
/// Largest radius from which the argument of `1 + r₁r₂` is tracked (reduced to the quadrature
/// truncation point when that is smaller).
pub const WINDING_RADIUS: f64 = 1e3;

/// Default quadrature settings for the Cauchy integrals over the given data: the range is
/// truncated at the data's evaluation radius (if any) and closed with an analytic tail.
pub fn delta_spec(data: &ScatteringData) -> QuadratureSpec {
    let cutoff = data.source.evaluation_radius().map_or(4e3, |r| r.min(4e3));
    QuadratureSpec { abs_tol: 1e-11, rel_tol: 1e-10, max_depth: 40, tail_cutoff: cutoff }
}

/// Exponents at the three stationary points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SaddleExponents {
    /// `v(λₛ) = −(1/2π)ln|1 + r₁r₂(λₛ)| − (i/2π)Δ(λₛ)`, indexed `s − 1`.
    pub v: [C; 3],
    /// `χₛ(λₛ)`.
    pub chi: [C; 3],
    /// Accumulated argument `Δ(λₛ)` of `1 + r₁r₂` from `−∞`.
    pub delta_arg: [f64; 3],
}

/// Evaluator for `δ(ξ, μ)` on a three-point ray with `μ > 0`.
#[derive(Debug, Clone)]
pub struct DeltaFunction {
    data: ScatteringData,
    geometry: PhaseGeometry,
    /// `(λ₁, λ₂, λ₃)`.
    lambdas: [f64; 3],
    log_at: [C; 3],
    delta_arg: [f64; 3],
    v: [C; 3],
    spec: QuadratureSpec,
    /// Memo of `ln(1 + r₁r₂)` at real nodes, shared by clones; quadrature rules revisit the
    /// same nodes for every evaluation point.
    memo: Option<Arc<Mutex<HashMap<u64, C>>>>,
}

/// Collects the first error raised inside a quadrature integrand.
struct Trap(RefCell<Option<RhError>>);

impl Trap {
    fn new() -> Self {
        Trap(RefCell::new(None))
    }

    fn catch(&self, r: RhResult<C>) -> C {
        r.unwrap_or_else(|e| {
            self.0.borrow_mut().get_or_insert(e);
            C::new(f64::NAN, f64::NAN)
        })
    }

    fn check<T>(self, value: RhResult<T>) -> RhResult<T> {
        match self.0.into_inner() {
            Some(e) => Err(e),
            None => value,
        }
    }
}

fn log_with_side(z: C, side: Option<Side>) -> RhResult<C> {
    if z.im == 0.0 && z.re < 0.0 {
        let s = side.ok_or_else(|| RhError::Domain(format!("logarithm on its cut at {z} needs a side")))?;
        let im = if s == Side::Plus { PI } else { -PI };
        return Ok(C::new((-z.re).ln(), im));
    }
    if z == C::new(0.0, 0.0) {
        return Err(RhError::Domain("logarithm of zero".into()));
    }
    Ok(z.ln())
}

impl DeltaFunction {
    pub fn build(data: &ScatteringData, geometry: &PhaseGeometry) -> RhResult<Self> {
        Self::with_spec(data, geometry, delta_spec(data))
    }

    pub fn with_spec(data: &ScatteringData, geometry: &PhaseGeometry, spec: QuadratureSpec) -> RhResult<Self> {
        spec.validate()?;
        if geometry.regime != Regime::ThreeReal || geometry.mu <= 0.0 {
            return Err(RhError::Domain(format!(
                "δ is built on rays with three stationary points and μ > 0 (μ = {}, {:?})",
                geometry.mu, geometry.regime
            )));
        }
        let lambdas = geometry.labelled()?;
        let [l1, l2, l3] = lambdas;
        if !(l3 < 0.0 && 0.0 < l2 && l2 < l1) {
            return Err(RhError::Domain(format!("unexpected stationary-point pattern {lambdas:?}")));
        }
        let mut me = DeltaFunction {
            data: data.clone(),
            geometry: geometry.clone(),
            lambdas,
            log_at: [C::new(0.0, 0.0); 3],
            delta_arg: [0.0; 3],
            v: [C::new(0.0, 0.0); 3],
            spec,
            memo: data.source.evaluation_radius().map(|_| Arc::new(Mutex::new(HashMap::new()))),
        };
        me.delta_arg = me.track_winding()?;
        for s in 0..3 {
            let f = me.log_ratio(lambdas[s])?;
            let modulus = f.re;
            me.log_at[s] = C::new(modulus, me.delta_arg[s]);
            me.v[s] = C::new(-modulus / (2.0 * PI), -me.delta_arg[s] / (2.0 * PI));
        }
        Ok(me)
    }

    /// Continuous argument of `1 + r₁r₂` from `−∞`, checked against the principal branch on
    /// the integration intervals; returns `Δ(λₛ)` for `s = 1, 2, 3`.
    fn track_winding(&self) -> RhResult<[f64; 3]> {
        let [l1, l2, l3] = self.lambdas;
        let mut grid: Vec<f64> = Vec::new();
        let steps = 300;
        let radius = WINDING_RADIUS.min(self.spec.tail_cutoff).max(2.0 * l3.abs());
        let (lo_exp, hi_exp) = (-3.0f64, radius.log10());
        for k in 0..=steps {
            let e = hi_exp - (hi_exp - lo_exp) * (k as f64) / (steps as f64);
            grid.push(-(10f64.powf(e)));
        }
        for k in 0..=steps {
            let e = lo_exp + (l1.log10() - lo_exp) * (k as f64) / (steps as f64);
            grid.push(10f64.powf(e));
        }
        grid.extend([l1, l2, l3]);
        grid.sort_by(|a, b| a.total_cmp(b));
        grid.dedup();
        let mut acc = 0.0;
        let mut prev: Option<f64> = None;
        let mut out = [0.0; 3];
        for &z in &grid {
            let a = self.log_ratio(z)?.im;
            match prev {
                None => {
                    acc = a;
                }
                Some(p) => {
                    let mut d = a - p;
                    while d > PI {
                        d -= 2.0 * PI;
                    }
                    while d <= -PI {
                        d += 2.0 * PI;
                    }
                    if d.abs() > 0.5 * PI {
                        return Err(RhError::Branch(format!(
                            "argument of 1 + r₁r₂ jumps by {d:.3} near ζ = {z}; refine the winding grid"
                        )));
                    }
                    acc += d;
                }
            }
            prev = Some(a);
            if self.on_cut(z) || z == l1 || z == l2 || z == l3 {
                if (acc - a).abs() > 1e-9 || a.abs() > PI - BRANCH_MARGIN {
                    return Err(RhError::Branch(format!(
                        "ln(1 + r₁r₂) leaves the principal sheet at ζ = {z} (continuous argument {acc:.4})"
                    )));
                }
            }
            for (s, &l) in self.lambdas.iter().enumerate() {
                if z == l {
                    out[s] = acc;
                }
            }
        }
        for (s, d) in out.iter().enumerate() {
            if d.abs() >= PI {
                return Err(RhError::Assumption(format!(
                    "Δ(λ{}) = {d} is outside (−π, π), so |Im v| ≥ 1/2",
                    s + 1
                )));
            }
        }
        Ok(out)
    }

    pub fn data(&self) -> &ScatteringData {
        &self.data
    }

    pub fn geometry(&self) -> &PhaseGeometry {
        &self.geometry
    }

    /// `(λ₁, λ₂, λ₃)`.
    pub fn lambdas(&self) -> [f64; 3] {
        self.lambdas
    }

    /// `v(λₛ)`.
    pub fn v(&self, s: usize) -> C {
        self.v[s - 1]
    }

    /// Whether real `x` lies inside `(−∞, λ₃) ∪ (λ₂, λ₁)`.
    pub fn on_cut(&self, x: f64) -> bool {
        let [l1, l2, l3] = self.lambdas;
        x < l3 || (l2 < x && x < l1)
    }

    /// `F(ζ) = ln(1 + r₁(ζ)r₂(ζ))` (principal branch) for real `ζ ≠ 0`.
    pub fn log_ratio(&self, zeta: f64) -> RhResult<C> {
        let Some(memo) = &self.memo else {
            return self.log_ratio_uncached(zeta);
        };
        if let Some(&f) = memo.lock().expect("memo lock").get(&zeta.to_bits()) {
            return Ok(f);
        }
        let f = self.log_ratio_uncached(zeta)?;
        memo.lock().expect("memo lock").insert(zeta.to_bits(), f);
        Ok(f)
    }

    fn log_ratio_uncached(&self, zeta: f64) -> RhResult<C> {
        let w = self.data.one_plus_r1r2(C::new(zeta, 0.0))?;
        if w == C::new(0.0, 0.0) {
            return Err(RhError::Branch(format!("1 + r₁r₂ vanishes at ζ = {zeta}")));
        }
        Ok(w.ln())
    }

    fn check_point(&self, xi: C) -> RhResult<()> {
        if !(xi.re.is_finite() && xi.im.is_finite()) {
            return Err(RhError::Domain(format!("non-finite point {xi}")));
        }
        for (s, &l) in self.lambdas.iter().enumerate() {
            if (xi - l).norm() < SADDLE_EXCLUSION {
                return Err(RhError::Domain(format!("ξ = {xi} is within {SADDLE_EXCLUSION:e} of λ{}", s + 1)));
            }
        }
        Ok(())
    }

    /// `(1/2πi)∫ density(ζ)/(ζ − ξ) dζ` over `(lo, hi)`; a real `ξ` at an endpoint is allowed
    /// when the density vanishes there.
    fn cauchy_piece<D>(&self, density: D, lo: f64, hi: f64, xi: C, side: Option<Side>) -> RhResult<C>
    where
        D: Fn(f64) -> RhResult<C>,
    {
        let trap = Trap::new();
        let rho = |z: f64| trap.catch(density(z));
        let iv = if lo.is_finite() {
            ContourInterval::finite(lo, hi)
        } else {
            ContourInterval::with_decay(lo, hi, Decay::Algebraic(3.0))
        };
        let at_end = xi.im == 0.0 && (xi.re == lo || xi.re == hi);
        let value = if at_end {
            integrate(|z| rho(z) / (z - xi.re), &iv, &self.spec)
                .map(|v| v / C::new(0.0, 2.0 * PI))
                .map_err(RhError::from)
        } else {
            cauchy_transform(&rho, &[iv], xi, side, &self.spec).map_err(RhError::from)
        };
        trap.check(value)
    }

    /// `ln δ(ξ)`; real `ξ` on the cut requires a side.
    pub fn log_eval(&self, xi: C, side: Option<Side>) -> RhResult<C> {
        self.check_point(xi)?;
        let [l1, l2, l3] = self.lambdas;
        let f = |z: f64| self.log_ratio(z);
        Ok(self.cauchy_piece(f, f64::NEG_INFINITY, l3, xi, side)? + self.cauchy_piece(f, l2, l1, xi, side)?)
    }

    /// `δ(ξ)`, or its boundary value `δ±` on the cut.
    pub fn eval(&self, xi: C, side: Option<Side>) -> RhResult<C> {
        Ok(self.log_eval(xi, side)?.exp())
    }

    /// `(1/2πi)[∫_{−∞}^{λ₃−L} F/(ζ−ξ) + ∫_{λ₃−L}^{λ₃} (F − F(λ₃))/(ζ−ξ)] − iv₃ ln(ξ − λ₃ + L)`,
    /// the left-interval contribution with its `λ₃` singularity removed.
    fn left_regular(&self, xi: C, side: Option<Side>) -> RhResult<C> {
        let l3 = self.lambdas[2];
        let split = l3 - REGULARISATION_LENGTH;
        let f3 = self.log_at[2];
        let a = self.cauchy_piece(|z| self.log_ratio(z), f64::NEG_INFINITY, split, xi, side)?;
        let b = self.cauchy_piece(|z| Ok(self.log_ratio(z)? - f3), split, l3, xi, side)?;
        let i = C::new(0.0, 1.0);
        Ok(a + b - i * self.v[2] * log_with_side(xi - split, side)?)
    }

    /// Regular part `χₛ(ξ)` of the representation
    /// `δ = (ξ−λ₁)^{iv₁}((ξ−λ₂)/(ξ−λ₃))^{−iv₁}e^{χ₁}`,
    /// `δ = (ξ−λ₃)^{iv₃}((ξ−λ₂)/(ξ−λ₁))^{−iv₂}e^{χ₂}`,
    /// `δ = (ξ−λ₃)^{iv₃}((ξ−λ₂)/(ξ−λ₁))^{−iv₃}e^{χ₃}`.
    pub fn chi(&self, s: usize, xi: C, side: Option<Side>) -> RhResult<C> {
        if !(1..=3).contains(&s) {
            return Err(RhError::Domain(format!("saddle index {s} must be 1, 2 or 3")));
        }
        let [l1, l2, l3] = self.lambdas;
        let fs = self.log_at[s - 1];
        let middle = self.cauchy_piece(|z| Ok(self.log_ratio(z)? - fs), l2, l1, xi, side)?;
        let i = C::new(0.0, 1.0);
        match s {
            1 => {
                let left = self.cauchy_piece(|z| self.log_ratio(z), f64::NEG_INFINITY, l3, xi, side)?;
                Ok(middle + left - i * self.v[0] * log_with_side(xi - l3, side)?)
            }
            _ => Ok(middle + self.left_regular(xi, side)?),
        }
    }

    /// `δ(ξ)` from the `s`-th product representation (off the real axis or off the cut).
    pub fn product_form(&self, s: usize, xi: C) -> RhResult<C> {
        self.check_point(xi)?;
        if xi.im == 0.0 && self.on_cut(xi.re) {
            return Err(RhError::Domain(format!("product form evaluated on the cut at {xi}")));
        }
        let [l1, l2, l3] = self.lambdas;
        let i = C::new(0.0, 1.0);
        let chi = self.chi(s, xi, None)?;
        let (ln1, ln3) = ((xi - l1).ln(), (xi - l3).ln());
        let exponent = match s {
            1 => i * self.v[0] * (ln1 - ((xi - l2) / (xi - l3)).ln()),
            2 => i * self.v[2] * ln3 - i * self.v[1] * ((xi - l2) / (xi - l1)).ln(),
            3 => i * self.v[2] * (ln3 - ((xi - l2) / (xi - l1)).ln()),
            _ => return Err(RhError::Domain(format!("saddle index {s} must be 1, 2 or 3"))),
        };
        Ok((exponent + chi).exp())
    }

    /// `v(λₛ)`, `χₛ(λₛ)` and `Δ(λₛ)` for all three saddles.
    pub fn exponents(&self) -> RhResult<SaddleExponents> {
        let mut chi = [C::new(0.0, 0.0); 3];
        for s in 1..=3 {
            chi[s - 1] = self.chi(s, C::new(self.lambdas[s - 1], 0.0), None)?;
        }
        Ok(SaddleExponents { v: self.v, chi, delta_arg: self.delta_arg })
    }
}

/// Builds `δ` on the given ray with the default quadrature settings.
pub fn build_delta(data: &ScatteringData, geometry: &PhaseGeometry) -> RhResult<DeltaFunction> {
    DeltaFunction::build(data, geometry)
}

/// `v(λₛ)`, `χₛ(λₛ)` and `Δ(λₛ)` on the given ray.
pub fn saddle_exponents(data: &ScatteringData, geometry: &PhaseGeometry) -> RhResult<SaddleExponents> {
    DeltaFunction::build(data, geometry)?.exponents()
}

#[cfg(test)]
mod tests {
    use super::*;
    use lpd_phase::stationary_points;
    use lpd_scattering::{CaseChoice, PureStep, Reflectionless};
    use std::sync::Arc;

    fn step(a: f64) -> ScatteringData {
        ScatteringData::build(Arc::new(PureStep { amplitude: a }), CaseChoice::Auto, C::new(1.0, 0.0)).unwrap()
    }

    #[test]
    fn reflectionless_delta_is_one() {
        let d = ScatteringData::build(Arc::new(Reflectionless { amplitude: 2.0 }), CaseChoice::Auto, C::new(1.0, 0.0))
            .unwrap();
        let g = stationary_points(0.5, 1.0 / 27.0).unwrap();
        let delta = DeltaFunction::build(&d, &g).unwrap();
        for xi in [C::new(0.3, 0.2), C::new(0.0, 0.0), C::new(-5.0, -1.0)] {
            assert!((delta.eval(xi, None).unwrap() - 1.0).norm() < 1e-14);
        }
        assert!(delta.v(1).norm() < 1e-15);
    }

    #[test]
    fn pure_step_exponent_at_unit_saddle_value() {
        // 1 + r₁r₂ = 4ξ²/(4ξ² + A²) ⇒ v = ln 2 / 2π at ξ = 1, A = 2.
        let gamma = 1.0 / 27.0;
        // choose μ so that λ₁ = 1: θ′(1) = μ − 2 + 32γ = 0
        let mu = 2.0 - 32.0 * gamma;
        let g = stationary_points(mu, gamma).unwrap();
        let delta = DeltaFunction::build(&step(2.0), &g).unwrap();
        assert!((g.lambda(1).unwrap() - 1.0).abs() < 1e-12);
        assert!((delta.v(1) - C::new(2f64.ln() / (2.0 * PI), 0.0)).norm() < 1e-12);
        assert!(delta.v(2).im.abs() < 1e-15 && delta.v(3).im.abs() < 1e-15);
    }

    #[test]
    fn points_near_saddles_are_rejected() {
        let g = stationary_points(0.5, 1.0 / 27.0).unwrap();
        let delta = DeltaFunction::build(&step(1.0), &g).unwrap();
        let l2 = g.lambda(2).unwrap();
        assert!(matches!(delta.eval(C::new(l2 + 1e-9, 0.0), Some(Side::Plus)), Err(RhError::Domain(_))));
    }

    #[test]
    fn negative_speed_is_rejected() {
        let g = stationary_points(-0.5, 1.0 / 27.0).unwrap();
        assert!(matches!(DeltaFunction::build(&step(1.0), &g), Err(RhError::Domain(_))));
    }

    #[test]
    fn cut_points_need_a_side() {
        let g = stationary_points(0.5, 1.0 / 27.0).unwrap();
        let delta = DeltaFunction::build(&step(1.0), &g).unwrap();
        let x = C::new(g.lambda(3).unwrap() - 1.0, 0.0);
        assert!(delta.eval(x, None).is_err());
        assert!(delta.eval(x, Some(Side::Minus)).is_ok());
    }
}
