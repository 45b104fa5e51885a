//! Adaptive Gauss–Kronrod quadrature for complex-valued integrands on real intervals,
//! principal-value integrals and Cauchy transforms with Plemelj boundary values.

use crate::error::{NumError, NumResult};
use num_complex::Complex64;
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

type C = Complex64;

/// Tolerances and limits shared by quadrature and ODE stepping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of bisections applied to any initial sub-interval.
    pub max_depth: u32,
    /// Largest distance from the finite endpoint at which a semi-infinite range is truncated.
    pub tail_cutoff: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { abs_tol: 1e-10, rel_tol: 1e-9, max_depth: 30, tail_cutoff: 1e7 }
    }
}

impl QuadratureSpec {
    pub fn new(abs_tol: f64, rel_tol: f64, max_depth: u32) -> NumResult<Self> {
        let s = QuadratureSpec { abs_tol, rel_tol, max_depth, ..Default::default() };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> NumResult<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(NumError::InvalidArgument("tolerances must be positive".into()));
        }
        if self.max_depth < 1 {
            return Err(NumError::InvalidArgument("max depth must be at least 1".into()));
        }
        if !(self.tail_cutoff > 0.0) {
            return Err(NumError::InvalidArgument("tail cutoff must be positive".into()));
        }
        Ok(())
    }

    fn tolerance(&self, value: C) -> f64 {
        self.abs_tol.max(self.rel_tol * value.norm())
    }
}

/// Decay model used to estimate the truncated tail of a semi-infinite integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// `|f(x)| ~ C |x|^{-p}` with `p > 1`.
    Algebraic(f64),
    /// `|f(x)| ~ C e^{-k|x|}` with `k > 0`.
    Exponential(f64),
}

/// A real integration range; endpoints may be infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourInterval {
    pub lo: f64,
    pub hi: f64,
    /// `true` when integrating from `lo` to `hi`.
    pub forward: bool,
    pub decay: Option<Decay>,
}

impl ContourInterval {
    pub fn finite(lo: f64, hi: f64) -> Self {
        ContourInterval { lo, hi, forward: true, decay: None }
    }

    pub fn with_decay(lo: f64, hi: f64, decay: Decay) -> Self {
        ContourInterval { lo, hi, forward: true, decay: Some(decay) }
    }

    pub fn reversed(mut self) -> Self {
        self.forward = !self.forward;
        self
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains_interior(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }

    pub fn validate(&self) -> NumResult<()> {
        if self.lo.is_nan() || self.hi.is_nan() || !(self.lo < self.hi) {
            return Err(NumError::InvalidArgument(format!(
                "interval endpoints must satisfy lo < hi (got {}, {})",
                self.lo, self.hi
            )));
        }
        if !self.is_finite() {
            match self.decay {
                None => {
                    return Err(NumError::InvalidArgument(
                        "semi-infinite interval requires a decay hint".into(),
                    ))
                }
                Some(Decay::Algebraic(p)) if !(p > 1.0) => {
                    return Err(NumError::InvalidArgument("algebraic decay needs p > 1".into()))
                }
                Some(Decay::Exponential(k)) if !(k > 0.0) => {
                    return Err(NumError::InvalidArgument("exponential decay needs k > 0".into()))
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn sign(&self) -> f64 {
        if self.forward {
            1.0
        } else {
            -1.0
        }
    }
}

/// Integral estimate with its error bound and the number of integrand evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: C,
    pub error: f64,
    pub evaluations: usize,
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

struct Segment {
    a: f64,
    b: f64,
    value: C,
    error: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(Ordering::Equal)
    }
}

/// 15-point Kronrod rule with embedded 7-point Gauss error estimate (QUADPACK scaling).
fn gk15<F: Fn(f64) -> C>(f: &F, a: f64, b: f64) -> (C, f64) {
    let centr = 0.5 * (a + b);
    let hlgth = 0.5 * (b - a);
    let fc = f(centr);
    let mut resg = fc * WG[3];
    let mut resk = fc * WGK[7];
    let mut resabs = fc.norm() * WGK[7];
    let mut fv1 = [C::new(0.0, 0.0); 7];
    let mut fv2 = [C::new(0.0, 0.0); 7];
    for j in 0..7 {
        let dx = hlgth * XGK[j];
        let f1 = f(centr - dx);
        let f2 = f(centr + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        resk += (f1 + f2) * WGK[j];
        resabs += WGK[j] * (f1.norm() + f2.norm());
        if j % 2 == 1 {
            resg += (f1 + f2) * WG[j / 2];
        }
    }
    let reskh = resk * 0.5;
    let mut resasc = WGK[7] * (fc - reskh).norm();
    for j in 0..7 {
        resasc += WGK[j] * ((fv1[j] - reskh).norm() + (fv2[j] - reskh).norm());
    }
    let result = resk * hlgth;
    resabs *= hlgth.abs();
    resasc *= hlgth.abs();
    let mut err = ((resk - resg) * hlgth).norm();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (1.0f64).min((200.0 * err / resasc).powf(1.5));
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    (result, err)
}

const MAX_SEGMENTS: usize = 20_000;

/// Globally adaptive integration over the finite partition defined by `breaks` (ascending).
fn adaptive<F: Fn(f64) -> C>(f: &F, breaks: &[f64], spec: &QuadratureSpec) -> NumResult<Estimate> {
    let mut heap = BinaryHeap::new();
    let mut frozen_value = C::new(0.0, 0.0);
    let mut frozen_error = 0.0;
    let mut evaluations = 0;
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            let (value, error) = gk15(f, w[0], w[1]);
            evaluations += 15;
            heap.push(Segment { a: w[0], b: w[1], value, error, depth: 0 });
        }
    }
    loop {
        let (mut value, mut error) = (frozen_value, frozen_error);
        for s in heap.iter() {
            value += s.value;
            error += s.error;
        }
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(NumError::Domain("integrand produced a non-finite value".into()));
        }
        if error <= spec.tolerance(value) {
            return Ok(Estimate { value, error, evaluations });
        }
        let worst = match heap.pop() {
            Some(s) => s,
            None => return Err(NumError::RefinementFailure { estimate: value, error }),
        };
        let mid = 0.5 * (worst.a + worst.b);
        let splittable = worst.depth < spec.max_depth
            && heap.len() < MAX_SEGMENTS
            && mid > worst.a
            && mid < worst.b;
        if !splittable {
            frozen_value += worst.value;
            frozen_error += worst.error;
            continue;
        }
        let (v1, e1) = gk15(f, worst.a, mid);
        let (v2, e2) = gk15(f, mid, worst.b);
        evaluations += 30;
        heap.push(Segment { a: worst.a, b: mid, value: v1, error: e1, depth: worst.depth + 1 });
        heap.push(Segment { a: mid, b: worst.b, value: v2, error: e2, depth: worst.depth + 1 });
    }
}

/// Locate a truncation radius for `f` on `[a, a + d]` going right (`dir = 1`) or left.
fn truncation_point<F: Fn(f64) -> C>(f: &F, a: f64, dir: f64, spec: &QuadratureSpec) -> f64 {
    let mut d = 1.0f64.max(a.abs());
    loop {
        let x = a + dir * d;
        if d >= spec.tail_cutoff
            || (f(x).norm() < spec.abs_tol && f(a + dir * 0.75 * d).norm() < spec.abs_tol)
        {
            return x;
        }
        d *= 2.0;
    }
}

fn tail_estimate(fx: C, x: f64, decay: Decay) -> C {
    match decay {
        Decay::Algebraic(p) => fx * (x.abs() / (p - 1.0)),
        Decay::Exponential(k) => fx / k,
    }
}

/// Geometric partition between `a` and `b` (either order) refined near `a`.
fn geometric_breaks(a: f64, b: f64) -> Vec<f64> {
    let dir = if b > a { 1.0 } else { -1.0 };
    let mut pts = vec![a];
    let mut d = 1.0;
    while d < (b - a).abs() {
        pts.push(a + dir * d);
        d *= 2.0;
    }
    pts.push(b);
    if dir < 0.0 {
        pts.reverse();
    }
    pts
}

/// Integrate over a semi-infinite or infinite interval with analytic tail correction.
fn integrate_unbounded<F: Fn(f64) -> C>(
    f: &F,
    iv: &ContourInterval,
    spec: &QuadratureSpec,
) -> NumResult<Estimate> {
    let decay = iv.decay.expect("validated");
    let mut total = Estimate { value: C::new(0.0, 0.0), error: 0.0, evaluations: 0 };
    let mut add = |e: Estimate| {
        total.value += e.value;
        total.error += e.error;
        total.evaluations += e.evaluations;
    };
    let (lo, hi) = match (iv.lo.is_finite(), iv.hi.is_finite()) {
        (true, false) => (iv.lo, iv.lo),
        (false, true) => (iv.hi, iv.hi),
        _ => (0.0, 0.0),
    };
    if !iv.hi.is_finite() {
        let x = truncation_point(f, hi, 1.0, spec);
        add(adaptive(f, &geometric_breaks(hi, x), spec)?);
        let t = tail_estimate(f(x), x, decay);
        add(Estimate { value: t, error: t.norm(), evaluations: 1 });
    }
    if !iv.lo.is_finite() {
        let x = truncation_point(f, lo, -1.0, spec);
        add(adaptive(f, &geometric_breaks(lo, x), spec)?);
        let t = tail_estimate(f(x), x, decay);
        add(Estimate { value: t, error: t.norm(), evaluations: 1 });
    }
    Ok(total)
}

/// Integrate with error information.
pub fn integrate_detailed<F: Fn(f64) -> C>(
    f: F,
    iv: &ContourInterval,
    spec: &QuadratureSpec,
) -> NumResult<Estimate> {
    spec.validate()?;
    iv.validate()?;
    let mut est = if iv.is_finite() {
        adaptive(&f, &[iv.lo, iv.hi], spec)?
    } else {
        integrate_unbounded(&f, iv, spec)?
    };
    est.value *= iv.sign();
    Ok(est)
}

/// `∫ f` over the interval.
pub fn integrate<F: Fn(f64) -> C>(f: F, iv: &ContourInterval, spec: &QuadratureSpec) -> NumResult<C> {
    integrate_detailed(f, iv, spec).map(|e| e.value)
}

/// Integrate over an explicit finite partition (useful for integrands with known kinks).
pub fn integrate_breaks<F: Fn(f64) -> C>(f: F, breaks: &[f64], spec: &QuadratureSpec) -> NumResult<C> {
    spec.validate()?;
    if breaks.len() < 2 || breaks.windows(2).any(|w| !(w[0] < w[1])) || breaks.iter().any(|x| !x.is_finite()) {
        return Err(NumError::InvalidArgument("breakpoints must be finite and strictly increasing".into()));
    }
    adaptive(&f, breaks, spec).map(|e| e.value)
}

/// Principal value of `∫ f` where `f` has at most a simple pole at the interior point `c`.
///
/// A symmetric neighbourhood `(c − ε, c + ε)` is folded onto `(0, ε)`, where the pole
/// cancels in `f(c + s) + f(c − s)`; this realises the limit of symmetric excision exactly.
pub fn pv_integrate<F: Fn(f64) -> C>(
    f: F,
    c: f64,
    iv: &ContourInterval,
    spec: &QuadratureSpec,
) -> NumResult<C> {
    spec.validate()?;
    iv.validate()?;
    if !iv.contains_interior(c) {
        return Err(NumError::Domain(format!(
            "principal-value point {c} is not strictly inside ({}, {})",
            iv.lo, iv.hi
        )));
    }
    let left = c - iv.lo;
    let right = iv.hi - c;
    let eps = 0.5 * match (left.is_finite(), right.is_finite()) {
        (true, true) => left.min(right),
        (true, false) => left,
        (false, true) => right,
        (false, false) => 1.0f64.max(c.abs()),
    };
    let part = QuadratureSpec { abs_tol: spec.abs_tol / 3.0, ..*spec };
    let folded = adaptive(&|s: f64| f(c + s) + f(c - s), &[0.0, eps], &part)?.value;
    let lower = ContourInterval { lo: iv.lo, hi: c - eps, forward: true, decay: iv.decay };
    let upper = ContourInterval { lo: c + eps, hi: iv.hi, forward: true, decay: iv.decay };
    let total = folded + integrate(&f, &lower, &part)? + integrate(&f, &upper, &part)?;
    Ok(total * iv.sign())
}

/// Side of the real axis from which a boundary value is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `ξ + i0`
    Plus,
    /// `ξ − i0`
    Minus,
}

/// `(1/2πi) Σ ∫ ρ(ζ)/(ζ − ξ) dζ` over the given intervals.
///
/// For real `ξ` interior to an interval a side flag is required; the boundary value is
/// then `(1/2πi)·PV ± ρ(ξ)/2`.
pub fn cauchy_transform<F: Fn(f64) -> C>(
    density: F,
    intervals: &[ContourInterval],
    xi: C,
    side: Option<Side>,
    spec: &QuadratureSpec,
) -> NumResult<C> {
    let two_pi_i = C::new(0.0, 2.0 * PI);
    let mut total = C::new(0.0, 0.0);
    let mut half_residue = C::new(0.0, 0.0);
    for iv in intervals {
        iv.validate()?;
        let on_real = xi.im == 0.0;
        if on_real && (xi.re == iv.lo || xi.re == iv.hi) {
            return Err(NumError::Ambiguity(xi.re));
        }
        if on_real && iv.contains_interior(xi.re) {
            let s = side.ok_or(NumError::Ambiguity(xi.re))?;
            let x0 = xi.re;
            let pv = pv_integrate(|z| density(z) / (z - x0), x0, iv, spec)?;
            total += pv;
            let rho = density(x0) * iv.sign();
            half_residue += match s {
                Side::Plus => rho * 0.5,
                Side::Minus => -rho * 0.5,
            };
        } else {
            total += integrate(|z| density(z) / (C::new(z, 0.0) - xi), iv, spec)?;
        }
    }
    Ok(total / two_pi_i + half_residue)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn re(x: f64) -> C {
        C::new(x, 0.0)
    }

    #[test]
    fn constant_on_unit_interval() {
        let v = integrate(|_| re(1.0), &ContourInterval::finite(0.0, 1.0), &spec()).unwrap();
        assert!((v - 1.0).norm() < 1e-14);
    }

    #[test]
    fn gaussian_over_the_line() {
        let iv = ContourInterval::with_decay(f64::NEG_INFINITY, f64::INFINITY, Decay::Exponential(1.0));
        let v = integrate(|x| re((-x * x).exp()), &iv, &spec()).unwrap();
        assert!((v - PI.sqrt()).norm() < 1e-9, "{v}");
    }

    #[test]
    fn full_period_oscillation_vanishes() {
        let v = integrate(|x| C::new(0.0, x).exp(), &ContourInterval::finite(0.0, 2.0 * PI), &spec()).unwrap();
        assert!(v.norm() < 1e-12);
    }

    #[test]
    fn algebraic_tail_is_corrected() {
        // ∫_1^∞ x^{-2} dx = 1
        let iv = ContourInterval::with_decay(1.0, f64::INFINITY, Decay::Algebraic(2.0));
        let v = integrate(|x| re(1.0 / (x * x)), &iv, &spec()).unwrap();
        assert!((v - 1.0).norm() < 1e-8, "{v}");
        // ∫_{-∞}^{-2} x^{-4} dx = 1/24
        let iv = ContourInterval::with_decay(f64::NEG_INFINITY, -2.0, Decay::Algebraic(4.0));
        let v = integrate(|x| re(x.powi(-4)), &iv, &spec()).unwrap();
        assert!((v - 1.0 / 24.0).norm() < 1e-10, "{v}");
    }

    #[test]
    fn reversed_orientation_negates() {
        let iv = ContourInterval::finite(0.0, 1.0).reversed();
        let v = integrate(|x| re(x), &iv, &spec()).unwrap();
        assert!((v + 0.5).norm() < 1e-14);
    }

    #[test]
    fn logarithmic_endpoint_singularity() {
        // ∫_0^1 ln x dx = -1
        let v = integrate(|x| re(x.ln()), &ContourInterval::finite(0.0, 1.0), &spec()).unwrap();
        assert!((v + 1.0).norm() < 1e-9, "{v}");
    }

    #[test]
    fn refinement_failure_carries_estimate() {
        let tight = QuadratureSpec { abs_tol: 1e-300, rel_tol: 1e-300, max_depth: 2, ..spec() };
        match integrate(|x| re(x.sqrt()), &ContourInterval::finite(0.0, 1.0), &tight) {
            Err(NumError::RefinementFailure { estimate, .. }) => {
                assert!((estimate - 2.0 / 3.0).norm() < 1e-4)
            }
            other => panic!("expected refinement failure, got {other:?}"),
        }
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(QuadratureSpec::new(0.0, 1e-9, 10).is_err());
        assert!(QuadratureSpec::new(1e-9, 1e-9, 0).is_err());
        let open = ContourInterval::finite(0.0, f64::INFINITY);
        assert!(integrate(|_| re(0.0), &open, &spec()).is_err());
        assert!(integrate(|_| re(0.0), &ContourInterval::finite(1.0, 0.0), &spec()).is_err());
    }

    #[test]
    fn pv_of_odd_kernel_is_zero() {
        let v = pv_integrate(|x| re(1.0 / x), 0.0, &ContourInterval::finite(-1.0, 1.0), &spec()).unwrap();
        assert!(v.norm() < 1e-12);
    }

    #[test]
    fn pv_asymmetric_range() {
        let v = pv_integrate(|x| re(1.0 / x), 0.0, &ContourInterval::finite(-1.0, 2.0), &spec()).unwrap();
        assert!((v - LN_2).norm() < 1e-10, "{v}");
    }

    #[test]
    fn pv_of_even_log_ratio_over_odd_kernel() {
        let a = 2.0;
        let f = |t: f64| re(((t * t + a * a / 4.0) / (t * t + 1.0)).ln() / t);
        let iv = ContourInterval::with_decay(f64::NEG_INFINITY, f64::INFINITY, Decay::Algebraic(3.0));
        let v = pv_integrate(f, 0.0, &iv, &spec()).unwrap();
        assert!(v.norm() < 1e-10, "{v}");
    }

    #[test]
    fn pv_against_closed_form_with_smooth_numerator() {
        // PV ∫_0^3 e^x/(x-1) dx = e·(Ei(2) − Ei(−1)); Ei(2)=4.954234356001890, Ei(−1)=−0.219383934395520
        let exact = std::f64::consts::E * (4.954234356001890 + 0.219383934395520);
        let v = pv_integrate(|x| re(x.exp() / (x - 1.0)), 1.0, &ContourInterval::finite(0.0, 3.0), &spec())
            .unwrap();
        assert!((v.re - exact).abs() < 1e-9, "{v} vs {exact}");
    }

    #[test]
    fn pv_on_boundary_is_domain_error() {
        let r = pv_integrate(|x| re(1.0 / x), 0.0, &ContourInterval::finite(0.0, 1.0), &spec());
        assert!(matches!(r, Err(NumError::Domain(_))));
    }

    #[test]
    fn cauchy_of_zero_density() {
        let iv = [ContourInterval::finite(0.0, 1.0)];
        let v = cauchy_transform(|_| re(0.0), &iv, C::new(0.3, 0.7), None, &spec()).unwrap();
        assert_eq!(v, re(0.0));
    }

    #[test]
    fn cauchy_of_unit_density_off_contour() {
        let iv = [ContourInterval::finite(0.0, 1.0)];
        let v = cauchy_transform(|_| re(1.0), &iv, re(2.0), None, &spec()).unwrap();
        // ∫_0^1 dζ/(ζ − 2) = ln((2 − 1)/2) = −ln 2
        let exact = re(-LN_2) / C::new(0.0, 2.0 * PI);
        assert!((v - exact).norm() < 1e-12, "{v} vs {exact}");
    }

    #[test]
    fn cauchy_on_contour_requires_side() {
        let iv = [ContourInterval::finite(0.0, 1.0)];
        let r = cauchy_transform(|_| re(1.0), &iv, re(0.5), None, &spec());
        assert_eq!(r, Err(NumError::Ambiguity(0.5)));
    }

    #[test]
    fn plemelj_jump_and_mean() {
        // density 1 on (0,1): C±(x) = (1/2πi) ln((1-x)/x) ± 1/2 on the interior.
        let iv = [ContourInterval::finite(0.0, 1.0)];
        let x = 0.3;
        let p = cauchy_transform(|_| re(1.0), &iv, re(x), Some(Side::Plus), &spec()).unwrap();
        let m = cauchy_transform(|_| re(1.0), &iv, re(x), Some(Side::Minus), &spec()).unwrap();
        assert!((p - m - 1.0).norm() < 1e-12);
        let mean = re(((1.0 - x) / x).ln()) / C::new(0.0, 2.0 * PI);
        assert!((0.5 * (p + m) - mean).norm() < 1e-10);
        // approach from above numerically
        let near = cauchy_transform(|_| re(1.0), &iv, C::new(x, 1e-7), None, &spec()).unwrap();
        assert!((near - p).norm() < 1e-6);
    }
}
