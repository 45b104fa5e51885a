//! Stationary points of `θ(·, μ)`, their labelling and the sign of `Re(iθ)`.

use crate::error::{PhaseError, PhaseResult};
use crate::theta::phase_theta;
use lpd_numerics_core::{cubic_real_roots, Complex64};
use serde::Serialize;

type C = Complex64;

/// `|27γμ² − 1| ≤ DEGENERACY_TOL` is treated as the double-root boundary.
pub const DEGENERACY_TOL: f64 = 1e-10;
/// Default exclusion band around `μ = 0` and `|μ| = 1/√(27γ)` for asymptotic work.
pub const EDGE_GUARD: f64 = 1e-3;
/// Half-width of the band in which `Re(iθ)` is reported as zero, relative to `1 + |θ|`.
pub const SIGN_BAND: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Regime {
    OneReal,
    DoubleRoot,
    ThreeReal,
}

/// Stationary-point geometry of the phase on the ray `x = μt`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseGeometry {
    pub mu: f64,
    pub gamma: f64,
    pub regime: Regime,
    /// Real stationary points in ascending order (double root listed twice).
    pub points: Vec<f64>,
    /// `θ″(λ)/2 = 48γλ² − 1` for each entry of `points`.
    pub curvatures: Vec<f64>,
    /// `(λ₁, λ₂, λ₃)` in the three-point regime: `λ₃` is the root whose sign differs from
    /// the other two, `λ₂` the smaller-magnitude of the remaining pair.
    labels: Option<[f64; 3]>,
}

/// `1/√(27γ)`, the ray speed at which two stationary points merge.
pub fn critical_speed(gamma: f64) -> f64 {
    1.0 / (27.0 * gamma).sqrt()
}

/// Solve `θ′(ξ) = μ − 2ξ + 32γξ³ = 0` and classify the regime.
pub fn stationary_points(mu: f64, gamma: f64) -> PhaseResult<PhaseGeometry> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(PhaseError::InvalidParameter(format!("γ must be positive and finite, got {gamma}")));
    }
    if !mu.is_finite() {
        return Err(PhaseError::InvalidParameter(format!("μ must be finite, got {mu}")));
    }
    let excess = 27.0 * gamma * mu * mu - 1.0;
    let (regime, points) = if excess.abs() <= DEGENERACY_TOL {
        let (d, s) = (0.75 * mu, -1.5 * mu);
        let mut pts = vec![d, d, s];
        pts.sort_by(|a, b| a.total_cmp(b));
        (Regime::DoubleRoot, pts)
    } else {
        let roots = cubic_real_roots(32.0 * gamma, -2.0, mu)?;
        match (excess < 0.0, roots.len()) {
            (true, 3) => (Regime::ThreeReal, roots),
            (false, 1) => (Regime::OneReal, roots),
            (_, n) => {
                return Err(PhaseError::Regime(format!(
                    "root solver returned {n} real roots for 27γμ² − 1 = {excess:e}"
                )))
            }
        }
    };
    let curvatures = points.iter().map(|l| 48.0 * gamma * l * l - 1.0).collect();
    let labels = match regime {
        Regime::ThreeReal if mu >= 0.0 => Some([points[2], points[1], points[0]]),
        Regime::ThreeReal => Some([points[0], points[1], points[2]]),
        _ => None,
    };
    Ok(PhaseGeometry { mu, gamma, regime, points, curvatures, labels })
}

impl PhaseGeometry {
    /// Three-point geometry restricted to `guard < |μ| < 1/√(27γ) − guard`.
    pub fn admissible(mu: f64, gamma: f64, guard: f64) -> PhaseResult<Self> {
        let g = stationary_points(mu, gamma)?;
        let mc = critical_speed(gamma);
        if g.regime != Regime::ThreeReal || mu.abs() < guard || mu.abs() > mc - guard {
            return Err(PhaseError::Regime(format!(
                "μ = {mu} outside the admissible band {guard} < |μ| < {}",
                mc - guard
            )));
        }
        Ok(g)
    }

    /// `(λ₁, λ₂, λ₃)` (three-point regime only).
    pub fn labelled(&self) -> PhaseResult<[f64; 3]> {
        self.labels
            .ok_or_else(|| PhaseError::Regime(format!("no three stationary points in regime {:?}", self.regime)))
    }

    /// `λₛ` for `s ∈ {1, 2, 3}`.
    pub fn lambda(&self, s: usize) -> PhaseResult<f64> {
        if !(1..=3).contains(&s) {
            return Err(PhaseError::InvalidParameter(format!("saddle index {s} must be 1, 2 or 3")));
        }
        Ok(self.labelled()?[s - 1])
    }

    /// Positive curvature factor at `λₛ`: `48γλₛ² − 1` for `s ∈ {1, 3}`, `1 − 48γλ₂²` for `s = 2`.
    pub fn curvature_factor(&self, s: usize) -> PhaseResult<f64> {
        let l = self.lambda(s)?;
        let c = 48.0 * self.gamma * l * l - 1.0;
        let c = if s == 2 { -c } else { c };
        if c > 0.0 {
            Ok(c)
        } else {
            Err(PhaseError::Regime(format!("curvature factor at λ{s} = {l} is not positive ({c})")))
        }
    }

    /// Orientation sign `σₛ` of the local quadratic phase: `+1` at `λ₁, λ₃`, `−1` at `λ₂`.
    pub fn sigma(s: usize) -> f64 {
        if s == 2 {
            -1.0
        } else {
            1.0
        }
    }

    /// `θ(ξ)` on this ray.
    pub fn theta(&self, xi: C) -> C {
        phase_theta(xi, self.mu, self.gamma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
    Zero,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Zero => '0',
        }
    }
}

/// Sign of `Re(iθ(ξ, μ)) = −Im θ(ξ, μ)`, zero inside a relative band of [`SIGN_BAND`].
pub fn sign_of_re_phi(xi: C, geometry: &PhaseGeometry) -> Sign {
    let th = geometry.theta(xi);
    let re_phi = -th.im;
    if re_phi.abs() <= SIGN_BAND * (1.0 + th.norm()) {
        Sign::Zero
    } else if re_phi > 0.0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// A named sample point in one of the sectors around the stationary points.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorProbe {
    pub label: &'static str,
    pub xi: C,
}

/// Eight probe points in the sectors around the outer saddles (three-point regime):
/// above/below the left saddle, beyond it on either side of the axis, beyond the right
/// saddle on either side of the axis, and above/below the right saddle. Offsets scale with
/// the saddle spread `(λ_max − λ_min)/2`.
pub fn sector_probes(geometry: &PhaseGeometry) -> PhaseResult<Vec<SectorProbe>> {
    geometry.labelled()?;
    let lo = geometry.points[0];
    let hi = geometry.points[2];
    let s = 0.5 * (hi - lo);
    let p = |label, x: f64, y: f64| SectorProbe { label, xi: C::new(x, y * s) };
    Ok(vec![
        p("above-left-saddle", lo, 1.5),
        p("below-left-saddle", lo, -1.5),
        p("beyond-left-upper", lo - s, 0.5),
        p("beyond-right-upper", hi + 1.2 * s, 0.5),
        p("beyond-left-lower", lo - s, -0.5),
        p("beyond-right-lower", hi + 1.2 * s, -0.5),
        p("above-right-saddle", hi, 1.5),
        p("below-right-saddle", hi, -1.5),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theta::phase_theta_derivatives;

    #[test]
    fn symmetric_closed_form_at_zero_speed() {
        let g = stationary_points(0.0, 1.0 / 27.0).unwrap();
        assert_eq!(g.regime, Regime::ThreeReal);
        let r = 3.0 * 3f64.sqrt() / 4.0;
        let [l1, l2, l3] = g.labelled().unwrap();
        assert!((l1 - r).abs() < 1e-12 && l2.abs() < 1e-12 && (l3 + r).abs() < 1e-12);
    }

    #[test]
    fn double_root_at_critical_speed() {
        let gamma = 0.02;
        let mu = critical_speed(gamma);
        let g = stationary_points(mu, gamma).unwrap();
        assert_eq!(g.regime, Regime::DoubleRoot);
        assert!((g.points[1] - 0.75 * mu).abs() < 1e-8);
        assert!((g.points[2] - 0.75 * mu).abs() < 1e-8);
        assert!((g.points[0] + 1.5 * mu).abs() < 1e-8);
        assert!(g.labelled().is_err());
    }

    #[test]
    fn one_real_root_beyond_critical_speed() {
        let g = stationary_points(2.0, 1.0 / 27.0).unwrap();
        assert_eq!(g.regime, Regime::OneReal);
        assert_eq!(g.points.len(), 1);
        assert!(phase_theta_derivatives(C::new(g.points[0], 0.0), 2.0, 1.0 / 27.0).d1.norm() < 1e-12);
    }

    #[test]
    fn sign_pattern_of_positive_and_negative_speeds() {
        let g = stationary_points(0.5, 1.0 / 27.0).unwrap();
        let [l1, l2, l3] = g.labelled().unwrap();
        assert!(l1 > l2 && l2 > 0.0 && l3 < 0.0);
        assert!(g.curvature_factor(1).is_ok() && g.curvature_factor(2).is_ok() && g.curvature_factor(3).is_ok());
        let m = stationary_points(-0.5, 1.0 / 27.0).unwrap();
        let [m1, m2, m3] = m.labelled().unwrap();
        assert!(m1 < m2 && m2 < 0.0 && m3 > 0.0);
        assert!((m1 + l1).abs() < 1e-14 && (m2 + l2).abs() < 1e-14 && (m3 + l3).abs() < 1e-14);
    }

    #[test]
    fn guard_band_is_enforced() {
        let gamma = 1.0 / 27.0;
        assert!(PhaseGeometry::admissible(0.0005, gamma, EDGE_GUARD).is_err());
        assert!(PhaseGeometry::admissible(0.9995, gamma, EDGE_GUARD).is_err());
        assert!(PhaseGeometry::admissible(0.5, gamma, EDGE_GUARD).is_ok());
    }

    #[test]
    fn real_axis_is_the_zero_level() {
        let g = stationary_points(0.5, 1.0 / 27.0).unwrap();
        assert_eq!(sign_of_re_phi(C::new(0.37, 0.0), &g), Sign::Zero);
        let z = C::new(0.8, 0.6);
        assert_eq!(sign_of_re_phi(z, &g), match sign_of_re_phi(z.conj(), &g) {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
            Sign::Zero => Sign::Zero,
        });
    }

    #[test]
    fn sign_just_above_the_outer_right_saddle_is_positive() {
        let g = stationary_points(0.5, 1.0 / 27.0).unwrap();
        let l1 = g.lambda(1).unwrap();
        assert_eq!(sign_of_re_phi(C::new(l1, 1e-2), &g), Sign::Plus);
    }
}
