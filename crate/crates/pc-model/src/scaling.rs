//! The affine scaling `ξ = λₛ + τ/√(4t cₛ)` around each stationary point and the local phase
//! `φₛ` left over after extracting the quadratic part of `tθ`.

use crate::error::{PcError, PcResult};
use lpd_numerics_core::Complex64;
use lpd_phase::PhaseGeometry;
use serde::{Deserialize, Serialize};

type C = Complex64;

/// How the local phase `φₛ(τ)` is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum PhiMode {
    /// The closed-form polynomials exactly as stated alongside the conjugators.
    PaperFaithful,
    /// `itθ(ξ(τ)) − σₛiτ²/4`, the exact remainder of the quartic phase.
    #[default]
    TaylorConsistent,
}

fn check_t(t: f64) -> PcResult<()> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(PcError::Domain(format!("time t = {t} must be positive")));
    }
    Ok(())
}

/// `√(4t cₛ)` with the positive curvature factor `cₛ`.
pub fn scale_factor(s: usize, geometry: &PhaseGeometry, t: f64) -> PcResult<f64> {
    check_t(t)?;
    let c = geometry.curvature_factor(s).map_err(|e| PcError::Regime(e.to_string()))?;
    Ok((4.0 * t * c).sqrt())
}

/// `ξ(τ) = λₛ + τ/√(4t cₛ)`.
pub fn scaling_map(s: usize, geometry: &PhaseGeometry, t: f64, tau: C) -> PcResult<C> {
    let k = scale_factor(s, geometry, t)?;
    Ok(geometry.lambda(s)? + tau / k)
}

/// `τ(ξ) = √(4t cₛ)(ξ − λₛ)`.
pub fn inverse_scaling_map(s: usize, geometry: &PhaseGeometry, t: f64, xi: C) -> PcResult<C> {
    let k = scale_factor(s, geometry, t)?;
    Ok((xi - geometry.lambda(s)?) * k)
}

/// `φₛ(τ)` in the requested mode.
///
/// In `TaylorConsistent` mode the quartic phase expands exactly (no linear term at a
/// stationary point) as `itθ(λₛ) + σₛiτ²/4 + 4iγλₛτ³/√(tcₛ³) + iγτ⁴/(2tcₛ²)`, so
/// `φₛ = itθ(λₛ) + 4iγλₛτ³/√(tcₛ³) + iγτ⁴/(2tcₛ²)` and `e^{2itθ(ξ(τ))} = e^{2φₛ}e^{σₛiτ²/2}`.
pub fn local_phase_phi(s: usize, geometry: &PhaseGeometry, t: f64, tau: C, mode: PhiMode) -> PcResult<C> {
    check_t(t)?;
    let c = geometry.curvature_factor(s).map_err(|e| PcError::Regime(e.to_string()))?;
    let l = geometry.lambda(s)?;
    let g = geometry.gamma;
    let i = C::new(0.0, 1.0);
    let (t2, t3, t4) = (tau * tau, tau * tau * tau, tau * tau * tau * tau);
    let cubic = 4.0 * g * l / (t * c * c * c).sqrt();
    let quartic = g / (2.0 * t * c * c);
    Ok(match mode {
        PhiMode::TaylorConsistent => {
            let theta0 = geometry.theta(C::new(l, 0.0));
            i * t * theta0 + i * cubic * t3 + i * quartic * t4
        }
        PhiMode::PaperFaithful => {
            -i * quartic * t4 - i * cubic * t3 + i * t2 / (4.0 * t * c)
                - i * (16.0 * g * l * l - t) * l * tau / (t * c).sqrt()
                - 4.0 * g * l.powi(4)
                + 0.5 * l * l
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use lpd_phase::stationary_points;

    #[test]
    fn scaling_is_affine_and_invertible() {
        let g = stationary_points(0.5, 1.0 / 27.0).unwrap();
        for s in 1..=3 {
            let l = g.lambda(s).unwrap();
            assert_eq!(scaling_map(s, &g, 100.0, C::new(0.0, 0.0)).unwrap(), C::new(l, 0.0));
            let tau = C::new(0.3, -1.1);
            let a = scaling_map(s, &g, 100.0, tau).unwrap() - l;
            let b = scaling_map(s, &g, 100.0, 2.0 * tau).unwrap() - l;
            assert!((b - 2.0 * a).norm() < 1e-15);
            let back = inverse_scaling_map(s, &g, 100.0, a + l).unwrap();
            assert!((back - tau).norm() < 1e-12);
        }
        assert!(scaling_map(1, &g, 0.0, C::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn unit_scaling_example() {
        let gamma = 1.0 / 27.0;
        let g = stationary_points(0.5, gamma).unwrap();
        let l1 = g.lambda(1).unwrap();
        let expected = l1 + 1.0 / (400.0 * (48.0 * l1 * l1 / 27.0 - 1.0)).sqrt();
        assert!((scaling_map(1, &g, 100.0, C::new(1.0, 0.0)).unwrap().re - expected).abs() < 1e-14);
    }

    #[test]
    fn taylor_phase_at_origin_is_saddle_value() {
        let g = stationary_points(0.4, 0.03).unwrap();
        let t = 7.0;
        for s in 1..=3 {
            let l = g.lambda(s).unwrap();
            let phi = local_phase_phi(s, &g, t, C::new(0.0, 0.0), PhiMode::TaylorConsistent).unwrap();
            assert!((phi - C::new(0.0, t) * g.theta(C::new(l, 0.0))).norm() < 1e-14);
        }
    }
}
