//! Jump matrices of the Riemann–Hilbert problem at each deformation stage:
//! the original jump on the real line, the `δ`-conjugated jump, the jumps on the rays
//! through the stationary points, and their regularised form after removing the pole at `iξ₁`.

use crate::delta::DeltaFunction;
use crate::error::{RhError, RhResult};
use crate::residue::regularized_reflections;
use lpd_numerics_core::{Complex64, Mat2, Side};
use lpd_scattering::ScatteringData;
use std::f64::consts::FRAC_PI_4;

type C = Complex64;

/// Relative tolerance for deciding that a point lies on a ray.
pub const RAY_TOL: f64 = 1e-9;
/// Fraction of the admissible height kept between `iξ₁` and the rays.
pub const RAY_SAFETY: f64 = 0.9;

/// Deformation stage of the jump contour.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    /// `J` on `ℝ \ {0}`.
    Original,
    /// `J̃ = δ₋^{σ₃} J δ₊^{−σ₃}` on `ℝ \ {0}`.
    Tilde,
    /// Triangular factors on the rays `Υ` through `λ₁, λ₂, λ₃`.
    Hat,
    /// Ray jumps with `r₁, r₂` replaced by their regularised versions.
    Regular,
}

/// `tθ(ξ) = ξx − ξ²t + 8γξ⁴t`.
pub fn t_theta(xi: C, x: f64, t: f64, gamma: f64) -> C {
    let x2 = xi * xi;
    xi * x + (x2 * (8.0 * gamma) * x2 - x2) * t
}

fn real_point(xi: C) -> RhResult<f64> {
    if xi.im != 0.0 || xi.re == 0.0 || !xi.re.is_finite() {
        return Err(RhError::Domain(format!("ξ = {xi} is not on ℝ \\ {{0}}")));
    }
    Ok(xi.re)
}

/// `J(ξ) = [[1 + r₁r₂, −r₂e^{−2itθ}], [−r₁e^{2itθ}, 1]]` for real `ξ ≠ 0`.
pub fn original_jump(data: &ScatteringData, x: f64, t: f64, gamma: f64, xi: C) -> RhResult<Mat2> {
    real_point(xi)?;
    let (r1, r2) = data.reflection_coefficients(xi)?;
    let e = (C::new(0.0, 2.0) * t_theta(xi, x, t, gamma)).exp();
    Ok(Mat2::new(1.0 + r1 * r2, -r2 / e, -r1 * e, C::new(1.0, 0.0)))
}

/// The two triangular factorisations of `J`:
/// `J = [[1, −r₂e^{−2itθ}],[0,1]]·[[1,0],[−r₁e^{2itθ},1]]` and
/// `J = [[1,0],[−r₁e^{2itθ}/(1+r₁r₂),1]]·(1+r₁r₂)^{σ₃}·[[1,−r₂e^{−2itθ}/(1+r₁r₂)],[0,1]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Factorisations {
    pub upper_lower: [Mat2; 2],
    pub lower_diag_upper: [Mat2; 3],
}

pub fn original_factorisations(data: &ScatteringData, x: f64, t: f64, gamma: f64, xi: C) -> RhResult<Factorisations> {
    real_point(xi)?;
    let (r1, r2) = data.reflection_coefficients(xi)?;
    let e = (C::new(0.0, 2.0) * t_theta(xi, x, t, gamma)).exp();
    let w = 1.0 + r1 * r2;
    Ok(Factorisations {
        upper_lower: [Mat2::upper(-r2 / e), Mat2::lower(-r1 * e)],
        lower_diag_upper: [Mat2::lower(-r1 * e / w), Mat2::diag(w, 1.0 / w), Mat2::upper(-r2 / (e * w))],
    })
}

/// Which ray of the contour a point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RayLocation {
    /// Saddle index `s ∈ {1, 2, 3}` the ray emanates from.
    pub saddle: usize,
    /// Upper (`Im ξ > 0`) or lower half-plane.
    pub upper: bool,
    /// Whether the ray lies over a subinterval of the cut `(−∞, λ₃) ∪ (λ₂, λ₁)`.
    pub over_cut: bool,
}

/// Four rays from each stationary point at angle `α` to the real axis, each inner ray ending
/// above or below the midpoint between neighbouring stationary points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayContour {
    /// `(λ₁, λ₂, λ₃)`.
    pub lambdas: [f64; 3],
    pub alpha: f64,
}

impl RayContour {
    /// Rays at angle `min(π/4, atan(0.9ξ₁/min(−λ₃, λ₂)))`, so that `iξ₁` lies strictly above
    /// the rays spanning `(λ₃, λ₂)`.
    pub fn new(lambdas: [f64; 3], xi1: f64) -> RhResult<Self> {
        let [l1, l2, l3] = lambdas;
        if !(l3 < 0.0 && 0.0 < l2 && l2 < l1) || !(xi1 > 0.0) {
            return Err(RhError::Domain(format!("ray contour needs λ₃ < 0 < λ₂ < λ₁ and ξ₁ > 0, got {lambdas:?}, {xi1}")));
        }
        let alpha = FRAC_PI_4.min((RAY_SAFETY * xi1 / (-l3).min(l2)).atan());
        Ok(RayContour { lambdas, alpha })
    }

    /// Real-part extent of the rays leaving `λₛ` to the right and to the left.
    fn extent(&self, s: usize) -> (f64, f64) {
        let [l1, l2, l3] = self.lambdas;
        match s {
            1 => (0.5 * (l1 + l2), f64::INFINITY),
            2 => (0.5 * (l2 + l3), 0.5 * (l1 + l2)),
            _ => (f64::NEG_INFINITY, 0.5 * (l2 + l3)),
        }
    }

    /// The point `λₛ + ρe^{iφ}` for the ray with direction `φ ∈ {±α, π ∓ α}`.
    pub fn point(&self, s: usize, rightward: bool, upper: bool, rho: f64) -> C {
        let phi = if rightward { self.alpha } else { std::f64::consts::PI - self.alpha };
        let phi = if upper { phi } else { -phi };
        C::new(self.lambdas[s - 1], 0.0) + C::from_polar(rho, phi)
    }

    pub fn locate(&self, xi: C) -> RhResult<RayLocation> {
        let (sa, ca) = self.alpha.sin_cos();
        for s in 1..=3 {
            let w = xi - self.lambdas[s - 1];
            let rho = w.norm();
            if rho == 0.0 || xi.im == 0.0 {
                continue;
            }
            let on_ray = (w.im.abs() - rho * sa).abs() <= RAY_TOL * rho && (w.re.abs() - rho * ca).abs() <= RAY_TOL * rho;
            let (lo, hi) = self.extent(s);
            if on_ray && lo <= xi.re && xi.re <= hi {
                let [l1, l2, l3] = self.lambdas;
                let over_cut = xi.re < l3 || (l2 < xi.re && xi.re < l1);
                return Ok(RayLocation { saddle: s, upper: xi.im > 0.0, over_cut });
            }
        }
        Err(RhError::Domain(format!("ξ = {xi} is not on the ray contour (α = {})", self.alpha)))
    }
}

/// Jump matrix at the given stage. Real points on the cut use the boundary values `δ±`.
pub fn jump_matrix(stage: Stage, x: f64, t: f64, xi: C, delta: &DeltaFunction) -> RhResult<Mat2> {
    let data = delta.data();
    let gamma = delta.geometry().gamma;
    match stage {
        Stage::Original => original_jump(data, x, t, gamma, xi),
        Stage::Tilde => tilde_jump(x, t, xi, delta),
        Stage::Hat | Stage::Regular => {
            let contour = RayContour::new(delta.lambdas(), data.xi1)?;
            let loc = contour.locate(xi)?;
            let (r1, r2) = if stage == Stage::Hat {
                data.reflection_coefficients(xi)?
            } else {
                regularized_reflections(data, xi)?
            };
            let w = data.one_plus_r1r2(xi)?;
            let d2 = delta.eval(xi, None)?.powi(2);
            let e = (C::new(0.0, 2.0) * t_theta(xi, x, t, gamma)).exp();
            Ok(match (loc.upper, loc.over_cut) {
                (true, false) => Mat2::lower(-r1 / d2 * e),
                (true, true) => Mat2::upper(-r2 * d2 / (w * e)),
                (false, false) => Mat2::upper(r2 * d2 / e),
                (false, true) => Mat2::lower(r1 / (d2 * w) * e),
            })
        }
    }
}

fn tilde_jump(x: f64, t: f64, xi: C, delta: &DeltaFunction) -> RhResult<Mat2> {
    let xr = real_point(xi)?;
    let data = delta.data();
    let (r1, r2) = data.reflection_coefficients(xi)?;
    let e = (C::new(0.0, 2.0) * t_theta(xi, x, t, delta.geometry().gamma)).exp();
    if delta.on_cut(xr) {
        let w = 1.0 + r1 * r2;
        let dm = delta.eval(xi, Some(Side::Minus))?;
        let dp = delta.eval(xi, Some(Side::Plus))?;
        Ok(Mat2::lower(-r1 / (dm * dm * w) * e) * Mat2::upper(-r2 * dp * dp / (w * e)))
    } else {
        let d2 = delta.eval(xi, None)?.powi(2);
        Ok(Mat2::upper(-r2 * d2 / e) * Mat2::lower(-r1 / d2 * e))
    }
}
