//! Jost solutions at the origin by ODE integration of the x-part of the Lax pair,
//! `φ' = (−iξσ₃ + Q(x))φ` with `Q = [[0, q(x)], [−conj q(−x), 0]]`, seeded with the exact
//! solution `L±(ξ)e^{−iξσ₃x}` just outside the perturbation support.

use crate::error::{ScatError, ScatResult};
use crate::profile::InitialProfile;
use lpd_numerics_core::{ode_integrate_vec, Complex64, Mat2, QuadratureSpec};

type C = Complex64;

/// Distance beyond the support at which the asymptotic solution is seeded.
pub const SEED_MARGIN: f64 = 1.0;

/// Tolerances for the Jost ODE.
pub fn jost_spec() -> QuadratureSpec {
    QuadratureSpec { abs_tol: 1e-14, rel_tol: 1e-13, ..Default::default() }
}

/// Which Jost solution: normalised at `x → −∞` or `x → +∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JostSide {
    Minus,
    Plus,
}

/// `L₊(ξ) = [[1, A/(2iξ)], [0, 1]]`, `L₋(ξ) = [[1, 0], [A/(2iξ), 1]]`.
pub fn l_matrix(side: JostSide, amplitude: f64, xi: C) -> Mat2 {
    let k = C::new(amplitude, 0.0) / (C::new(0.0, 2.0) * xi);
    match side {
        JostSide::Plus => Mat2::upper(k),
        JostSide::Minus => Mat2::lower(k),
    }
}

fn seed_point(profile: &InitialProfile, side: JostSide) -> f64 {
    let x = profile.support + SEED_MARGIN;
    match side {
        JostSide::Minus => -x,
        JostSide::Plus => x,
    }
}

/// `Q(x)` evaluated as a limit from inside `[lo, hi]`, with the nonlocal reduction.
fn potential(profile: &InitialProfile, x: f64, lo: f64, hi: f64) -> (C, C) {
    let eps = 1e-12 * (hi - lo);
    let x = x.clamp(lo + eps, hi - eps);
    let q = profile.q0(x);
    let r = -profile.q0(-x).conj();
    (q, r)
}

/// Integrate `columns` (each a 2-vector) from the seed point to `x_end` piecewise
/// between the profile's breakpoints.
fn propagate(profile: &InitialProfile, xi: C, y0: Vec<C>, x0: f64, x_end: f64) -> ScatResult<Vec<C>> {
    let mut pts: Vec<f64> = profile
        .breakpoints()
        .into_iter()
        .filter(|&p| (p - x0) * (x_end - p) > 0.0)
        .collect();
    if x_end < x0 {
        pts.reverse();
    }
    let mut nodes = vec![x0];
    nodes.extend(pts);
    nodes.push(x_end);
    let spec = jost_spec();
    let mix = C::new(0.0, -1.0) * xi;
    let mut y = y0;
    for w in nodes.windows(2) {
        let (lo, hi) = (w[0].min(w[1]), w[0].max(w[1]));
        y = ode_integrate_vec(
            |x, v| {
                let (q, r) = potential(profile, x, lo, hi);
                let mut out = Vec::with_capacity(v.len());
                for col in v.chunks(2) {
                    out.push(mix * col[0] + q * col[1]);
                    out.push(r * col[0] - mix * col[1]);
                }
                out
            },
            &y,
            w[0],
            w[1],
            &spec,
        )?;
    }
    Ok(y)
}

fn check_xi(xi: C) -> ScatResult<()> {
    if xi == C::new(0.0, 0.0) {
        return Err(ScatError::SingularNormalization);
    }
    if !(xi.re.is_finite() && xi.im.is_finite()) {
        return Err(ScatError::Domain(format!("non-finite spectral parameter {xi}")));
    }
    Ok(())
}

/// Full Jost matrix `φ±(0, 0, ξ)` for any nonzero complex `ξ`. For a compactly supported
/// perturbation both columns are entire in `ξ ≠ 0`, but only the analytic column of each
/// half-plane is numerically well conditioned; prefer [`jost_column`] off the real axis.
pub fn jost_matrix(profile: &InitialProfile, side: JostSide, xi: C) -> ScatResult<Mat2> {
    check_xi(xi)?;
    let x0 = seed_point(profile, side);
    let seed = l_matrix(side, profile.amplitude, xi) * Mat2::exp_sigma3(C::new(0.0, -1.0) * xi * x0);
    let c0 = seed.col(0);
    let c1 = seed.col(1);
    let y = propagate(profile, xi, vec![c0[0], c0[1], c1[0], c1[1]], x0, 0.0)?;
    Ok(Mat2::from_cols([y[0], y[1]], [y[2], y[3]]))
}

/// `(φ₋(0,0,ξ), φ₊(0,0,ξ))` for real nonzero `ξ`.
pub fn jost_at_origin(profile: &InitialProfile, xi: C) -> ScatResult<(Mat2, Mat2)> {
    check_xi(xi)?;
    if xi.im != 0.0 {
        return Err(ScatError::Domain(format!(
            "both Jost columns are only jointly defined on the real axis (ξ = {xi}); use jost_column"
        )));
    }
    Ok((jost_matrix(profile, JostSide::Minus, xi)?, jost_matrix(profile, JostSide::Plus, xi)?))
}

/// Column `col ∈ {1, 2}` of `φ±(0,0,ξ)`, restricted to its half-plane of analyticity:
/// `φ₋⁽¹⁾, φ₊⁽²⁾` in `Im ξ ≥ 0`; `φ₊⁽¹⁾, φ₋⁽²⁾` in `Im ξ ≤ 0`.
pub fn jost_column(profile: &InitialProfile, side: JostSide, col: usize, xi: C) -> ScatResult<[C; 2]> {
    check_xi(xi)?;
    let upper = matches!((side, col), (JostSide::Minus, 1) | (JostSide::Plus, 2));
    if !(col == 1 || col == 2) {
        return Err(ScatError::Domain(format!("column index {col} must be 1 or 2")));
    }
    if (upper && xi.im < 0.0) || (!upper && xi.im > 0.0) {
        return Err(ScatError::Domain(format!(
            "column {col} of φ{} is not analytic at ξ = {xi}",
            if side == JostSide::Minus { "₋" } else { "₊" }
        )));
    }
    let x0 = seed_point(profile, side);
    let seed = l_matrix(side, profile.amplitude, xi) * Mat2::exp_sigma3(C::new(0.0, -1.0) * xi * x0);
    let c = seed.col(col - 1);
    let y = propagate(profile, xi, vec![c[0], c[1]], x0, 0.0)?;
    Ok([y[0], y[1]])
}

/// `S(ξ) = φ₊(0,0,ξ)⁻¹ φ₋(0,0,ξ)` for real nonzero `ξ`.
pub fn scattering_matrix(profile: &InitialProfile, xi: C) -> ScatResult<Mat2> {
    let (minus, plus) = jost_at_origin(profile, xi)?;
    Ok(plus.inv()? * minus)
}

/// Auxiliary functions `(f1, f2)(x)` at `t = 0`: the `ξ → 0` residue of `φ₋⁽¹⁾`, i.e. the
/// solution of `f' = Q(x) f` with `f = (0, A/(2i))` below the support.
pub fn auxiliary_f(profile: &InitialProfile, x: f64) -> ScatResult<(C, C)> {
    if !x.is_finite() {
        return Err(ScatError::Domain("x must be finite".into()));
    }
    let x0 = -(profile.support + SEED_MARGIN);
    let seed = vec![C::new(0.0, 0.0), C::new(profile.amplitude, 0.0) / C::new(0.0, 2.0)];
    if x <= x0 {
        return Ok((seed[0], seed[1]));
    }
    let y = propagate(profile, C::new(0.0, 0.0), seed, x0, x)?;
    Ok((y[0], y[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::Perturbation;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn zero_potential_gives_identity() {
        let p = InitialProfile::pure_step(0.0, 0.1);
        let (m, pl) = jost_at_origin(&p, c(0.7, 0.0)).unwrap();
        assert!((m - Mat2::identity()).max_abs() < 1e-12);
        assert!((pl - Mat2::identity()).max_abs() < 1e-12);
    }

    #[test]
    fn pure_step_minus_solution_is_l_minus() {
        let p = InitialProfile::pure_step(2.0, 0.1);
        let xi = c(-1.3, 0.0);
        let (m, pl) = jost_at_origin(&p, xi).unwrap();
        assert!((m - l_matrix(JostSide::Minus, 2.0, xi)).max_abs() < 1e-11);
        assert!((pl - l_matrix(JostSide::Plus, 2.0, xi)).max_abs() < 1e-11);
    }

    #[test]
    fn zero_spectral_parameter_is_singular() {
        let p = InitialProfile::pure_step(1.0, 0.1);
        assert_eq!(jost_at_origin(&p, c(0.0, 0.0)).unwrap_err(), ScatError::SingularNormalization);
    }

    #[test]
    fn columns_outside_their_half_plane_are_rejected() {
        let p = InitialProfile::pure_step(1.0, 0.1);
        assert!(matches!(jost_column(&p, JostSide::Minus, 1, c(0.5, -0.5)), Err(ScatError::Domain(_))));
        assert!(matches!(jost_column(&p, JostSide::Plus, 1, c(0.5, 0.5)), Err(ScatError::Domain(_))));
        assert!(jost_column(&p, JostSide::Plus, 2, c(0.5, 0.5)).is_ok());
        assert!(matches!(jost_at_origin(&p, c(0.5, 0.5)), Err(ScatError::Domain(_))));
    }

    #[test]
    fn determinant_is_one_with_perturbation() {
        let p = InitialProfile::new(
            1.5,
            0.1,
            Perturbation::GaussianBump { amplitude: c(0.3, -0.2), center: 0.4, width: 0.6 },
            2.5,
        )
        .unwrap();
        for xi in [-3.0, -0.4, 0.2, 1.7] {
            let (m, pl) = jost_at_origin(&p, c(xi, 0.0)).unwrap();
            assert!((m.det() - 1.0).norm() < 1e-10);
            assert!((pl.det() - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn auxiliary_f_below_support_is_seed() {
        let p = InitialProfile::pure_step(2.0, 0.1);
        let (f1, f2) = auxiliary_f(&p, -5.0).unwrap();
        assert_eq!(f1, c(0.0, 0.0));
        assert_eq!(f2, c(0.0, -1.0));
        let (f1, f2) = auxiliary_f(&p, 0.0).unwrap();
        assert!(f1.norm() < 1e-14 && (f2 - c(0.0, -1.0)).norm() < 1e-14);
    }
}
