//! Parabolic cylinder function `D_a(z)` for complex order and argument.
//!
//! `D_a` solves `y'' = (z²/4 − a − 1/2) y` and is recessive, `D_a(z) ~ z^a e^{−z²/4}`, in
//! `|arg z| < 3π/4`. Evaluation strategy:
//! * `|z| ≤ 2.5`: Maclaurin series of the even/odd solutions seeded with exact `D_a(0)`, `D_a'(0)`;
//! * `|z| ≥ R`: the asymptotic expansion (only used where the exponentially small second
//!   exponential is negligible);
//! * in between, Taylor stepping of the ODE along a ray: inward from `R` where `D_a` is
//!   recessive (`|arg z| ≤ π/4`), outward from the origin where it is dominant;
//! * `|arg z| > π/2` is reduced to `|arg| ≤ π/2` by the connection formula
//!   `D_a(z) = e^{±iπa} D_a(−z) + √(2π)/Γ(−a) · e^{±iπ(a+1)/2} D_{−a−1}(∓iz)`.

use crate::error::{NumError, NumResult};
use crate::gamma::recip_gamma;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

type C = Complex64;

const SERIES_RADIUS: f64 = 2.5;

fn asymptotic_radius(a: C) -> f64 {
    9.0 + a.norm()
}

fn finite(z: C) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// `D_a(0)` and `D_a'(0)`.
fn origin_values(a: C) -> (C, C) {
    let sp = PI.sqrt();
    let d0 = C::new(2.0, 0.0).powc(a / 2.0) * sp * recip_gamma((1.0 - a) / 2.0);
    let d1 = -C::new(2.0, 0.0).powc((a + 1.0) / 2.0) * sp * recip_gamma(-a / 2.0);
    (d0, d1)
}

/// One Taylor step of `y'' = (z²/4 − a − 1/2) y` from `z0` by `dz`.
fn taylor_step(a: C, z0: C, y: C, yp: C, dz: C) -> (C, C) {
    let q0 = z0 * z0 / 4.0 - a - 0.5;
    let q1 = z0 / 2.0;
    let q2 = 0.25;
    let mut cn = y;
    let mut cn1 = yp;
    let mut sum = y + yp * dz;
    let mut dsum = yp;
    let mut pow = dz; // dz^{n+1} for n + 1 = 1
    let (mut cm2, mut cm1) = (C::new(0.0, 0.0), C::new(0.0, 0.0));
    let mut small = 0;
    for n in 0..400usize {
        // c_{n+2} from c_n, c_{n-1}, c_{n-2}
        let next = (q0 * cn + q1 * cm1 + q2 * cm2) / (((n + 2) * (n + 1)) as f64);
        let dpow = pow; // dz^{n+1}
        pow *= dz; // dz^{n+2}
        let term = next * pow;
        let dterm = next * dpow * ((n + 2) as f64);
        sum += term;
        dsum += dterm;
        cm2 = cm1;
        cm1 = cn;
        cn = cn1;
        cn1 = next;
        let scale = sum.norm() + dsum.norm() * dz.norm() + f64::MIN_POSITIVE;
        if term.norm() + dterm.norm() * dz.norm() < 1e-18 * scale {
            small += 1;
            if small >= 3 {
                break;
            }
        } else {
            small = 0;
        }
    }
    (sum, dsum)
}

/// Integrate the Weber equation for `D_a` along the segment `from → to`.
fn march(a: C, from: C, to: C, mut y: C, mut yp: C) -> (C, C) {
    let total = (to - from).norm();
    if total == 0.0 {
        return (y, yp);
    }
    let dir = (to - from) / total;
    let mut s = 0.0;
    while s < total {
        let z0 = from + dir * s;
        let q0 = z0 * z0 / 4.0 - a - 0.5;
        let h = (0.8 / q0.norm().sqrt().max(1.0)).min(total - s);
        let (ny, nyp) = taylor_step(a, z0, y, yp, dir * h);
        y = ny;
        yp = nyp;
        s += h;
        if total - s < 1e-14 * total {
            break;
        }
    }
    (y, yp)
}

/// Leading asymptotic expansion `z^a e^{−z²/4} Σ (−1)^k (a)(a−1)…(a−2k+1)/(k!(2z²)^k)`.
fn asymptotic_recessive(a: C, z: C) -> C {
    let w = 2.0 * z * z;
    let mut term = C::new(1.0, 0.0);
    let mut sum = term;
    let mut prev = f64::INFINITY;
    for k in 1..200usize {
        let kk = k as f64;
        term = -term * (a - (2.0 * kk - 2.0)) * (a - (2.0 * kk - 1.0)) / (kk * w);
        let tn = term.norm();
        if tn > prev {
            break;
        }
        sum += term;
        prev = tn;
        if tn < 1e-18 * sum.norm() {
            break;
        }
    }
    (a * z.ln() - z * z / 4.0).exp() * sum
}

/// `D_a(z)` and `D_a'(z)` for `|arg z| ≤ π/2`.
fn d_right_half(a: C, z: C) -> (C, C) {
    let r = z.norm();
    let big = asymptotic_radius(a);
    if r <= SERIES_RADIUS {
        let (d0, d1) = origin_values(a);
        return march(a, C::new(0.0, 0.0), z, d0, d1);
    }
    if r >= big {
        let d = asymptotic_recessive(a, z);
        let d1 = asymptotic_recessive(a + 1.0, z);
        return (d, z / 2.0 * d - d1);
    }
    if z.arg().abs() <= FRAC_PI_4 {
        let start = z * (big / r);
        let d = asymptotic_recessive(a, start);
        let d1 = asymptotic_recessive(a + 1.0, start);
        march(a, start, z, d, start / 2.0 * d - d1)
    } else {
        let (d0, d1) = origin_values(a);
        march(a, C::new(0.0, 0.0), z, d0, d1)
    }
}

/// `D_a(z)` together with its derivative.
pub fn parabolic_cylinder_d_with_derivative(a: C, z: C) -> NumResult<(C, C)> {
    if !finite(a) || !finite(z) {
        return Err(NumError::InvalidArgument("non-finite order or argument".into()));
    }
    let (d, dp) = if z.arg().abs() <= FRAC_PI_2 {
        d_right_half(a, z)
    } else {
        // upper half-plane: use −z and −iz; lower: −z and +iz
        let upper = z.im >= 0.0;
        let sgn = if upper { 1.0 } else { -1.0 };
        let e1 = (C::new(0.0, sgn * PI) * a).exp();
        let e2 = (C::new(0.0, sgn * FRAC_PI_2) * (a + 1.0)).exp();
        let w = C::new(0.0, -sgn) * z;
        let (f, fp) = d_right_half(a, -z);
        let (g, gp) = d_right_half(-a - 1.0, w);
        let k = (2.0 * PI).sqrt() * recip_gamma(-a) * e2;
        (e1 * f + k * g, -e1 * fp + k * C::new(0.0, -sgn) * gp)
    };
    if !finite(d) || !finite(dp) {
        return Err(NumError::Precision(format!("D_{a}({z}) is not representable")));
    }
    Ok((d, dp))
}

/// `D_a(z)`.
pub fn parabolic_cylinder_d(a: C, z: C) -> NumResult<C> {
    parabolic_cylinder_d_with_derivative(a, z).map(|p| p.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn order_zero_is_a_gaussian() {
        for z in [c(2.0, 0.0), c(1.0, 1.0), c(-3.0, 0.5), c(0.0, -4.0), c(7.0, 7.0)] {
            let d = parabolic_cylinder_d(c(0.0, 0.0), z).unwrap();
            let e = (-z * z / 4.0).exp();
            assert!((d - e).norm() < 1e-12 * e.norm().max(1.0), "z = {z}: {d} vs {e}");
        }
        let d = parabolic_cylinder_d(c(0.0, 0.0), c(2.0, 0.0)).unwrap();
        assert!((d.re - 0.3678794).abs() < 1e-7);
    }

    #[test]
    fn order_minus_one_at_origin() {
        let d = parabolic_cylinder_d(c(-1.0, 0.0), c(0.0, 0.0)).unwrap();
        assert!((d - (PI / 2.0).sqrt()).norm() < 1e-14);
    }

    #[test]
    fn three_term_recurrence() {
        let a = c(0.3, 0.1);
        let z = c(1.5, 0.0);
        let dp = parabolic_cylinder_d(a + 1.0, z).unwrap();
        let d0 = parabolic_cylinder_d(a, z).unwrap();
        let dm = parabolic_cylinder_d(a - 1.0, z).unwrap();
        assert!((dp - z * d0 + a * dm).norm() < 1e-9);
    }

    #[test]
    fn derivative_matches_recurrence() {
        let a = c(-0.2, 0.35);
        for z in [c(0.7, 0.2), c(4.0, -1.0), c(-5.0, 3.0), c(0.5, 10.0)] {
            let (d, dp) = parabolic_cylinder_d_with_derivative(a, z).unwrap();
            let d1 = parabolic_cylinder_d(a + 1.0, z).unwrap();
            let want = z / 2.0 * d - d1;
            assert!((dp - want).norm() < 1e-9 * want.norm().max(1.0), "z = {z}");
        }
    }

    #[test]
    fn non_finite_input_is_rejected() {
        assert!(parabolic_cylinder_d(c(f64::NAN, 0.0), c(1.0, 0.0)).is_err());
    }
}
