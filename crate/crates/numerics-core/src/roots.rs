//! Real roots of depressed cubics `c3·x³ + c1·x + c0`.

use crate::error::{NumError, NumResult};
use std::f64::consts::PI;

/// Relative discriminant below which two roots are reported as one double root.
pub const DOUBLE_ROOT_TOL: f64 = 1e-12;

fn newton_polish(c3: f64, c1: f64, c0: f64, mut x: f64) -> f64 {
    for _ in 0..3 {
        let p = (c3 * x * x + c1) * x + c0;
        let dp = 3.0 * c3 * x * x + c1;
        if dp == 0.0 {
            break;
        }
        let step = p / dp;
        if !step.is_finite() || step.abs() > 1e-6 * (1.0 + x.abs()) {
            break;
        }
        x -= step;
    }
    x
}

/// All real roots in ascending order; a double root appears twice.
pub fn cubic_real_roots(c3: f64, c1: f64, c0: f64) -> NumResult<Vec<f64>> {
    if c3 == 0.0 || !c3.is_finite() || !c1.is_finite() || !c0.is_finite() {
        return Err(NumError::InvalidArgument("cubic needs finite coefficients and c3 ≠ 0".into()));
    }
    let p = c1 / c3;
    let q = c0 / c3;
    let hq = q / 2.0;
    let tp = p / 3.0;
    let d = hq * hq + tp * tp * tp;
    let scale = (hq * hq).max(tp.abs().powi(3));
    let mut roots = if scale == 0.0 {
        vec![0.0, 0.0, 0.0]
    } else if d.abs() <= DOUBLE_ROOT_TOL * scale {
        if p == 0.0 {
            vec![-q.cbrt(); 3]
        } else {
            let double = -3.0 * q / (2.0 * p);
            let simple = 3.0 * q / p;
            vec![double, double, simple]
        }
    } else if d > 0.0 {
        let s = hq.abs() + d.sqrt();
        let a = -hq.signum() * s.cbrt();
        let a = if hq == 0.0 { s.cbrt() } else { a };
        let b = if a != 0.0 { -tp / a } else { 0.0 };
        vec![newton_polish(c3, c1, c0, a + b)]
    } else {
        let m = 2.0 * (-tp).sqrt();
        let arg = ((3.0 * q) / (2.0 * p) * (-3.0 / p).sqrt()).clamp(-1.0, 1.0);
        let phi = arg.acos() / 3.0;
        (0..3)
            .map(|k| newton_polish(c3, c1, c0, m * (phi - 2.0 * PI * k as f64 / 3.0).cos()))
            .collect()
    };
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resid(c3: f64, c1: f64, c0: f64, x: f64) -> f64 {
        ((c3 * x * x + c1) * x + c0).abs()
    }

    #[test]
    fn unit_roots() {
        let r = cubic_real_roots(1.0, -1.0, 0.0).unwrap();
        assert_eq!(r.len(), 3);
        for (got, want) in r.iter().zip([-1.0, 0.0, 1.0]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn symmetric_stationary_points() {
        let g = 1.0 / 27.0;
        let r = cubic_real_roots(32.0 * g, -2.0, 0.0).unwrap();
        let s = 3.0 * 3f64.sqrt() / 4.0;
        assert!((r[0] + s).abs() < 1e-12 && r[1].abs() < 1e-12 && (r[2] - s).abs() < 1e-12);
        assert!((s - 1.2990381).abs() < 1e-7);
    }

    #[test]
    fn double_root_at_discriminant_zero() {
        let g: f64 = 0.05;
        let mu = (1.0 / (27.0 * g)).sqrt();
        let r = cubic_real_roots(32.0 * g, -2.0, mu).unwrap();
        assert_eq!(r.len(), 3);
        let dbl = 3.0 * mu / 4.0;
        assert!((r[1] - dbl).abs() < 1e-8 && (r[2] - dbl).abs() < 1e-8, "{r:?}");
        assert!((r[0] + 2.0 * dbl).abs() < 1e-8);
    }

    #[test]
    fn single_real_root() {
        let r = cubic_real_roots(1.0, 1.0, 1.0).unwrap();
        assert_eq!(r.len(), 1);
        assert!(resid(1.0, 1.0, 1.0, r[0]) < 1e-14);
        let r = cubic_real_roots(2.0, 0.0, -16.0).unwrap();
        assert!((r[0] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn zero_leading_coefficient_is_rejected() {
        assert!(cubic_real_roots(0.0, 1.0, 1.0).is_err());
    }
}
