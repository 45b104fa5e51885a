//! Adaptive Dormand–Prince 5(4) integration of complex linear and nonlinear systems.

use crate::error::{NumError, NumResult};
use crate::mat2::Mat2;
use crate::quad::QuadratureSpec;
use num_complex::Complex64;

type C = Complex64;

const MAX_STEPS: usize = 2_000_000;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn lin(y: &[C], terms: &[(f64, &[C])], h: f64) -> Vec<C> {
    let mut out = y.to_vec();
    for &(c, k) in terms {
        if c != 0.0 {
            for (o, kv) in out.iter_mut().zip(k) {
                *o += kv * (c * h);
            }
        }
    }
    out
}

/// Integrate `y' = f(t, y)` from `t0` to `t1` (either direction) for a complex vector state.
pub fn ode_integrate_vec<F>(mut f: F, y0: &[C], t0: f64, t1: f64, spec: &QuadratureSpec) -> NumResult<Vec<C>>
where
    F: FnMut(f64, &[C]) -> Vec<C>,
{
    spec.validate()?;
    if !(t0.is_finite() && t1.is_finite()) {
        return Err(NumError::InvalidArgument("integration span must be finite".into()));
    }
    let mut y = y0.to_vec();
    if t0 == t1 {
        return Ok(y);
    }
    let dir = (t1 - t0).signum();
    let span = (t1 - t0).abs();
    let mut t = t0;
    let mut h = dir * span.min(0.1);
    let mut k1 = f(t, &y);
    for _ in 0..MAX_STEPS {
        if (t1 - t) * dir <= 0.0 {
            return Ok(y);
        }
        if (t + h - t1) * dir > 0.0 {
            h = t1 - t;
        }
        let k2 = f(t + h / 5.0, &lin(&y, &[(A21, &k1)], h));
        let k3 = f(t + 3.0 * h / 10.0, &lin(&y, &[(A31, &k1), (A32, &k2)], h));
        let k4 = f(t + 4.0 * h / 5.0, &lin(&y, &[(A41, &k1), (A42, &k2), (A43, &k3)], h));
        let k5 = f(t + 8.0 * h / 9.0, &lin(&y, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)], h));
        let k6 = f(
            t + h,
            &lin(&y, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)], h),
        );
        let y5 = lin(&y, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)], h);
        let k7 = f(t + h, &y5);
        let mut err = 0.0;
        for i in 0..y.len() {
            let e = (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7) * h;
            let sc = spec.abs_tol + spec.rel_tol * y[i].norm().max(y5[i].norm());
            err += (e.norm() / sc).powi(2);
        }
        let err = (err / y.len().max(1) as f64).sqrt();
        if !err.is_finite() {
            return Err(NumError::Domain(format!("non-finite ODE state near t = {t}")));
        }
        if err <= 1.0 {
            t += h;
            y = y5;
            k1 = k7;
        }
        let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
        h *= fac;
        if h.abs() < 1e-14 * t.abs().max(span) {
            return Err(NumError::Stiffness { t, h: h.abs() });
        }
    }
    Err(NumError::Stiffness { t, h: h.abs() })
}

/// Integrate a 2×2 matrix system `Y' = F(t, Y)`.
pub fn ode_integrate<F>(mut rhs: F, y0: Mat2, t0: f64, t1: f64, spec: &QuadratureSpec) -> NumResult<Mat2>
where
    F: FnMut(f64, &Mat2) -> Mat2,
{
    let y = ode_integrate_vec(
        |t, v| rhs(t, &Mat2::from_array([v[0], v[1], v[2], v[3]])).as_array().to_vec(),
        &y0.as_array(),
        t0,
        t1,
        spec,
    )?;
    Ok(Mat2::from_array([y[0], y[1], y[2], y[3]]))
}
