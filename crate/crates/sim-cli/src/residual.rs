//! Pointwise residual of the nonlocal LPD equation
//! `q_t + (i/2)q_xx − iq²r − γH[q] = 0`, `r(x, t) = −conj q(−x, t)`, with
//! `H = −iq_xxxx + 6irq_x² + 4iqq_xr_x + 8irqq_xx + 2iq²r_xx − 6ir²q³`.

use crate::error::{SimError, SimResult};
use lpd_asymptotics::{q_soliton, soliton_frequency};
use lpd_numerics_core::Complex64;

type C = Complex64;

/// Value and the derivatives the residual needs at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub q: C,
    pub q_t: C,
    pub q_x: C,
    pub q_xx: C,
    pub q_xxxx: C,
}

/// A space-time field that can report its jet.
pub trait Field {
    fn jet(&self, x: f64, t: f64) -> SimResult<Jet>;
}

/// The two groups of the residual: `q_t + (i/2)q_xx − iq²r` and `H[q]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualParts {
    pub base: C,
    pub h: C,
}

impl ResidualParts {
    pub fn total(&self, gamma: f64) -> C {
        self.base - gamma * self.h
    }
}

/// Residual groups from the jets at `x` and at `−x`.
pub fn residual_parts(at: &Jet, mirror: &Jet) -> ResidualParts {
    let i = C::new(0.0, 1.0);
    let (q, qx, qxx) = (at.q, at.q_x, at.q_xx);
    let r = -mirror.q.conj();
    let rx = mirror.q_x.conj();
    let rxx = -mirror.q_xx.conj();
    let base = at.q_t + 0.5 * i * qxx - i * q * q * r;
    let h = -i * at.q_xxxx + 6.0 * i * r * qx * qx + 4.0 * i * q * qx * rx + 8.0 * i * r * q * qxx
        + 2.0 * i * q * q * rxx
        - 6.0 * i * r * r * q * q * q;
    ResidualParts { base, h }
}

/// Left side of the equation at `(x, t)`.
pub fn pde_residual(field: &dyn Field, x: f64, t: f64, gamma: f64) -> SimResult<C> {
    Ok(residual_parts(&field.jet(x, t)?, &field.jet(-x, t)?).total(gamma))
}

/// The exact one-soliton with analytic derivatives.
///
/// With `E = e^{−Ax + iωt + iα}` and `g = 1/(1 − E)`, the operator `D = E d/dE` maps
/// polynomials in `g` to polynomials in `g` (`Dg = g² − g`), while `∂ₓ = −AD` and `∂ₜ = iωD`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactSoliton {
    pub amplitude: f64,
    pub alpha: f64,
    pub gamma: f64,
}

/// `p(g) ↦ p′(g)(g² − g)` on coefficient vectors in increasing powers.
fn apply_d(p: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + 1];
    for (k, &c) in p.iter().enumerate().skip(1) {
        let d = k as f64 * c;
        out[k + 1] += d;
        out[k] -= d;
    }
    out
}

fn eval_poly(p: &[f64], g: C) -> C {
    p.iter().rev().fold(C::new(0.0, 0.0), |acc, &c| acc * g + c)
}

impl ExactSoliton {
    pub fn value(&self, x: f64, t: f64) -> SimResult<C> {
        Ok(q_soliton(x, t, self.amplitude, self.alpha, self.gamma)?)
    }

    /// `ωt + α`, the argument of `E` at `x = 0`.
    pub fn value_phase(&self, t: f64) -> f64 {
        soliton_frequency(self.amplitude, self.gamma) * t + self.alpha
    }
}

impl Field for ExactSoliton {
    fn jet(&self, x: f64, t: f64) -> SimResult<Jet> {
        let a = self.amplitude;
        let q = self.value(x, t)?;
        let g = q / a;
        let w = soliton_frequency(a, self.gamma);
        let mut d = vec![vec![0.0, 1.0]];
        for k in 0..4 {
            let next = apply_d(&d[k]);
            d.push(next);
        }
        let dg = |n: usize| eval_poly(&d[n], g);
        Ok(Jet {
            q,
            q_t: C::new(0.0, w * a) * dg(1),
            q_x: -a * a * dg(1),
            q_xx: a.powi(3) * dg(2),
            q_xxxx: a.powi(5) * dg(4),
        })
    }
}

/// Finite-difference weights for the `m`-th derivative at `z` on the nodes `xs`.
pub fn fd_weights(z: f64, xs: &[f64], m: usize) -> Vec<f64> {
    let n = xs.len();
    let mut c = vec![vec![0.0; m + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = xs[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - z;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] *= c4 / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

/// Central weights on `−p..=p` (unit spacing) for the `m`-th derivative.
pub fn central_weights(m: usize, p: usize) -> Vec<f64> {
    let xs: Vec<f64> = (-(p as isize)..=p as isize).map(|k| k as f64).collect();
    fd_weights(0.0, &xs, m)
}

/// Jet of a pointwise-evaluable field by central differences of the given (even) accuracy
/// order, with the same step in `x` and `t`.
pub struct FiniteDifference<F> {
    pub f: F,
    pub h: f64,
    pub order: usize,
}

impl<F: Fn(f64, f64) -> SimResult<C>> FiniteDifference<F> {
    pub fn new(f: F, h: f64, order: usize) -> SimResult<Self> {
        if order < 2 || order % 2 != 0 || !(h > 0.0) {
            return Err(SimError::Domain(format!("need an even order ≥ 2 and h > 0, got order {order}, h = {h}")));
        }
        Ok(FiniteDifference { f, h, order })
    }

    fn derivative(&self, m: usize, sample: impl Fn(f64) -> SimResult<C>) -> SimResult<C> {
        // an m-th derivative with accuracy `order` needs 2⌊(m+1)/2⌋ − 1 + order nodes
        let p = (m + 1) / 2 + self.order / 2 - 1 + usize::from(m == 0);
        let w = central_weights(m, p);
        let mut acc = C::new(0.0, 0.0);
        for (k, wk) in w.iter().enumerate() {
            if *wk != 0.0 {
                acc += *wk * sample((k as f64 - p as f64) * self.h)?;
            }
        }
        Ok(acc / self.h.powi(m as i32))
    }
}

impl<F: Fn(f64, f64) -> SimResult<C>> Field for FiniteDifference<F> {
    fn jet(&self, x: f64, t: f64) -> SimResult<Jet> {
        let sx = |d: f64| (self.f)(x + d, t);
        Ok(Jet {
            q: (self.f)(x, t)?,
            q_t: self.derivative(1, |d| (self.f)(x, t + d))?,
            q_x: self.derivative(1, sx)?,
            q_xx: self.derivative(2, sx)?,
            q_xxxx: self.derivative(4, sx)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_stencils() {
        let d1 = central_weights(1, 1);
        assert_eq!(d1, vec![-0.5, 0.0, 0.5]);
        let d2 = central_weights(2, 3);
        let want = [1.0 / 90.0, -3.0 / 20.0, 1.5, -49.0 / 18.0, 1.5, -3.0 / 20.0, 1.0 / 90.0];
        for (a, b) in d2.iter().zip(want) {
            assert!((a - b).abs() < 1e-13);
        }
        let d4 = central_weights(4, 4);
        let want = [7.0 / 240.0, -0.4, 169.0 / 60.0, -122.0 / 15.0, 91.0 / 8.0];
        for (a, b) in d4.iter().zip(want) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn zero_field_has_zero_residual() {
        let f = FiniteDifference::new(|_, _| Ok(C::new(0.0, 0.0)), 0.1, 4).unwrap();
        assert_eq!(pde_residual(&f, 0.3, 0.2, 0.5).unwrap(), C::new(0.0, 0.0));
    }

    #[test]
    fn analytic_soliton_jet_matches_differences() {
        let s = ExactSoliton { amplitude: 2.0, alpha: 1.0, gamma: 0.1 };
        let fd = FiniteDifference::new(|x, t| s.value(x, t), 1e-2, 8).unwrap();
        let (a, b) = (s.jet(0.4, 0.3).unwrap(), fd.jet(0.4, 0.3).unwrap());
        for (u, v) in [(a.q_t, b.q_t), (a.q_x, b.q_x), (a.q_xx, b.q_xx), (a.q_xxxx, b.q_xxxx)] {
            assert!((u - v).norm() < 1e-6 * (1.0 + u.norm()), "{u} vs {v}");
        }
    }

    #[test]
    fn soliton_satisfies_the_equation() {
        let s = ExactSoliton { amplitude: 2.0, alpha: std::f64::consts::FRAC_PI_3, gamma: 0.1 };
        let r = pde_residual(&s, 0.7, 0.4, 0.1).unwrap();
        assert!(r.norm() < 1e-10, "{r}");
        let fd = FiniteDifference::new(|x, t| s.value(x, t), 1e-2, 8).unwrap();
        assert!(pde_residual(&fd, 0.7, 0.4, 0.1).unwrap().norm() < 1e-6);
    }

    #[test]
    fn dropping_the_quartic_group_leaves_gamma_h() {
        let s = ExactSoliton { amplitude: 2.0, alpha: std::f64::consts::FRAC_PI_3, gamma: 0.1 };
        let parts = residual_parts(&s.jet(0.7, 0.4).unwrap(), &s.jet(-0.7, 0.4).unwrap());
        assert!(parts.h.norm() > 1e-2);
        assert!((parts.base - 0.1 * parts.h).norm() < 1e-10);
    }
}
