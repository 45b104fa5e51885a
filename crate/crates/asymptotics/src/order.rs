//! Predicted orders of the two remainder families `R₁`, `R₂` from the sign pattern of
//! `Im v(λⱼ)`.

use crate::error::{AsymError, AsymResult};
use lpd_numerics_core::Complex64;
use serde::Serialize;
use std::cmp::Ordering;

type C = Complex64;

/// `O(t^{exponent}(ln t)^{log})`, or a sign pattern neither table covers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Order {
    Power { exponent: f64, log: bool },
    TableGap,
}

impl Order {
    fn power(exponent: f64) -> Self {
        Order::Power { exponent, log: false }
    }

    fn log() -> Self {
        Order::Power { exponent: -1.0, log: true }
    }

    /// Orders are compared by exponent, then by the logarithm; a gap dominates everything.
    pub fn dominant(self, other: Order) -> Order {
        match (self, other) {
            (Order::TableGap, _) | (_, Order::TableGap) => Order::TableGap,
            (Order::Power { exponent: a, log: la }, Order::Power { exponent: b, log: lb }) => {
                match a.partial_cmp(&b).unwrap_or(Ordering::Equal) {
                    Ordering::Greater => self,
                    Ordering::Less => other,
                    Ordering::Equal => Order::Power { exponent: a, log: la || lb },
                }
            }
        }
    }

    /// `exponent` of a power order; `None` for a table gap.
    pub fn exponent(self) -> Option<f64> {
        match self {
            Order::Power { exponent, .. } => Some(exponent),
            Order::TableGap => None,
        }
    }
}

/// Predicted orders of `R₁` and `R₂` with the 1-based table rows whose conditions hold.
///
/// Several rows can hold at once (for instance when one `Im vⱼ` vanishes); the reported
/// order is the largest among them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorOrder {
    pub r1: Order,
    pub r2: Order,
    pub r1_rows: Vec<usize>,
    pub r2_rows: Vec<usize>,
}

impl ErrorOrder {
    /// `R₁ + R₂`.
    pub fn combined(&self) -> Order {
        self.r1.dominant(self.r2)
    }
}

fn pick(rows: &[(bool, Order)]) -> (Order, Vec<usize>) {
    let hits: Vec<usize> = rows.iter().enumerate().filter(|(_, r)| r.0).map(|(k, _)| k + 1).collect();
    let order = hits.iter().map(|&k| rows[k - 1].1).reduce(Order::dominant).unwrap_or(Order::TableGap);
    (order, hits)
}

/// Orders of `R₁` and `R₂` for the exponents `v₁, v₂, v₃`; requires `|Im vⱼ| < 1/2`.
///
/// With `σⱼ = (−1)ʲ Im vⱼ` and `mⱼ = |Im vⱼ|`, `R₁` is `O(t⁻¹)` when all `σⱼ > 0`,
/// `O(t⁻¹ ln t)` when some `Im vⱼ = 0` and the other `σₗ ≤ 0`, `O(t^{−1+2max m})` over the
/// saddles singled out by the remaining rows; `R₂` mirrors this with the inequalities
/// reversed. Sign patterns no row covers are reported as [`Order::TableGap`].
pub fn error_order(v: [C; 3]) -> AsymResult<ErrorOrder> {
    let im = [v[0].im, v[1].im, v[2].im];
    if im.iter().any(|x| !(x.abs() < 0.5)) {
        return Err(AsymError::Assumption(format!("|Im v| must be below 1/2, got {im:?}")));
    }
    let m = im.map(f64::abs);
    let sigma = [-im[0], im[1], -im[2]];
    let grow = |idx: &[usize]| Order::power(-1.0 + 2.0 * idx.iter().map(|&k| m[k]).fold(0.0, f64::max));
    let zero_with = |cmp: fn(f64) -> bool| {
        (0..3).any(|j| im[j] == 0.0 && (0..3).filter(|&l| l != j).all(|l| cmp(sigma[l])))
    };
    let [a, b, c] = im;

    let r1_rows = [
        (sigma.iter().all(|&s| s > 0.0), Order::power(-1.0)),
        (zero_with(|s| s <= 0.0), Order::log()),
        (a > 0.0 && b >= 0.0 && c <= 0.0, grow(&[0])),
        (a <= 0.0 && b < 0.0 && c <= 0.0, grow(&[1])),
        (a <= 0.0 && b >= 0.0 && c > 0.0, grow(&[2])),
        (a > 0.0 && b < 0.0 && c <= 0.0, grow(&[0, 1])),
        (a <= 0.0 && b < 0.0 && c > 0.0, grow(&[1, 2])),
        (a > 0.0 && b >= 0.0 && c > 0.0, grow(&[0, 2])),
        (sigma.iter().all(|&s| s < 0.0), grow(&[0, 1, 2])),
    ];
    let r2_rows = [
        (sigma.iter().all(|&s| s > 0.0), grow(&[0, 1, 2])),
        (a < 0.0 && b > 0.0 && c >= 0.0, grow(&[0, 1])),
        (a >= 0.0 && b > 0.0 && c < 0.0, grow(&[1, 2])),
        (a < 0.0 && b <= 0.0 && c < 0.0, grow(&[0, 2])),
        (a < 0.0 && b <= 0.0 && c >= 0.0, grow(&[0])),
        (a >= 0.0 && b > 0.0 && c >= 0.0, grow(&[1])),
        (a >= 0.0 && b <= 0.0 && c < 0.0, grow(&[2])),
        (zero_with(|s| s >= 0.0), Order::log()),
        (sigma.iter().all(|&s| s < 0.0), Order::power(-1.0)),
    ];
    let (r1, r1_rows) = pick(&r1_rows);
    let (r2, r2_rows) = pick(&r2_rows);
    Ok(ErrorOrder { r1, r2, r1_rows, r2_rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(a: f64, b: f64, c: f64) -> [C; 3] {
        [C::new(0.3, a), C::new(0.2, b), C::new(0.1, c)]
    }

    #[test]
    fn all_zero_gives_logarithmic_orders() {
        let e = error_order(v(0.0, 0.0, 0.0)).unwrap();
        assert_eq!(e.r1, Order::Power { exponent: -1.0, log: true });
        assert_eq!(e.r1_rows, vec![2]);
        assert_eq!(e.r2, Order::Power { exponent: -1.0, log: true });
        assert_eq!(e.r2_rows, vec![8]);
    }

    #[test]
    fn all_positive_sigma_gives_t_inverse_for_r1() {
        let e = error_order(v(-0.1, 0.2, -0.05)).unwrap();
        assert_eq!(e.r1, Order::Power { exponent: -1.0, log: false });
        assert_eq!(e.r1_rows, vec![1]);
        assert_eq!(e.r2_rows, vec![1]);
        assert!((e.r2.exponent().unwrap() - (-1.0 + 0.4)).abs() < 1e-15);
    }

    #[test]
    fn all_negative_sigma_gives_t_inverse_for_r2() {
        let e = error_order(v(0.1, -0.05, 0.08)).unwrap();
        assert_eq!(e.r2, Order::Power { exponent: -1.0, log: false });
        assert_eq!(e.r1_rows, vec![9]);
        assert!((e.r1.exponent().unwrap() - (-0.8)).abs() < 1e-15);
        assert!((e.combined().exponent().unwrap() - (-0.8)).abs() < 1e-15);
    }

    #[test]
    fn overlapping_rows_report_the_larger_order() {
        // Im v₂ = 0 with σ₁, σ₃ ≤ 0 (logarithmic row) also satisfies the t^{−1+2|Im v₁|} row
        let e = error_order(v(0.1, 0.0, 0.0)).unwrap();
        assert!(e.r1_rows.contains(&2) && e.r1_rows.contains(&3));
        assert!((e.r1.exponent().unwrap() - (-0.8)).abs() < 1e-15);
    }

    #[test]
    fn exponents_outside_the_strip_are_rejected() {
        assert!(error_order(v(0.5, 0.0, 0.0)).is_err());
    }

    #[test]
    fn every_strict_sign_pattern_is_classified() {
        for mask in 0..27u32 {
            let d = |k: u32| [-0.1, 0.0, 0.1][((mask / 3u32.pow(k)) % 3) as usize];
            let e = error_order(v(d(0), d(1), d(2))).unwrap();
            let strict = (0..3).all(|k| d(k) != 0.0);
            if strict {
                assert_ne!(e.r1, Order::TableGap, "R1 gap at {mask}");
                assert_ne!(e.r2, Order::TableGap, "R2 gap at {mask}");
            }
        }
    }
}
