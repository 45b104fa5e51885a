//! Dense 2×2 complex matrices, the working currency of every Riemann–Hilbert factor.

use crate::error::{NumError, NumResult};
use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

type C = Complex64;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);

/// A 2×2 complex matrix stored row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m: [[C; 2]; 2],
}

impl Mat2 {
    pub const fn new(a11: C, a12: C, a21: C, a22: C) -> Self {
        Mat2 { m: [[a11, a12], [a21, a22]] }
    }

    pub const fn identity() -> Self {
        Mat2::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn zero() -> Self {
        Mat2::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub const fn diag(a: C, b: C) -> Self {
        Mat2::new(a, ZERO, ZERO, b)
    }

    /// `[[1, x], [0, 1]]`
    pub const fn upper(x: C) -> Self {
        Mat2::new(ONE, x, ZERO, ONE)
    }

    /// `[[1, 0], [x, 1]]`
    pub const fn lower(x: C) -> Self {
        Mat2::new(ONE, ZERO, x, ONE)
    }

    pub const fn offdiag(a12: C, a21: C) -> Self {
        Mat2::new(ZERO, a12, a21, ZERO)
    }

    pub fn sigma1() -> Self {
        Mat2::offdiag(ONE, ONE)
    }

    pub fn sigma3() -> Self {
        Mat2::diag(ONE, -ONE)
    }

    /// `e^{η σ₃}`
    pub fn exp_sigma3(eta: C) -> Self {
        Mat2::diag(eta.exp(), (-eta).exp())
    }

    pub fn a11(&self) -> C {
        self.m[0][0]
    }
    pub fn a12(&self) -> C {
        self.m[0][1]
    }
    pub fn a21(&self) -> C {
        self.m[1][0]
    }
    pub fn a22(&self) -> C {
        self.m[1][1]
    }

    pub fn det(&self) -> C {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn trace(&self) -> C {
        self.m[0][0] + self.m[1][1]
    }

    pub fn inv(&self) -> NumResult<Mat2> {
        let d = self.det();
        if d == ZERO {
            return Err(NumError::DivisionByZero);
        }
        Ok(Mat2::new(self.m[1][1] / d, -self.m[0][1] / d, -self.m[1][0] / d, self.m[0][0] / d))
    }

    pub fn conj(&self) -> Mat2 {
        self.map(|z| z.conj())
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.m[0][0], self.m[1][0], self.m[0][1], self.m[1][1])
    }

    pub fn scale(&self, s: C) -> Mat2 {
        self.map(|z| z * s)
    }

    pub fn map(&self, f: impl Fn(C) -> C) -> Mat2 {
        Mat2::new(f(self.m[0][0]), f(self.m[0][1]), f(self.m[1][0]), f(self.m[1][1]))
    }

    /// Column `j` (0-based) as a 2-vector.
    pub fn col(&self, j: usize) -> [C; 2] {
        [self.m[0][j], self.m[1][j]]
    }

    pub fn from_cols(c0: [C; 2], c1: [C; 2]) -> Mat2 {
        Mat2::new(c0[0], c1[0], c0[1], c1[1])
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.m.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn as_array(&self) -> [C; 4] {
        [self.m[0][0], self.m[0][1], self.m[1][0], self.m[1][1]]
    }

    pub fn from_array(a: [C; 4]) -> Mat2 {
        Mat2::new(a[0], a[1], a[2], a[3])
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.m[0][0] + o.m[0][0],
            self.m[0][1] + o.m[0][1],
            self.m[1][0] + o.m[1][0],
            self.m[1][1] + o.m[1][1],
        )
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.m[0][0] - o.m[0][0],
            self.m[0][1] - o.m[0][1],
            self.m[1][0] - o.m[1][0],
            self.m[1][1] - o.m[1][1],
        )
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.map(|z| -z)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        let a = &self.m;
        let b = &o.m;
        Mat2::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl Mul<C> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: C) -> Mat2 {
        self.scale(s)
    }
}

impl Mul<f64> for Mat2 {
    type Output = Mat2;
    fn mul(self, s: f64) -> Mat2 {
        self.map(|z| z * s)
    }
}

impl Mul<[C; 2]> for Mat2 {
    type Output = [C; 2];
    fn mul(self, v: [C; 2]) -> [C; 2] {
        [self.m[0][0] * v[0] + self.m[0][1] * v[1], self.m[1][0] * v[0] + self.m[1][1] * v[1]]
    }
}

/// Complex division that reports an exact zero divisor instead of producing NaN.
pub fn checked_div(a: C, b: C) -> NumResult<C> {
    if b == ZERO {
        Err(NumError::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let a = Mat2::new(c(1.0, 2.0), c(-0.5, 0.1), c(0.3, -1.0), c(2.0, 0.0));
        let p = a * a.inv().unwrap();
        assert!((p - Mat2::identity()).max_abs() < 1e-15);
    }

    #[test]
    fn singular_inverse_is_an_error() {
        let a = Mat2::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0));
        assert_eq!(a.inv(), Err(NumError::DivisionByZero));
    }

    #[test]
    fn triangular_factors_have_unit_determinant() {
        assert_eq!(Mat2::upper(c(3.0, 1.0)).det(), ONE);
        assert_eq!(Mat2::lower(c(-2.0, 5.0)).det(), ONE);
    }

    #[test]
    fn division_by_exact_zero_is_reported() {
        assert_eq!(checked_div(ONE, ZERO), Err(NumError::DivisionByZero));
        assert_eq!(checked_div(c(2.0, 0.0), c(0.0, 2.0)).unwrap(), c(0.0, -1.0));
    }

    #[test]
    fn exp_sigma3_is_multiplicative() {
        let a = c(0.3, -0.2);
        let b = c(-1.1, 0.7);
        let lhs = Mat2::exp_sigma3(a) * Mat2::exp_sigma3(b);
        assert!((lhs - Mat2::exp_sigma3(a + b)).max_abs() < 1e-14);
    }
}
