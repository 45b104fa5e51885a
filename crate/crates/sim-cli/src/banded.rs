//! Complex banded LU factorisation without pivoting, for the accretive Crank–Nicolson
//! matrices `I + i·(real symmetric)` of the integrator.

use crate::error::{SimError, SimResult};
use lpd_numerics_core::Complex64;

type C = Complex64;

/// `n × n` matrix with `w` sub- and super-diagonals, stored row-wise as `2w + 1` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedMatrix {
    n: usize,
    w: usize,
    data: Vec<C>,
}

impl BandedMatrix {
    pub fn zeros(n: usize, w: usize) -> Self {
        BandedMatrix { n, w, data: vec![C::new(0.0, 0.0); n * (2 * w + 1)] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        i * (2 * self.w + 1) + (j + self.w - i)
    }

    fn in_band(&self, i: usize, j: usize) -> bool {
        i.abs_diff(j) <= self.w && i < self.n && j < self.n
    }

    pub fn get(&self, i: usize, j: usize) -> C {
        if self.in_band(i, j) {
            self.data[self.idx(i, j)]
        } else {
            C::new(0.0, 0.0)
        }
    }

    /// Sets an entry inside the band; entries outside it are ignored.
    pub fn set(&mut self, i: usize, j: usize, value: C) {
        if self.in_band(i, j) {
            let k = self.idx(i, j);
            self.data[k] = value;
        }
    }

    pub fn matvec(&self, x: &[C]) -> Vec<C> {
        (0..self.n)
            .map(|i| {
                let lo = i.saturating_sub(self.w);
                let hi = (i + self.w).min(self.n - 1);
                (lo..=hi).map(|j| self.get(i, j) * x[j]).sum()
            })
            .collect()
    }

    /// In-place Doolittle factorisation; `L` (unit diagonal) and `U` share the storage.
    pub fn factor(mut self) -> SimResult<BandedLu> {
        let (n, w) = (self.n, self.w);
        for k in 0..n {
            let pivot = self.get(k, k);
            if pivot.norm() == 0.0 || !pivot.is_finite() {
                return Err(SimError::Singular(k));
            }
            for i in (k + 1)..(k + w + 1).min(n) {
                let l = self.get(i, k) / pivot;
                self.set(i, k, l);
                for j in (k + 1)..(k + w + 1).min(n) {
                    let v = self.get(i, j) - l * self.get(k, j);
                    self.set(i, j, v);
                }
            }
        }
        Ok(BandedLu { m: self })
    }
}

/// Factorised banded matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedLu {
    m: BandedMatrix,
}

impl BandedLu {
    pub fn solve(&self, b: &[C]) -> Vec<C> {
        let (n, w) = (self.m.n, self.m.w);
        let mut y = b.to_vec();
        for i in 0..n {
            let lo = i.saturating_sub(w);
            let s: C = (lo..i).map(|j| self.m.get(i, j) * y[j]).sum();
            y[i] -= s;
        }
        for i in (0..n).rev() {
            let hi = (i + w).min(n - 1);
            let s: C = ((i + 1)..=hi).map(|j| self.m.get(i, j) * y[j]).sum();
            y[i] = (y[i] - s) / self.m.get(i, i);
        }
        y
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn solves_random_accretive_system() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let (n, w) = (40, 4);
        let mut a = BandedMatrix::zeros(n, w);
        for i in 0..n {
            for j in i..(i + w + 1).min(n) {
                let s: f64 = rng.gen_range(-1.0..1.0);
                let v = C::new(if i == j { 1.0 } else { 0.0 }, s);
                a.set(i, j, v);
                a.set(j, i, v);
            }
        }
        let x: Vec<C> = (0..n).map(|k| C::new(k as f64, 1.0 - k as f64)).collect();
        let b = a.matvec(&x);
        let sol = a.factor().unwrap().solve(&b);
        for (u, v) in sol.iter().zip(&x) {
            assert!((u - v).norm() < 1e-9 * (1.0 + v.norm()));
        }
    }

    #[test]
    fn zero_pivot_is_reported() {
        let a = BandedMatrix::zeros(3, 1);
        assert!(matches!(a.factor(), Err(SimError::Singular(0))));
    }
}
