//! The quartic phase and its derivatives.

use lpd_numerics_core::Complex64;

type C = Complex64;

/// `θ(ξ, μ) = ξμ − ξ² + 8γξ⁴`.
pub fn phase_theta(xi: C, mu: f64, gamma: f64) -> C {
    let x2 = xi * xi;
    xi * mu - x2 + x2 * x2 * (8.0 * gamma)
}

/// `θ` together with its first four `ξ`-derivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseDerivatives {
    pub theta: C,
    pub d1: C,
    pub d2: C,
    pub d3: C,
    pub d4: C,
}

pub fn phase_theta_derivatives(xi: C, mu: f64, gamma: f64) -> PhaseDerivatives {
    let x2 = xi * xi;
    PhaseDerivatives {
        theta: phase_theta(xi, mu, gamma),
        d1: C::new(mu, 0.0) - 2.0 * xi + x2 * xi * (32.0 * gamma),
        d2: x2 * (96.0 * gamma) - 2.0,
        d3: xi * (192.0 * gamma),
        d4: C::new(192.0 * gamma, 0.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_simple_points() {
        assert_eq!(phase_theta(C::new(0.0, 0.0), 0.7, 0.3), C::new(0.0, 0.0));
        assert_eq!(phase_theta(C::new(1.0, 0.0), 1.0, 1.0), C::new(8.0, 0.0));
    }

    #[test]
    fn derivatives_match_central_differences() {
        let (mu, g) = (0.4, 0.05);
        let z = C::new(0.7, -0.3);
        let h = 1e-4;
        let d = phase_theta_derivatives(z, mu, g);
        let f = |w: C| phase_theta_derivatives(w, mu, g);
        let fd1 = (f(z + h).theta - f(z - h).theta) / (2.0 * h);
        let fd2 = (f(z + h).d1 - f(z - h).d1) / (2.0 * h);
        let fd3 = (f(z + h).d2 - f(z - h).d2) / (2.0 * h);
        let fd4 = (f(z + h).d3 - f(z - h).d3) / (2.0 * h);
        assert!((fd1 - d.d1).norm() < 1e-7);
        assert!((fd2 - d.d2).norm() < 1e-7);
        assert!((fd3 - d.d3).norm() < 1e-7);
        assert!((fd4 - d.d4).norm() < 1e-7);
    }
}
