use lpd_numerics_core::Complex64 as C;
use lpd_pc_model::*;
use lpd_phase::{stationary_points, PhaseGeometry};
use rand::{Rng, SeedableRng};

#[test]
fn taylor_phase_reproduces_oscillatory_factor() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(8);
    let g = stationary_points(0.5, 1.0 / 27.0).unwrap();
    for _ in 0..20 {
        let s = rng.gen_range(1..=3usize);
        let tau = C::new(rng.gen_range(-3.0..3.0), rng.gen_range(-1.0..1.0));
        let t = rng.gen_range(1.0..50.0);
        let xi = scaling_map(s, &g, t, tau).unwrap();
        let lhs = (C::new(0.0, 2.0 * t) * g.theta(xi)).exp();
        let phi = local_phase_phi(s, &g, t, tau, PhiMode::TaylorConsistent).unwrap();
        let rhs = (2.0 * phi + C::new(0.0, PhaseGeometry::sigma(s) / 2.0) * tau * tau).exp();
        assert!((lhs - rhs).norm() < 1e-12 * lhs.norm(), "s = {s}, τ = {tau}, t = {t}");
    }
}

#[test]
fn taylor_coefficients_against_printed_polynomial() {
    let gamma = 1.0 / 27.0;
    let g = stationary_points(0.5, gamma).unwrap();
    let t = 9.0;
    let l1 = g.lambda(1).unwrap();
    let c1 = 48.0 * gamma * l1 * l1 - 1.0;
    // cubic and quartic coefficients by finite differences of the polynomial remainder
    let f = |tau: f64, mode| {
        local_phase_phi(1, &g, t, C::new(tau, 0.0), mode).unwrap() - local_phase_phi(1, &g, t, C::new(0.0, 0.0), mode).unwrap()
    };
    let quartic = C::new(0.0, gamma / (2.0 * t * c1 * c1));
    let cubic = C::new(0.0, 4.0 * gamma * l1 / (t * c1.powi(3)).sqrt());
    let h = 0.5;
    let taylor = |tau: f64| f(tau, PhiMode::TaylorConsistent);
    // even/odd split isolates τ⁴ and τ³ (no τ², τ terms in the consistent remainder)
    let even = (taylor(h) + taylor(-h)) / (2.0 * h.powi(4));
    let odd = (taylor(h) - taylor(-h)) / (2.0 * h.powi(3));
    assert!((even - quartic).norm() < 1e-12 && (odd - cubic).norm() < 1e-12);
    // the printed polynomial carries the same quartic coefficient with opposite sign
    let printed = |tau: f64| f(tau, PhiMode::PaperFaithful);
    let p_even = (printed(h) + printed(-h)) / 2.0;
    let expected_even = -quartic * h.powi(4) + C::new(0.0, h * h / (4.0 * t * c1));
    assert!((p_even - expected_even).norm() < 1e-12);
}
