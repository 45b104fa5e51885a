use lpd_numerics_core::{Complex64 as C, Mat2};
use lpd_pc_model::*;
use lpd_phase::stationary_points;
use lpd_rh_factors::DeltaFunction;
use lpd_scattering::{CaseChoice, PureStep, Reflectionless, ScatteringData};
use std::f64::consts::PI;
use std::sync::Arc;

const GAMMA: f64 = 1.0 / 27.0;

fn synthetic(v: [C; 3]) -> SaddleSet {
    let g = stationary_points(0.5, GAMMA).unwrap();
    let r1 = [C::new(0.5, 0.2), C::new(-0.3, 0.4), C::new(0.7, -0.1)];
    let refl = [0, 1, 2].map(|k| (r1[k], ((-2.0 * PI * v[k]).exp() - 1.0) / r1[k]));
    let chi = [C::new(0.1, -0.2), C::new(-0.05, 0.3), C::new(0.2, 0.1)];
    SaddleSet::from_parts(g, v, chi, refl, PhiMode::TaylorConsistent).unwrap()
}

#[test]
fn pure_step_saddle_set() {
    let g = stationary_points(0.5, GAMMA).unwrap();
    let data = ScatteringData::build(Arc::new(PureStep { amplitude: 2.0 }), CaseChoice::Auto, C::new(1.0, 0.0)).unwrap();
    let set = SaddleSet::build(&DeltaFunction::build(&data, &g).unwrap(), PhiMode::TaylorConsistent).unwrap();
    for s in 1..=3 {
        let m = set.model(s).unwrap();
        assert_eq!(m.v.im, 0.0);
        let xi = set.xi_leading(s, 10.0).unwrap();
        assert_eq!((xi.a11(), xi.a22()), (C::new(0.0, 0.0), C::new(0.0, 0.0)));
        assert!(xi.a12().norm() > 0.0 && xi.a21().norm() > 0.0);
        // real v: the conjugator is a pure phase and |Ξ₁₂| = |β|/(2√c)
        let eta = set.lambda_conjugator(s, 10.0).unwrap();
        assert!((eta.re - m.chi.re).abs() < 1e-12);
        assert!((xi.a12().norm() - m.beta.norm() * (2.0 * eta.re).exp() / (2.0 * m.curvature.sqrt())).abs() < 1e-12);
    }
}

#[test]
fn no_reflection_gives_vanishing_leading_matrices() {
    let g = stationary_points(0.5, GAMMA).unwrap();
    let data =
        ScatteringData::build(Arc::new(Reflectionless { amplitude: 2.0 }), CaseChoice::Auto, C::new(1.0, 0.0)).unwrap();
    let set = SaddleSet::build(&DeltaFunction::build(&data, &g).unwrap(), PhiMode::TaylorConsistent).unwrap();
    for s in 1..=3 {
        assert_eq!(set.xi_leading(s, 5.0).unwrap(), Mat2::zero());
        assert_eq!(set.xi_regular(s, 5.0).unwrap(), Mat2::zero());
    }
}

#[test]
fn closed_form_agrees_with_conjugated_residue_at_outer_saddles() {
    let set = synthetic([C::new(0.11, 0.2), C::new(0.05, -0.1), C::new(0.2, 0.15)]);
    for t in [3.0, 40.0] {
        for s in [1, 3] {
            let a = set.xi_leading(s, t).unwrap();
            let b = set.xi_from_conjugator(s, t).unwrap();
            assert!((a - b).max_abs() < 1e-12 * (1.0 + b.max_abs()), "s = {s}");
        }
        let r = set.xi_regular(1, t).unwrap();
        assert!((r + set.xi_leading(1, t).unwrap() * (1.0 / t.sqrt())).max_abs() < 1e-15);
    }
}

#[test]
fn middle_saddle_closed_form_inverts_power_factors() {
    // The closed form of Ξ₂ carries (c₂/c₁)^{iv₂}(1/(4tc₃))^{iv₃} where the conjugator has the
    // reciprocal; the two agree exactly when that factor squared is one.
    let set = synthetic([C::new(0.11, 0.2), C::new(0.05, -0.1), C::new(0.2, 0.15)]);
    let t = 7.0;
    let (c1, c2, c3) = (set.models[0].curvature, set.models[1].curvature, set.models[2].curvature);
    let v2 = set.models[1].v;
    let v3 = set.models[2].v;
    let i = C::new(0.0, 1.0);
    let p = (i * v2 * (c2 / c1).ln() + i * v3 * (1.0 / (4.0 * t * c3)).ln()).exp();
    let a = set.xi_leading(2, t).unwrap();
    let b = set.xi_from_conjugator(2, t).unwrap();
    assert!((a.a12() - b.a12() * p * p).norm() < 1e-12 * b.a12().norm());
    assert!((a.a21() - b.a21() / (p * p)).norm() < 1e-12 * b.a21().norm());
}

#[test]
fn leading_matrix_modulus_scales_with_time() {
    let v1 = C::new(0.11, 0.2);
    let set = synthetic([v1, C::new(0.05, -0.1), C::new(0.2, 0.15)]);
    let (t0, t1) = (10.0, 1000.0);
    let ratio = set.xi_leading(1, t1).unwrap().a12().norm() / set.xi_leading(1, t0).unwrap().a12().norm();
    assert!((ratio - (t1 / t0).powf(v1.im)).abs() < 1e-10 * ratio);
    let ratio = set.xi_leading(1, t1).unwrap().a21().norm() / set.xi_leading(1, t0).unwrap().a21().norm();
    assert!((ratio - (t1 / t0).powf(-v1.im)).abs() < 1e-10 * ratio);
}

#[test]
fn conjugator_power_factor_modulus() {
    let v = [C::new(0.11, 0.2), C::new(0.0, 0.0), C::new(0.2, -0.15)];
    let set = synthetic(v);
    let t = 12.0;
    let f = set.outer_base(t);
    for s in [1, 3] {
        let eta = set.lambda_conjugator(s, t).unwrap();
        let m = &set.models[s - 1];
        let expected = m.chi.re - 0.5 * v[s - 1].im * f.ln();
        assert!((eta.re - expected).abs() < 1e-12);
    }
    let zero = synthetic([C::new(0.0, 0.0); 3]);
    // v = 0: only χ and the pure phase itθ(λ) remain
    let eta = zero.lambda_conjugator(1, t).unwrap();
    assert!((eta.re - zero.models[0].chi.re).abs() < 1e-15);
}
