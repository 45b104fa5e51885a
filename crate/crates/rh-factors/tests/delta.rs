use lpd_numerics_core::{Complex64 as C, Side};
use lpd_phase::stationary_points;
use lpd_rh_factors::DeltaFunction;
use lpd_scattering::{CaseChoice, InitialProfile, NumericScattering, Perturbation, PureStep, ScatteringData};
use std::sync::Arc;

const GAMMA: f64 = 1.0 / 27.0;

fn step(a: f64) -> ScatteringData {
    ScatteringData::build(Arc::new(PureStep { amplitude: a }), CaseChoice::Auto, C::new(1.0, 0.0)).unwrap()
}

#[test]
fn boundary_values_jump_by_one_plus_r1r2() {
    let g = stationary_points(0.5, GAMMA).unwrap();
    let data = step(2.0);
    let delta = DeltaFunction::build(&data, &g).unwrap();
    let [l1, l2, l3] = delta.lambdas();
    for x in [l3 - 3.0, l3 - 0.2, 0.5 * (l1 + l2), l2 + 0.05, l1 - 0.05] {
        let z = C::new(x, 0.0);
        let plus = delta.eval(z, Some(Side::Plus)).unwrap();
        let minus = delta.eval(z, Some(Side::Minus)).unwrap();
        let expected = data.one_plus_r1r2(z).unwrap();
        assert!((plus / minus - expected).norm() < 1e-6 * expected.norm(), "x = {x}");
    }
    // off the cut there is no jump
    let x = C::new(0.5 * (l3 + l2), 0.0);
    assert!((delta.eval(x, Some(Side::Plus)).unwrap() - delta.eval(x, Some(Side::Minus)).unwrap()).norm() < 1e-12);
}

#[test]
fn real_log_ratio_gives_reflection_symmetry() {
    let g = stationary_points(0.5, GAMMA).unwrap();
    let delta = DeltaFunction::build(&step(1.0), &g).unwrap();
    for xi in [C::new(0.3, 0.7), C::new(-2.0, 0.1), C::new(1.5, -0.4), C::new(0.1, 0.0)] {
        let prod = delta.eval(xi, None).unwrap() * delta.eval(xi.conj(), None).unwrap().conj();
        assert!((prod - 1.0).norm() < 1e-6, "ξ = {xi}: {prod}");
    }
}

#[test]
fn approaches_one_at_large_argument() {
    let g = stationary_points(0.5, GAMMA).unwrap();
    let delta = DeltaFunction::build(&step(2.0), &g).unwrap();
    let far = delta.eval(C::new(1e3, 0.0), None).unwrap();
    assert!((far - 1.0).norm() < 5e-3, "{far}");
    let far = delta.eval(C::new(0.0, 1e3), None).unwrap();
    assert!((far - 1.0).norm() < 5e-3, "{far}");
}

#[test]
fn product_forms_agree_with_cauchy_form() {
    let g = stationary_points(0.6, GAMMA).unwrap();
    let delta = DeltaFunction::build(&step(2.0), &g).unwrap();
    let [l1, l2, l3] = delta.lambdas();
    let pts = [
        C::new(l1 + 0.3, 0.2),
        C::new(l2 - 0.1, -0.3),
        C::new(l3, 0.5),
        C::new(0.5 * (l3 + l2), 0.0),
        C::new(l1 + 1.0, 0.0),
        C::new(-4.0, -2.0),
    ];
    for xi in pts {
        let reference = delta.eval(xi, None).unwrap();
        for s in 1..=3 {
            let p = delta.product_form(s, xi).unwrap();
            assert!((p - reference).norm() < 1e-5 * reference.norm(), "s = {s}, ξ = {xi}: {p} vs {reference}");
        }
    }
}

#[test]
fn saddle_exponents_of_pure_step() {
    let g = stationary_points(0.5, GAMMA).unwrap();
    let a = 1.5;
    let delta = DeltaFunction::build(&step(a), &g).unwrap();
    let ex = delta.exponents().unwrap();
    for s in 0..3 {
        let l = delta.lambdas()[s];
        let expected = -(4.0 * l * l / (4.0 * l * l + a * a)).ln() / (2.0 * std::f64::consts::PI);
        assert!((ex.v[s] - C::new(expected, 0.0)).norm() < 1e-12);
        assert!(ex.v[s].re > 0.0 && ex.delta_arg[s] == 0.0);
        assert!(ex.chi[s].is_finite());
    }
}

#[test]
fn chi_is_continuous_at_its_saddle() {
    let g = stationary_points(0.5, GAMMA).unwrap();
    let delta = DeltaFunction::build(&step(2.0), &g).unwrap();
    for s in 1..=3 {
        let l = delta.lambdas()[s - 1];
        let at = delta.chi(s, C::new(l, 0.0), None).unwrap();
        let near = delta.chi(s, C::new(l, 1e-6), None).unwrap();
        assert!((at - near).norm() < 1e-4, "s = {s}: {at} vs {near}");
    }
}

#[test]
fn numeric_bump_data_has_consistent_jump() {
    let profile = InitialProfile::new(
        1.0,
        GAMMA,
        Perturbation::GaussianBump { amplitude: C::new(0.3, 0.2), center: 0.5, width: 0.4 },
        3.0,
    )
    .unwrap();
    let source = NumericScattering::new(profile).unwrap();
    let data = ScatteringData::build(Arc::new(source), CaseChoice::Auto, C::new(1.0, 0.0)).unwrap();
    let g = stationary_points(0.5, GAMMA).unwrap();
    let delta = DeltaFunction::build(&data, &g).unwrap();
    let [l1, l2, _] = delta.lambdas();
    let z = C::new(0.5 * (l1 + l2), 0.0);
    let ratio = delta.eval(z, Some(Side::Plus)).unwrap() / delta.eval(z, Some(Side::Minus)).unwrap();
    let expected = data.one_plus_r1r2(z).unwrap();
    assert!((ratio - expected).norm() < 1e-6);
}
