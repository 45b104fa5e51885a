//! Parabolic cylinder values against a 40-digit reference table covering all sectors,
//! radii from 0.4 to 35 and orders with |a| ≤ 2.

use lpd_numerics_core::{parabolic_cylinder_d, Complex64};

#[test]
fn matches_high_precision_table() {
    let table = include_str!("data/pcf_reference.csv");
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for line in table.lines().skip(1) {
        let v: Vec<f64> = line.split(',').map(|s| s.trim().parse().unwrap()).collect();
        let a = Complex64::new(v[0], v[1]);
        let z = Complex64::new(v[2], v[3]);
        let want = Complex64::new(v[4], v[5]);
        let got = parabolic_cylinder_d(a, z).unwrap();
        let err = (got - want).norm() / want.norm().max(1e-300);
        worst = worst.max(err);
        assert!(err < 1e-10, "D_{a}({z}) = {got}, reference {want}, rel err {err:e}");
        count += 1;
    }
    assert!(count > 300);
    eprintln!("worst relative error over {count} points: {worst:e}");
}
