use std::f64::consts::PI;

use num_complex::Complex64;
use olim_wrt::specfun::{
    bernoulli2_periodic, clausen2, dilog, dilog_unit_circle_decomposition, principal_log,
};
use proptest::prelude::*;

fn polar_point() -> impl Strategy<Value = Complex64> {
    // log-uniform modulus in [1e-3, 1e3], argument kept off the positive real axis
    (-3.0f64..3.0, 0.01f64..(2.0 * PI - 0.01))
        .prop_map(|(lr, arg)| Complex64::from_polar(10f64.powf(lr), arg))
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * 1f64.max(b.norm())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn inversion_identity(z in polar_point()) {
        // Li₂(z) + Li₂(1/z) = -π²/6 - ½ Log²(-z)  off [0, ∞)
        let lhs = dilog(z).unwrap() + dilog(z.inv()).unwrap();
        let l = principal_log(-z);
        let rhs = -PI * PI / 6.0 - 0.5 * l * l;
        prop_assert!(close(lhs, rhs, 1e-11), "z={z}: {lhs} vs {rhs}");
    }

    #[test]
    fn landen_identity(z in polar_point()) {
        // Li₂(z) + Li₂(z/(z-1)) = -½ Log²(1-z)  off [1, ∞)
        let lhs = dilog(z).unwrap() + dilog(z / (z - 1.0)).unwrap();
        let l = principal_log(1.0 - z);
        let rhs = -0.5 * l * l;
        prop_assert!(close(lhs, rhs, 1e-11), "z={z}: {lhs} vs {rhs}");
    }

    #[test]
    fn conjugation_symmetry(z in polar_point()) {
        let a = dilog(z.conj()).unwrap();
        let b = dilog(z).unwrap().conj();
        prop_assert!(close(a, b, 1e-13));
    }

    #[test]
    fn clausen_is_odd_and_periodic(theta in -10.0f64..10.0) {
        let c = clausen2(theta).unwrap();
        prop_assert!((c + clausen2(-theta).unwrap()).abs() < 1e-13);
        prop_assert!((c - clausen2(theta + 2.0 * PI).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn unit_circle_decomposition_at_360_angles() {
    for k in 0..360 {
        let theta = 2.0 * PI * f64::from(k) / 360.0;
        let li = dilog(Complex64::from_polar(1.0, theta)).unwrap();
        let (re, im) = dilog_unit_circle_decomposition(theta).unwrap();
        assert!((li.re - re).abs() < 1e-10, "k={k}: {} vs {re}", li.re);
        assert!((li.im - im).abs() < 1e-10, "k={k}: {} vs {im}", li.im);
    }
}

#[test]
fn bernoulli_values() {
    assert!((bernoulli2_periodic(0.0) - 1.0 / 6.0).abs() < 1e-15);
    assert!((bernoulli2_periodic(0.5) + 1.0 / 12.0).abs() < 1e-15);
    assert!((bernoulli2_periodic(1.25) - bernoulli2_periodic(0.25)).abs() < 1e-15);
    // B̄₂(1/6) - B̄₂(-1/6) = 0, so the p → ∞ value is purely imaginary
    assert!((bernoulli2_periodic(1.0 / 6.0) - bernoulli2_periodic(-1.0 / 6.0)).abs() < 1e-15);
}

#[test]
fn dilog_special_values() {
    let z = |re| Complex64::new(re, 0.0);
    assert!((dilog(z(1.0)).unwrap() - PI * PI / 6.0).norm() < 1e-15);
    assert!((dilog(z(-1.0)).unwrap() + PI * PI / 12.0).norm() < 1e-15);
    let half = PI * PI / 12.0 - 0.5 * 2f64.ln().powi(2);
    assert!((dilog(z(0.5)).unwrap() - half).norm() < 1e-15);
    assert_eq!(dilog(z(0.0)).unwrap(), z(0.0));
}
