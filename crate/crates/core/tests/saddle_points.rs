use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Rational64;
use olim_wrt::potential::{branch_correct, fig8_potential};
use olim_wrt::quantum_invariants::SurgeryCoefficient;
use olim_wrt::saddle_solver::{
    geometric_candidate, residual_fig8, solve_fig8, solve_fig8_report, symmetry_orbit, Label,
    SaddlePoint, Sheet, SolverOptions,
};
use olim_wrt::specfun::principal_log;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn solve(p: i64) -> Vec<SaddlePoint> {
    solve_fig8(p, &SolverOptions::default()).unwrap()
}

fn find(points: &[SaddlePoint], zeta: Complex64, omega: Complex64, tol: f64) -> Option<&SaddlePoint> {
    points
        .iter()
        .find(|pt| (pt.zeta - zeta).norm() < tol && (pt.omega - omega).norm() < tol)
}

#[test]
fn six_surgery_solution_set() {
    let points = solve(6);
    assert_eq!(points.len(), 6);
    let z1 = c(-0.829_483_541_0, -0.558_531_158_7);
    let w1 = c(-2.205_569_430, -0.370_381_135_7e-9);
    let z2 = c(0.367_939_031_4, -0.497_267_588_9);
    let w2 = c(0.102_784_715_2, -0.665_456_951_3);
    let expected = [
        (z1, w1),
        (z2, w2),
        (z1.inv(), w1),
        (z2.conj(), w2.conj()),
        (z2.inv(), w2),
        (z2.conj().inv(), w2.conj()),
    ];
    for (z, w) in expected {
        let pt = find(&points, z, w, 1e-8).unwrap_or_else(|| panic!("missing ({z}, {w})"));
        assert!(pt.residual < 1e-9);
    }
    let geo = geometric_candidate(&points).unwrap();
    assert!((geo.zeta - z2).norm() < 1e-9);
    assert_eq!(geo.correction.c, vec![Rational64::from_integer(0); 2]);
    assert!((geo.value() - c(1.340_917_487, 1.284_485_301)).norm() < 1e-8);
    let p1 = find(&points, z1, w1, 1e-8).unwrap();
    assert!((p1.value() - c(13.767_505_70, 0.0)).norm() < 1e-8);
    assert_eq!(p1.label, Label::UnitModulus);
}

#[test]
fn branch_vector_at_the_printed_point() {
    // ω₁ as printed, with its tiny negative imaginary part
    let point = [c(-0.829_483_541_0, -0.558_531_158_7), c(-2.205_569_430, -0.370_381_135_7e-9)];
    let corr = branch_correct(&fig8_potential(6), &point).unwrap();
    assert_eq!(corr.c, vec![Rational64::from_integer(1), Rational64::from_integer(0)]);
    assert!((corr.value - c(13.767_505_70, 0.0)).norm() < 1e-8);
    let expected = corr.uncorrected + c(0.0, 2.0 * PI) * principal_log(point[0]);
    assert!((corr.value - expected).norm() < 1e-14);
}

#[test]
fn hyperbolic_table() {
    let table = [
        (5, c(0.197_982_365_6, -0.443_834_120_9), c(0.007_552_359_501, -0.513_115_795_5)),
        (6, c(0.367_939_031_4, -0.497_267_588_9), c(0.102_784_715_2, -0.665_456_951_3)),
        (7, c(0.485_504_690_4, -0.504_296_052_5), c(0.176_140_505_9, -0.745_555_924_8)),
        (8, c(0.573_013_413_2, -0.494_098_312_7), c(0.232_785_616_1, -0.792_551_992_7)),
        (9, c(0.640_427_670_6, -0.476_586_817_9), c(0.276_963_232_4, -0.821_640_158_7)),
        (10, c(0.693_529_801_5, -0.456_160_797_8), c(0.311_810_826_9, -0.840_239_891_2)),
    ];
    for (p, z, w) in table {
        let points = solve(p);
        let geo = geometric_candidate(&points).unwrap();
        assert!((geo.zeta - z).norm() < 1e-9, "p={p}: {}", geo.zeta);
        assert!((geo.omega - w).norm() < 1e-9, "p={p}: {}", geo.omega);
        assert!(geo.value().im > 0.0);
    }
}

#[test]
fn non_hyperbolic_points() {
    let p0 = solve(0);
    let pt = find(&p0, c(0.381_966_011, 0.0), c(1.0, 0.0), 1e-8).unwrap();
    assert!(pt.value().norm() < 1e-8);
    for (p, z, w) in [
        (1, 0.373_817_876_2, 0.801_937_735_5),
        (2, 0.346_014_339, 0.618_033_988_4),
        (3, 0.281_971_680_1, 0.414_213_562_3),
    ] {
        let points = solve(p);
        let pt = find(&points, c(z, 0.0), c(w, 0.0), 1e-8).unwrap_or_else(|| panic!("p={p}"));
        assert_eq!(pt.label, Label::Real);
    }
}

#[test]
fn four_surgery_regression() {
    let points = solve(4);
    let pt = find(&points, c(-1.0, 0.0), c(-0.381_966_011, 0.0), 1e-8).unwrap();
    assert!((pt.value() - c(1.973_920_880, 0.0)).norm() < 1e-8);
    assert!((pt.value() - c(PI * PI / 5.0, 0.0)).norm() < 1e-7);
}

#[test]
fn solution_sets_are_closed_under_the_symmetries() {
    for p in -4..=14 {
        let points = solve(p);
        for pt in &points {
            for (z, w) in symmetry_orbit(pt.zeta, pt.omega, 1e-9) {
                assert!(residual_fig8(p, z, w) < 1e-9, "p={p}");
                assert!(find(&points, z, w, 1e-8).is_some(), "p={p}: ({z}, {w}) missing");
            }
        }
    }
}

#[test]
fn elimination_and_newton_agree() {
    // Points missed by elimination are exactly those where the denominator
    // 1 + z^{p/2}·z of ω = A/B vanishes.
    for p in -4..=30 {
        let report = solve_fig8_report(p, &SolverOptions::default()).unwrap();
        assert!(report.diagnostics.is_empty(), "p={p}: {:?}", report.diagnostics);
        for pt in &report.points {
            assert!(pt.origin.newton || pt.origin.elimination);
            if !pt.origin.elimination {
                let mut zp = (p as f64 / 2.0 * principal_log(pt.zeta)).exp();
                if pt.sheet == Sheet::Opposite {
                    zp = -zp;
                }
                assert!((1.0 + zp * pt.zeta).norm() < 1e-6, "p={p}: {}", pt.zeta);
            }
        }
    }
}

#[test]
fn labels_and_order() {
    for p in [-3, 0, 4, 6, 11, 26] {
        let points = solve(p);
        assert!(points.windows(2).all(|w| w[0].label <= w[1].label), "p={p}");
        assert!(points.iter().filter(|pt| pt.label == Label::GeometricCandidate).count() <= 1);
        if let Some(geo) = geometric_candidate(&points) {
            let best = points
                .iter()
                .filter(|pt| (pt.zeta - 1.0).norm() > 1e-9)
                .map(|pt| pt.value().im)
                .fold(f64::MIN, f64::max);
            assert!(geo.value().im >= best - 1e-9, "p={p}");
        }
    }
    for p in 1..=3 {
        assert!(geometric_candidate(&solve(p)).is_none(), "p={p}");
    }
}

#[test]
fn deterministic() {
    for p in [5, 6, 22] {
        assert_eq!(solve(p), solve(p));
    }
}

#[test]
fn invalid_requests() {
    let opts = SolverOptions::default();
    assert!(solve_fig8(SurgeryCoefficient::Infinity, &opts).is_err());
    assert!(solve_fig8(200_000, &opts).is_err());
    let bad = SolverOptions {
        grid_density: 0,
        ..opts
    };
    assert!(solve_fig8(6, &bad).is_err());
}
