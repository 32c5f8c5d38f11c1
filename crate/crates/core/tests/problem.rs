use halfline_heat::problem::{check_compatibility, eval_data, MAX_DERIVATIVE_ORDER};
use halfline_heat::*;
use proptest::prelude::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

#[test]
fn data_evaluation_examples() {
    let p = HalfLineProblem::caloric(1.0, 1.0).unwrap();
    assert_eq!(eval_data(&p, Which::Initial, 0, 0.0).unwrap(), 1.0);
    assert_eq!(eval_data(&p, Which::Initial, 3, 0.0).unwrap(), -1.0);
    let v = eval_data(&p, Which::Boundary, 2, 0.5).unwrap();
    assert!(close(v, 0.5f64.exp(), 1e-15));
}

#[test]
fn data_evaluation_rejects_bad_input() {
    let p = HalfLineProblem::caloric(1.0, 1.0).unwrap();
    assert!(matches!(eval_data(&p, Which::Initial, 0, -0.1), Err(Error::Domain(_))));
    assert!(matches!(
        eval_data(&p, Which::Initial, MAX_DERIVATIVE_ORDER + 1, 0.0),
        Err(Error::UnsupportedOrder { .. })
    ));
}

#[test]
fn initial_data_must_decay() {
    assert!(HalfLineProblem::new(DataFamily::Constant { c: 1.0 }, DataFamily::Constant { c: 1.0 }, "c").is_err());
    assert!(HalfLineProblem::new(DataFamily::Poly { coeffs: vec![1.0] }, DataFamily::Constant { c: 1.0 }, "p").is_err());
    assert!(HalfLineProblem::new(DataFamily::ExpDecay { a: 1.0, b: -1.0 }, DataFamily::Constant { c: 1.0 }, "e").is_err());
}

#[test]
fn compatibility_examples() {
    let p = HalfLineProblem::caloric(1.0, 1.0).unwrap();
    let r = check_compatibility(&p, 3, 1e-10).unwrap();
    assert!(r.order >= 3);
    assert!(r.discrepancies.iter().all(|d| d.1 == 0.0));

    let r = check_compatibility(&HalfLineProblem::erfc_step(), 0, 1e-10).unwrap();
    assert_eq!(r.discrepancies, vec![(0, -1.0)]);
    assert_eq!(r.order, -1);

    let p = HalfLineProblem::caloric(1.0, 2.0).unwrap();
    let r = check_compatibility(&p, 2, 1e-10).unwrap();
    assert_eq!(r.order, 2);
    assert!(r.discrepancies.iter().all(|d| d.1.abs() <= 1e-10 * 16.0));
}

#[test]
fn compatibility_order_stops_at_first_mismatch() {
    // u₀ = e^{-x} + x² e^{-x}: u₀(0) = 1, u₀''(0) = 1 + 2 - 0 = 3 ≠ g₀'(0) = 1.
    let p = HalfLineProblem::new(
        DataFamily::PolyExp { coeffs: vec![1.0, 0.0, 1.0], b: 1.0 },
        DataFamily::ExpGrow { a: 1.0, c: 1.0 },
        "poly",
    )
    .unwrap();
    let r = check_compatibility(&p, 3, 1e-10).unwrap();
    assert_eq!(r.order, 0);
    assert!(close(r.discrepancies[1].1, 2.0, 1e-12));
}

#[test]
fn compatibility_order_is_capped() {
    let p = HalfLineProblem::caloric(1.0, 1.0).unwrap();
    assert!(check_compatibility(&p, MAX_DERIVATIVE_ORDER / 2 + 1, 1e-10).is_err());
}

#[test]
fn gaussian_derivatives_match_hermite_values() {
    // d²/dx² e^{-x²} = (4x² - 2) e^{-x²}; d⁴ = (16x⁴ - 48x² + 12) e^{-x²}.
    let g = DataFamily::Gaussian { a: 1.0, b: 1.0 };
    for &x in &[0.0f64, 0.3, 1.0, 2.5] {
        let e = (-x * x).exp();
        assert!(close(g.derivative(2, x), (4.0 * x * x - 2.0) * e, 1e-14));
        assert!(close(g.derivative(4, x), (16.0 * x.powi(4) - 48.0 * x * x + 12.0) * e, 1e-13));
    }
}

#[test]
fn closed_forms() {
    let p = HalfLineProblem::caloric(2.0, 1.5).unwrap();
    assert!(close(p.closed_form(1.0, 0.5).unwrap(), 2.0 * (2.25 * 0.5 - 1.5f64).exp(), 1e-15));
    let e = HalfLineProblem::erfc_step();
    assert!(close(e.closed_form(1.0, 1.0).unwrap(), 0.4795001221869535, 1e-15));
    assert!(HalfLineProblem::gaussian_unit_boundary().closed_form(1.0, 1.0).is_none());
}

fn family() -> impl Strategy<Value = DataFamily> {
    prop_oneof![
        (-2.0..2.0f64, 0.2..3.0f64).prop_map(|(a, b)| DataFamily::ExpDecay { a, b }),
        (-2.0..2.0f64, 0.2..2.0f64).prop_map(|(a, b)| DataFamily::Gaussian { a, b }),
        (prop::collection::vec(-2.0..2.0f64, 1..4), 0.5..2.0f64).prop_map(|(coeffs, b)| DataFamily::PolyExp { coeffs, b }),
        (-2.0..2.0f64, -1.0..1.0f64).prop_map(|(a, c)| DataFamily::ExpGrow { a, c }),
        prop::collection::vec(-2.0..2.0f64, 1..5).prop_map(|coeffs| DataFamily::Poly { coeffs }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn derivatives_match_finite_differences(f in family(), n in 1usize..=6) {
        let h = 1e-3;
        for j in 0..20 {
            let s = 0.25 + 4.75 * j as f64 / 19.0;
            let d = |s: f64| f.derivative(n - 1, s);
            let fd = (d(s - 2.0 * h) - 8.0 * d(s - h) + 8.0 * d(s + h) - d(s + 2.0 * h)) / (12.0 * h);
            let exact = f.derivative(n, s);
            let scale = exact.abs().max(f.derivative(n - 1, s).abs()).max(1e-3);
            prop_assert!((fd - exact).abs() <= 1e-6 * scale, "n={} s={} fd={} exact={}", n, s, fd, exact);
        }
    }

    #[test]
    fn caloric_data_compatible_to_every_order(a in -3.0..3.0f64, b in 0.3..2.0f64) {
        prop_assume!(a.abs() > 1e-3);
        let p = HalfLineProblem::caloric(a, b).unwrap();
        for n in 0..=MAX_DERIVATIVE_ORDER / 2 {
            let r = check_compatibility(&p, n, 1e-10).unwrap();
            prop_assert!(r.order >= n as i64);
        }
    }

    #[test]
    fn initial_families_decay(f in family()) {
        prop_assume!(f.decays());
        for n in 0..=3 {
            let weighted = |x: f64| x.powi(3) * f.derivative(n, x).abs();
            prop_assert!((0..=500).all(|j| weighted(0.1 * j as f64).is_finite()));
            prop_assert!(weighted(200.0) <= weighted(100.0), "n={}", n);
        }
    }
}
