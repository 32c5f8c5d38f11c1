use halfline_heat::boundary::*;
use halfline_heat::studies::*;
use halfline_heat::*;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn zero() -> HalfLineProblem {
    HalfLineProblem::boundary_only(DataFamily::Constant { c: 0.0 }, "zero").unwrap()
}

fn battery() -> Vec<HalfLineProblem> {
    vec![
        HalfLineProblem::caloric(1.0, 1.0).unwrap(),
        HalfLineProblem::erfc_step(),
        HalfLineProblem::gaussian_unit_boundary(),
    ]
}

fn within(r: &TraceResult, exact: f64, slack: f64) -> bool {
    (r.value - exact).abs() <= 10.0 * r.est_error + slack
}

#[test]
fn trace_examples() {
    let cal = HalfLineProblem::caloric(1.0, 1.0).unwrap();
    let e = 1f64.exp();
    let r = trace_x_to_0(&cal, 0, 1.0, &cfg()).unwrap();
    assert!(r.converged && (r.value - e).abs() < 1e-8, "{r:?}");
    let r = trace_x_to_0(&cal, 2, 1.0, &cfg()).unwrap();
    assert!((r.value - e).abs() < 1e-6, "{r:?}");
    let r = trace_t_to_0(&cal, 0, 1.0, &cfg()).unwrap();
    assert!((r.value - (-1f64).exp()).abs() < 1e-8, "{r:?}");
    let r = trace_t_to_0(&cal, 1, 1.0, &cfg()).unwrap();
    assert!((r.value - (-1f64).exp()).abs() < 1e-6, "{r:?}");
    let r = trace_t_to_0(&HalfLineProblem::erfc_step(), 0, 1.0, &cfg()).unwrap();
    assert!(r.value.abs() < 1e-8, "{r:?}");
    for n in 0..3 {
        assert_eq!(trace_x_to_0(&zero(), n, 0.7, &cfg()).unwrap().value, 0.0);
        assert_eq!(trace_t_to_0(&zero(), n.min(1), 0.7, &cfg()).unwrap().value, 0.0);
    }
}

#[test]
fn trace_sequences_are_geometric() {
    let r = trace_x_to_0(&HalfLineProblem::erfc_step(), 0, 0.5, &cfg()).unwrap();
    assert_eq!(r.approximants.len(), TRACE_LEVELS + 1);
    assert_eq!(r.approximants[0].0, TRACE_X_START);
    assert!(r.approximants.windows(2).all(|w| w[1].0 == 0.5 * w[0].0));
    assert!(r.est_error >= 0.0);
}

#[test]
fn trace_preconditions() {
    let p = HalfLineProblem::erfc_step();
    assert!(trace_x_to_0(&p, 0, 0.0, &cfg()).is_err());
    assert!(trace_t_to_0(&p, 0, 0.0, &cfg()).is_err());
    assert!(matches!(
        trace_t_to_0_with(&p, 0, 1.0, 0.5, 4, 0.5, &cfg()),
        Err(Error::Horizon { .. })
    ));
    assert!(trace_x_to_0_with(&p, 0, 1.0, 0.5, 1, &cfg()).is_err());
}

#[test]
fn boundary_traces_follow_the_time_derivatives_of_g() {
    for p in battery() {
        for n in 0..=2 {
            for t in [0.5, 1.0] {
                let r = trace_x_to_0(&p, 2 * n, t, &cfg()).unwrap();
                let exact = p.g0.derivative(n, t);
                assert!(within(&r, exact, 1e-9), "{} n={n} t={t}: {r:?} vs {exact}", p.label);
            }
        }
    }
}

#[test]
fn initial_traces_follow_the_even_derivatives_of_u0() {
    for p in battery() {
        for n in 0..=1 {
            for x in [0.5, 1.0, 2.0] {
                let r = trace_t_to_0(&p, n, x, &cfg()).unwrap();
                let exact = p.u0.derivative(2 * n, x);
                assert!(within(&r, exact, 1e-9), "{} n={n} x={x}: {r:?} vs {exact}", p.label);
            }
        }
    }
}

#[test]
fn gaps_shrink_towards_the_boundary_and_the_initial_line() {
    let near: Vec<f64> = (1..=6).map(|j| 0.5f64.powi(j)).collect();
    let far = [0.2, 0.5, 1.0, 2.0];
    for p in battery() {
        let rows = boundary_gap_profile(&p, &near, &far, &cfg()).unwrap();
        assert!(is_strictly_decreasing(&rows), "{} {rows:?}", p.label);
        let rows = initial_gap_profile(&p, &near, &far, &cfg()).unwrap();
        assert!(is_strictly_decreasing(&rows), "{} {rows:?}", p.label);
    }
    let rows = boundary_gap_profile(&zero(), &near, &far, &cfg()).unwrap();
    assert!(rows.iter().all(|r| r.1 == 0.0));
}

#[test]
fn error_estimates_cover_the_true_error() {
    // ∂ₓu(0, t) of the two oracles: -e^t and -1/√(πt).
    let slopes: [Option<fn(f64) -> f64>; 3] = [
        Some(|t: f64| -t.exp()),
        Some(|t: f64| -1.0 / (core::f64::consts::PI * t).sqrt()),
        None,
    ];
    let mut covered = 0;
    let mut total = 0;
    let mut tally = |r: TraceResult, exact: f64| {
        total += 1;
        if (r.value - exact).abs() <= r.est_error.max(1e-12) {
            covered += 1;
        }
    };
    for (p, slope) in battery().iter().zip(slopes) {
        for (n, t) in [(0, 0.5), (0, 1.0), (2, 1.0)] {
            tally(trace_x_to_0(p, n, t, &cfg()).unwrap(), p.g0.derivative(n / 2, t));
        }
        if let Some(slope) = slope {
            for t in [0.5, 2.0] {
                tally(trace_x_to_0(p, 1, t, &cfg()).unwrap(), slope(t));
            }
        }
        for x in [0.5, 1.0, 2.0] {
            tally(trace_t_to_0(p, 0, x, &cfg()).unwrap(), p.u0.value(x));
        }
    }
    assert!(10 * covered >= 9 * total, "{covered} of {total}");
}

#[test]
fn compatible_corner_limits_agree() {
    let b = 1.0f64;
    let p = HalfLineProblem::caloric(1.0, b).unwrap();
    for k in 0..=5 {
        let c = corner_limit(&p, k, &cfg()).unwrap();
        assert_eq!(c.k, k);
        assert!(c.compat_order >= 3);
        assert_eq!(c.predicted_limit, Some((-b).powi(k as i32)));
        assert_eq!(c.agrees, Some(true), "k={k} {c:?}");
        for (path, r) in &c.paths {
            assert!((r.value - (-b).powi(k as i32)).abs() < 1e-2, "k={k} {}", path.name());
        }
    }
}

#[test]
fn incompatible_corner_has_no_limit() {
    let c = corner_limit(&HalfLineProblem::erfc_step(), 0, &cfg()).unwrap();
    assert_eq!(c.compat_order, -1);
    assert_eq!(c.predicted_limit, None);
    assert_eq!(c.agrees, None);
    assert!(c.spread() > 0.3);
    let limit = |path| c.paths.iter().find(|p| p.0 == path).unwrap().1.value;
    assert!((limit(CornerPath::Diagonal) - 1.0).abs() < 0.1);
    assert!((limit(CornerPath::Parabolic) - special::erfc(0.5)).abs() < 1e-6);
}

#[test]
fn zero_corner() {
    for k in [0, 3] {
        let c = corner_limit(&zero(), k, &cfg()).unwrap();
        assert!(c.paths.iter().all(|(_, r)| r.value == 0.0));
        assert_eq!(c.spread(), 0.0);
    }
}

#[test]
fn derivative_chain() {
    let r = corollary_chain_check(&HalfLineProblem::caloric(1.0, 1.0).unwrap(), 1, &cfg()).unwrap();
    assert_eq!(r.rows.len(), CHAIN_TIMES.len());
    assert!(r.max_mismatch <= 1e-4, "{r:?}");
    for row in &r.rows {
        assert!((row.next_trace + row.t.exp()).abs() < 1e-6);
    }
    let r = corollary_chain_check(&HalfLineProblem::caloric(1.0, 2.0).unwrap(), 1, &cfg()).unwrap();
    assert!(r.max_mismatch <= 1e-3, "{r:?}");
    let r = corollary_chain_check(&zero(), 1, &cfg()).unwrap();
    assert_eq!(r.max_mismatch, 0.0);
    assert!(matches!(
        corollary_chain_check(&HalfLineProblem::erfc_step(), 1, &cfg()),
        Err(Error::Domain(_))
    ));
}

#[test]
fn decay_profiles() {
    let xs = [5.0, 10.0, 20.0];
    let cal = HalfLineProblem::caloric(1.0, 1.0).unwrap();
    let rows = decay_profile(&cal, 3, 0, 1.0, &xs, Representation::GaussKernel, &cfg()).unwrap();
    for &(x, v) in &rows {
        let exact = x.powi(3) * (1.0 - x).exp();
        assert!((v - exact).abs() <= 1e-9 * exact, "{x}: {v} vs {exact}");
    }
    assert!(is_strictly_decreasing(&rows));

    let rows = decay_profile(&HalfLineProblem::erfc_step(), 2, 0, 1.0, &xs, Representation::GaussKernel, &cfg()).unwrap();
    for &(x, v) in &rows {
        let exact = x * x * special::erfc(x / 2.0);
        assert!((v - exact).abs() <= 1e-9 * exact, "{x}: {v} vs {exact}");
    }
    assert!(is_strictly_decreasing(&rows));

    let rows = decay_profile(&zero(), 3, 1, 1.0, &xs, Representation::FokasContour, &cfg()).unwrap();
    assert!(rows.iter().all(|r| r.1 == 0.0));
    assert!(decay_profile(&cal, 3, 0, 1.0, &[5.0, 5.0], Representation::GaussKernel, &cfg()).is_err());
}

#[test]
fn node_doubling_converges_fast() {
    let cal = HalfLineProblem::caloric(1.0, 1.0).unwrap();
    let s = node_doubling_study(&cal, 1.0, 1.0, &NodeStudyOptions::default(), &cfg()).unwrap();
    assert_eq!(s.rows.len(), 5);
    assert_eq!(s.reductions.len(), 4);
    assert!(s.reductions.iter().all(|&r| r >= 4.0), "{:?}", s.reductions);
    assert!(s.fitted_order.unwrap() >= 2.0);

    let g = HalfLineProblem::gaussian_unit_boundary();
    let s = node_doubling_study(&g, 1.0, 1.0, &NodeStudyOptions::default(), &cfg()).unwrap();
    assert!(s.rows.iter().all(|r| r.error.is_none()));
    assert_eq!(s.reductions.len(), 3);

    let s = node_doubling_study(&zero(), 1.0, 1.0, &NodeStudyOptions::default(), &cfg()).unwrap();
    assert!(s.rows.iter().all(|r| r.value == 0.0));
    let bad = NodeStudyOptions { doublings: 0, ..Default::default() };
    assert!(node_doubling_study(&cal, 1.0, 1.0, &bad, &cfg()).is_err());
}

#[test]
fn radius_doubling_stays_below_the_tail_bound() {
    for p in battery() {
        let rows = radius_study(&p, 1.0, 1.0, &[5.0, 10.0, 20.0], &cfg()).unwrap();
        for r in &rows {
            assert!(r.change <= r.bound + r.est_error, "{} {r:?}", p.label);
        }
    }
    let rows = radius_study(&zero(), 1.0, 1.0, &[5.0], &cfg()).unwrap();
    assert_eq!(rows[0].change, 0.0);
    assert_eq!(rows[0].bound, 0.0);
}
