//! Acceptance battery. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any failed.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;
use std::time::Instant;

use halfline_heat::boundary::*;
use halfline_heat::extrapolation::richardson;
use halfline_heat::quadrature::*;
use halfline_heat::representations::*;
use halfline_heat::special::erfc;
use halfline_heat::studies::*;
use halfline_heat::*;

const XS: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 5.0];
const TS: [f64; 4] = [0.1, 0.5, 1.0, 2.0];
const HORIZON: f64 = 3.0;

type Outcome = Result<(bool, String)>;

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn all_reps() -> [Representation; 4] {
    [
        Representation::FokasContour,
        Representation::Ehrenpreis { horizon: HORIZON },
        Representation::GaussKernel,
        Representation::SineTransform,
    ]
}

fn grid() -> impl Iterator<Item = (f64, f64)> {
    XS.iter().flat_map(|&x| TS.iter().map(move |&t| (x, t)))
}

fn caloric(b: f64) -> HalfLineProblem {
    HalfLineProblem::caloric(1.0, b).unwrap()
}

/// Largest `|u - exact|` over the grid and all four forms.
fn oracle_error(p: &HalfLineProblem, exact: impl Fn(f64, f64) -> f64) -> Result<f64> {
    let mut worst = 0.0f64;
    for (x, t) in grid() {
        for rep in all_reps() {
            worst = worst.max((eval(p, rep, x, t, &cfg())?.value - exact(x, t)).abs());
        }
    }
    Ok(worst)
}

fn caloric_oracle() -> Outcome {
    let mut worst = 0.0f64;
    for b in [1.0, 2.0] {
        worst = worst.max(oracle_error(&caloric(b), |x, t| (b * b * t - b * x).exp())?);
    }
    Ok((worst <= 1e-7, format!("max error {worst:.2e}")))
}

fn classical_oracle() -> Outcome {
    let worst = oracle_error(&HalfLineProblem::erfc_step(), |x, t| erfc(x / (2.0 * t.sqrt())))?;
    Ok((worst <= 1e-6, format!("max error {worst:.2e}")))
}

fn equivalence() -> Outcome {
    let mut worst = 0.0f64;
    for p in [caloric(1.0), HalfLineProblem::erfc_step(), HalfLineProblem::gaussian_unit_boundary()] {
        for (x, t) in grid() {
            let vs = all_reps()
                .iter()
                .map(|&r| eval(&p, r, x, t, &cfg()).map(|e| e.value))
                .collect::<Result<Vec<_>>>()?;
            let hi = vs.iter().cloned().fold(f64::MIN, f64::max);
            let lo = vs.iter().cloned().fold(f64::MAX, f64::min);
            worst = worst.max(hi - lo);
        }
    }
    Ok((worst <= 1e-7, format!("max spread {worst:.2e}")))
}

fn pde_residual() -> Outcome {
    let mut worst = 0.0f64;
    for p in [caloric(1.0), caloric(2.0), HalfLineProblem::erfc_step(), HalfLineProblem::gaussian_unit_boundary()] {
        for (x, t) in grid() {
            let ut = eval_dt(&p, 1, x, t, HORIZON, &cfg())?.value;
            let uxx = eval_dx(&p, 2, x, t, &cfg())?.value;
            worst = worst.max((ut - uxx).abs());
        }
    }
    Ok((worst <= 1e-6, format!("max residual {worst:.2e}")))
}

fn contour_identities() -> Outcome {
    let mut plane = 0.0f64;
    for x in [0.5, 1.0, 2.0] {
        plane = plane.max(integrate_gamma(|l| (C64::i() * l * x).exp(), &ContourSpec::default(), &cfg())?.value.norm());
    }
    let term = BoundaryTerm {
        coeff: C64::new(1.0, 0.0),
        power: 1,
        rate: 0.0,
    };
    let inverse = boundary_term_integral(&term, 0.0, 1.0, &cfg())?.value.norm();
    let vals = [1e-1, 1e-2, 1e-3, 1e-4]
        .iter()
        .map(|&x| boundary_term_integral(&term, x, 1.0, &cfg()).map(|e| e.value))
        .collect::<Result<Vec<_>>>()?;
    let re = richardson(&vals.iter().map(|v| v.re).collect::<Vec<_>>(), 10.0, 1e-12).value;
    let im = richardson(&vals.iter().map(|v| v.im).collect::<Vec<_>>(), 10.0, 1e-12).value;
    let half = C64::new(re, im - FRAC_PI_2).norm();
    Ok((
        plane <= 1e-10 && inverse <= 1e-10 && half <= 1e-4,
        format!("|∫e^(iλx)| {plane:.1e}, |∫1/λ| {inverse:.1e}, limit off iπ/2 by {half:.1e}"),
    ))
}

fn orientation() -> Outcome {
    // g̃₀(λ, T) = (e^{λ²T} - 1)/λ² for g₀ = 1, so the integrand is
    // (e^{λ²(T-t)} - e^{-λ²t})/λ, which converges only conditionally.
    let (t, horizon) = (1.0, 2.0);
    let split = SplitIntegrand {
        x: 0.0,
        full: move |l: C64| ((l * l * (horizon - t)).exp() - (-l * l * t).exp()) / l,
        remainder: |_: C64| C64::new(0.0, 0.0),
        terms: vec![
            BoundaryTerm {
                coeff: C64::new(1.0, 0.0),
                power: 1,
                rate: horizon - t,
            },
            BoundaryTerm {
                coeff: C64::new(-1.0, 0.0),
                power: 1,
                rate: -t,
            },
        ],
        chirp: 0.0,
    };
    let v = C64::new(0.0, 1.0 / PI) * integrate_gamma_conditional(split, &ContourSpec::default(), &cfg())?.value;
    let off = (v + 1.0).norm();
    Ok((off <= 1e-5, format!("value {:.8} + {:.1e}i", v.re, v.im)))
}

fn half_values() -> Outcome {
    let mut worst = 0.0f64;
    for g in [DataFamily::Constant { c: 1.0 }, DataFamily::ExpGrow { a: 1.0, c: 1.0 }] {
        let p = HalfLineProblem::boundary_only(g.clone(), "g")?;
        for t in [0.5, 1.0] {
            let gt = g.value(t);
            worst = worst.max((eval_fokas_at_x0(&p, t, &cfg())?.value - gt / 2.0).abs());
            worst = worst.max((eval_ehrenpreis_at_x0(&p, t, HORIZON, &cfg())?.value - gt).abs());
        }
    }
    Ok((worst <= 1e-4, format!("max error {worst:.2e}")))
}

fn traces() -> Outcome {
    let mut ok = true;
    let mut worst = [0.0f64; 4];
    for p in [caloric(1.0), HalfLineProblem::erfc_step(), HalfLineProblem::gaussian_unit_boundary()] {
        for (anchor_t, anchor_x) in [(0.5, 0.5), (1.0, 1.0)] {
            let errs = [
                (trace_x_to_0(&p, 0, anchor_t, &cfg())?.value - p.g0.value(anchor_t)).abs(),
                (trace_x_to_0(&p, 2, anchor_t, &cfg())?.value - p.g0.derivative(1, anchor_t)).abs(),
                (trace_t_to_0(&p, 0, anchor_x, &cfg())?.value - p.u0.value(anchor_x)).abs(),
                (trace_t_to_0(&p, 1, anchor_x, &cfg())?.value - p.u0.derivative(2, anchor_x)).abs(),
            ];
            for (w, e) in worst.iter_mut().zip(errs) {
                *w = w.max(e);
            }
        }
    }
    for (w, tol) in worst.iter().zip([1e-4, 1e-3, 1e-5, 1e-3]) {
        ok &= w <= &tol;
    }
    Ok((
        ok,
        format!(
            "g0 {:.1e}, g0' {:.1e}, u0 {:.1e}, u0'' {:.1e}",
            worst[0], worst[1], worst[2], worst[3]
        ),
    ))
}

fn corners() -> Outcome {
    let b = 1.0f64;
    let p = caloric(b);
    let mut worst = 0.0f64;
    let mut agree = true;
    for k in 0..=5 {
        let c = corner_limit(&p, k, &cfg())?;
        agree &= c.agrees == Some(true);
        for (_, r) in &c.paths {
            worst = worst.max((r.value - (-b).powi(k as i32)).abs());
        }
    }
    let c = corner_limit(&HalfLineProblem::erfc_step(), 0, &cfg())?;
    let limit = |path| c.paths.iter().find(|p| p.0 == path).map(|p| p.1.value).unwrap_or(f64::NAN);
    let (diag, par) = (limit(CornerPath::Diagonal), limit(CornerPath::Parabolic));
    let gap = (diag - par).abs();
    let matches_erfc = (diag - 1.0).abs() < 0.1 && (par - erfc(0.5)).abs() < 1e-3;
    Ok((
        worst <= 1e-2 && agree && gap > 0.3 && matches_erfc && c.predicted_limit.is_none(),
        format!("caloric max error {worst:.1e}; step diagonal {diag:.4} vs parabolic {par:.4}"),
    ))
}

fn chain() -> Outcome {
    let r = corollary_chain_check(&caloric(1.0), 1, &cfg())?;
    Ok((r.max_mismatch <= 1e-3, format!("max mismatch {:.1e}", r.max_mismatch)))
}

fn decay() -> Outcome {
    let xs = [5.0, 10.0, 20.0, 40.0];
    let mut ok = true;
    for p in [caloric(1.0), HalfLineProblem::erfc_step()] {
        for t in [0.5, 2.0] {
            let rows = decay_profile(&p, 3, 0, t, &xs, Representation::GaussKernel, &cfg())?;
            ok &= is_strictly_decreasing(&rows);
        }
    }
    Ok((ok, "x³|u| over x = 5, 10, 20, 40 at t = 0.5, 2".into()))
}

fn convergence() -> Outcome {
    let p = caloric(1.0);
    let s = node_doubling_study(&p, 1.0, 1.0, &NodeStudyOptions::default(), &cfg())?;
    let fastest_enough = s.reductions.len() == 4 && s.reductions.iter().all(|&r| r >= 4.0);
    let rows = radius_study(&p, 1.0, 1.0, &[5.0, 10.0, 20.0], &cfg())?;
    let bounded = rows.iter().all(|r| r.change <= r.bound);
    let least = s.reductions.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok((
        fastest_enough && bounded,
        format!(
            "least reduction per doubling {least:.1}; radius changes {:?} under bounds {:?}",
            rows.iter().map(|r| format!("{:.1e}", r.change)).collect::<Vec<_>>(),
            rows.iter().map(|r| format!("{:.1e}", r.bound)).collect::<Vec<_>>()
        ),
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("caloric oracle", caloric_oracle),
        ("classical oracle", classical_oracle),
        ("representation equivalence", equivalence),
        ("PDE residual", pde_residual),
        ("contour identities", contour_identities),
        ("orientation", orientation),
        ("half values at x = 0", half_values),
        ("boundary traces", traces),
        ("corner compatibility", corners),
        ("derivative chain", chain),
        ("rapid decay", decay),
        ("quadrature convergence", convergence),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (pass, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!pass);
        println!(
            "criterion {:>2} {:<28} {}  {} ({:.1}s)",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
