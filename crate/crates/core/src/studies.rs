//! Refinement studies of the contour quadrature: node doubling under a fixed
//! Gauss–Legendre rule, and truncation-radius doubling against the analytic
//! tail bound.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::problem::{DataFamily, HalfLineProblem};
use crate::quadrature::{gamma_tail_bound, Integrator, QuadratureConfig, Rule};
use crate::representations::eval_fokas;
use crate::{Error, Result};

/// Parameters of [`node_doubling_study`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NodeStudyOptions {
    /// Gauss–Legendre order per panel.
    pub order: usize,
    /// Nodes per unit length before the first doubling.
    pub start_nodes: usize,
    /// Number of doublings.
    pub doublings: usize,
    /// Fixed truncation radius of the contour.
    pub radius: f64,
}

impl Default for NodeStudyOptions {
    fn default() -> Self {
        Self {
            order: 2,
            start_nodes: 2,
            doublings: 4,
            radius: 40.0,
        }
    }
}

/// One refinement level.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NodeStudyRow {
    /// Nodes per unit length.
    pub nodes_per_unit: usize,
    /// Computed solution.
    pub value: f64,
    /// Error estimate of the quadrature.
    pub est_error: f64,
    /// Distance to the closed form, when one is known.
    pub error: Option<f64>,
    /// Change from the previous level.
    pub change: Option<f64>,
}

/// Result of [`node_doubling_study`].
#[derive(Clone, Debug, PartialEq)]
pub struct NodeStudy {
    /// One row per level, coarse to fine.
    pub rows: Vec<NodeStudyRow>,
    /// Reduction factor per doubling: of the error against the closed form
    /// when known, otherwise of successive changes.
    pub reductions: Vec<f64>,
    /// `log₂` of the geometric mean reduction, as an algebraic order in the
    /// node density.
    pub fitted_order: Option<f64>,
}

/// Evaluates the contour form at `(x, t)` on the undeformed contour with a
/// fixed composite rule, doubling the node density each level.
pub fn node_doubling_study(
    problem: &HalfLineProblem,
    x: f64,
    t: f64,
    opts: &NodeStudyOptions,
    cfg: &QuadratureConfig,
) -> Result<NodeStudy> {
    if opts.order == 0 || opts.start_nodes == 0 || opts.doublings == 0 {
        return Err(Error::Domain("node study needs positive order, density and doublings"));
    }
    let exact = problem.closed_form(x, t);
    let mut c = cfg.clone();
    c.rule = Rule::GaussLegendre { order: opts.order };
    c.deform = false;
    c.contour.radius = Some(opts.radius);
    let mut rows: Vec<NodeStudyRow> = Vec::with_capacity(opts.doublings + 1);
    let mut density = opts.start_nodes;
    for _ in 0..=opts.doublings {
        c.contour.nodes_per_unit = density;
        let r = eval_fokas(problem, x, t, &c)?;
        rows.push(NodeStudyRow {
            nodes_per_unit: density,
            value: r.value,
            est_error: r.est_error,
            error: exact.map(|e| (r.value - e).abs()),
            change: rows.last().map(|p| (r.value - p.value).abs()),
        });
        density *= 2;
    }
    let measure: Vec<f64> = match exact {
        Some(_) => rows.iter().filter_map(|r| r.error).collect(),
        None => rows.iter().filter_map(|r| r.change).collect(),
    };
    let reductions: Vec<f64> = measure.windows(2).map(|w| w[0] / w[1]).collect();
    let fitted_order = if !reductions.is_empty() && reductions.iter().all(|r| r.is_finite() && *r > 0.0) {
        Some(reductions.iter().map(|r| r.log2()).sum::<f64>() / reductions.len() as f64)
    } else {
        None
    };
    Ok(NodeStudy {
        rows,
        reductions,
        fitted_order,
    })
}

/// One radius of [`radius_study`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadiusStudyRow {
    /// Truncation radius `R`.
    pub radius: f64,
    /// Solution with `Γ` cut at `R`.
    pub value: f64,
    /// Solution with `Γ` cut at `2R`.
    pub doubled: f64,
    /// `|doubled - value|`.
    pub change: f64,
    /// Analytic bound on the part of `Γ` beyond `R`.
    pub bound: f64,
    /// Quadrature error estimates of both runs, summed.
    pub est_error: f64,
}

/// `∫₀^∞ |u₀|` and `∫₀^t |g₀|`.
fn data_norms(problem: &HalfLineProblem, t: f64) -> Result<(f64, f64)> {
    let q = Integrator::with_tolerances(1e-14, 1e-10);
    let l1 = |f: &DataFamily, lo: f64, hi: f64| -> Result<f64> {
        if f.is_zero() {
            return Ok(0.0);
        }
        let breaks: Vec<f64> = (0..=64).map(|j| lo + (hi - lo) * j as f64 / 64.0).collect();
        let e = q.integrate(|s| crate::C64::new(f.value(s).abs(), 0.0), &breaks)?;
        Ok(e.value.re + e.error)
    };
    let c2 = match problem.u0 {
        DataFamily::ExpDecay { a, b } => a.abs() / b,
        ref u => l1(u, 0.0, u.cutoff(0))?,
    };
    let c3 = l1(&problem.g0, 0.0, t)?;
    Ok((c2, c3))
}

/// Bound on how much the contour form at `(x, t)` can change when both rays
/// of the undeformed `Γ` are extended beyond `radius`.
pub fn contour_tail_bound(problem: &HalfLineProblem, x: f64, t: f64, radius: f64) -> Result<f64> {
    let (c2, c3) = data_norms(problem, t)?;
    let pi = core::f64::consts::PI;
    Ok(c2 / pi * gamma_tail_bound(x, radius, 0)? + 2.0 * c3 / pi * gamma_tail_bound(x, radius, 1)?)
}

/// Compares the contour form on `Γ` cut at `R` and at `2R` for each radius.
pub fn radius_study(
    problem: &HalfLineProblem,
    x: f64,
    t: f64,
    radii: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Vec<RadiusStudyRow>> {
    let mut c = cfg.clone();
    c.deform = false;
    radii
        .iter()
        .map(|&radius| {
            c.contour.radius = Some(radius);
            let a = eval_fokas(problem, x, t, &c)?;
            c.contour.radius = Some(2.0 * radius);
            let b = eval_fokas(problem, x, t, &c)?;
            Ok(RadiusStudyRow {
                radius,
                value: a.value,
                doubled: b.value,
                change: (b.value - a.value).abs(),
                bound: contour_tail_bound(problem, x, t, radius)?,
                est_error: a.est_error + b.est_error,
            })
        })
        .collect()
}
