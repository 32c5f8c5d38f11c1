//! One-sided limits of the solution and its derivatives at the boundary
//! `x = 0`, the initial line `t = 0` and the corner.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::extrapolation::richardson;
use crate::problem::{check_compatibility, HalfLineProblem, Which, MAX_DERIVATIVE_ORDER};
use crate::quadrature::QuadratureConfig;
use crate::representations::{eval, eval_dt, eval_dx, EvalResult, Representation};
use crate::{Error, Result};

/// Default first point and length of the trace sequences.
pub const TRACE_X_START: f64 = 0.5;
/// Default first time of the `t → 0` sequence.
pub const TRACE_T_START: f64 = 0.25;
/// Default number of halvings in a trace sequence.
pub const TRACE_LEVELS: usize = 8;
/// Default horizon used by `trace_t_to_0`.
pub const TRACE_T_HORIZON: f64 = 1.0;
/// First step along each corner path.
pub const CORNER_START: f64 = 0.25;
/// Number of halvings along each corner path.
pub const CORNER_LEVELS: usize = 4;
/// Sample times of the derivative chain check.
pub const CHAIN_TIMES: [f64; 3] = [0.2, 0.5, 1.0];
/// Step of the central difference in the chain check.
pub const CHAIN_STEP: f64 = 0.02;

/// An extrapolated one-sided limit.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceResult {
    /// Extrapolated limit.
    pub value: f64,
    /// `(parameter, value)` pairs, parameter strictly decreasing.
    pub approximants: Vec<(f64, f64)>,
    /// Error estimate of `value`.
    pub est_error: f64,
    /// Whether the extrapolation settled.
    pub converged: bool,
}

/// How a path approaches the corner `(0, 0)` as `h → 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CornerPath {
    /// `x = t = h`.
    Diagonal,
    /// `x = h`, `t = h²`.
    Parabolic,
    /// `x = h²`, `t = h`.
    Flat,
}

impl CornerPath {
    /// All three paths.
    pub const ALL: [CornerPath; 3] = [CornerPath::Diagonal, CornerPath::Parabolic, CornerPath::Flat];

    /// The point `(x, t)` at step `h`.
    pub fn point(self, h: f64) -> (f64, f64) {
        match self {
            CornerPath::Diagonal => (h, h),
            CornerPath::Parabolic => (h, h * h),
            CornerPath::Flat => (h * h, h),
        }
    }

    /// Short name.
    pub fn name(self) -> &'static str {
        match self {
            CornerPath::Diagonal => "diagonal",
            CornerPath::Parabolic => "parabolic",
            CornerPath::Flat => "flat",
        }
    }
}

/// Limits of `∂ₓᵏu` along the corner paths.
#[derive(Clone, Debug, PartialEq)]
pub struct CornerReport {
    /// Derivative order.
    pub k: usize,
    /// One extrapolated limit per path.
    pub paths: Vec<(CornerPath, TraceResult)>,
    /// Compatibility order of the data, `-1` when even `u₀(0) = g₀(0)` fails.
    pub compat_order: i64,
    /// `u₀⁽ᵏ⁾(0)` when the compatibility order guarantees a corner limit.
    pub predicted_limit: Option<f64>,
    /// Whether every path matches the prediction within `10·est_error`.
    pub agrees: Option<bool>,
}

impl CornerReport {
    /// Largest distance between two path limits.
    pub fn spread(&self) -> f64 {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (_, r) in &self.paths {
            lo = lo.min(r.value);
            hi = hi.max(r.value);
        }
        if self.paths.is_empty() { 0.0 } else { hi - lo }
    }
}

/// One comparison of the chain check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainRow {
    /// `ℓ` in `d/dt g_{2ℓ-1} = g_{2ℓ+1}`.
    pub ell: usize,
    /// Sample time.
    pub t: f64,
    /// Central difference of the lower trace.
    pub derivative: f64,
    /// The higher trace.
    pub next_trace: f64,
    /// `|derivative - next_trace|`.
    pub mismatch: f64,
}

/// Result of [`corollary_chain_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct ChainReport {
    /// Every comparison made.
    pub rows: Vec<ChainRow>,
    /// Largest mismatch.
    pub max_mismatch: f64,
    /// Whether every trace involved converged.
    pub converged: bool,
}

fn extrapolate(approximants: Vec<(f64, f64)>, errors: &[f64]) -> TraceResult {
    let values: Vec<f64> = approximants.iter().map(|p| p.1).collect();
    let noise = errors.iter().fold(0.0f64, |m, &e| m.max(e));
    let r = richardson(&values, 2.0, noise);
    TraceResult {
        value: r.value,
        approximants,
        est_error: r.est_error,
        converged: r.converged,
    }
}

fn geometric_trace<F>(start: f64, levels: usize, mut f: F) -> Result<TraceResult>
where
    F: FnMut(f64) -> Result<EvalResult>,
{
    if !(start > 0.0) || levels < 2 {
        return Err(Error::Domain("trace needs a positive start and at least two halvings"));
    }
    let mut approximants = Vec::with_capacity(levels + 1);
    let mut errors = Vec::with_capacity(levels + 1);
    let mut h = start;
    for _ in 0..=levels {
        let r = f(h)?;
        approximants.push((h, r.value));
        errors.push(r.est_error);
        h *= 0.5;
    }
    Ok(extrapolate(approximants, &errors))
}

/// `lim_{x→0⁺} ∂ₓⁿu(x, t)` from the sequence `x_j = 0.5·2^{-j}`, `j = 0..8`.
pub fn trace_x_to_0(problem: &HalfLineProblem, n: usize, t: f64, cfg: &QuadratureConfig) -> Result<TraceResult> {
    trace_x_to_0_with(problem, n, t, TRACE_X_START, TRACE_LEVELS, cfg)
}

/// [`trace_x_to_0`] with an explicit start `x₀` and number of halvings.
pub fn trace_x_to_0_with(
    problem: &HalfLineProblem,
    n: usize,
    t: f64,
    x0: f64,
    levels: usize,
    cfg: &QuadratureConfig,
) -> Result<TraceResult> {
    if !(t > 0.0) {
        return Err(Error::Domain("t must be positive"));
    }
    geometric_trace(x0, levels, |x| eval_dx(problem, n, x, t, cfg))
}

/// `lim_{t→0⁺} ∂ₜⁿu(x, t)` from `t_j = 0.25·2^{-j}`, `j = 0..8`, horizon 1.
pub fn trace_t_to_0(problem: &HalfLineProblem, n: usize, x: f64, cfg: &QuadratureConfig) -> Result<TraceResult> {
    trace_t_to_0_with(problem, n, x, TRACE_T_START, TRACE_LEVELS, TRACE_T_HORIZON, cfg)
}

/// [`trace_t_to_0`] with explicit start, number of halvings and horizon.
pub fn trace_t_to_0_with(
    problem: &HalfLineProblem,
    n: usize,
    x: f64,
    t0: f64,
    levels: usize,
    horizon: f64,
    cfg: &QuadratureConfig,
) -> Result<TraceResult> {
    if !(x > 0.0) {
        return Err(Error::Domain("x must be positive"));
    }
    if !(horizon > t0) {
        return Err(Error::Horizon { t: t0, horizon });
    }
    geometric_trace(t0, levels, |t| eval_dt(problem, n, x, t, horizon, cfg))
}

/// Limits of `∂ₓᵏu` at the corner along the three path families.
pub fn corner_limit(problem: &HalfLineProblem, k: usize, cfg: &QuadratureConfig) -> Result<CornerReport> {
    corner_limit_with(problem, k, CORNER_START, CORNER_LEVELS, cfg)
}

/// [`corner_limit`] with explicit first step and number of halvings.
pub fn corner_limit_with(
    problem: &HalfLineProblem,
    k: usize,
    h0: f64,
    levels: usize,
    cfg: &QuadratureConfig,
) -> Result<CornerReport> {
    let compat = check_compatibility(problem, MAX_DERIVATIVE_ORDER / 2, 1e-10)?;
    let mut paths = Vec::with_capacity(3);
    for path in CornerPath::ALL {
        let r = geometric_trace(h0, levels, |h| {
            let (x, t) = path.point(h);
            eval_dx(problem, k, x, t, cfg)
        })?;
        paths.push((path, r));
    }
    let predicted_limit = if compat.order >= 0 && (k as i64) <= 2 * compat.order + 1 {
        Some(problem.u0.derivative(k, 0.0))
    } else {
        None
    };
    let agrees = predicted_limit.map(|p| {
        paths
            .iter()
            .all(|(_, r)| (r.value - p).abs() <= 10.0 * r.est_error)
    });
    Ok(CornerReport {
        k,
        paths,
        compat_order: compat.order,
        predicted_limit,
        agrees,
    })
}

/// Checks `d/dt g_{2ℓ-1}(t) = g_{2ℓ+1}(t)` for `ℓ = 1..n` at `t ∈ {0.2, 0.5, 1}`,
/// where `g_m` is the `x → 0⁺` trace of `∂ₓᵐu`. The derivative is a five-point
/// central difference of traces.
pub fn corollary_chain_check(problem: &HalfLineProblem, n: usize, cfg: &QuadratureConfig) -> Result<ChainReport> {
    let compat = check_compatibility(problem, MAX_DERIVATIVE_ORDER / 2, 1e-10)?;
    if compat.order < n as i64 {
        return Err(Error::Domain("compatibility order below the requested chain length"));
    }
    let mut rows = Vec::new();
    let mut converged = true;
    let mut max_mismatch = 0.0f64;
    for ell in 1..=n {
        for &t in &CHAIN_TIMES {
            let mut trace = |s: f64| -> Result<f64> {
                let r = trace_x_to_0(problem, 2 * ell - 1, s, cfg)?;
                converged &= r.converged;
                Ok(r.value)
            };
            let d = CHAIN_STEP;
            let derivative = (trace(t - 2.0 * d)? - 8.0 * trace(t - d)? + 8.0 * trace(t + d)? - trace(t + 2.0 * d)?)
                / (12.0 * d);
            let next = trace_x_to_0(problem, 2 * ell + 1, t, cfg)?;
            converged &= next.converged;
            let mismatch = (derivative - next.value).abs();
            max_mismatch = max_mismatch.max(mismatch);
            rows.push(ChainRow {
                ell,
                t,
                derivative,
                next_trace: next.value,
                mismatch,
            });
        }
    }
    Ok(ChainReport {
        rows,
        max_mismatch,
        converged,
    })
}

/// Rows `(x, xᵐ·|∂ₓⁿu(x, t)|)`. Order zero uses `representation`; higher
/// orders use the contour form.
pub fn decay_profile(
    problem: &HalfLineProblem,
    m: u32,
    n: usize,
    t: f64,
    xs: &[f64],
    representation: Representation,
    cfg: &QuadratureConfig,
) -> Result<Vec<(f64, f64)>> {
    if xs.iter().any(|&x| !(x > 0.0)) || xs.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("abscissae must be positive and increasing"));
    }
    xs.iter()
        .map(|&x| {
            let r = if n == 0 {
                eval(problem, representation, x, t, cfg)?
            } else {
                eval_dx(problem, n, x, t, cfg)?
            };
            Ok((x, x.powi(m as i32) * r.value.abs()))
        })
        .collect()
}

/// Whether `(x, y)` rows have `y` strictly decreasing.
pub fn is_strictly_decreasing(rows: &[(f64, f64)]) -> bool {
    rows.windows(2).all(|w| w[1].1 < w[0].1)
}

/// `max_t |u(x_j, t) - g₀(t)|` over `ts` for each `x_j` in `xs`.
pub fn boundary_gap_profile(
    problem: &HalfLineProblem,
    xs: &[f64],
    ts: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Vec<(f64, f64)>> {
    xs.iter()
        .map(|&x| {
            let mut gap = 0.0f64;
            for &t in ts {
                let u = eval_dx(problem, 0, x, t, cfg)?.value;
                gap = gap.max((u - problem.data(Which::Boundary).value(t)).abs());
            }
            Ok((x, gap))
        })
        .collect()
}

/// `max_x |u(x, t_j) - u₀(x)|` over `xs` for each `t_j` in `ts`.
pub fn initial_gap_profile(
    problem: &HalfLineProblem,
    ts: &[f64],
    xs: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Vec<(f64, f64)>> {
    ts.iter()
        .map(|&t| {
            let mut gap = 0.0f64;
            for &x in xs {
                let u = eval_dx(problem, 0, x, t, cfg)?.value;
                gap = gap.max((u - problem.data(Which::Initial).value(x)).abs());
            }
            Ok((t, gap))
        })
        .collect()
}
