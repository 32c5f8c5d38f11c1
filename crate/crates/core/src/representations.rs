//! Four representations of the solution and its derivatives.
//!
//! * [`Representation::FokasContour`]: real-line integral of `û₀` plus two
//!   integrals over `Γ` involving `û₀(-λ)` and the damped boundary transform.
//! * [`Representation::Ehrenpreis`]: as above, with the boundary transform
//!   taken up to a fixed horizon `T > t`.
//! * [`Representation::GaussKernel`]: image-kernel convolution plus the
//!   boundary layer potential.
//! * [`Representation::SineTransform`]: half-line sine transform.
//!
//! Integrands over `Γ` that are analytic and decay in the sector between
//! `Γ` and the real axis are integrated on the steeper rays
//! `arg λ ∈ {θ, π - θ}`, where `e^{-λ²t}` decays (see
//! [`QuadratureConfig::deform`]). The boundary integral of the Ehrenpreis
//! form is split at `t`; the part over `[t, T]` decays above `Γ` and goes on
//! the rays at `π/2 - θ`.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

#[allow(unused_imports)]
use num_traits::Float;

use crate::problem::HalfLineProblem;
use crate::quadrature::{
    envelope_radius, integrate_gamma_conditional, integrate_ray_pair_on, ray_breaks, BoundaryTerm, Estimate,
    Integrator, QuadratureConfig, SplitIntegrand,
};
use crate::transforms::{exp_moment, half_line_transform};
use crate::{Error, Result, C64};

/// Largest `n` accepted by [`eval_dx`].
pub const MAX_DX_ORDER: usize = 6;
/// Largest `n` accepted by [`eval_dt`].
pub const MAX_DT_ORDER: usize = 3;
/// Ray angle used for the contour integrals of the Fokas form.
pub const FOKAS_RAY_ANGLE: f64 = PI / 6.0;
/// Ray angle used for the integrals of the Ehrenpreis form that decay below `Γ`.
pub const EHRENPREIS_RAY_ANGLE: f64 = PI / 8.0;

const TAIL_REL: f64 = 1e-17;
const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Which formula produced a value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Representation {
    /// Contour form with the boundary transform up to `t`.
    FokasContour,
    /// Contour form with the boundary transform up to the horizon.
    Ehrenpreis {
        /// Horizon `T > t`.
        horizon: f64,
    },
    /// Image-kernel and boundary-potential form.
    GaussKernel,
    /// Sine-transform form.
    SineTransform,
}

/// A real value with its error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    /// Value of the solution (or derivative).
    pub value: f64,
    /// Absolute error estimate, including any spurious imaginary part.
    pub est_error: f64,
    /// Formula used.
    pub representation: Representation,
    /// Spatial point.
    pub x: f64,
    /// Time.
    pub t: f64,
}

impl EvalResult {
    fn from_complex(e: Estimate, representation: Representation, x: f64, t: f64) -> Self {
        EvalResult {
            value: e.value.re,
            est_error: e.error + e.value.im.abs(),
            representation,
            x,
            t,
        }
    }
}

/// Collects the first error raised inside an integrand closure.
#[derive(Default)]
struct Trap(Option<Error>);

impl Trap {
    fn take(&mut self, r: Result<C64>) -> C64 {
        match r {
            Ok(v) => v,
            Err(e) => {
                self.0.get_or_insert(e);
                C64::new(0.0, 0.0)
            }
        }
    }

    fn check(self, e: Result<Estimate>) -> Result<Estimate> {
        match self.0 {
            Some(err) => Err(err),
            None => e,
        }
    }
}

/// Adds to `e` the part of the ray-pair integral beyond a fixed radius `r`,
/// modelling `|f|` past `r` as `r^d e^{-a r - c r²}`.
fn with_tail<F: FnMut(C64) -> C64>(e: Estimate, f: &mut F, theta: f64, r: f64, (d, a, c): (f64, f64, f64)) -> Estimate {
    let rate = a + 2.0 * c * r - d / r;
    let edge = f(C64::from_polar(r, theta)).norm() + f(C64::from_polar(r, PI - theta)).norm();
    let tail = if edge == 0.0 {
        0.0
    } else if rate > 0.0 {
        edge / rate
    } else {
        f64::INFINITY
    };
    Estimate {
        value: e.value,
        error: e.error + tail,
    }
}

fn sign(n: usize) -> f64 {
    if n % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn check_xt(x: f64, t: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain("x must be positive and finite"));
    }
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain("t must be positive and finite"));
    }
    Ok(())
}

fn check_horizon(t: f64, horizon: f64) -> Result<()> {
    if !(horizon > t) || !horizon.is_finite() {
        return Err(Error::Horizon { t, horizon });
    }
    Ok(())
}

fn fokas_angle(cfg: &QuadratureConfig) -> f64 {
    if cfg.deform {
        FOKAS_RAY_ANGLE
    } else {
        FRAC_PI_4
    }
}

fn ehrenpreis_angle(cfg: &QuadratureConfig) -> f64 {
    if cfg.deform {
        EHRENPREIS_RAY_ANGLE
    } else {
        FRAC_PI_4
    }
}

// Breaks with chirp-sized panels up to `r_chirp` and geometric panels beyond.
fn two_zone_breaks(r_chirp: f64, r_end: f64, chirp: f64, lin: f64) -> Vec<f64> {
    let mid = r_chirp.min(r_end);
    let mut b = ray_breaks(0.0, mid, chirp, lin);
    if r_end > mid {
        b.extend(ray_breaks(mid, r_end, 0.0, lin).into_iter().skip(1));
    }
    b
}

/// `∫_ℝ λ^p e^{iλx - λ²t} û₀(λ) dλ`.
fn real_line_term(problem: &HalfLineProblem, x: f64, t: f64, p: u32, q: &Integrator) -> Result<Estimate> {
    if problem.u0.is_zero() {
        return Ok(Estimate::zero());
    }
    let r = envelope_radius((p as f64 - 1.0).max(0.0), 0.0, t, TAIL_REL)?.max(1.0);
    let mut trap = Trap::default();
    let mut f = |l: f64| {
        let lc = C64::new(l, 0.0);
        let h = trap.take(half_line_transform(&problem.u0, 0, lc));
        lc.powu(p) * C64::new(-l * l * t, l * x).exp() * h
    };
    let e = q.integrate(|s| f(s) + f(-s), &ray_breaks(0.0, r, 0.0, x));
    trap.check(e)
}

/// `∫ λ^p e^{iλx - λ²t} û₀(-λ) dλ` over the ray pair at `theta`.
fn reflected_term(
    problem: &HalfLineProblem,
    x: f64,
    t: f64,
    p: u32,
    theta: f64,
    cfg: &QuadratureConfig,
    q: &Integrator,
) -> Result<Estimate> {
    if problem.u0.is_zero() {
        return Ok(Estimate::zero());
    }
    let (s, c) = theta.sin_cos();
    let gauss = t * (2.0 * theta).cos();
    let env = ((p as f64 - 1.0).max(0.0), x * s, gauss);
    let r = match cfg.contour.radius {
        Some(r) => r,
        None => envelope_radius(env.0, env.1, env.2, TAIL_REL)?,
    };
    let mut trap = Trap::default();
    let mut f = |l: C64| {
        let h = trap.take(half_line_transform(&problem.u0, 0, -l));
        l.powu(p) * (I * l * x - l * l * t).exp() * h
    };
    let breaks = ray_breaks(0.0, r, t * (2.0 * theta).sin(), x * c);
    let mut e = integrate_ray_pair_on(&mut f, theta, &breaks, q);
    if cfg.contour.radius.is_some() {
        e = e.map(|e| with_tail(e, &mut f, theta, r, env));
    }
    trap.check(e)
}

/// `∫ λ^{k+1} e^{iλx} D(λ,t) dλ` over the ray pair at `theta`, where
/// `D = e^{-λ²t} g̃₀(λ,t)`.
///
/// For `x > 0` the integral of `e^{iλx}` times any polynomial vanishes, so
/// the polynomial part `Σ_{j≤N} (-1)^j g₀^{(j)}(t) λ^{k-1-2j}` of the large-`λ`
/// expansion is removed; what remains decays like `λ^{-1}` or faster and has
/// no cancellation as `x → 0`.
fn boundary_term(
    problem: &HalfLineProblem,
    x: f64,
    t: f64,
    k: u32,
    theta: f64,
    cfg: &QuadratureConfig,
    q: &Integrator,
) -> Result<Estimate> {
    let g = &problem.g0;
    if g.is_zero() {
        return Ok(Estimate::zero());
    }
    let levels = ((k + 1) / 2) as usize;
    let at_t: Vec<f64> = (0..levels).map(|j| g.derivative(j, t)).collect();
    let at_0: Vec<f64> = (0..levels).map(|j| g.derivative(j, 0.0)).collect();
    let (s, c) = theta.sin_cos();
    let gauss = t * (2.0 * theta).cos();
    let r_gauss = envelope_radius((k as f64 - 1.0).max(0.0), x * s, gauss, TAIL_REL)?;
    let r_alg = envelope_radius(0.0, x * s, 0.0, TAIL_REL)?;
    let r = cfg.contour.radius.unwrap_or(r_gauss.max(r_alg));
    let mut trap = Trap::default();
    let mut f = |l: C64| {
        let l2 = l * l;
        let phase = (I * l * x).exp();
        if levels == 0 {
            let d = trap.take(exp_moment(g, 0, l2, 0.0, t, t));
            return l.powu(k + 1) * d * phase;
        }
        let mut v;
        if l.norm() < 1.0 {
            let d = trap.take(exp_moment(g, 0, l2, 0.0, t, t));
            v = l.powu(k + 1) * d;
            for (j, gj) in at_t.iter().enumerate() {
                v -= l.powi(k as i32 - 1 - 2 * j as i32) * (sign(j) * gj);
            }
        } else {
            let decay = (-l2 * t).exp();
            v = C64::new(0.0, 0.0);
            for (j, gj) in at_0.iter().enumerate() {
                v -= decay * l.powi(k as i32 - 1 - 2 * j as i32) * (sign(j) * gj);
            }
            let rem = trap.take(exp_moment(g, levels, l2, 0.0, t, t));
            v += rem * l.powi(k as i32 + 1 - 2 * levels as i32) * sign(levels);
        }
        v * phase
    };
    let breaks = two_zone_breaks(r_gauss, r, t * (2.0 * theta).sin(), x * c);
    let mut e = integrate_ray_pair_on(&mut f, theta, &breaks, q);
    if cfg.contour.radius.is_some() {
        e = e.map(|e| with_tail(e, &mut f, theta, r, (0.0, x * s, 0.0)));
    }
    trap.check(e)
}

/// `∫ λ^{k+1} e^{iλx} A(λ) dλ` over the ray pair at `phi ∈ [π/4, π/2)`, where
/// `A = ∫_t^T e^{λ²(s-t)} g₀(s) ds` decays above `Γ`.
///
/// The polynomial part `-Σ_{j≤N} (-1)^j g₀^{(j)}(t) λ^{k-1-2j}` of the large-`λ`
/// expansion is removed as in [`boundary_term`]; the two removed parts cancel.
fn ahead_term(
    problem: &HalfLineProblem,
    x: f64,
    t: f64,
    horizon: f64,
    k: u32,
    phi: f64,
    cfg: &QuadratureConfig,
    q: &Integrator,
) -> Result<Estimate> {
    let g = &problem.g0;
    if g.is_zero() {
        return Ok(Estimate::zero());
    }
    let span = horizon - t;
    let levels = ((k + 1) / 2) as usize;
    let at_t: Vec<f64> = (0..levels).map(|j| g.derivative(j, t)).collect();
    let at_h: Vec<f64> = (0..levels).map(|j| g.derivative(j, horizon)).collect();
    let (s, c) = phi.sin_cos();
    let gauss = -span * (2.0 * phi).cos();
    let r_alg = envelope_radius(0.0, x * s, 0.0, TAIL_REL)?;
    let r_gauss = envelope_radius((k as f64 - 1.0).max(0.0), x * s, gauss, TAIL_REL)?.min(r_alg);
    let r = cfg.contour.radius.unwrap_or(r_alg);
    let mut trap = Trap::default();
    let mut f = |l: C64| {
        let l2 = l * l;
        let phase = (I * l * x).exp();
        if levels == 0 {
            let a = trap.take(exp_moment(g, 0, l2, t, horizon, t));
            return l.powu(k + 1) * a * phase;
        }
        let mut v;
        if l.norm() < 1.0 {
            let a = trap.take(exp_moment(g, 0, l2, t, horizon, t));
            v = l.powu(k + 1) * a;
            for (j, gj) in at_t.iter().enumerate() {
                v += l.powi(k as i32 - 1 - 2 * j as i32) * (sign(j) * gj);
            }
        } else {
            let growth = (l2 * span).exp();
            v = C64::new(0.0, 0.0);
            for (j, gj) in at_h.iter().enumerate() {
                v += growth * l.powi(k as i32 - 1 - 2 * j as i32) * (sign(j) * gj);
            }
            let rem = trap.take(exp_moment(g, levels, l2, t, horizon, t));
            v += rem * l.powi(k as i32 + 1 - 2 * levels as i32) * sign(levels);
        }
        v * phase
    };
    let breaks = two_zone_breaks(r_gauss, r, span * (2.0 * phi).sin(), x * c);
    let mut e = integrate_ray_pair_on(&mut f, phi, &breaks, q);
    if cfg.contour.radius.is_some() {
        e = e.map(|e| with_tail(e, &mut f, phi, r, (0.0, x * s, 0.0)));
    }
    trap.check(e)
}

/// `∫_Γ λ^{p+1} e^{iλx} e^{-λ²t} g̃₀(λ,T) dλ`.
///
/// On `Γ` the integrand is a chirp that decays only through `e^{iλx}`. Writing
/// `e^{-λ²t} g̃₀(λ,T) = e^{-λ²t} g̃₀(λ,t) + ∫_t^T e^{λ²(s-t)} g₀ ds`, the first
/// part decays below `Γ` and the second above it, so each is integrated on
/// its own ray pair.
fn horizon_term(
    problem: &HalfLineProblem,
    x: f64,
    t: f64,
    horizon: f64,
    p: u32,
    cfg: &QuadratureConfig,
    q: &Integrator,
) -> Result<Estimate> {
    let theta = ehrenpreis_angle(cfg);
    let below = boundary_term(problem, x, t, p, theta, cfg, q)?;
    let above = ahead_term(problem, x, t, horizon, p, FRAC_PI_2 - theta, cfg, q)?;
    Ok(below + above)
}

fn i_pow(n: usize) -> C64 {
    match n % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

fn fokas_dx(problem: &HalfLineProblem, n: usize, x: f64, t: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    cfg.validate()?;
    let q = Integrator::from_config(cfg);
    let theta = fokas_angle(cfg);
    let p = n as u32;
    let c1 = i_pow(n) / (2.0 * PI);
    let c3 = -i_pow(n + 1) / PI;
    let i1 = real_line_term(problem, x, t, p, &q)?;
    let i2 = reflected_term(problem, x, t, p, theta, cfg, &q)?;
    let i3 = boundary_term(problem, x, t, p, theta, cfg, &q)?;
    Ok(i1.scale(c1) + i2.scale(-c1) + i3.scale(c3))
}

fn ehrenpreis_dt(
    problem: &HalfLineProblem,
    n: usize,
    x: f64,
    t: f64,
    horizon: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    cfg.validate()?;
    let q = Integrator::from_config(cfg);
    let theta = ehrenpreis_angle(cfg);
    let p = 2 * n as u32;
    let c1 = C64::new(sign(n) / (2.0 * PI), 0.0);
    let c3 = C64::new(0.0, -sign(n) / PI);
    let i1 = real_line_term(problem, x, t, p, &q)?;
    let i2 = reflected_term(problem, x, t, p, theta, cfg, &q)?;
    let i3 = horizon_term(problem, x, t, horizon, p, cfg, &q)?;
    Ok(i1.scale(c1) + i2.scale(-c1) + i3.scale(c3))
}

/// Solution from the contour form, for `x > 0`, `t > 0`.
pub fn eval_fokas(problem: &HalfLineProblem, x: f64, t: f64, cfg: &QuadratureConfig) -> Result<EvalResult> {
    check_xt(x, t)?;
    let e = fokas_dx(problem, 0, x, t, cfg)?;
    Ok(EvalResult::from_complex(e, Representation::FokasContour, x, t))
}

/// Solution from the contour form with horizon `T > t`.
pub fn eval_ehrenpreis(
    problem: &HalfLineProblem,
    x: f64,
    t: f64,
    horizon: f64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    check_xt(x, t)?;
    check_horizon(t, horizon)?;
    let e = ehrenpreis_dt(problem, 0, x, t, horizon, cfg)?;
    Ok(EvalResult::from_complex(e, Representation::Ehrenpreis { horizon }, x, t))
}

/// `∂ₓⁿ u` from the contour form, `n ≤ 6`.
pub fn eval_dx(problem: &HalfLineProblem, n: usize, x: f64, t: f64, cfg: &QuadratureConfig) -> Result<EvalResult> {
    if n > MAX_DX_ORDER {
        return Err(Error::UnsupportedOrder {
            order: n,
            cap: MAX_DX_ORDER,
        });
    }
    check_xt(x, t)?;
    let e = fokas_dx(problem, n, x, t, cfg)?;
    Ok(EvalResult::from_complex(e, Representation::FokasContour, x, t))
}

/// `∂ₜⁿ u` from the horizon form, `n ≤ 3`.
pub fn eval_dt(
    problem: &HalfLineProblem,
    n: usize,
    x: f64,
    t: f64,
    horizon: f64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    if n > MAX_DT_ORDER {
        return Err(Error::UnsupportedOrder {
            order: n,
            cap: MAX_DT_ORDER,
        });
    }
    check_xt(x, t)?;
    check_horizon(t, horizon)?;
    let e = ehrenpreis_dt(problem, n, x, t, horizon, cfg)?;
    Ok(EvalResult::from_complex(e, Representation::Ehrenpreis { horizon }, x, t))
}

/// Solution from the image kernel and boundary potential, `x ≥ 0`.
///
/// The boundary potential is written with `t - τ = x²/(4σ²)`, giving
/// `(2/√π) ∫_{x/2√t}^∞ g₀(t - x²/4σ²) e^{-σ²} dσ`. At `x = 0` both parts
/// vanish.
pub fn eval_gauss(problem: &HalfLineProblem, x: f64, t: f64, cfg: &QuadratureConfig) -> Result<EvalResult> {
    if !(x >= 0.0 && x.is_finite()) || !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain("need x >= 0 and t > 0"));
    }
    cfg.validate()?;
    let rep = Representation::GaussKernel;
    if x == 0.0 {
        return Ok(EvalResult::from_complex(Estimate::zero(), rep, x, t));
    }
    let q = Integrator::from_config(cfg).tolerances(1e-300, cfg.rel_tol);
    let rt = t.sqrt();
    let mut total = Estimate::zero();
    if !problem.u0.is_zero() {
        let reach = (168.0 * t).sqrt();
        let end = (x + reach).min(problem.u0.cutoff(0).max(x + 2.0 * rt));
        let mut breaks = alloc::vec![0.0, end];
        for k in [-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0] {
            let s = x + k * rt;
            if s > 0.0 && s < end {
                breaks.push(s);
            }
        }
        breaks.sort_by(f64::total_cmp);
        let u0 = &problem.u0;
        let e = q.integrate(
            |s| {
                let d = s - x;
                C64::new(u0.value(s) * (-d * d / (4.0 * t)).exp() * -(-s * x / t).exp_m1(), 0.0)
            },
            &breaks,
        )?;
        total = total + e.scale(C64::new(0.5 / (PI * t).sqrt(), 0.0));
    }
    if !problem.g0.is_zero() {
        let s0 = x / (2.0 * rt);
        let span = -s0 + (s0 * s0 + 45.0).sqrt();
        let breaks: Vec<f64> = (0..=8).map(|k| s0 + span * (k as f64 / 8.0).powi(2)).collect();
        let g0 = &problem.g0;
        let e = q.integrate(
            |s| C64::new(g0.value(t - x * x / (4.0 * s * s)) * (-s * s).exp(), 0.0),
            &breaks,
        )?;
        total = total + e.scale(C64::new(2.0 / PI.sqrt(), 0.0));
    }
    Ok(EvalResult::from_complex(total, rep, x, t))
}

/// Solution from the sine transform, `x ≥ 0`.
///
/// Uses `∫₀^∞ sin(λy) u₀(y) dy = -Im û₀(λ)` and the damped boundary
/// transform. The slowly decaying part `g₀(t)/λ - g₀'(t)/λ³` of the
/// integrand is matched by `g₀(t) λ/(λ²+c²) + A λ/(λ²+c²)²` with
/// `c² = 1/t`, `A = c² g₀(t) - g₀'(t)`, whose sine integrals are
/// `(π/2) e^{-cx}` and `(πx/4c) e^{-cx}`.
pub fn eval_sine(problem: &HalfLineProblem, x: f64, t: f64, cfg: &QuadratureConfig) -> Result<EvalResult> {
    if !(x >= 0.0 && x.is_finite()) || !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain("need x >= 0 and t > 0"));
    }
    cfg.validate()?;
    let rep = Representation::SineTransform;
    if x == 0.0 {
        return Ok(EvalResult::from_complex(Estimate::zero(), rep, x, t));
    }
    let g = &problem.g0;
    let c2 = 1.0 / t;
    let c = c2.sqrt();
    let (g_t, g1, g2) = (g.derivative(0, t), g.derivative(1, t), g.derivative(2, t));
    // Cancellation inside the bracket puts a floor near 1e-11 times the data
    // size on the error.
    let scale = 1.0f64.max(g_t.abs()).max(problem.u0.value(0.0).abs());
    let q = Integrator::from_config(cfg).tolerances(cfg.abs_tol.max(1e-10) * scale, cfg.rel_tol);
    let amp = c2 * g_t - g1;
    let next = g2 + c2 * c2 * g_t - 2.0 * c2 * g1;
    let closed = (-c * x).exp() * (g_t + amp * x / (2.0 * c));

    let r_gauss = envelope_radius(0.0, 0.0, t, TAIL_REL)?;
    let tail_tol = (0.1 * cfg.abs_tol).max(1e-15) * scale;
    let r_tail = (2.0 * next.abs() / (x * tail_tol)).powf(0.2);
    let r = r_gauss.max(r_tail).max(8.0);
    let mut trap = Trap::default();
    let f = |l: f64| {
        let lc = C64::new(l, 0.0);
        let us = if problem.u0.is_zero() {
            0.0
        } else {
            -trap.take(half_line_transform(&problem.u0, 0, lc)).im
        };
        let d = if g.is_zero() {
            0.0
        } else {
            trap.take(exp_moment(g, 0, C64::new(l * l, 0.0), 0.0, t, t)).re
        };
        let den = l * l + c2;
        let bracket = (-l * l * t).exp() * us + l * d - g_t * l / den - amp * l / (den * den);
        C64::new((l * x).sin() * bracket, 0.0)
    };
    let e = q.integrate(f, &two_zone_breaks(r_gauss, r, 0.0, x));
    let e = trap.check(e)?;
    let total = e.scale(C64::new(2.0 / PI, 0.0))
        + Estimate {
            value: C64::new(closed, 0.0),
            error: 0.0,
        };
    Ok(EvalResult::from_complex(total, rep, x, t))
}

/// Any representation at `(x, t)`; `x = 0` is allowed only for the
/// kernel and sine forms.
pub fn eval(
    problem: &HalfLineProblem,
    representation: Representation,
    x: f64,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    match representation {
        Representation::FokasContour => eval_fokas(problem, x, t, cfg),
        Representation::Ehrenpreis { horizon } => eval_ehrenpreis(problem, x, t, horizon, cfg),
        Representation::GaussKernel => eval_gauss(problem, x, t, cfg),
        Representation::SineTransform => eval_sine(problem, x, t, cfg),
    }
}

/// `∫_Γ e^{-λ²t} û₀(-λ) dλ` at `x = 0`, split by parts at depth `m`.
fn reflected_at_x0(problem: &HalfLineProblem, t: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    if problem.u0.is_zero() {
        return Ok(Estimate::zero());
    }
    let m = cfg.ibp_depth;
    let u0 = &problem.u0;
    let terms = (0..m)
        .map(|n| BoundaryTerm {
            coeff: i_pow(n + 1) * u0.derivative(n, 0.0),
            power: n as u32 + 1,
            rate: -t,
        })
        .collect();
    let mut trap_full = Trap::default();
    let mut trap_rem = Trap::default();
    let split = SplitIntegrand {
        x: 0.0,
        full: |l: C64| (-l * l * t).exp() * trap_full.take(half_line_transform(u0, 0, -l)),
        remainder: |l: C64| {
            let il = -I * l;
            (-l * l * t).exp() * trap_rem.take(half_line_transform(u0, m, -l)) / il.powu(m as u32)
        },
        terms,
        chirp: t,
    };
    let e = integrate_gamma_conditional(split, &cfg.contour, cfg);
    trap_rem.check(trap_full.check(e))
}

/// `∫_Γ λ e^{-λ²t} g̃₀(λ, T) dλ` at `x = 0`, split by parts at depth `m`.
fn boundary_at_x0(problem: &HalfLineProblem, t: f64, horizon: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    let g = &problem.g0;
    if g.is_zero() {
        return Ok(Estimate::zero());
    }
    let m = cfg.boundary_ibp_depth;
    let mut terms = Vec::with_capacity(2 * m);
    for n in 0..m {
        terms.push(BoundaryTerm {
            coeff: C64::new(sign(n) * g.derivative(n, horizon), 0.0),
            power: 2 * n as u32 + 1,
            rate: horizon - t,
        });
        terms.push(BoundaryTerm {
            coeff: C64::new(-sign(n) * g.derivative(n, 0.0), 0.0),
            power: 2 * n as u32 + 1,
            rate: -t,
        });
    }
    let mut trap_full = Trap::default();
    let mut trap_rem = Trap::default();
    let split = SplitIntegrand {
        x: 0.0,
        full: |l: C64| l * trap_full.take(exp_moment(g, 0, l * l, 0.0, horizon, t)),
        remainder: |l: C64| {
            trap_rem.take(exp_moment(g, m, l * l, 0.0, horizon, t)) * sign(m) / l.powu(2 * m as u32 - 1)
        },
        terms,
        chirp: 0.0,
    };
    let e = integrate_gamma_conditional(split, &cfg.contour, cfg);
    trap_rem.check(trap_full.check(e))
}

fn at_x0(problem: &HalfLineProblem, t: f64, horizon: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    cfg.validate()?;
    let q = Integrator::from_config(cfg);
    let i1 = real_line_term(problem, 0.0, t, 0, &q)?;
    let i2 = reflected_at_x0(problem, t, cfg)?;
    let i3 = boundary_at_x0(problem, t, horizon, cfg)?;
    let c = C64::new(1.0 / (2.0 * PI), 0.0);
    Ok(i1.scale(c) + i2.scale(-c) + i3.scale(C64::new(0.0, -1.0 / PI)))
}

/// The contour form evaluated at exactly `x = 0`, where its `Γ` integrals
/// converge only conditionally.
pub fn eval_fokas_at_x0(problem: &HalfLineProblem, t: f64, cfg: &QuadratureConfig) -> Result<EvalResult> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain("t must be positive and finite"));
    }
    let e = at_x0(problem, t, t, cfg)?;
    Ok(EvalResult::from_complex(e, Representation::FokasContour, 0.0, t))
}

/// The horizon form evaluated at exactly `x = 0`.
pub fn eval_ehrenpreis_at_x0(
    problem: &HalfLineProblem,
    t: f64,
    horizon: f64,
    cfg: &QuadratureConfig,
) -> Result<EvalResult> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain("t must be positive and finite"));
    }
    check_horizon(t, horizon)?;
    let e = at_x0(problem, t, horizon, cfg)?;
    Ok(EvalResult::from_complex(e, Representation::Ehrenpreis { horizon }, 0.0, t))
}
