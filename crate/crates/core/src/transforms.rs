//! Half-line Fourier transform of `u₀`, time transforms of `g₀`, and their
//! integration-by-parts expansions.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::problem::{poly_derivative, poly_exp_derivative, DataFamily, HalfLineProblem};
use crate::quadrature::{integrate_real_damped, ray_breaks, Estimate, GaussLegendre, Integrator, QuadratureConfig};
use crate::special::{faddeeva, phi1};
use crate::{Error, Result, C64};

const I: C64 = C64 { re: 0.0, im: 1.0 };
const MAX_EXPONENT: f64 = 700.0;
const INNER_REL_TOL: f64 = 1e-13;
const INNER_ABS_TOL: f64 = 1e-300;
const HALF_LINE_IBP_DEPTH: usize = 3;
const EXP_MOMENT_IBP_DEPTH: usize = 2;

fn inner() -> Integrator {
    Integrator::with_tolerances(INNER_ABS_TOL, INNER_REL_TOL)
}

/// `∫₀^∞ f^{(k)}(s) e^{-iλs} ds` for decaying `f` and `Im λ ≤ 0`.
pub(crate) fn half_line_transform(f: &DataFamily, k: usize, lambda: C64) -> Result<C64> {
    if f.is_zero() {
        return Ok(C64::new(0.0, 0.0));
    }
    match f {
        DataFamily::ExpDecay { a, b } => Ok(a * (-b).powi(k as i32) / (I * lambda + b)),
        DataFamily::PolyExp { coeffs, b } => {
            let q = poly_exp_derivative(coeffs, *b, k);
            let w = I * lambda + b;
            let mut sum = C64::new(0.0, 0.0);
            let mut fact = 1.0;
            let mut wp = w;
            for (j, c) in q.iter().enumerate() {
                if j > 0 {
                    fact *= j as f64;
                    wp *= w;
                }
                sum += c * fact / wp;
            }
            Ok(sum)
        }
        DataFamily::Gaussian { a, b } if k == 0 => {
            let rb = b.sqrt();
            Ok(faddeeva(-lambda / (2.0 * rb)) * (a * core::f64::consts::PI.sqrt() / (2.0 * rb)))
        }
        DataFamily::Gaussian { .. } => half_line_by_parts(f, k, lambda, HALF_LINE_IBP_DEPTH),
        _ => Err(Error::InvalidFamily("half-line transform needs decaying data")),
    }
}

/// Generic route: expansion by parts to depth `m`, remainder by quadrature.
pub(crate) fn half_line_by_parts(f: &DataFamily, k: usize, lambda: C64, m: usize) -> Result<C64> {
    let q = inner();
    let scale = 1.0 / f.cutoff(k).max(1e-300);
    let il = I * lambda;
    if lambda.norm() <= 8.0 * scale {
        let cut = f.cutoff(k);
        let e = q.integrate(|s| f.derivative(k, s) * (-il * s).exp(), &ray_breaks(0.0, cut, 0.0, lambda.re))?;
        return Ok(e.value);
    }
    let mut sum = C64::new(0.0, 0.0);
    let mut p = il;
    for n in 0..m {
        sum += f.derivative(k + n, 0.0) / p;
        p *= il;
    }
    let cut = f.cutoff(k + m);
    let rem = q.integrate(
        |s| f.derivative(k + m, s) * (-il * s).exp(),
        &ray_breaks(0.0, cut, 0.0, lambda.re),
    )?;
    Ok(sum + rem.value * il / p)
}

fn check_exponent(e: C64) -> Result<()> {
    if e.re > MAX_EXPONENT {
        Err(Error::Overflow { exponent: e.re })
    } else {
        Ok(())
    }
}

// coef ∫_a^b e^{z(τ-s) + cτ} dτ
fn exp_integral(coef: f64, c: f64, z: C64, a: f64, b: f64, s: f64) -> Result<C64> {
    if coef == 0.0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let w = z + c;
    let ea = w * a - z * s;
    let eb = w * b - z * s;
    let mag = coef.abs().ln();
    check_exponent(ea + mag)?;
    check_exponent(eb + mag)?;
    let y = w * (b - a);
    if y.norm() < 0.5 {
        Ok(coef * ea.exp() * phi1(y) * (b - a))
    } else {
        Ok(coef * (eb.exp() - ea.exp()) / w)
    }
}

fn poly_moment(coeffs: &[f64], z: C64, a: f64, b: f64, s: f64) -> Result<C64> {
    check_exponent(z * (a - s))?;
    check_exponent(z * (b - s))?;
    let h = b - a;
    if z.norm() * h <= 2.0 {
        let rule = GaussLegendre::new(32);
        let (v, _) = rule.apply(
            &mut |tau| {
                let p = coeffs.iter().rev().fold(0.0, |acc, c| acc * tau + c);
                (z * (tau - s)).exp() * p
            },
            a,
            b,
        );
        return Ok(v);
    }
    let ea = (z * (a - s)).exp();
    let eb = (z * (b - s)).exp();
    let mut q = coeffs.to_vec();
    let mut sum = C64::new(0.0, 0.0);
    let mut zp = z;
    let mut sign = 1.0;
    while !q.is_empty() {
        let pa = q.iter().rev().fold(0.0, |acc, c| acc * a + c);
        let pb = q.iter().rev().fold(0.0, |acc, c| acc * b + c);
        sum += (eb * pb - ea * pa) * sign / zp;
        q = poly_derivative(&q);
        zp *= z;
        sign = -sign;
    }
    Ok(sum)
}

fn graded_breaks(a: f64, b: f64, z: C64) -> Vec<f64> {
    let h = b - a;
    let mut v = ray_breaks(0.0, h, 0.0, z.im);
    let width = 1.0 / z.re.abs().max(1e-300);
    if width < h {
        let mut d = width;
        while d < h {
            v.push(d);
            v.push(h - d);
            d *= 4.0;
        }
        v.sort_by(f64::total_cmp);
        v.dedup();
    }
    v.into_iter().map(|u| a + u).collect()
}

/// `∫_a^b e^{z(τ - shift)} f^{(k)}(τ) dτ`.
pub(crate) fn exp_moment(f: &DataFamily, k: usize, z: C64, a: f64, b: f64, shift: f64) -> Result<C64> {
    if b <= a || f.is_zero() {
        return Ok(C64::new(0.0, 0.0));
    }
    match f {
        DataFamily::ExpDecay { a: amp, b: rate } => exp_integral(amp * (-rate).powi(k as i32), -rate, z, a, b, shift),
        DataFamily::ExpGrow { a: amp, c } => exp_integral(amp * c.powi(k as i32), *c, z, a, b, shift),
        DataFamily::Constant { c } => {
            if k == 0 {
                exp_integral(*c, 0.0, z, a, b, shift)
            } else {
                Ok(C64::new(0.0, 0.0))
            }
        }
        DataFamily::Poly { coeffs } => {
            let mut q = coeffs.clone();
            for _ in 0..k {
                q = poly_derivative(&q);
            }
            poly_moment(&q, z, a, b, shift)
        }
        DataFamily::Gaussian { .. } | DataFamily::PolyExp { .. } => exp_moment_by_parts(f, k, z, a, b, shift, EXP_MOMENT_IBP_DEPTH),
    }
}

/// Generic route for [`exp_moment`]: expansion by parts, remainder by quadrature.
pub(crate) fn exp_moment_by_parts(f: &DataFamily, k: usize, z: C64, a: f64, b: f64, s: f64, m: usize) -> Result<C64> {
    check_exponent(z * (a - s))?;
    check_exponent(z * (b - s))?;
    let q = inner();
    let h = b - a;
    if z.norm() * h <= 8.0 {
        let e = q.integrate(|tau| (z * (tau - s)).exp() * f.derivative(k, tau), &graded_breaks(a, b, z))?;
        return Ok(e.value);
    }
    let ea = (z * (a - s)).exp();
    let eb = (z * (b - s)).exp();
    let mut sum = C64::new(0.0, 0.0);
    let mut zp = z;
    let mut sign = 1.0;
    for n in 0..m {
        sum += (eb * f.derivative(k + n, b) - ea * f.derivative(k + n, a)) * sign / zp;
        zp *= z;
        sign = -sign;
    }
    let rem = q.integrate(
        |tau| (z * (tau - s)).exp() * f.derivative(k + m, tau),
        &graded_breaks(a, b, z),
    )?;
    Ok(sum + rem.value * sign * z / zp)
}

/// `û₀(λ) = ∫₀^∞ u₀(x) e^{-iλx} dx`, defined for `Im λ ≤ 0`.
pub fn u0_hat(problem: &HalfLineProblem, lambda: C64) -> Result<C64> {
    if lambda.im > 0.0 {
        return Err(Error::Domain("the half-line transform needs Im lambda <= 0"));
    }
    half_line_transform(&problem.u0, 0, lambda)
}

/// `û₀(-λ)`, defined for `Im λ ≥ 0`.
pub fn u0_hat_reflected(problem: &HalfLineProblem, lambda: C64) -> Result<C64> {
    u0_hat(problem, -lambda)
}

/// `g̃₀(λ, t) = ∫₀^t e^{λ²τ} g₀(τ) dτ`.
pub fn g0_tilde(problem: &HalfLineProblem, lambda: C64, t: f64) -> Result<C64> {
    if !(t >= 0.0) {
        return Err(Error::Domain("t must be non-negative"));
    }
    exp_moment(&problem.g0, 0, lambda * lambda, 0.0, t, 0.0)
}

/// `e^{-λ²t} g̃₀(λ, t) = ∫₀^t e^{-λ²(t-τ)} g₀(τ) dτ`, bounded for `Re λ² ≥ 0`.
pub fn g0_tilde_damped(problem: &HalfLineProblem, lambda: C64, t: f64) -> Result<C64> {
    if !(t >= 0.0) {
        return Err(Error::Domain("t must be non-negative"));
    }
    exp_moment(&problem.g0, 0, lambda * lambda, 0.0, t, t)
}

/// `∫_ℝ e^{iλx} e^{-κλ²} dλ = √(π/κ) e^{-x²/4κ}`.
pub fn gauss_fourier_kernel(kappa: f64, x: f64) -> Result<f64> {
    if !(kappa > 0.0) {
        return Err(Error::Domain("kappa must be positive"));
    }
    Ok((core::f64::consts::PI / kappa).sqrt() * (-x * x / (4.0 * kappa)).exp())
}

/// `(1/2π) ∫_ℝ e^{-ελ²} e^{iλx} f̂(λ) dλ`.
pub fn fourier_invert_regularized<F: FnMut(f64) -> C64>(
    mut fhat: F,
    x: f64,
    eps: f64,
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    if !(eps > 0.0) {
        return Err(Error::Domain("regularization must be positive"));
    }
    let e = integrate_real_damped(
        |l| fhat(l) * C64::new(-eps * l * l, l * x).exp(),
        eps,
        cfg,
    )?;
    Ok(e.scale(C64::new(0.5 / core::f64::consts::PI, 0.0)))
}

/// Which integration-by-parts identity an [`IbpExpansion`] represents.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IbpKind {
    /// `û₀(λ) = Σ_{n<m} u₀^{(n)}(0)/(iλ)^{n+1} + (iλ)^{-m} ∫₀^∞ e^{-iλx} u₀^{(m)} dx`.
    Initial,
    /// `e^{-λ²t} g̃₀(λ, T)` expanded as
    /// `Σ_{n<m} (-1)^n [g₀^{(n)}(T) e^{λ²(T-t)} - g₀^{(n)}(0) e^{-λ²t}] / λ^{2n+2}`
    /// plus `(-1)^m λ^{-2m} ∫₀^T e^{λ²(τ-t)} g₀^{(m)} dτ`.
    Boundary {
        /// Evaluation time `t`.
        t: f64,
        /// Upper limit `T ≥ t`.
        horizon: f64,
    },
}

/// Integration-by-parts expansion of a transform at one `λ`.
#[derive(Debug, Clone, PartialEq)]
pub struct IbpExpansion {
    /// Boundary terms, one per level.
    pub terms: Vec<C64>,
    /// Number of boundary terms.
    pub depth: usize,
    /// Identity expanded.
    pub kind: IbpKind,
    lambda: C64,
}

impl IbpExpansion {
    /// Expansion of `û₀(λ)`.
    pub fn initial(problem: &HalfLineProblem, lambda: C64, depth: usize) -> Result<Self> {
        if lambda.im > 0.0 {
            return Err(Error::Domain("the half-line transform needs Im lambda <= 0"));
        }
        let il = I * lambda;
        let mut p = il;
        let mut terms = Vec::with_capacity(depth);
        for n in 0..depth {
            terms.push(problem.u0.derivative(n, 0.0) / p);
            p *= il;
        }
        Ok(IbpExpansion {
            terms,
            depth,
            kind: IbpKind::Initial,
            lambda,
        })
    }

    /// Expansion of `e^{-λ²t} g̃₀(λ, T)`; `T = t` gives the damped transform.
    pub fn boundary(problem: &HalfLineProblem, lambda: C64, t: f64, horizon: f64, depth: usize) -> Result<Self> {
        if !(t >= 0.0 && horizon >= t) {
            return Err(Error::Domain("need 0 <= t <= horizon"));
        }
        let l2 = lambda * lambda;
        check_exponent(l2 * (horizon - t))?;
        check_exponent(-l2 * t)?;
        let up = (l2 * (horizon - t)).exp();
        let down = (-l2 * t).exp();
        let mut terms = Vec::with_capacity(depth);
        let mut p = l2;
        for n in 0..depth {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let g = &problem.g0;
            terms.push((up * g.derivative(n, horizon) - down * g.derivative(n, 0.0)) * sign / p);
            p *= l2;
        }
        Ok(IbpExpansion {
            terms,
            depth,
            kind: IbpKind::Boundary { t, horizon },
            lambda,
        })
    }

    /// Sum of the boundary terms.
    pub fn partial_sum(&self) -> C64 {
        self.terms.iter().sum()
    }

    /// The remainder, evaluated by closed form or quadrature.
    pub fn remainder(&self, problem: &HalfLineProblem) -> Result<C64> {
        let m = self.depth;
        match self.kind {
            IbpKind::Initial => {
                let il = I * self.lambda;
                Ok(half_line_transform(&problem.u0, m, self.lambda)? / il.powu(m as u32))
            }
            IbpKind::Boundary { t, horizon } => {
                let l2 = self.lambda * self.lambda;
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                Ok(exp_moment(&problem.g0, m, l2, 0.0, horizon, t)? * sign / l2.powu(m as u32))
            }
        }
    }

    /// `partial_sum() + remainder()`.
    pub fn total(&self, problem: &HalfLineProblem) -> Result<C64> {
        Ok(self.partial_sum() + self.remainder(problem)?)
    }
}
