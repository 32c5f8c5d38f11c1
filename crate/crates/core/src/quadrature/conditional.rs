use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_4, PI, SQRT_2};

#[allow(unused_imports)]
use num_traits::Float;

use super::contour::{envelope_radius, integrate_arc, integrate_ray_pair, ray_breaks};
use super::{ContourSpec, Estimate, Integrator, QuadratureConfig, GAMMA_ANGLE};
use crate::{Error, Result, C64};

/// The term `coeff · λ^{-power} · e^{rate·λ²} · e^{iλx}` of an
/// integration-by-parts expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryTerm {
    /// Constant factor.
    pub coeff: C64,
    /// Inverse power of `λ`.
    pub power: u32,
    /// Coefficient of `λ²` in the exponential.
    pub rate: f64,
}

impl BoundaryTerm {
    /// Value at `λ`, including the factor `e^{iλx}`.
    pub fn eval(&self, lambda: C64, x: f64) -> C64 {
        let e = lambda * lambda * self.rate + C64::new(0.0, x) * lambda;
        self.coeff * e.exp() / lambda.powu(self.power)
    }
}

/// An integrand on `Γ` that is only conditionally integrable, split as
///
/// * `full(λ)` for `|λ| ≤ ρ`,
/// * `Σ terms(λ) + remainder(λ)` for `|λ| > ρ`,
///
/// where `remainder` is absolutely integrable and the terms are integrated
/// in closed form or on deformed paths. `full` and `remainder` include the
/// factor `e^{iλx}`.
pub struct SplitIntegrand<F, G> {
    /// The `x` in `e^{iλx}`.
    pub x: f64,
    /// Whole integrand.
    pub full: F,
    /// Expansion remainder.
    pub remainder: G,
    /// Expansion terms.
    pub terms: Vec<BoundaryTerm>,
    /// When positive, the remainder is `e^{-chirp·λ²}` times an algebraically
    /// decaying factor, which sharpens the truncation estimate.
    pub chirp: f64,
}

/// `∫_Γ f dλ` for a split integrand, understood as `lim_{A→∞} ∫_{Γ∩{|λ|≤A}}`.
pub fn integrate_gamma_conditional<F, G>(
    split: SplitIntegrand<F, G>,
    spec: &ContourSpec,
    cfg: &QuadratureConfig,
) -> Result<Estimate>
where
    F: FnMut(C64) -> C64,
    G: FnMut(C64) -> C64,
{
    cfg.validate()?;
    if !(split.x >= 0.0) {
        return Err(Error::Domain("x must be non-negative"));
    }
    let SplitIntegrand {
        x,
        full,
        mut remainder,
        terms,
        chirp,
    } = split;
    let rho = spec.split_radius;
    let q = Integrator::from_config(cfg);
    let osc_rate = terms.iter().fold(chirp.abs(), |m, t| m.max(t.rate.abs()));
    let osc = (osc_rate, x / SQRT_2);
    let mut total = integrate_ray_pair(full, GAMMA_ANGLE, 0.0, rho, osc, &q)?;

    let tail_tol = cfg.abs_tol.max(1e-10);
    let (radius, tail) = match spec.radius {
        Some(r) => (r, 0.0),
        None => remainder_radius(&mut remainder, rho, chirp, tail_tol)?,
    };
    let rem = integrate_ray_pair(&mut remainder, GAMMA_ANGLE, rho, radius, osc, &q)?;
    total = total + rem;
    total.error += tail;
    for term in &terms {
        total = total + term_integral(term, x, rho, &q)?;
    }
    Ok(total)
}

fn sup_on_octave<G: FnMut(C64) -> C64>(g: &mut G, r: f64) -> f64 {
    let out = C64::from_polar(1.0, GAMMA_ANGLE);
    let inc = C64::from_polar(1.0, PI - GAMMA_ANGLE);
    let mut m = 0.0f64;
    for k in 0..16 {
        let rr = r * (1.0 + k as f64 / 16.0);
        m = m.max(g(out * rr).norm()).max(g(inc * rr).norm());
    }
    m
}

fn remainder_radius<G: FnMut(C64) -> C64>(g: &mut G, rho: f64, chirp: f64, tol: f64) -> Result<(f64, f64)> {
    let mut radius = (2.0 * rho).max(16.0);
    let mut prev = sup_on_octave(g, 0.5 * radius);
    loop {
        let m = sup_on_octave(g, radius);
        let p = if m > 0.0 { (prev / m).log2() } else { f64::INFINITY };
        let tail = if m == 0.0 {
            0.0
        } else if chirp > 0.0 {
            2.0 * m / (radius * chirp)
        } else if p > 1.5 {
            m * radius / (p - 1.0)
        } else {
            f64::INFINITY
        };
        if tail <= tol && p > 1.0 {
            return Ok((radius, tail));
        }
        if radius >= 16384.0 {
            return Err(Error::InsufficientDecay { radius });
        }
        prev = m;
        radius *= 2.0;
    }
}

/// `∫_{Γ∩{|λ|≥ρ}}` of a single expansion term, evaluated on a path where it
/// converges absolutely.
///
/// Terms with `rate > 0` are moved onto the arc `|λ| = ρ` inside the sector;
/// terms with `rate < 0` onto the real axis outside `[-ρ, ρ]` plus two arcs.
/// Terms with `rate = 0` and `x = 0` use closed forms; for `power = 1` the
/// two rays cancel exactly for every truncation radius.
pub fn boundary_term_integral(term: &BoundaryTerm, x: f64, rho: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    cfg.validate()?;
    if !(x >= 0.0 && rho > 0.0) {
        return Err(Error::Domain("need x >= 0 and rho > 0"));
    }
    term_integral(term, x, rho, &Integrator::from_config(cfg))
}

fn term_integral(term: &BoundaryTerm, x: f64, rho: f64, q: &Integrator) -> Result<Estimate> {
    let f = |l: C64| term.eval(l, x);
    let k = term.power;
    if term.rate > 0.0 {
        return integrate_arc(f, rho, FRAC_PI_4, 3.0 * FRAC_PI_4, q);
    }
    if term.rate < 0.0 {
        let c = -term.rate;
        let r1 = envelope_radius(-(k as f64), 0.0, c, 1e-18)?.max(2.0 * rho);
        let line = q.integrate(
            |r| f(C64::new(r, 0.0)) + f(C64::new(-r, 0.0)),
            &ray_breaks(rho, r1, 0.0, x),
        )?;
        let left = integrate_arc(f, rho, PI, 3.0 * FRAC_PI_4, q)?;
        let right = integrate_arc(f, rho, FRAC_PI_4, 0.0, q)?;
        return Ok(line + left + right);
    }
    if x > 0.0 {
        let r1 = envelope_radius(-(k as f64), x / SQRT_2, 0.0, 1e-18)?.max(2.0 * rho);
        return integrate_ray_pair(f, GAMMA_ANGLE, rho, r1, (0.0, x / SQRT_2), q);
    }
    match k {
        0 => Err(Error::NonDecayingIntegrand),
        1 => integrate_ray_pair(f, GAMMA_ANGLE, rho, 64.0 * rho, (0.0, 0.0), q),
        _ => {
            let s = 1.0 - k as f64;
            let v = (C64::from_polar(1.0, 3.0 * FRAC_PI_4 * s) - C64::from_polar(1.0, FRAC_PI_4 * s)) * rho.powf(s) / s;
            Ok(Estimate {
                value: term.coeff * v,
                error: 0.0,
            })
        }
    }
}
