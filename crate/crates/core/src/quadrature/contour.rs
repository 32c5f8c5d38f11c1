use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

#[allow(unused_imports)]
use num_traits::Float;

use super::{Estimate, Integrator};
use crate::{Error, Result, C64};

/// Panel boundaries on `[r0, r1]`: geometric growth, capped so that a panel
/// spans at most two periods of the phase `chirp·r² + lin·r`.
pub(crate) fn ray_breaks(r0: f64, r1: f64, chirp: f64, lin: f64) -> Vec<f64> {
    let mut v = alloc::vec![r0];
    let mut r = r0;
    while r < r1 {
        let geo = r.max(0.25);
        let rate = 2.0 * chirp.abs() * r + lin.abs();
        let osc = if rate > 0.0 { 4.0 * PI / rate } else { f64::INFINITY };
        r = (r + geo.min(osc)).min(r1);
        if r1 - r < 1e-12 * r1 {
            r = r1;
        }
        v.push(r);
    }
    v
}

/// `∫` over the ray pair `{re^{i(π-θ)}: r1 → r0} ∪ {re^{iθ}: r0 → r1}`.
///
/// `osc = (chirp, lin)` describes the phase growth along the rays and only
/// shapes the initial panels.
pub(crate) fn integrate_ray_pair<F: FnMut(C64) -> C64>(
    f: F,
    angle: f64,
    r0: f64,
    r1: f64,
    osc: (f64, f64),
    q: &Integrator,
) -> Result<Estimate> {
    integrate_ray_pair_on(f, angle, &ray_breaks(r0, r1, osc.0, osc.1), q)
}

/// [`integrate_ray_pair`] with explicit panel boundaries in `r`.
pub(crate) fn integrate_ray_pair_on<F: FnMut(C64) -> C64>(
    mut f: F,
    angle: f64,
    breaks: &[f64],
    q: &Integrator,
) -> Result<Estimate> {
    let out = C64::from_polar(1.0, angle);
    let inc = C64::from_polar(1.0, PI - angle);
    q.integrate(|r| f(out * r) * out - f(inc * r) * inc, breaks)
}

/// `∫ f(ρe^{iφ}) iρe^{iφ} dφ` for `φ` running from `phi0` to `phi1`.
pub(crate) fn integrate_arc<F: FnMut(C64) -> C64>(
    mut f: F,
    rho: f64,
    phi0: f64,
    phi1: f64,
    q: &Integrator,
) -> Result<Estimate> {
    let (lo, hi, sign) = if phi0 <= phi1 { (phi0, phi1, 1.0) } else { (phi1, phi0, -1.0) };
    let e = q.integrate(
        |phi| {
            let l = C64::from_polar(rho, phi);
            f(l) * l * C64::new(0.0, 1.0)
        },
        &[lo, 0.5 * (lo + hi), hi],
    )?;
    Ok(e.scale(C64::new(sign, 0.0)))
}

/// Radius `R` with `env(R)·R ≤ rel · sup env` for `env(r) = r^d e^{-a r - c r²}`.
pub(crate) fn envelope_radius(d: f64, a: f64, c: f64, rel: f64) -> Result<f64> {
    if !(a > 0.0 || c > 0.0) {
        return Err(Error::NonDecayingIntegrand);
    }
    let log_env = |r: f64| d * r.ln() - a * r - c * r * r;
    let r_peak = if d <= 0.0 {
        0.0
    } else if c > 0.0 {
        (-a + (a * a + 8.0 * c * d).sqrt()) / (4.0 * c)
    } else {
        d / a
    };
    let log_peak = if d <= 0.0 { 0.0 } else { log_env(r_peak) };
    let target = log_peak + rel.ln();
    let mut r = r_peak.max(1e-3);
    loop {
        if log_env(r) + r.ln() <= target {
            return Ok(r);
        }
        r *= 1.05;
        if r > 1e9 {
            return Err(Error::NonDecayingIntegrand);
        }
    }
}

/// Bound on `∫_R^∞ r^d e^{-x r/√2} dr`, the tail of one ray of `Γ` for an
/// integrand `λ^d e^{iλx}` times a factor of modulus at most one.
pub fn gamma_tail_bound(x: f64, radius: f64, degree: u32) -> Result<f64> {
    if !(x > 0.0) || !(radius >= 0.0) {
        return Err(Error::Domain("tail bound needs x > 0 and R >= 0"));
    }
    let a = x / SQRT_2;
    let d = degree as i32;
    let mut sum = 0.0;
    let mut falling = 1.0;
    for j in 0..=d {
        sum += falling * radius.powi(d - j) / a.powi(j + 1);
        falling *= (d - j) as f64;
    }
    Ok((-a * radius).exp() * sum)
}
