//! Quadrature along the real line and the contour `Γ = ∂{π/4 ≤ arg λ ≤ 3π/4}`.
//!
//! `Γ` is oriented from `∞e^{3iπ/4}` through the origin to `∞e^{iπ/4}`.

mod adaptive;
mod conditional;
mod contour;
mod gauss_legendre;

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

pub(crate) use adaptive::Integrator;
pub use conditional::{boundary_term_integral, integrate_gamma_conditional, BoundaryTerm, SplitIntegrand};
pub(crate) use contour::{envelope_radius, integrate_ray_pair_on, ray_breaks};
pub use contour::gamma_tail_bound;
pub use gauss_legendre::GaussLegendre;

use crate::extrapolation::richardson;
use crate::{Error, Result, C64};

/// Widest initial panel, in `|λ|`, for integrands of unknown phase.
const MAX_BLIND_PANEL: f64 = 1.0;

/// Angle of the outgoing ray of `Γ`.
pub const GAMMA_ANGLE: f64 = core::f64::consts::FRAC_PI_4;

/// A value with an absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    /// Approximate integral.
    pub value: C64,
    /// Absolute error estimate.
    pub error: f64,
}

impl Estimate {
    /// Exact zero.
    pub fn zero() -> Self {
        Estimate {
            value: C64::new(0.0, 0.0),
            error: 0.0,
        }
    }

    pub(crate) fn scale(self, c: C64) -> Self {
        Estimate {
            value: self.value * c,
            error: self.error * c.norm(),
        }
    }
}

impl core::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, rhs: Estimate) -> Estimate {
        Estimate {
            value: self.value + rhs.value,
            error: self.error + rhs.error,
        }
    }
}

/// Quadrature rule selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rule {
    /// Global adaptive bisection with a 16-point Gauss–Legendre pair.
    Adaptive,
    /// Composite fixed Gauss–Legendre rule; panel count follows
    /// [`ContourSpec::nodes_per_unit`].
    GaussLegendre {
        /// Nodes per panel.
        order: usize,
    },
}

/// Geometry of the contour integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    /// Truncation radius; chosen from the integrand decay when `None`.
    pub radius: Option<f64>,
    /// Node density used by fixed rules.
    pub nodes_per_unit: usize,
    /// Radius separating `Γ₀` from `Γ₁` in conditionally convergent integrals.
    pub split_radius: f64,
    /// Angle `θ` of the ray pair `{arg λ = θ} ∪ {arg λ = π − θ}` used by
    /// [`integrate_gamma`]; `π/4` is `Γ` itself.
    pub ray_angle: f64,
}

impl Default for ContourSpec {
    fn default() -> Self {
        ContourSpec {
            radius: None,
            nodes_per_unit: 8,
            split_radius: 1.0,
            ray_angle: GAMMA_ANGLE,
        }
    }
}

/// Tolerances and rules shared by all evaluations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Absolute tolerance per integral.
    pub abs_tol: f64,
    /// Relative tolerance per integral.
    pub rel_tol: f64,
    /// Panel budget per integral.
    pub max_panels: usize,
    /// Quadrature rule.
    pub rule: Rule,
    /// Boundary terms kept when expanding `û₀` by parts.
    pub ibp_depth: usize,
    /// Boundary terms kept when expanding the boundary transform by parts.
    pub boundary_ibp_depth: usize,
    /// Contour geometry.
    pub contour: ContourSpec,
    /// Move contour integrals of analytic, decaying integrands onto steeper
    /// rays where `e^{-λ²t}` decays.
    pub deform: bool,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            max_panels: 400_000,
            rule: Rule::Adaptive,
            ibp_depth: 3,
            boundary_ibp_depth: 2,
            contour: ContourSpec::default(),
            deform: true,
        }
    }
}

impl QuadratureConfig {
    /// Checks ranges of every field.
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol >= 1e-14 && self.rel_tol > 0.0) {
            return Err(Error::Domain("need abs_tol >= 1e-14 and rel_tol > 0"));
        }
        if self.max_panels == 0 {
            return Err(Error::Domain("max_panels must be positive"));
        }
        if let Rule::GaussLegendre { order } = self.rule {
            if order == 0 || order > 128 {
                return Err(Error::Domain("Gauss-Legendre order must lie in 1..=128"));
            }
        }
        if self.ibp_depth == 0 || self.ibp_depth > 6 || self.boundary_ibp_depth == 0 || self.boundary_ibp_depth > 4 {
            return Err(Error::Domain("integration-by-parts depth out of range"));
        }
        let c = &self.contour;
        if let Some(r) = c.radius {
            if !(r.is_finite() && r > c.split_radius) {
                return Err(Error::Domain("contour radius must exceed the split radius"));
            }
        }
        if c.nodes_per_unit == 0 || !(c.split_radius > 0.0) {
            return Err(Error::Domain("contour density and split radius must be positive"));
        }
        if !(c.ray_angle > 0.0 && c.ray_angle <= GAMMA_ANGLE) {
            return Err(Error::Domain("ray angle must lie in (0, pi/4]"));
        }
        Ok(())
    }
}

fn probe_radius<F: FnMut(C64) -> C64>(f: &mut F, angle: f64) -> Result<f64> {
    let dirs = [C64::from_polar(1.0, angle), C64::from_polar(1.0, core::f64::consts::PI - angle)];
    let mut peak = 0.0f64;
    let mut r = 0.0625;
    while r < 0.5 {
        for d in dirs {
            peak = peak.max(f(d * r).norm());
        }
        r *= 2.0;
    }
    let mut radius = 0.5;
    while radius <= 1e7 {
        let mut m = 0.0f64;
        for k in 0..8 {
            let rr = radius * (1.0 + k as f64 / 8.0);
            for d in dirs {
                m = m.max(f(d * rr).norm());
            }
        }
        peak = peak.max(m);
        if m * radius <= 1e-17 * peak.max(f64::MIN_POSITIVE) {
            return Ok(radius);
        }
        radius *= 2.0;
    }
    Err(Error::NonDecayingIntegrand)
}

/// `∫_Γ f(λ) dλ` for integrands that decay along `Γ` (or along the ray pair
/// selected by [`ContourSpec::ray_angle`]).
///
/// The truncation radius is [`ContourSpec::radius`] or, when absent, the
/// radius past which sampled `|f|` has dropped below `1e-17` of its peak.
pub fn integrate_gamma<F: FnMut(C64) -> C64>(mut f: F, spec: &ContourSpec, cfg: &QuadratureConfig) -> Result<Estimate> {
    cfg.validate()?;
    let radius = match spec.radius {
        Some(r) => r,
        None => probe_radius(&mut f, spec.ray_angle)?,
    };
    let q = Integrator::from_config(cfg);
    // Nothing is known about the phase, so adaptive panels stay short enough
    // that a chirp cannot alias between a panel and its halves.
    let widest = match cfg.rule {
        Rule::Adaptive => MAX_BLIND_PANEL,
        Rule::GaussLegendre { .. } => f64::INFINITY,
    };
    let mut breaks = alloc::vec![0.0];
    for w in ray_breaks(0.0, radius, 0.0, 0.0).windows(2) {
        let n = ((w[1] - w[0]) / widest).ceil().max(1.0) as usize;
        breaks.extend((1..=n).map(|j| w[0] + (w[1] - w[0]) * j as f64 / n as f64));
    }
    integrate_ray_pair_on(f, spec.ray_angle, &breaks, &q)
}

/// `∫_ℝ f(λ) dλ` for integrands carrying a Gaussian factor `e^{-λ² t}`.
pub fn integrate_real_damped<F: FnMut(f64) -> C64>(mut f: F, t: f64, cfg: &QuadratureConfig) -> Result<Estimate> {
    cfg.validate()?;
    if !(t > 0.0) {
        return Err(Error::Domain("damping time must be positive"));
    }
    let mut peak = 0.0f64;
    let mut r = 0.0;
    let r0 = 8f64.max((40.0 / t).sqrt());
    while r <= r0 {
        peak = peak.max(f(r).norm()).max(f(-r).norm());
        r += r0 / 64.0;
    }
    let mut radius = r0;
    loop {
        let m = f(radius).norm().max(f(-radius).norm());
        if m * radius <= 1e-17 * peak.max(f64::MIN_POSITIVE) {
            break;
        }
        radius *= 1.25;
        if radius > 1e8 {
            return Err(Error::NonDecayingIntegrand);
        }
    }
    let q = Integrator::from_config(cfg);
    let half: Vec<f64> = ray_breaks(0.0, radius, 0.0, 0.0);
    q.integrate(|s| f(s) + f(-s), &half)
}

// Smooth step from 1 at u = 0 to 0 at u = 1, flat to all orders at both ends.
fn window_tail(u: f64) -> f64 {
    if u <= 0.0 {
        return 1.0;
    }
    if u >= 1.0 {
        return 0.0;
    }
    let a = (-1.0 / (1.0 - u)).exp();
    let b = (-1.0 / u).exp();
    a / (a + b)
}

/// Symmetric limit `lim_{A→∞} ∫_{-A}^{A} f(λ) dλ`.
///
/// Each partial integral `S(A)`, for `A` in `a_sequence` (increasing;
/// defaults to `20, 40, 80, 160` when empty), is replaced by its mean over
/// `[A, 2A]` under a smooth window. The mean has the same limit, but an
/// oscillatory tail such as `e^{iAx}/A` is averaged away while algebraic
/// tails keep an expansion in powers of `1/A`; the means are then
/// Richardson-extrapolated with the ratio of the last two radii. Fails with
/// [`Error::NoConvergence`] when the last step between means exceeds the one
/// before it or the extrapolation does not settle.
pub fn integrate_real_symmetric<F: FnMut(f64) -> C64>(
    mut f: F,
    a_sequence: &[f64],
    cfg: &QuadratureConfig,
) -> Result<Estimate> {
    cfg.validate()?;
    let default = [20.0, 40.0, 80.0, 160.0];
    let radii = if a_sequence.is_empty() { &default[..] } else { a_sequence };
    if radii.len() < 3 || !(radii[0] > 0.0) || radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("need at least three increasing positive radii"));
    }
    let q = Integrator::from_config(cfg);
    let mut re = Vec::with_capacity(radii.len());
    let mut im = Vec::with_capacity(radii.len());
    let mut acc = Estimate::zero();
    let mut noise = 0.0f64;
    let mut lo = 0.0;
    for &hi in radii {
        acc = acc + q.integrate(|s| f(s) + f(-s), &ray_breaks(lo, hi, 0.0, 0.0))?;
        let window = q.integrate(
            |s| (f(s) + f(-s)) * window_tail(s / hi - 1.0),
            &ray_breaks(hi, 2.0 * hi, 0.0, 0.0),
        )?;
        let mean = acc.value + window.value;
        noise = noise.max(acc.error + window.error);
        re.push(mean.re);
        im.push(mean.im);
        lo = hi;
    }
    let n = radii.len();
    let ratio = radii[n - 1] / radii[n - 2];
    let step = |k: usize| C64::new(re[k] - re[k - 1], im[k] - im[k - 1]).norm();
    let growing = step(n - 1) > step(n - 2) + noise;
    let r = richardson(&re, ratio, noise);
    let i = richardson(&im, ratio, noise);
    let spread = r.est_error + i.est_error;
    if growing || !(r.converged && i.converged) {
        return Err(Error::NoConvergence { spread });
    }
    Ok(Estimate {
        value: C64::new(r.value, i.value),
        error: spread,
    })
}
