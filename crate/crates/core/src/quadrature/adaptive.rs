use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;

#[allow(unused_imports)]
use num_traits::Float;

use super::gauss_legendre::GaussLegendre;
use super::{Estimate, QuadratureConfig, Rule};
use crate::{Error, Result, C64};

const ROUNDOFF: f64 = 100.0 * f64::EPSILON;

#[derive(Debug, Clone, Copy)]
enum Mode {
    Adaptive,
    Fixed { nodes_per_unit: f64 },
}

/// One-dimensional integrator over a list of breakpoints.
#[derive(Debug, Clone)]
pub(crate) struct Integrator {
    rule: GaussLegendre,
    mode: Mode,
    pub(crate) abs_tol: f64,
    pub(crate) rel_tol: f64,
    max_panels: usize,
}

struct Panel {
    a: f64,
    b: f64,
    left: C64,
    right: C64,
    left_abs: f64,
    right_abs: f64,
    err: f64,
}

impl Panel {
    fn value(&self) -> C64 {
        self.left + self.right
    }
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

impl Integrator {
    pub(crate) fn from_config(cfg: &QuadratureConfig) -> Self {
        let (rule, mode) = match cfg.rule {
            Rule::Adaptive => (GaussLegendre::new(16), Mode::Adaptive),
            Rule::GaussLegendre { order } => (
                GaussLegendre::new(order.max(1)),
                Mode::Fixed {
                    nodes_per_unit: cfg.contour.nodes_per_unit as f64,
                },
            ),
        };
        Integrator {
            rule,
            mode,
            abs_tol: cfg.abs_tol,
            rel_tol: cfg.rel_tol,
            max_panels: cfg.max_panels,
        }
    }

    /// Adaptive integrator with the given tolerances, independent of any config.
    pub(crate) fn with_tolerances(abs_tol: f64, rel_tol: f64) -> Self {
        Integrator {
            rule: GaussLegendre::new(16),
            mode: Mode::Adaptive,
            abs_tol,
            rel_tol,
            max_panels: 50_000,
        }
    }

    pub(crate) fn tolerances(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    /// Integrates `f` over `[breaks[0], breaks[last]]`, treating interior
    /// breakpoints as initial panel boundaries.
    pub(crate) fn integrate<F: FnMut(f64) -> C64>(&self, mut f: F, breaks: &[f64]) -> Result<Estimate> {
        if breaks.len() < 2 {
            return Ok(Estimate::zero());
        }
        match self.mode {
            Mode::Adaptive => self.adaptive(&mut f, breaks),
            Mode::Fixed { nodes_per_unit } => Ok(self.fixed(&mut f, breaks, nodes_per_unit)),
        }
    }

    fn panel<F: FnMut(f64) -> C64>(&self, f: &mut F, a: f64, b: f64, whole: C64) -> Panel {
        let m = 0.5 * (a + b);
        let (left, left_abs) = self.rule.apply(f, a, m);
        let (right, right_abs) = self.rule.apply(f, m, b);
        let err = (left + right - whole).norm();
        Panel {
            a,
            b,
            left,
            right,
            left_abs,
            right_abs,
            err,
        }
    }

    fn adaptive<F: FnMut(f64) -> C64>(&self, f: &mut F, breaks: &[f64]) -> Result<Estimate> {
        let mut heap = BinaryHeap::with_capacity(breaks.len() * 2);
        let mut frozen: Vec<Panel> = Vec::new();
        for w in breaks.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b <= a {
                continue;
            }
            let (whole, _) = self.rule.apply(f, a, b);
            heap.push(self.panel(f, a, b, whole));
        }
        let mut count = heap.len();
        loop {
            let mut value = C64::new(0.0, 0.0);
            let mut err = 0.0;
            let mut abs = 0.0;
            for p in heap.iter().chain(frozen.iter()) {
                value += p.value();
                err += p.err;
                abs += p.left_abs + p.right_abs;
            }
            // Subdivision cannot repair an overflowed integrand.
            if !(value.norm().is_finite() && abs.is_finite()) {
                return Err(Error::ToleranceNotMet { value, error: f64::INFINITY });
            }
            let floor = ROUNDOFF * abs;
            let target = self.abs_tol.max(self.rel_tol * value.norm()).max(floor);
            if err <= target {
                return Ok(Estimate {
                    value,
                    error: err.max(floor),
                });
            }
            if count >= self.max_panels {
                return Err(Error::ToleranceNotMet {
                    value,
                    error: err.max(floor),
                });
            }
            // Split a batch of the worst panels before re-summing.
            let batch = (heap.len() / 8).max(1);
            let mut split_any = false;
            for _ in 0..batch {
                let Some(p) = heap.pop() else { break };
                let m = 0.5 * (p.a + p.b);
                if (p.b - p.a) <= 1e-13 * (p.a.abs() + p.b.abs()) || p.err <= ROUNDOFF * (p.left_abs + p.right_abs) {
                    frozen.push(p);
                    continue;
                }
                heap.push(self.panel(f, p.a, m, p.left));
                heap.push(self.panel(f, m, p.b, p.right));
                count += 1;
                split_any = true;
            }
            if !split_any && heap.is_empty() {
                let value: C64 = frozen.iter().map(Panel::value).sum();
                let err: f64 = frozen.iter().map(|p| p.err).sum();
                return Err(Error::ToleranceNotMet { value, error: err });
            }
        }
    }

    fn fixed<F: FnMut(f64) -> C64>(&self, f: &mut F, breaks: &[f64], nodes_per_unit: f64) -> Estimate {
        let order = self.rule.order() as f64;
        let mut fine = C64::new(0.0, 0.0);
        let mut coarse = C64::new(0.0, 0.0);
        let coarse_rule = GaussLegendre::new((self.rule.order() / 2).max(1));
        for w in breaks.windows(2) {
            let (a, b) = (w[0], w[1]);
            if b <= a {
                continue;
            }
            let n = ((b - a) * nodes_per_unit / order).ceil().max(1.0) as usize;
            let h = (b - a) / n as f64;
            for k in 0..n {
                let lo = a + h * k as f64;
                let hi = if k + 1 == n { b } else { lo + h };
                fine += self.rule.apply(f, lo, hi).0;
                coarse += coarse_rule.apply(f, lo, hi).0;
            }
        }
        Estimate {
            value: fine,
            error: (fine - coarse).norm(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_and_peaked_integrands() {
        let q = Integrator::with_tolerances(1e-14, 1e-13);
        let e = q.integrate(|x| C64::new(x.exp(), 0.0), &[0.0, 1.0]).unwrap();
        assert!((e.value.re - (1f64.exp() - 1.0)).abs() < 1e-13);
        let e = q
            .integrate(|x| C64::new(1e-3 / (x * x + 1e-6), 0.0), &[-1.0, 0.0, 1.0])
            .unwrap();
        let want = 2.0 * (1e3f64).atan();
        assert!((e.value.re - want).abs() < 1e-11, "{} vs {want}", e.value.re);
    }

    #[test]
    fn panel_budget_is_reported() {
        let mut q = Integrator::with_tolerances(1e-15, 0.0);
        q.max_panels = 4;
        let r = q.integrate(|x| C64::new((200.0 * x).sin(), 0.0), &[0.0, 10.0]);
        assert!(matches!(r, Err(Error::ToleranceNotMet { .. })));
    }
}
