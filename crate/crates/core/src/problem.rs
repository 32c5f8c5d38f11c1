//! Problem data: initial condition `u₀` on `x ≥ 0` and Dirichlet data `g₀`
//! on `t ≥ 0`, each drawn from a small family of closed-form functions.

use alloc::string::String;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::{Error, Result};

/// Largest derivative order accepted by [`eval_data`].
pub const MAX_DERIVATIVE_ORDER: usize = 10;

/// Closed-form data functions. Coefficient vectors are in ascending powers.
#[derive(Debug, Clone, PartialEq)]
pub enum DataFamily {
    /// `a·e^{-b·s}`, `b > 0`.
    ExpDecay {
        /// Amplitude.
        a: f64,
        /// Rate.
        b: f64,
    },
    /// `a·e^{-b·s²}`, `b > 0`.
    Gaussian {
        /// Amplitude.
        a: f64,
        /// Rate.
        b: f64,
    },
    /// `p(s)·e^{-b·s}`, `b > 0`.
    PolyExp {
        /// Coefficients of `p`.
        coeffs: Vec<f64>,
        /// Rate.
        b: f64,
    },
    /// The constant `c`.
    Constant {
        /// Value.
        c: f64,
    },
    /// `a·e^{c·s}`.
    ExpGrow {
        /// Amplitude.
        a: f64,
        /// Exponent rate.
        c: f64,
    },
    /// Polynomial `p(s)`.
    Poly {
        /// Coefficients of `p`.
        coeffs: Vec<f64>,
    },
}

/// Selects `u₀` or `g₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    /// Initial data `u₀(x)`.
    Initial,
    /// Boundary data `g₀(t)`.
    Boundary,
}

fn poly_eval(coeffs: &[f64], s: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * s + c)
}

pub(crate) fn poly_derivative(coeffs: &[f64]) -> Vec<f64> {
    coeffs.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect()
}

/// Coefficients of `q` with `(d/ds)^k [p(s)e^{-bs}] = q(s)e^{-bs}`.
pub(crate) fn poly_exp_derivative(coeffs: &[f64], b: f64, k: usize) -> Vec<f64> {
    let mut q = coeffs.to_vec();
    for _ in 0..k {
        let d = poly_derivative(&q);
        for (j, c) in q.iter_mut().enumerate() {
            *c = d.get(j).copied().unwrap_or(0.0) - b * *c;
        }
    }
    q
}

// Physicists' Hermite polynomial H_k(y).
fn hermite(k: usize, y: f64) -> f64 {
    let (mut h0, mut h1) = (1.0, 2.0 * y);
    if k == 0 {
        return h0;
    }
    for n in 1..k {
        let h2 = 2.0 * y * h1 - 2.0 * n as f64 * h0;
        h0 = h1;
        h1 = h2;
    }
    h1
}

impl DataFamily {
    /// Checks parameters are finite and decay rates positive.
    pub fn validate(&self) -> Result<()> {
        let finite = |v: &[f64]| v.iter().all(|x| x.is_finite());
        let ok = match self {
            DataFamily::ExpDecay { a, b } | DataFamily::Gaussian { a, b } => finite(&[*a, *b]) && *b > 0.0,
            DataFamily::PolyExp { coeffs, b } => finite(coeffs) && b.is_finite() && *b > 0.0,
            DataFamily::Constant { c } => c.is_finite(),
            DataFamily::ExpGrow { a, c } => finite(&[*a, *c]),
            DataFamily::Poly { coeffs } => finite(coeffs),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidFamily("parameters must be finite with positive decay rate"))
        }
    }

    /// The function vanishes identically.
    pub fn is_zero(&self) -> bool {
        match self {
            DataFamily::ExpDecay { a, .. } | DataFamily::Gaussian { a, .. } | DataFamily::ExpGrow { a, .. } => *a == 0.0,
            DataFamily::PolyExp { coeffs, .. } | DataFamily::Poly { coeffs } => coeffs.iter().all(|c| *c == 0.0),
            DataFamily::Constant { c } => *c == 0.0,
        }
    }

    /// The function and all its derivatives decay exponentially as `s → ∞`.
    pub fn decays(&self) -> bool {
        matches!(
            self,
            DataFamily::ExpDecay { .. } | DataFamily::Gaussian { .. } | DataFamily::PolyExp { .. }
        ) || self.is_zero()
    }

    /// `k`-th derivative at `s`, without order cap.
    pub fn derivative(&self, k: usize, s: f64) -> f64 {
        match self {
            DataFamily::ExpDecay { a, b } => a * (-b).powi(k as i32) * (-b * s).exp(),
            DataFamily::Gaussian { a, b } => {
                let rb = b.sqrt();
                a * (-rb).powi(k as i32) * hermite(k, rb * s) * (-b * s * s).exp()
            }
            DataFamily::PolyExp { coeffs, b } => poly_eval(&poly_exp_derivative(coeffs, *b, k), s) * (-b * s).exp(),
            DataFamily::Constant { c } => {
                if k == 0 {
                    *c
                } else {
                    0.0
                }
            }
            DataFamily::ExpGrow { a, c } => a * c.powi(k as i32) * (c * s).exp(),
            DataFamily::Poly { coeffs } => {
                let mut q = coeffs.clone();
                for _ in 0..k {
                    q = poly_derivative(&q);
                }
                poly_eval(&q, s)
            }
        }
    }

    /// Value at `s`.
    pub fn value(&self, s: f64) -> f64 {
        self.derivative(0, s)
    }

    /// Point past which the `k`-th derivative is below `1e-18` of its
    /// running maximum; only meaningful for decaying families.
    pub(crate) fn cutoff(&self, k: usize) -> f64 {
        let scale = match self {
            DataFamily::ExpDecay { b, .. } | DataFamily::PolyExp { b, .. } => 1.0 / b,
            DataFamily::Gaussian { b, .. } => 1.0 / b.sqrt(),
            _ => 1.0,
        };
        let step = scale / 8.0;
        let mut peak = 0.0f64;
        let mut s = 0.0;
        let mut quiet = 0.0;
        loop {
            let v = self.derivative(k, s).abs();
            peak = peak.max(v);
            if v <= 1e-18 * peak {
                quiet += step;
                if quiet >= 4.0 * scale {
                    return s;
                }
            } else {
                quiet = 0.0;
            }
            s += step;
            if s > 1e4 * scale {
                return s;
            }
        }
    }
}

/// Half-line heat problem `u_t = u_xx`, `u(x,0) = u₀(x)`, `u(0,t) = g₀(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfLineProblem {
    /// Initial data.
    pub u0: DataFamily,
    /// Boundary data.
    pub g0: DataFamily,
    /// Free-form name.
    pub label: String,
}

impl HalfLineProblem {
    /// Builds a problem, rejecting initial data that do not decay.
    pub fn new(u0: DataFamily, g0: DataFamily, label: impl Into<String>) -> Result<Self> {
        u0.validate()?;
        g0.validate()?;
        if !u0.decays() {
            return Err(Error::InvalidFamily("initial data must decay at infinity"));
        }
        Ok(HalfLineProblem {
            u0,
            g0,
            label: label.into(),
        })
    }

    /// `u = a·e^{-bx + b²t}`, an exact solution with compatible data.
    pub fn caloric(a: f64, b: f64) -> Result<Self> {
        Self::new(
            DataFamily::ExpDecay { a, b },
            DataFamily::ExpGrow { a, c: b * b },
            alloc::format!("caloric(a={a}, b={b})"),
        )
    }

    /// `u₀ = 0`, `g₀ = 1`, with solution `erfc(x / 2√t)`.
    pub fn erfc_step() -> Self {
        HalfLineProblem {
            u0: DataFamily::ExpDecay { a: 0.0, b: 1.0 },
            g0: DataFamily::Constant { c: 1.0 },
            label: String::from("erfc"),
        }
    }

    /// `u₀ = e^{-x²}`, `g₀ = 1`.
    pub fn gaussian_unit_boundary() -> Self {
        HalfLineProblem {
            u0: DataFamily::Gaussian { a: 1.0, b: 1.0 },
            g0: DataFamily::Constant { c: 1.0 },
            label: String::from("gaussian"),
        }
    }

    /// Zero initial data with the given boundary data.
    pub fn boundary_only(g0: DataFamily, label: impl Into<String>) -> Result<Self> {
        Self::new(DataFamily::ExpDecay { a: 0.0, b: 1.0 }, g0, label)
    }

    /// Closed-form solution when the data belong to the caloric
    /// (`a·e^{-bx}`, `a·e^{b²t}`) or constant-boundary (`u₀ = 0`, `g₀ = c`)
    /// families.
    pub fn closed_form(&self, x: f64, t: f64) -> Option<f64> {
        match (&self.u0, &self.g0) {
            (DataFamily::ExpDecay { a, b }, DataFamily::ExpGrow { a: ag, c }) if a == ag && (b * b - c).abs() <= 1e-15 * c.abs() => {
                Some(a * (b * b * t - b * x).exp())
            }
            (u0, DataFamily::Constant { c }) if u0.is_zero() => Some(if x == 0.0 {
                *c
            } else {
                c * crate::special::erfc(x / (2.0 * t.sqrt()))
            }),
            (u0, g0) if u0.is_zero() && g0.is_zero() => Some(0.0),
            _ => None,
        }
    }

    /// The data function selected by `which`.
    pub fn data(&self, which: Which) -> &DataFamily {
        match which {
            Which::Initial => &self.u0,
            Which::Boundary => &self.g0,
        }
    }
}

/// `order`-th derivative of `u₀` or `g₀` at a non-negative point.
pub fn eval_data(problem: &HalfLineProblem, which: Which, order: usize, point: f64) -> Result<f64> {
    if order > MAX_DERIVATIVE_ORDER {
        return Err(Error::UnsupportedOrder {
            order,
            cap: MAX_DERIVATIVE_ORDER,
        });
    }
    if !(point >= 0.0) || !point.is_finite() {
        return Err(Error::Domain("data are defined for finite non-negative arguments"));
    }
    Ok(problem.data(which).derivative(order, point))
}

/// Corner compatibility `g₀^{(n)}(0) = u₀^{(2n)}(0)` for `n = 0..=max_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CompatibilityReport {
    /// `(n, u₀^{(2n)}(0) - g₀^{(n)}(0))`.
    pub discrepancies: Vec<(usize, f64)>,
    /// Largest `N ≤ max_n` such that the conditions hold for all `n ≤ N`
    /// (relative to the size of the derivatives), or `-1` if `n = 0` fails.
    pub order: i64,
}

/// Checks corner compatibility up to `max_n` at relative tolerance `tol`.
pub fn check_compatibility(problem: &HalfLineProblem, max_n: usize, tol: f64) -> Result<CompatibilityReport> {
    if 2 * max_n > MAX_DERIVATIVE_ORDER {
        return Err(Error::UnsupportedOrder {
            order: 2 * max_n,
            cap: MAX_DERIVATIVE_ORDER,
        });
    }
    let mut discrepancies = Vec::with_capacity(max_n + 1);
    let mut order = -1i64;
    let mut intact = true;
    for n in 0..=max_n {
        let g = problem.g0.derivative(n, 0.0);
        let u = problem.u0.derivative(2 * n, 0.0);
        let d = u - g;
        discrepancies.push((n, d));
        if intact && d.abs() <= tol * g.abs().max(u.abs()).max(1.0) {
            order = n as i64;
        } else {
            intact = false;
        }
    }
    Ok(CompatibilityReport { discrepancies, order })
}
