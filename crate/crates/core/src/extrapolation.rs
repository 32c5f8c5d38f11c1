//! Richardson extrapolation of sequences indexed by a geometric step.

use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

/// Outcome of [`richardson`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    /// Extrapolated limit.
    pub value: f64,
    /// Last change at the selected tableau column plus amplified noise.
    pub est_error: f64,
    /// The last change did not exceed the one before it.
    pub converged: bool,
    /// Selected tableau column (number of eliminated error terms).
    pub level: usize,
}

/// Extrapolates `values[j] ≈ L + Σ c_k h_j^k` with `h_{j+1} = h_j / ratio`.
///
/// `noise` bounds the absolute error of each input; it is propagated through
/// the tableau and added to the error estimate. The tableau column whose last
/// two entries agree best is selected.
pub fn richardson(values: &[f64], ratio: f64, noise: f64) -> Extrapolated {
    let n = values.len();
    if n == 0 {
        return Extrapolated {
            value: f64::NAN,
            est_error: f64::INFINITY,
            converged: false,
            level: 0,
        };
    }
    if n < 3 {
        let d1 = if n == 2 { (values[1] - values[0]).abs() } else { f64::INFINITY };
        return Extrapolated {
            value: values[n - 1],
            est_error: d1 + noise,
            converged: false,
            level: 0,
        };
    }
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(n);
    for (j, &v) in values.iter().enumerate() {
        let mut row = alloc::vec![v];
        for k in 1..=j {
            let f = ratio.powi(k as i32) - 1.0;
            let t = row[k - 1] + (row[k - 1] - table[j - 1][k - 1]) / f;
            row.push(t);
        }
        table.push(row);
    }
    let last = n - 1;
    let mut best = None::<(f64, usize, f64, f64)>;
    let mut amp = 1.0;
    for k in 0..=last - 2 {
        if k > 0 {
            let p = ratio.powi(k as i32);
            amp *= (p + 1.0) / (p - 1.0);
        }
        let d1 = (table[last][k] - table[last - 1][k]).abs();
        let d2 = (table[last - 1][k] - table[last - 2][k]).abs();
        let score = d1 + amp * noise;
        if best.map_or(true, |(s, ..)| score < s) {
            best = Some((score, k, d2 + amp * noise, d1));
        }
    }
    let (score, level, prev, d1) = best.expect("at least one column");
    Extrapolated {
        value: table[last][level],
        est_error: score,
        converged: d1 <= prev,
        level,
    }
}
