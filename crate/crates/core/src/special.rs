//! Special functions needed by the oracles and the closed forms.

#[allow(unused_imports)]
use num_traits::Float;

use crate::C64;

const FRAC_2_SQRT_PI: f64 = core::f64::consts::FRAC_2_SQRT_PI;

/// Complementary error function for real arguments.
///
/// Uses the everywhere-positive Maclaurin series of `erf` below 2 and a
/// continued fraction above, which keeps relative accuracy in the tail.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return 2.0 - erfc(-x);
    }
    if x < 2.0 {
        1.0 - erf_series(x)
    } else {
        erfc_continued_fraction(x)
    }
}

/// Error function for real arguments.
pub fn erf(x: f64) -> f64 {
    if x.abs() < 2.0 {
        erf_series(x)
    } else {
        1.0 - erfc(x)
    }
}

// erf(x) = 2/sqrt(pi) e^{-x^2} sum (2x^2)^n x / (2n+1)!!
fn erf_series(x: f64) -> f64 {
    let x2 = x * x;
    let mut term = x;
    let mut sum = x;
    let mut n = 0.0;
    loop {
        n += 1.0;
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    FRAC_2_SQRT_PI * (-x2).exp() * sum
}

// erfc(x) = e^{-x^2}/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
fn erfc_continued_fraction(x: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..500 {
        let a = 0.5 * k as f64;
        d = x + a * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = x + a / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    (-x * x).exp() / (f * core::f64::consts::PI.sqrt())
}

/// `(e^z - 1) / z`, accurate for small `|z|`.
pub fn phi1(z: C64) -> C64 {
    if z.norm() < 0.5 {
        let mut term = C64::new(1.0, 0.0);
        let mut sum = term;
        for k in 2..40 {
            term = term * z / k as f64;
            sum += term;
            if term.norm() < 1e-17 * sum.norm() {
                break;
            }
        }
        sum
    } else {
        (z.exp() - 1.0) / z
    }
}

const WEIDEMAN_L: f64 = 5.318_295_896_944_988_6;

// Weideman's expansion coefficients for N = 40, from a cosine transform of
// e^{-t²}(L² + t²) sampled at t = L tan(kπ/160).
const WEIDEMAN_COEFFS: [f64; 40] = [
    2.8996245093897053,
    2.61605415276186,
    2.201513794878312,
    1.7253830848179779,
    1.2563815675765133,
    0.8472174576593818,
    0.5266528988277086,
    0.29989437996150065,
    0.15504263802479495,
    0.07182361779074337,
    0.029202916471241867,
    0.010048186242783424,
    0.0027054056330737914,
    0.0004398070159869668,
    -3.939363145489569e-05,
    -5.591309264248318e-05,
    -1.8007447144750956e-05,
    -1.0660138984947143e-06,
    1.483566113220078e-06,
    5.912136951899494e-07,
    1.4198642399935674e-08,
    -6.35177348504429e-08,
    -1.8315616783040462e-08,
    3.2497465180436973e-09,
    3.0177805400090707e-09,
    2.1086006347066517e-10,
    -3.5632339865976533e-10,
    -9.055124450928292e-11,
    3.47272670930455e-11,
    1.7714495214011192e-11,
    -2.7276023158200452e-12,
    -2.907688342182867e-12,
    1.2031458219387989e-13,
    4.5329666782606727e-13,
    1.37256205867155e-14,
    -7.074086260286855e-14,
    -5.409310282882142e-15,
    1.1357687198999241e-14,
    1.128073562364402e-15,
    -1.899694947394927e-15,
];

/// Faddeeva function `w(z) = e^{-z²} erfc(-iz)` for `Im z ≥ 0`.
///
/// Weideman's rational expansion in `(L + iz)/(L - iz)`; relative error is
/// below `1e-15` on the closed upper half-plane.
pub fn faddeeva(z: C64) -> C64 {
    let l = C64::new(WEIDEMAN_L, 0.0);
    let iz = C64::new(-z.im, z.re);
    let den = l - iz;
    let zz = (l + iz) / den;
    let mut p = C64::new(0.0, 0.0);
    for c in WEIDEMAN_COEFFS.iter().rev() {
        p = p * zz + c;
    }
    p * 2.0 / (den * den) + C64::new(0.564_189_583_547_756_3, 0.0) / den
}
