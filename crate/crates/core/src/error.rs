use core::fmt;

use crate::C64;

/// Errors reported by the evaluation routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A derivative order exceeds what the routine supports.
    UnsupportedOrder {
        /// Requested order.
        order: usize,
        /// Largest supported order.
        cap: usize,
    },
    /// An argument lies outside the domain of the routine.
    Domain(&'static str),
    /// A data family is used where it is not admissible or has bad parameters.
    InvalidFamily(&'static str),
    /// An intermediate exponential would overflow.
    Overflow {
        /// Real part of the offending exponent.
        exponent: f64,
    },
    /// Adaptive quadrature ran out of panels before meeting its tolerance.
    ToleranceNotMet {
        /// Best available value.
        value: C64,
        /// Error estimate attached to `value`.
        error: f64,
    },
    /// The integrand does not decay, so no truncation radius exists.
    NonDecayingIntegrand,
    /// An integration-by-parts remainder decays too slowly to truncate.
    InsufficientDecay {
        /// Radius at which the decay test failed.
        radius: f64,
    },
    /// The horizon `T` of a representation does not exceed the time `t`.
    Horizon {
        /// Evaluation time.
        t: f64,
        /// Horizon.
        horizon: f64,
    },
    /// An extrapolated limit did not settle.
    NoConvergence {
        /// Spread of the final approximants.
        spread: f64,
    },
}

/// Result alias for this crate.
pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnsupportedOrder { order, cap } => {
                write!(f, "derivative order {order} exceeds supported maximum {cap}")
            }
            Error::Domain(msg) => write!(f, "argument out of domain: {msg}"),
            Error::InvalidFamily(msg) => write!(f, "invalid data family: {msg}"),
            Error::Overflow { exponent } => {
                write!(f, "exponential overflow (exponent real part {exponent:e})")
            }
            Error::ToleranceNotMet { value, error } => write!(
                f,
                "quadrature tolerance not met: value {value}, error estimate {error:e}"
            ),
            Error::NonDecayingIntegrand => write!(f, "integrand does not decay along the contour"),
            Error::InsufficientDecay { radius } => {
                write!(f, "remainder decays too slowly near radius {radius}")
            }
            Error::Horizon { t, horizon } => write!(f, "horizon {horizon} must exceed t = {t}"),
            Error::NoConvergence { spread } => {
                write!(f, "extrapolation did not converge (spread {spread:e})")
            }
        }
    }
}

impl core::error::Error for Error {}
