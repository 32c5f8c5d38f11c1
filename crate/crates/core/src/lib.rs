//! Evaluation of the heat equation on the half-line `x > 0` with Dirichlet
//! boundary data through the unified transform.
//!
//! The crate offers four independent representations of the solution
//! ([`representations`]), the transforms they are built from
//! ([`transforms`]), the contour quadrature used to evaluate them
//! ([`quadrature`]) and numerical checks of the behaviour of the solution
//! near the boundary and the corner ([`boundary`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![warn(missing_docs)]

extern crate alloc;

pub mod boundary;
mod error;
pub mod extrapolation;
pub mod problem;
pub mod quadrature;
pub mod representations;
pub mod special;
pub mod studies;
pub mod transforms;

pub use error::{Error, Result};
pub use problem::{DataFamily, HalfLineProblem, Which};
pub use quadrature::{ContourSpec, Estimate, QuadratureConfig, Rule};
pub use representations::{EvalResult, Representation};

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex<f64>;
