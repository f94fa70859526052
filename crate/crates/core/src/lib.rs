//! Exact computation of lattice-polytope invariants.
//!
//! The crate computes the adjoint polytopes `(aP)^(b)`, codegree and degree,
//! the rational codegree, spannedness and the nef value of smooth polytopes,
//! and constructs and detects generalized (and strict) Cayley structure. All
//! arithmetic is exact: integers and rationals are arbitrary precision and
//! no floating point is used in any computation.
//!
//! Module map:
//! - [`ratlin`]: integer and rational linear algebra (Smith form, dual bases)
//! - [`lpx`]: exact simplex method
//! - [`polytope`]: facet and vertex presentations, lattice points, shrinking,
//!   smoothness, normal fans and lattice equivalence
//! - [`invariants`]: codegree, rational codegree, nef value, classification
//! - [`cayley`]: Cayley construction, detection and the split-bundle check
//! - [`io`] and [`cli`]: the `latpoly/1` file format and the command line

pub mod cayley;
pub mod cli;
mod error;
pub mod invariants;
pub mod io;
pub mod lpx;
pub mod polytope;
pub mod ratlin;

pub use error::{Error, Result};

/// Arbitrary-precision integer.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational.
pub type Rat = num_rational::BigRational;
