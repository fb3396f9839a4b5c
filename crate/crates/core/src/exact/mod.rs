//! Exact arithmetic building blocks: big-integer matrices, integer
//! polynomials with rational interpolation, strict linear programming over
//! the rationals, and difference-constraint systems.

pub mod diff;
pub mod matrix;
pub mod poly;
pub mod simplex;

/// Arbitrary-precision rational number used throughout the crate.
pub type BigRat = num::BigRational;

pub use diff::{DiffConstraint, DiffSystem};
pub use matrix::IntMatrix;
pub use poly::{interpolate_int_poly, IntPoly, InterpolationError};
pub use simplex::{Constraint, Relation, StrictSystem};
