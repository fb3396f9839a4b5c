//! Exact geometry and combinatorics for deformations of the braid arrangement
//! that interpolate between the Shi and Ish arrangements.
//!
//! The library is organized around a family of hyperplane arrangements in
//! `R^n` indexed by a subset `X` of `{2, ..., n-1}`: every arrangement in the
//! family contains the braid hyperplanes `x_i = x_j`, the Shi hyperplanes
//! `x_i = x_j + 1` for `i` in `X` together with `i = 1`, and the Ish
//! hyperplanes `x_1 = x_j + i` for the remaining indices `i`. Taking `X`
//! maximal yields the Shi arrangement; taking `X` empty yields the Ish
//! arrangement.
//!
//! All geometric computations are exact: rational arithmetic everywhere, no
//! floating point. Feasibility of sign vectors reduces to difference
//! constraints solved by integer Bellman-Ford, with a rational simplex solver
//! available for general strict systems and used for cross-validation.

pub mod arrangement;
pub mod centers;
pub mod charpoly;
pub mod exact;
pub mod graphs;
mod jobs;
pub mod valid_pairs;

pub use arrangement::{ArrangementSpec, Hyperplane, HyperplaneKind, Region, Sign};
pub use exact::BigRat;
