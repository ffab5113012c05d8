//! Exact discrete geometry over the max-plus semiring.
//!
//! The crate constructs and exactly verifies certificates for the
//! max-plus analogues of the classical theorems of discrete geometry:
//! Carathéodory support reduction, the colorful Carathéodory theorem,
//! Radon partitions, Helly points, Tverberg partitions, and the Sierksma
//! lower bound ((q-1)!)^d on the number of unordered Tverberg partitions.
//!
//! All arithmetic is exact: coordinates and coefficients are rationals or
//! the explicit bottom element -inf, and the parametric proofs run on
//! generalized polynomials with rational coefficients and rational
//! exponents. Every certificate re-verifies by direct coordinatewise
//! evaluation, independent of the code that produced it.

pub mod bipartite;
pub mod caratheodory;
pub mod error;
pub mod genpoly;
pub mod geometry;
pub mod helly;
pub mod oracle;
pub mod radon;
pub mod scalar;
pub mod sierksma;
pub mod tverberg;

pub use error::Error;
pub use geometry::{combine, membership, project, Combination, Mode, Point, PointSet};
pub use scalar::{Rat, Scalar};
