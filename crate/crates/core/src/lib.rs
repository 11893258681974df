//! Exact enumeration of lattice points in inside-out rational polytopes.
//!
//! An *inside-out polytope* is a rational convex polytope together with an
//! arrangement of hyperplanes to be avoided.  Counting the `1/t`-fractional
//! points of the open polytope that miss every hyperplane yields an Ehrhart
//! quasipolynomial, which this crate computes exactly:
//!
//! - [`polytope`]: rational H-polytopes, hyperplanes, vertex enumeration
//! - [`lattice`]: exact counting of `(1/t)`-lattice points in faces
//! - [`ehrhart`]: Ehrhart series, intersection posets with Möbius functions,
//!   reciprocity, and Möbius inversion over the arrangement
//! - [`ratfunc`]: rational generating functions over `(1 - x^a)` denominators
//!   and quasipolynomial constituent extraction
//! - [`squares`]: the six built-in 3x3 counting problems (magic, semimagic,
//!   magilatin squares, each by upper bound or by magic sum)
//! - [`oracle`]: independent brute-force square enumeration used to verify
//!   every generating function at desk scale
//!
//! All arithmetic is exact: arbitrary-precision rationals for geometry,
//! arbitrary-precision integers for series coefficients.  No floating point.

pub mod ehrhart;
pub mod lattice;
mod linalg;
pub mod oracle;
pub mod polytope;
pub mod ratfunc;
pub mod rational;
pub mod squares;

pub use polytope::{Face, HPolytope, Hyperplane, InsideOutPolytope};
pub use ratfunc::{Quasipolynomial, RationalGF};
pub use rational::Rat;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The feasible region recedes to infinity; vertex enumeration refuses it.
    #[error("unbounded")]
    Unbounded,
    /// An operation that needs at least one vertex got an empty polytope.
    #[error("no vertices")]
    NoVertices,
    /// Extra sample counts contradict the fitted Ehrhart series.
    #[error("period/denominator hint too small")]
    PeriodHint,
    /// A quasipolynomial evaluated to a non-integer; signals a bug upstream.
    #[error("constituent mismatch: non-integral value at t = {0}")]
    ConstituentMismatch(u64),
    /// The two Möbius-inversion routes disagree; signals a bug upstream.
    #[error("reciprocity route mismatch")]
    RouteMismatch,
    /// A generating-function numerator failed an exact-divisibility step.
    #[error("inexact division: {0}")]
    InexactDivision(&'static str),
    /// Brute-force enumeration request exceeds the configured budget.
    #[error("budget")]
    Budget,
    /// A square handed to the oracle fails the family predicate.
    #[error("square does not satisfy the family predicate")]
    InvalidSquare,
    /// Structural invariant violated; indicates a bug, not bad input.
    #[error("internal invariant violation: {0}")]
    Internal(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
