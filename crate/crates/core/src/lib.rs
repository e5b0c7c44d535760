//! Exact lattice invariants of resolution graphs of normal surface
//! singularities and of curve germs on them.
//!
//! The math is generic over an exact [`Scalar`]; the aliases below fix it to
//! arbitrary-precision rationals, which is what the CLI and most callers
//! want. Fixed-width backends (`Ratio<i64>`, `Ratio<i128>`) are available
//! through the generic types in each module for small graphs.
//!
//! ```
//! use plumbing_core::{build_context, parse_graph, invariants};
//!
//! let g = parse_graph("vertex a e=-2\nvertex b e=-2\nvertex c e=-2\nedge a b\nedge b c\ncurve C: c=4\n")?;
//! let ctx = build_context(&g)?;
//! let report = invariants::delta(&ctx, g.curve("C")?)?;
//! assert_eq!(report.delta.to_string(), "6");
//! # Ok::<(), plumbing_core::Error>(())
//! ```

pub mod cyclic;
pub mod error;
pub mod graph;
pub mod invariants;
pub mod lattice;
pub mod laufer;
pub mod linalg;
pub mod scalar;

pub use error::{Error, Result};
pub use graph::{intersection_matrix, parse_graph, validate, CurveConfig, ResolutionGraph, ValidationReport};
pub use scalar::{ExactInt, Scalar};

/// Default exact scalar.
pub type Rational = num_rational::BigRational;
/// Fixed-width scalar for small graphs; arithmetic overflow panics.
pub type Rational128 = num_rational::Ratio<i128>;

pub type Cycle = lattice::Cycle<Rational>;
pub type ClassRep = lattice::ClassRep<Rational>;
pub type LatticeContext = lattice::LatticeContext<Rational>;
pub type ComputationTrace = laufer::ComputationTrace<Rational>;
pub type CurveInvariantReport = invariants::CurveInvariantReport<Rational>;
pub type DualityFailure = invariants::DualityFailure<Rational>;
pub type Reciprocity = cyclic::Reciprocity<Rational>;
pub type RationalMatrix = linalg::Matrix<Rational>;
pub type IntMatrix = linalg::Matrix<i64>;

/// Builds the lattice context of a validated graph over [`Rational`].
pub fn build_context(g: &ResolutionGraph) -> Result<LatticeContext> {
    LatticeContext::build(g)
}
