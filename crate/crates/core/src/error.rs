use num_rational::BigRational;
use thiserror::Error;

use crate::graph::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("line {line}: unknown vertex label `{label}`")]
    UnknownLabel { line: usize, label: String },

    #[error("line {line}: duplicate vertex label `{label}`")]
    DuplicateLabel { line: usize, label: String },

    #[error("line {line}: negative arrow count {count} at `{label}`")]
    NegativeArrowCount { line: usize, label: String, count: String },

    #[error("invalid resolution graph: {0}")]
    Invalid(ValidationReport),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not negative definite")]
    NotNegativeDefinite,

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cycle is not in the dual lattice L'")]
    NotInDualLattice,

    #[error("discriminant group has order {order}, above the cap {cap}")]
    ClassCapExceeded { order: String, cap: usize },

    #[error("computation sequence exceeded {cap} steps")]
    StepCapExceeded { cap: usize },

    #[error("no antinef cycle in the class within coordinate bound {bound}")]
    OracleBoundTooSmall { bound: u64 },

    #[error("curve `{0}` has no arrows")]
    ZeroCurve(String),

    #[error("unknown curve `{0}`")]
    UnknownCurve(String),

    #[error("non-rational singularity (χ(Z_min) = {chi_zmin} ≠ 1)")]
    NonRational { chi_zmin: BigRational },

    #[error("invalid cyclic quotient type 1/{d}({q}): {reason}")]
    InvalidCyclicType { d: u64, q: u64, reason: &'static str },

    #[error("class parameter a = {a} outside 0 < a < {d}")]
    ClassParameterOutOfRange { a: u64, d: u64 },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
