use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::lattice::DualVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{count} vectors cannot form a primitive system in dimension {dim}")]
    TooManyVectors { count: usize, dim: usize },

    #[error("vectors do not form a primitive system (gcd of maximal minors is {content})")]
    NotPrimitiveSystem { content: BigInt },

    #[error("vectors do not form a lattice basis (determinant {det})")]
    NotABasis { det: BigInt },

    #[error("half-space {index} has a zero normal")]
    ZeroNormal { index: usize },

    #[error("polytope is unbounded")]
    Unbounded,

    #[error("polytope is empty")]
    Empty,

    #[error("polytope has empty interior")]
    EmptyInterior,

    #[error("offset {offset} of half-space {index} is not integral")]
    NonIntegralOffset { index: usize, offset: BigRational },

    #[error("markings must have one entry >= 1 per half-space")]
    InvalidMarkings,

    #[error("markings need a primitive integral source polytope")]
    MarkingsUnavailable,

    #[error("invalid action data: {0}")]
    InvalidAction(String),

    #[error("operation needs a rank {expected} action, got rank {found}")]
    WrongRank { expected: usize, found: usize },

    #[error("covector pairs to {value} with the ray generator, must be positive")]
    OutsideHalfSpace { value: BigRational },

    #[error("translated polytope leaves the positive half-space at vertex {vertex} (pairing {value})")]
    PositivityViolated { vertex: DualVector, value: BigRational },

    #[error("subspace is not transverse to the face cut by facets {facets:?}")]
    NotTransverse { facets: Vec<usize> },

    #[error("subspace does not meet the polytope")]
    EmptyIntersection,

    #[error("invalid subspace: {0}")]
    InvalidSubspace(String),

    #[error("basic assumption fails ({clause}): {detail}")]
    BasicAssumption { clause: String, detail: String },

    #[error("polytope is not simple at vertex {vertex}")]
    NotSimple { vertex: DualVector },

    #[error(
        "reduced polytope is not Delzant at vertex {vertex}: facets {facets:?} give a system of content {content}"
    )]
    NotDelzant { vertex: DualVector, facets: Vec<usize>, content: BigInt },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
