//! Exact lattice-polytope toolkit for conic transforms of marked Delzant polytopes.
//!
//! Everything is computed over arbitrary-precision integers and rationals:
//! primitivity, Delzant and transversality tests are discrete decisions, so no
//! floating point is used outside of SVG rendering in the CLI.
//!
//! The crate is organised bottom-up:
//!
//! - [`lattice`]: content, primitive systems, basis completion, decompositions.
//! - [`polytope`]: H-representations, canonical marked polytopes, vertices,
//!   face lattices and the Delzant test.
//! - [`subspace`]: affine subspaces of the dual space, transversality and
//!   exact intersection.
//! - [`conic`]: the involution on the positive half-space, the rank-one and
//!   general-rank transforms, Basic Assumption checks, reductions and shear
//!   equivalence between complement choices.
//! - [`topology`]: rational Betti numbers from face counts.
//! - [`json`]: the polytope and action document schemas.
//! - [`corpus`]: seeded random Delzant polytopes and actions.

pub mod conic;
pub mod corpus;
mod error;
pub mod json;
pub mod lattice;
mod linalg;
pub mod polytope;
pub mod subspace;
pub mod topology;

pub use conic::{
    check_basic_assumptions, compare_complements, lattice_transversality, reduce_polytope, rho_map,
    shear_equivalent, transform_general, transform_r1, ActionData, BasicAssumptionReport, Clause,
    ClauseStatus, ConeSplit, MarkingPolicy, Reduction, ResolvedAction, ShearWitness,
    TransformReport,
};
pub use error::{Error, Result};
pub use lattice::{
    annihilator_basis, complete_to_basis, content, decompose, is_primitive_system,
    system_content, Decomposition, DualVector, IntegerMatrix, LatticeVector,
};
pub use polytope::{
    canonicalize, face_lattice, is_delzant, vertices, DelzantReport, FVector, Face, FaceLattice,
    HRep, HalfSpace, MarkedPolytope,
};
pub use subspace::{intersect, is_transverse, nu_perp_annihilator, AffineSubspace, IntersectionResult};
pub use topology::{betti_from_polytope, verify_conic_cohomology, BettiVector};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
