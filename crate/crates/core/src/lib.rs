//! Exact computations in the Lie algebra `W_n` of polynomial vector fields on
//! `Q^n`: the standard grading, the decomposition of each graded piece into
//! divergence-free and Euler-multiple submodules, highest-weight vectors over
//! `sl_n`, bracket products between graded pieces, and the generation test
//! for subalgebras containing the affine part `W^[-1] + W^[0]`.

pub mod derlie;
pub mod error;
pub mod expr;
pub mod generation;
pub mod graded;
pub mod linalg;
pub mod polyring;
pub mod random;
pub mod reptheory;
pub mod structure;

#[cfg(test)]
pub(crate) mod testutil;

pub use derlie::{euler, Derivation, HomogeneousDerivation};
pub use error::{Error, Result};
pub use expr::parse_derivation;
pub use generation::{
    generates_criterion, truncated_closure, wc_membership, ClosureTrace, GenerationVerdict,
};
pub use graded::{
    basis, dim_m, dim_n, dim_w, project_m, project_n, submodule_m, submodule_n, Family,
    GradedBasis, GradedComponent, GradedSubspace,
};
pub use linalg::{Matrix, Subspace};
pub use polyring::{Monomial, Polynomial, Rational};
pub use reptheory::{
    action_matrix, certify_irreducible, classify_isomorphism, maximal_vectors, submodule_closure,
    weight_of, ActionOperator, IrreducibilityCertificate, Isomorphism, ModuleDescriptor,
    WeightVector,
};
pub use structure::{bracket_span, verify_products, Classification, ProductReport};

/// Serializes rationals as canonical strings (`"p"` or `"p/q"`).
pub fn serialize_rationals<S: serde::Serializer>(
    v: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}
