//! Finite-dimensional Lie algebras over structure constants.

pub mod algebra;
pub mod derivation;
pub mod invariants;
pub mod linalg;
pub mod scalar;
pub mod subspace;

pub use algebra::{AlgebraVector, ExactAlgebra, LieAlgebraModel, OneForm};
pub use derivation::{check_derivation, inner_derivation, inner_generator, DerivationMatrix, DerivationReport};
pub use invariants::{
    bracket_span, condition_hz, derived_subalgebra, generated_subalgebra, image, invariant_core, invariant_hull,
    is_subalgebra, normalizer, preimage, solvability, subspace_classify, Solvability, SubspaceClass,
};
pub use linalg::Mat;
pub use scalar::{q, qi, Scalar, EXACT_TOL};
pub use subspace::Subspace;

/// Free function form of [`LieAlgebraModel::bracket`].
pub fn bracket<S: Scalar>(
    alg: &LieAlgebraModel<S>,
    x: &AlgebraVector<S>,
    y: &AlgebraVector<S>,
) -> crate::error::Result<AlgebraVector<S>> {
    alg.bracket(x, y)
}
