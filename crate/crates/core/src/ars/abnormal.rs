use super::build::SimpleArs;
use crate::error::{Error, Result};
use crate::lie_core::{
    is_subalgebra, normalizer, preimage, AlgebraVector, DerivationMatrix, LieAlgebraModel, Scalar, Subspace,
};

fn abnormal_generic<S: Scalar>(
    alg: &LieAlgebraModel<S>,
    d: &DerivationMatrix<S>,
    delta: &[AlgebraVector<S>],
) -> Result<Subspace<S>> {
    let n = alg.dim();
    let delta = Subspace::span(n, delta);
    let a = delta
        .intersection(&normalizer(alg, &delta))
        .intersection(&preimage(d, &delta));
    if !is_subalgebra(alg, &a) {
        return Err(Error::invariant("abnormal subspace is not closed under the bracket"));
    }
    if a.dim() + 2 > n {
        return Err(Error::invariant(format!(
            "abnormal subalgebra has dimension {} > n − 2 = {}",
            a.dim(),
            n as i64 - 2
        )));
    }
    if is_subalgebra(alg, &delta) && a.dim() + 2 != n {
        return Err(Error::invariant(format!(
            "Δ is a subalgebra but the abnormal subalgebra has dimension {} ≠ n − 2",
            a.dim()
        )));
    }
    Ok(a)
}

/// 𝔞 = Δ ∩ 𝒩(Δ) ∩ D⁻¹Δ.
pub fn abnormal_algebra(ars: &SimpleArs) -> Result<Subspace<f64>> {
    match ars.exact() {
        Some(e) => Ok(abnormal_generic(&e.algebra, &e.derivation, &e.delta)?.to_f64()),
        None => abnormal_generic(ars.algebra(), ars.derivation(), ars.delta_basis()),
    }
}
