use crate::error::Result;
use crate::lie_core::{DerivationMatrix, LieAlgebraModel, Scalar};

/// Label of the extra basis vector.
pub const LIFT_LABEL: &str = "Xt";

/// `𝔤 ⋊ ℝ` with the new basis vector X̃ last and `[Y, X̃] = DY`, so that
/// `[Y₁ + τ₁X̃, Y₂ + τ₂X̃] = [Y₁, Y₂] − τ₁DY₂ + τ₂DY₁`.
pub fn lifted_algebra<S: Scalar>(alg: &LieAlgebraModel<S>, d: &DerivationMatrix<S>) -> Result<LieAlgebraModel<S>> {
    let n = alg.dim();
    let m = n + 1;
    let mut c = vec![S::zero(); m * m * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                c[(i * m + j) * m + k] = alg.structure_constant(i, j, k).clone();
            }
        }
        for k in 0..n {
            let dik = d.matrix().get(k, i).clone();
            c[(i * m + n) * m + k] = dik.clone();
            c[(n * m + i) * m + k] = S::zero() - dik;
        }
    }
    let mut labels = alg.labels().to_vec();
    labels.push(LIFT_LABEL.to_string());
    LieAlgebraModel::new(labels, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::{qi, AlgebraVector};
    use num_rational::Rational64;

    #[test]
    fn heisenberg_lift_is_engel() {
        let h = LieAlgebraModel::<Rational64>::heisenberg();
        let d = DerivationMatrix::from_row_major(3, [0, 0, 0, 1, 0, 0, 0, 0, 0].map(qi).to_vec()).unwrap();
        let l = lifted_algebra(&h, &d).unwrap();
        let e = |i| AlgebraVector::<Rational64>::basis(4, i);
        assert_eq!(l.bracket(&e(0), &e(3)).unwrap(), e(1));
        assert_eq!(l.bracket(&e(0), &e(1)).unwrap(), e(2));
        assert!(l.bracket(&e(1), &e(3)).unwrap().is_negligible());
        assert!(l.bracket(&e(2), &e(3)).unwrap().is_negligible());
    }
}
