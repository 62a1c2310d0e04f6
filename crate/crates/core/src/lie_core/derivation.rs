use super::algebra::{AlgebraVector, LieAlgebraModel, OneForm};
use super::linalg::{solve, Mat};
use super::scalar::{Scalar, EXACT_TOL};
use crate::error::{Error, Result};

/// Endomorphism of 𝔤 stored by columns: column j is D e_j.
#[derive(Clone, Debug, PartialEq)]
pub struct DerivationMatrix<S = f64> {
    matrix: Mat<S>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DerivationReport {
    pub max_residual: f64,
    /// Basis pair (i, j) where the residual is largest.
    pub worst_pair: (usize, usize),
    pub passes: bool,
}

impl<S: Scalar> DerivationMatrix<S> {
    pub fn new(matrix: Mat<S>) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::validation(format!(
                "derivation must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(Self { matrix })
    }

    pub fn from_row_major(n: usize, entries: Vec<S>) -> Result<Self> {
        let m = Mat::from_row_major(n, n, entries)
            .ok_or_else(|| Error::validation(format!("derivation needs {} entries", n * n)))?;
        Self::new(m)
    }

    pub fn zero(n: usize) -> Self {
        Self {
            matrix: Mat::zeros(n, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Mat<S> {
        &self.matrix
    }

    pub fn apply(&self, v: &AlgebraVector<S>) -> AlgebraVector<S> {
        AlgebraVector::new(self.matrix.mul_vec(&v.coeffs))
    }

    /// The dual map: `(D*ω)(Y) = ω(DY)`.
    pub fn dual(&self, omega: &OneForm<S>) -> OneForm<S> {
        OneForm::new(self.matrix.transpose().mul_vec(&omega.coeffs))
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.row_major().iter().all(Scalar::is_negligible)
    }

    pub fn to_f64(&self) -> DerivationMatrix<f64> {
        DerivationMatrix {
            matrix: self.matrix.to_f64(),
        }
    }
}

/// Largest Leibniz residual `D[e_i,e_j] − [De_i,e_j] − [e_i,De_j]` over basis
/// pairs.
pub fn check_derivation<S: Scalar>(alg: &LieAlgebraModel<S>, d: &DerivationMatrix<S>) -> Result<DerivationReport> {
    let n = alg.dim();
    if d.dim() != n {
        return Err(Error::validation(format!(
            "derivation is {}x{}, algebra has dimension {n}",
            d.dim(),
            d.dim()
        )));
    }
    let mut worst = 0.0;
    let mut worst_pair = (0, 0);
    let mut exact = true;
    for i in 0..n {
        let ei = AlgebraVector::basis(n, i);
        let dei = d.apply(&ei);
        for j in (i + 1)..n {
            let ej = AlgebraVector::basis(n, j);
            let lhs = d.apply(&alg.bracket_unchecked(&ei, &ej));
            let rhs = alg
                .bracket_unchecked(&dei, &ej)
                .add(&alg.bracket_unchecked(&ei, &d.apply(&ej)));
            let r = lhs.sub(&rhs);
            exact &= r.is_negligible();
            let m = r.max_abs();
            if m > worst {
                worst = m;
                worst_pair = (i, j);
            }
        }
    }
    Ok(DerivationReport {
        max_residual: worst,
        worst_pair,
        passes: exact && worst <= EXACT_TOL,
    })
}

/// `−ad(x)`.
pub fn inner_derivation<S: Scalar>(alg: &LieAlgebraModel<S>, x: &AlgebraVector<S>) -> DerivationMatrix<S> {
    DerivationMatrix {
        matrix: alg.ad(x).scale(&-S::one()),
    }
}

/// Finds `x` with `D = −ad(x)`, if one exists. The solution is unique up to
/// the center of 𝔤.
pub fn inner_generator<S: Scalar>(alg: &LieAlgebraModel<S>, d: &DerivationMatrix<S>) -> Option<AlgebraVector<S>> {
    let n = alg.dim();
    // (−ad x)_{ij} = −Σ_k x_k c[k][j][i]
    let mut rows = Vec::with_capacity(n * n);
    let mut rhs = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            rows.push((0..n).map(|k| -alg.structure_constant(k, j, i).clone()).collect());
            rhs.push(d.matrix().get(i, j).clone());
        }
    }
    let x = AlgebraVector::new(solve(&rows, &rhs, n)?);
    let back = inner_derivation(alg, &x);
    back.matrix()
        .add(&d.matrix().scale(&-S::one()))
        .row_major()
        .iter()
        .all(Scalar::is_negligible)
        .then_some(x)
}
