//! Lie algebras given by structure constants, and their vectors and dual
//! vectors.

use num_rational::Rational64;

use super::linalg::{dot, max_abs, Mat};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// An element of 𝔤 in basis coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraVector<S = f64> {
    pub coeffs: Vec<S>,
}

/// An element of 𝔤* in dual-basis coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct OneForm<S = f64> {
    pub coeffs: Vec<S>,
}

impl<S: Scalar> AlgebraVector<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        Self { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![S::zero(); n])
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.coeffs[i] = S::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * s.clone()).collect())
    }

    pub fn is_negligible(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_negligible)
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.coeffs)
    }

    pub fn to_f64(&self) -> AlgebraVector<f64> {
        AlgebraVector::new(self.coeffs.iter().map(Scalar::to_f64).collect())
    }
}

impl AlgebraVector<f64> {
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

impl<S: Scalar> OneForm<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        Self { coeffs }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![S::zero(); n])
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// The duality pairing ⟨ω, v⟩.
    pub fn pair(&self, v: &AlgebraVector<S>) -> S {
        dot(&self.coeffs, &v.coeffs)
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * s.clone()).collect())
    }

    pub fn is_negligible(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_negligible)
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.coeffs)
    }

    pub fn to_f64(&self) -> OneForm<f64> {
        OneForm::new(self.coeffs.iter().map(Scalar::to_f64).collect())
    }
}

/// A finite-dimensional real Lie algebra, `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraModel<S = f64> {
    labels: Vec<String>,
    structure: Vec<S>,
}

impl<S: Scalar> LieAlgebraModel<S> {
    /// Validates antisymmetry and the Jacobi identity before accepting the
    /// structure constants (flattened as `c[(i * n + j) * n + k]`).
    pub fn new(labels: Vec<String>, structure: Vec<S>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::validation("Lie algebra must have positive dimension"));
        }
        if structure.len() != n * n * n {
            return Err(Error::validation(format!(
                "expected {} structure constants for dimension {n}, got {}",
                n * n * n,
                structure.len()
            )));
        }
        let alg = Self { labels, structure };
        let anti = alg.antisymmetry_residual();
        if anti.magnitude() > 0.0 && !anti.is_negligible() {
            return Err(Error::validation(format!(
                "structure constants are not antisymmetric (residual {:e})",
                anti.magnitude()
            )));
        }
        let jac = alg.jacobi_residual();
        if !jac.is_negligible() {
            return Err(Error::validation(format!(
                "structure constants violate the Jacobi identity (residual {:e})",
                jac.magnitude()
            )));
        }
        Ok(alg)
    }

    fn from_brackets(labels: &[&str], brackets: &[(usize, usize, Vec<i64>)]) -> Self {
        let n = labels.len();
        let mut structure = vec![S::zero(); n * n * n];
        for (i, j, out) in brackets {
            for (k, c) in out.iter().enumerate() {
                structure[(i * n + j) * n + k] = S::from_int(*c);
                structure[(j * n + i) * n + k] = S::from_int(-*c);
            }
        }
        Self {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            structure,
        }
    }

    /// ℝⁿ with the zero bracket.
    pub fn abelian(n: usize) -> Self {
        let labels: Vec<String> = (1..=n).map(|i| format!("e{i}")).collect();
        Self {
            labels,
            structure: vec![S::zero(); n * n * n],
        }
    }

    /// 𝔞𝔣𝔣(2) with basis (X, Y), `[X, Y] = Y`.
    pub fn aff2() -> Self {
        Self::from_brackets(&["X", "Y"], &[(0, 1, vec![0, 1])])
    }

    /// Heisenberg algebra with basis (X, Y, Z), `[X, Y] = Z`.
    pub fn heisenberg() -> Self {
        Self::from_brackets(&["X", "Y", "Z"], &[(0, 1, vec![0, 0, 1])])
    }

    /// 𝔰𝔩(2) with basis (H, X, Y): `[H,X] = 2X`, `[H,Y] = −2Y`, `[X,Y] = H`.
    pub fn sl2() -> Self {
        Self::from_brackets(
            &["H", "X", "Y"],
            &[(0, 1, vec![0, 2, 0]), (0, 2, vec![0, 0, -2]), (1, 2, vec![1, 0, 0])],
        )
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &S {
        let n = self.dim();
        &self.structure[(i * n + j) * n + k]
    }

    pub fn structure_constants(&self) -> &[S] {
        &self.structure
    }

    fn check_dim(&self, v: &AlgebraVector<S>) -> Result<()> {
        if v.dim() != self.dim() {
            return Err(Error::validation(format!(
                "vector has dimension {}, algebra has dimension {}",
                v.dim(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// `[x, y] = Σ x_i y_j c[i][j][·]`.
    pub fn bracket(&self, x: &AlgebraVector<S>, y: &AlgebraVector<S>) -> Result<AlgebraVector<S>> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &AlgebraVector<S>, y: &AlgebraVector<S>) -> AlgebraVector<S> {
        let n = self.dim();
        let mut out = vec![S::zero(); n];
        for i in 0..n {
            if x.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y.coeffs[j].is_zero() {
                    continue;
                }
                let w = x.coeffs[i].clone() * y.coeffs[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        *o = o.clone() + w.clone() * c.clone();
                    }
                }
            }
        }
        AlgebraVector::new(out)
    }

    /// Matrix of ad(x), column j = [x, e_j].
    pub fn ad(&self, x: &AlgebraVector<S>) -> Mat<S> {
        let n = self.dim();
        let cols: Vec<Vec<S>> = (0..n)
            .map(|j| self.bracket_unchecked(x, &AlgebraVector::basis(n, j)).coeffs)
            .collect();
        Mat::from_columns(&cols, n)
    }

    pub fn antisymmetry_residual(&self) -> S {
        let n = self.dim();
        let mut worst = S::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let r = self.structure_constant(i, j, k).clone() + self.structure_constant(j, i, k).clone();
                    if r.magnitude() > worst.magnitude() {
                        worst = r;
                    }
                }
            }
        }
        worst
    }

    /// Largest component of `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j]`.
    pub fn jacobi_residual(&self) -> S {
        let n = self.dim();
        let e = |i| AlgebraVector::basis(n, i);
        let mut worst = S::zero();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let t1 = self.bracket_unchecked(&self.bracket_unchecked(&e(i), &e(j)), &e(k));
                    let t2 = self.bracket_unchecked(&self.bracket_unchecked(&e(j), &e(k)), &e(i));
                    let t3 = self.bracket_unchecked(&self.bracket_unchecked(&e(k), &e(i)), &e(j));
                    for c in t1.add(&t2).add(&t3).coeffs {
                        if c.magnitude() > worst.magnitude() {
                            worst = c;
                        }
                    }
                }
            }
        }
        worst
    }

    pub fn to_f64(&self) -> LieAlgebraModel<f64> {
        LieAlgebraModel {
            labels: self.labels.clone(),
            structure: self.structure.iter().map(Scalar::to_f64).collect(),
        }
    }
}

/// Convenience alias for the exact-arithmetic variant.
pub type ExactAlgebra = LieAlgebraModel<Rational64>;
