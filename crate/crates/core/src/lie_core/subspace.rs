//! Linear subspaces of 𝔤 kept in reduced row echelon form, so equality is a
//! plain comparison of bases.

use super::algebra::{AlgebraVector, OneForm};
use super::linalg::{kernel, rank, rref};
use super::scalar::Scalar;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<S = f64> {
    ambient: usize,
    basis: Vec<AlgebraVector<S>>,
}

impl<S: Scalar> Subspace<S> {
    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient: usize, vectors: &[AlgebraVector<S>]) -> Self {
        let rows: Vec<Vec<S>> = vectors.iter().map(|v| v.coeffs.clone()).collect();
        Self::from_rows(ambient, &rows)
    }

    fn from_rows(ambient: usize, rows: &[Vec<S>]) -> Self {
        let (reduced, _) = rref(rows, ambient);
        Self {
            ambient,
            basis: reduced.into_iter().map(AlgebraVector::new).collect(),
        }
    }

    /// Span of vectors that must be independent.
    pub fn independent(ambient: usize, vectors: &[AlgebraVector<S>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.dim() != ambient) {
            return Err(Error::validation(format!(
                "vector of dimension {} in a {ambient}-dimensional algebra",
                v.dim()
            )));
        }
        let s = Self::span(ambient, vectors);
        if s.dim() != vectors.len() {
            return Err(Error::validation(format!(
                "{} vectors span only a {}-dimensional subspace",
                vectors.len(),
                s.dim()
            )));
        }
        Ok(s)
    }

    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| AlgebraVector::basis(ambient, i)).collect();
        Self { ambient, basis }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[AlgebraVector<S>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn rows(&self) -> Vec<Vec<S>> {
        self.basis.iter().map(|v| v.coeffs.clone()).collect()
    }

    pub fn contains(&self, v: &AlgebraVector<S>) -> bool {
        let mut rows = self.rows();
        rows.push(v.coeffs.clone());
        rank(&rows, self.ambient) == self.dim()
    }

    pub fn contains_subspace(&self, other: &Self) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.contains_subspace(other)
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut rows = self.rows();
        rows.extend(other.rows());
        Self::from_rows(self.ambient, &rows)
    }

    pub fn with(&self, extra: &[AlgebraVector<S>]) -> Self {
        self.sum(&Self::span(self.ambient, extra))
    }

    /// Basis of the annihilator {α ∈ 𝔤* : α|_V = 0}.
    pub fn annihilator(&self) -> Vec<OneForm<S>> {
        kernel(&self.rows(), self.ambient)
            .into_iter()
            .map(OneForm::new)
            .collect()
    }

    /// Subspace cut out by the given one-forms.
    pub fn from_equations(ambient: usize, forms: &[OneForm<S>]) -> Self {
        let rows: Vec<Vec<S>> = forms.iter().map(|f| f.coeffs.clone()).collect();
        let k: Vec<AlgebraVector<S>> = kernel(&rows, ambient).into_iter().map(AlgebraVector::new).collect();
        Self::span(ambient, &k)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut eqs = self.annihilator();
        eqs.extend(other.annihilator());
        Self::from_equations(self.ambient, &eqs)
    }

    /// First standard basis vector outside the subspace.
    pub fn first_basis_complement(&self) -> Option<usize> {
        (0..self.ambient).find(|&i| !self.contains(&AlgebraVector::basis(self.ambient, i)))
    }

    pub fn to_f64(&self) -> Subspace<f64> {
        Subspace {
            ambient: self.ambient,
            basis: self.basis.iter().map(AlgebraVector::to_f64).collect(),
        }
    }

    /// Coordinates of the basis vectors, one row each.
    pub fn basis_rows_f64(&self) -> Vec<Vec<f64>> {
        self.basis.iter().map(|v| v.to_f64().coeffs).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::scalar::qi;
    use num_rational::Rational64;

    fn v(c: &[i64]) -> AlgebraVector<Rational64> {
        AlgebraVector::new(c.iter().map(|&x| qi(x)).collect())
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 0, 1])]);
        let b = Subspace::span(3, &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
        let i = a.intersection(&b);
        assert!(i.same_as(&Subspace::span(3, &[v(&[0, 0, 1])])));
    }

    #[test]
    fn dependent_vectors_rejected() {
        assert!(Subspace::independent(3, &[v(&[1, 1, 0]), v(&[2, 2, 0])]).is_err());
    }

    #[test]
    fn annihilator_dimension() {
        let a = Subspace::span(3, &[v(&[1, 2, 3])]);
        assert_eq!(a.annihilator().len(), 2);
        for f in a.annihilator() {
            assert_eq!(f.pair(&v(&[1, 2, 3])), qi(0));
        }
    }

    #[test]
    fn complement_index() {
        let a = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.first_basis_complement(), Some(1));
        assert_eq!(Subspace::<Rational64>::full(3).first_basis_complement(), None);
    }
}
