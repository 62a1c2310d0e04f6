use std::sync::Arc;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::group_models::{GroupChart, LinearField};
use crate::lie_core::{
    bracket_span, check_derivation, condition_hz, image, AlgebraVector, DerivationMatrix, ExactAlgebra,
    LieAlgebraModel, OneForm, Scalar, Subspace,
};

/// Exact copies of the defining data, kept when the structure was built from
/// rationals so the algebraic classification never rounds.
#[derive(Clone, Debug)]
pub struct ExactParts {
    pub algebra: ExactAlgebra,
    pub derivation: DerivationMatrix<Rational64>,
    pub delta: Vec<AlgebraVector<Rational64>>,
    pub omega: OneForm<Rational64>,
    pub y_n: AlgebraVector<Rational64>,
}

/// One linear field plus n − 1 left-invariant fields Y₁..Y_{n−1}, declared
/// orthonormal.
#[derive(Clone, Debug)]
pub struct SimpleArs {
    field: LinearField,
    delta: Vec<AlgebraVector<f64>>,
    omega: OneForm<f64>,
    y_n: AlgebraVector<f64>,
    exact: Option<ExactParts>,
}

impl SimpleArs {
    pub fn chart(&self) -> &Arc<dyn GroupChart> {
        self.field.chart()
    }

    pub fn field(&self) -> &LinearField {
        &self.field
    }

    pub fn derivation(&self) -> &DerivationMatrix<f64> {
        self.field.derivation()
    }

    pub fn algebra(&self) -> &LieAlgebraModel<f64> {
        self.chart().algebra()
    }

    pub fn dim(&self) -> usize {
        self.algebra().dim()
    }

    pub fn delta_basis(&self) -> &[AlgebraVector<f64>] {
        &self.delta
    }

    pub fn delta(&self) -> Subspace<f64> {
        Subspace::span(self.dim(), &self.delta)
    }

    pub fn omega(&self) -> &OneForm<f64> {
        &self.omega
    }

    pub fn y_n(&self) -> &AlgebraVector<f64> {
        &self.y_n
    }

    pub fn exact(&self) -> Option<&ExactParts> {
        self.exact.as_ref()
    }

    /// Same structure with ω scaled by `c`; the zero set of ψ is unchanged.
    pub fn with_scaled_omega(&self, c: f64) -> Result<Self> {
        if c == 0.0 || !c.is_finite() {
            return Err(Error::validation("ω can only be scaled by a finite nonzero factor"));
        }
        let mut out = self.clone();
        out.omega = self.omega.scale(&c);
        out.y_n = self.y_n.scale(&(1.0 / c));
        out.exact = None;
        Ok(out)
    }
}

/// Checks the frame data and returns (ω, Y_n).
fn frame_parts<S: Scalar>(
    alg: &LieAlgebraModel<S>,
    d: &DerivationMatrix<S>,
    delta: &[AlgebraVector<S>],
) -> Result<(OneForm<S>, AlgebraVector<S>)> {
    let n = alg.dim();
    if delta.len() + 1 != n {
        return Err(Error::validation(format!(
            "distribution needs {} generators in dimension {n}, got {}",
            n - 1,
            delta.len()
        )));
    }
    let report = check_derivation(alg, d)?;
    if !report.passes {
        return Err(Error::validation(format!(
            "matrix is not a derivation: Leibniz residual {:e} on basis pair {:?}",
            report.max_residual, report.worst_pair
        )));
    }
    let span = Subspace::independent(n, delta)?;
    let reached = span.sum(&bracket_span(alg, &span, &span)).sum(&image(d, &span));
    if !reached.is_full() {
        return Err(Error::validation(format!(
            "rank condition fails: Δ + [Δ,Δ] + DΔ has dimension {} < {n}",
            reached.dim()
        )));
    }
    let idx = span
        .first_basis_complement()
        .ok_or_else(|| Error::invariant("a hyperplane must miss some basis vector"))?;
    let ann = span.annihilator();
    let raw = ann
        .first()
        .ok_or_else(|| Error::invariant("a hyperplane has a one-dimensional annihilator"))?;
    let scale = raw.coeffs[idx].clone();
    let omega = OneForm::new(raw.coeffs.iter().map(|c| c.clone() / scale.clone()).collect());
    let y_n = AlgebraVector::basis(n, idx);
    // ψ ≡ 0 exactly when every word ad(Z₁)…ad(Z_m)DY lies in Δ.
    if condition_hz(alg, &Subspace::full(n), d, &omega)? {
        return Err(Error::validation(
            "frame is singular everywhere: F(g) stays in Δ for every g",
        ));
    }
    Ok((omega, y_n))
}

pub fn build_ars(
    chart: Arc<dyn GroupChart>,
    d: DerivationMatrix<f64>,
    delta: Vec<AlgebraVector<f64>>,
) -> Result<SimpleArs> {
    let n = chart.dim();
    if d.dim() != n {
        return Err(Error::validation(format!(
            "derivation is {}x{} but {} has dimension {n}",
            d.dim(),
            d.dim(),
            chart.name()
        )));
    }
    let (omega, y_n) = frame_parts(chart.algebra(), &d, &delta)?;
    let field = LinearField::new(chart, d)?;
    Ok(SimpleArs {
        field,
        delta,
        omega,
        y_n,
        exact: None,
    })
}

/// Builds from exact rational data; all algebraic predicates are then
/// decided without rounding.
pub fn build_ars_exact(
    chart: Arc<dyn GroupChart>,
    d: DerivationMatrix<Rational64>,
    delta: Vec<AlgebraVector<Rational64>>,
) -> Result<SimpleArs> {
    let algebra = chart
        .exact_algebra()
        .ok_or_else(|| Error::validation(format!("{} has no exact structure constants", chart.name())))?;
    if d.dim() != algebra.dim() {
        return Err(Error::validation(format!(
            "derivation is {}x{} but {} has dimension {}",
            d.dim(),
            d.dim(),
            chart.name(),
            algebra.dim()
        )));
    }
    let (omega, y_n) = frame_parts(&algebra, &d, &delta)?;
    let field = LinearField::new(chart, d.to_f64())?;
    Ok(SimpleArs {
        field,
        delta: delta.iter().map(AlgebraVector::to_f64).collect(),
        omega: omega.to_f64(),
        y_n: y_n.to_f64(),
        exact: Some(ExactParts {
            algebra,
            derivation: d,
            delta,
            omega,
            y_n,
        }),
    })
}
