use std::sync::Arc;

use crate::ars::SimpleArs;
use crate::error::{Error, Result};
use crate::extremals::{integrate, ControlFrame, EventFn, ExtremalState, GeodesicTrajectory, IntegrateOptions};
use crate::group_models::GroupChart;
use crate::lie_core::{generated_subalgebra, AlgebraVector, LieAlgebraModel, Mat, Scalar, Subspace};

use super::chart::LiftedChart;

/// The rank-n left-invariant structure on `G ⋊_φ ℝ` spanned by
/// `X̃ = 𝒳 + ∂τ` and `Y₁..Y_{n−1}`.
#[derive(Clone, Debug)]
pub struct LiftedStructure {
    base: SimpleArs,
    chart: Arc<LiftedChart>,
}

pub fn lift(ars: &SimpleArs) -> Result<LiftedStructure> {
    let exact_d = ars.exact().map(|e| &e.derivation);
    let chart = LiftedChart::new(ars.field().clone(), exact_d)?;
    let n = ars.dim();
    let alg = chart.algebra();
    let jac = alg.jacobi_residual();
    if !jac.is_negligible() {
        return Err(Error::invariant(format!(
            "lifted bracket violates Jacobi (residual {jac:e})"
        )));
    }
    let mut gens: Vec<AlgebraVector<f64>> = vec![AlgebraVector::basis(n + 1, n)];
    for y in ars.delta_basis() {
        let mut c = y.coeffs.clone();
        c.push(0.0);
        gens.push(AlgebraVector::new(c));
    }
    let span = Subspace::span(n + 1, &gens);
    let generated = match chart.exact_algebra() {
        Some(ea) => {
            let ex = ars.exact().expect("exact algebra implies exact parts");
            let mut eg = vec![AlgebraVector::basis(n + 1, n)];
            for y in &ex.delta {
                let mut c = y.coeffs.clone();
                c.push(num_rational::Rational64::from_integer(0));
                eg.push(AlgebraVector::new(c));
            }
            generated_subalgebra(&ea, &Subspace::span(n + 1, &eg)).dim()
        }
        None => generated_subalgebra(alg, &span).dim(),
    };
    if span.dim() != n || generated != n + 1 {
        return Err(Error::invariant(format!(
            "lifted distribution has rank {} and generates dimension {generated}, expected {n} and {}",
            span.dim(),
            n + 1
        )));
    }
    Ok(LiftedStructure {
        base: ars.clone(),
        chart: Arc::new(chart),
    })
}

impl LiftedStructure {
    pub fn base(&self) -> &SimpleArs {
        &self.base
    }

    pub fn chart(&self) -> &Arc<LiftedChart> {
        &self.chart
    }

    pub fn lifted_algebra(&self) -> &LieAlgebraModel<f64> {
        self.chart.algebra()
    }

    pub fn exact_lifted_algebra(&self) -> Option<crate::lie_core::ExactAlgebra> {
        self.chart.exact_algebra()
    }

    pub fn dim(&self) -> usize {
        self.base.dim() + 1
    }

    /// `X̃, Y₁, …` in the lifted algebra.
    pub fn distribution_basis(&self) -> Vec<AlgebraVector<f64>> {
        let n = self.base.dim();
        let mut out = vec![AlgebraVector::basis(n + 1, n)];
        for y in self.base.delta_basis() {
            let mut c = y.coeffs.clone();
            c.push(0.0);
            out.push(AlgebraVector::new(c));
        }
        out
    }

    /// Lifted state from a base state, `τ` and the τ-covector `s`.
    pub fn lifted_state(&self, base: &ExtremalState, tau: f64, s: f64) -> ExtremalState {
        let mut g = base.g.clone();
        g.push(tau);
        let mut p = base.p.clone();
        p.push(s);
        ExtremalState::new(g, p)
    }

    /// Coordinate rank of the frame at a lifted point.
    pub fn frame_rank(&self, g: &[f64]) -> Result<usize> {
        let fields = self.fields(g)?;
        let rows: Vec<Vec<f64>> = fields.into_iter().map(|(v, _)| v).collect();
        let scale = rows.iter().flatten().fold(1.0f64, |a, b| a.max(b.abs()));
        let scaled: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|x| x / scale).collect()).collect();
        Ok(crate::lie_core::linalg::rank(&scaled, self.chart.coord_dim()))
    }
}

impl ControlFrame for LiftedStructure {
    fn coord_dim(&self) -> usize {
        self.chart.coord_dim()
    }

    fn n_controls(&self) -> usize {
        self.base.dim()
    }

    /// `X̃ = (𝒳(g), 1)`, `Y_j = (L(g)Y_j, 0)`; no field depends on τ.
    fn fields(&self, g: &[f64]) -> Result<Vec<(Vec<f64>, Mat<f64>)>> {
        // stage points of a step may sit slightly off the chart, so only the
        // shape is checked here; `check_point` validates accepted steps
        let m = self.chart.base().coord_dim();
        if g.len() != m + 1 {
            return Err(Error::validation(format!(
                "lifted point needs {} coordinates, got {}",
                m + 1,
                g.len()
            )));
        }
        let gb = &g[..m];
        let widen = |v: Vec<f64>, j: Mat<f64>, last: f64| {
            let mut val = v;
            val.push(last);
            let mut jac = Mat::zeros(m + 1, m + 1);
            for i in 0..m {
                for k in 0..m {
                    jac.set(i, k, *j.get(i, k));
                }
            }
            (val, jac)
        };
        let mut out = Vec::with_capacity(self.base.dim());
        let (x, jx) = self.base.field().eval(gb)?;
        out.push(widen(x, jx, 1.0));
        for y in self.base.delta_basis() {
            let (v, j) = self.chart.base().left_field(gb, &y.coeffs);
            out.push(widen(v, j, 0.0));
        }
        Ok(out)
    }

    fn check_point(&self, g: &[f64]) -> Result<()> {
        self.chart.validate(g)
    }

    fn renormalize(&self, g: &mut [f64], p: &mut [f64]) {
        self.chart.renormalize(g, p)
    }

    fn coord_labels(&self) -> Vec<String> {
        self.chart.coord_labels()
    }
}

/// Normal extremal of the lifted structure; `H̃ = ½(v² + Σu²)` with
/// `v = s + ⟨p, 𝒳(g)⟩`.
pub fn lifted_integrate(
    lift: &LiftedStructure,
    state0: &ExtremalState,
    t_final: f64,
    options: &IntegrateOptions,
    events: &[EventFn<'_>],
) -> Result<GeodesicTrajectory> {
    integrate(lift, state0, t_final, options, events)
}
