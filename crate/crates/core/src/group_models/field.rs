//! Linear vector fields, the map F(g) = TL_{g⁻¹}𝒳_g, and their flows.

use std::sync::Arc;

use super::chart::{GroupChart, GroupPoint};
use super::expm::expm;
use crate::error::{Error, Result};
use crate::lie_core::{check_derivation, inner_generator, AlgebraVector, DerivationMatrix, LieAlgebraModel};
use crate::ode::rk4_fixed;

/// A linear vector field on a chart, determined by its derivation
/// `D = −ad(𝒳)`.
#[derive(Clone, Debug)]
pub struct LinearField {
    chart: Arc<dyn GroupChart>,
    derivation: DerivationMatrix<f64>,
    generator: Option<AlgebraVector<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CocycleReport {
    /// ‖F(g·exp tY) − F(exp tY) − e^{−t ad Y}F(g)‖∞
    pub exp_residual: f64,
    /// ‖F(g′g) − F(g) − Ad(g⁻¹)F(g′)‖∞
    pub product_residual: f64,
    pub passes: bool,
}

pub const COCYCLE_TOL: f64 = 1e-9;

impl LinearField {
    pub fn new(chart: Arc<dyn GroupChart>, derivation: DerivationMatrix<f64>) -> Result<Self> {
        let report = check_derivation(chart.algebra(), &derivation)?;
        if !report.passes {
            return Err(Error::validation(format!(
                "matrix is not a derivation of {}: Leibniz residual {:e} on basis pair {:?}",
                chart.name(),
                report.max_residual,
                report.worst_pair
            )));
        }
        let generator = inner_generator(chart.algebra(), &derivation);
        if chart.requires_inner() && generator.is_none() {
            return Err(Error::validation(format!(
                "derivation is not inner, which {} requires",
                chart.name()
            )));
        }
        Ok(Self {
            chart,
            derivation,
            generator,
        })
    }

    pub fn chart(&self) -> &Arc<dyn GroupChart> {
        &self.chart
    }

    pub fn derivation(&self) -> &DerivationMatrix<f64> {
        &self.derivation
    }

    /// Some `W` with `D = −ad W`.
    pub fn generator(&self) -> Option<&AlgebraVector<f64>> {
        self.generator.as_ref()
    }

    /// 𝒳(g) in chart coordinates and its Jacobian, without validating `g`.
    pub fn eval(&self, g: &[f64]) -> Result<(Vec<f64>, crate::lie_core::Mat<f64>)> {
        self.chart.linear_field(&self.derivation, self.generator.as_ref(), g)
    }

    pub fn value_unchecked(&self, g: &[f64]) -> Vec<f64> {
        self.eval(g).map(|(v, _)| v).unwrap_or_default()
    }

    /// F(g) without validating `g`.
    pub fn f_unchecked(&self, g: &[f64]) -> AlgebraVector<f64> {
        AlgebraVector::new(self.chart.to_algebra(g, &self.value_unchecked(g)))
    }
}

/// F(g) = TL_{g⁻¹}𝒳_g.
pub fn f_map(field: &LinearField, g: &[f64]) -> Result<AlgebraVector<f64>> {
    field.chart.validate(g)?;
    Ok(field.f_unchecked(g))
}

/// 𝒳(g) in chart coordinates, `L(g)·F(g)`.
pub fn linear_field_at(field: &LinearField, g: &[f64]) -> Result<Vec<f64>> {
    field.chart.validate(g)?;
    Ok(field.eval(g)?.0)
}

/// Partial sum `Σ_{k=1}^{k_max} (−1)^{k−1} t^k/k! ad^{k−1}(Y) DY`.
pub fn f_series(
    alg: &LieAlgebraModel<f64>,
    d: &DerivationMatrix<f64>,
    y: &AlgebraVector<f64>,
    t: f64,
    k_max: usize,
) -> AlgebraVector<f64> {
    let mut term = d.apply(y);
    let mut sum = AlgebraVector::zero(alg.dim());
    let mut coef = 1.0;
    for k in 1..=k_max {
        coef *= t / k as f64;
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        sum = sum.add(&term.scale(&(sign * coef)));
        term = alg.bracket_unchecked(y, &term);
    }
    sum
}

fn diff_norm(a: &AlgebraVector<f64>, b: &AlgebraVector<f64>) -> f64 {
    a.sub(b).max_abs()
}

/// Residuals of `F(g exp tY) = F(exp tY) + e^{−t ad Y}F(g)` and
/// `F(g′g) = F(g) + Ad(g⁻¹)F(g′)`.
pub fn cocycle_check(
    field: &LinearField,
    g: &[f64],
    g2: &[f64],
    y: &AlgebraVector<f64>,
    t: f64,
) -> Result<CocycleReport> {
    let chart = &field.chart;
    chart.validate(g)?;
    chart.validate(g2)?;
    let ety = chart.exp_map(&y.scale(&t).coeffs);
    let lhs = f_map(field, &chart.multiply(g, &ety))?;
    let rot = expm(&chart.algebra().ad(y).scale(&-t));
    let rhs = field
        .f_unchecked(&ety)
        .add(&AlgebraVector::new(rot.mul_vec(&field.f_unchecked(g).coeffs)));
    let exp_residual = diff_norm(&lhs, &rhs);

    let lhs2 = f_map(field, &chart.multiply(g2, g))?;
    let ad_inv = chart.adjoint(&chart.inverse(g));
    let rhs2 = field
        .f_unchecked(g)
        .add(&AlgebraVector::new(ad_inv.mul_vec(&field.f_unchecked(g2).coeffs)));
    let product_residual = diff_norm(&lhs2, &rhs2);
    Ok(CocycleReport {
        exp_residual,
        product_residual,
        passes: exp_residual <= COCYCLE_TOL && product_residual <= COCYCLE_TOL,
    })
}

/// The flow φ_t(g). Inner derivations use `exp(−tW) g exp(tW)`; otherwise
/// `exp(e^{tD} log g)` where the chart has a global logarithm, and RK4 as a
/// last resort.
pub fn flow(field: &LinearField, g: &[f64], t: f64) -> Result<GroupPoint> {
    let chart = &field.chart;
    chart.validate(g)?;
    if t == 0.0 {
        return Ok(GroupPoint::new(g.to_vec()));
    }
    if let Some(w) = &field.generator {
        let a = chart.exp_map(&w.scale(&-t).coeffs);
        let b = chart.exp_map(&w.scale(&t).coeffs);
        return Ok(GroupPoint::new(chart.multiply(&chart.multiply(&a, g), &b)));
    }
    if let Some(log) = chart.log_map(g) {
        let etd = expm(&field.derivation.matrix().scale(&t));
        return Ok(GroupPoint::new(chart.exp_map(&etd.mul_vec(&log))));
    }
    let steps = ((t.abs() / 1e-3).ceil() as usize).max(1);
    flow_numeric(field, g, t, steps)
}

/// φ_t(g) by integrating ġ = 𝒳(g) with `steps` RK4 steps.
pub fn flow_numeric(field: &LinearField, g: &[f64], t: f64, steps: usize) -> Result<GroupPoint> {
    let chart = field.chart.clone();
    chart.validate(g)?;
    let out = rk4_fixed(
        |tt, y, dy| {
            let (v, _) = field.eval(y).map_err(|e| Error::numeric(tt, e.to_string()))?;
            dy.copy_from_slice(&v);
            Ok::<(), Error>(())
        },
        0.0,
        g,
        t,
        steps.max(1),
    )?;
    let mut out = out;
    chart.renormalize(&mut out, &mut []);
    chart.validate(&out).map_err(|e| Error::numeric(t, e.to_string()))?;
    Ok(GroupPoint::new(out))
}
