use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group_models::{flow, GroupChart, LinearField};
use crate::lie_core::{AlgebraVector, DerivationMatrix, ExactAlgebra, LieAlgebraModel, Mat};
use crate::ode::rk4_fixed;

use super::algebra::lifted_algebra;

/// RK4 steps used for `exp` of elements with a nonzero X̃ component.
pub const LIFT_EXP_STEPS: usize = 2000;

/// Chart of `G ⋊_φ ℝ` with coordinates `(g, τ)` and law
/// `(g₁, τ₁)·(g₂, τ₂) = (φ_{τ₂}(g₁) g₂, τ₁ + τ₂)`.
#[derive(Debug)]
pub struct LiftedChart {
    field: LinearField,
    algebra: LieAlgebraModel<f64>,
    exact: Option<ExactAlgebra>,
}

impl LiftedChart {
    pub fn new(
        field: LinearField,
        exact_derivation: Option<&DerivationMatrix<num_rational::Rational64>>,
    ) -> Result<Self> {
        let algebra = lifted_algebra(field.chart().algebra(), field.derivation())?;
        let exact = match (field.chart().exact_algebra(), exact_derivation) {
            (Some(a), Some(d)) => Some(lifted_algebra(&a, d)?),
            _ => None,
        };
        Ok(Self { field, algebra, exact })
    }

    pub fn base(&self) -> &Arc<dyn GroupChart> {
        self.field.chart()
    }

    pub fn field(&self) -> &LinearField {
        &self.field
    }

    fn split<'a>(&self, g: &'a [f64]) -> (&'a [f64], f64) {
        let m = self.base().coord_dim();
        (&g[..m], g[m])
    }

    fn phi(&self, g: &[f64], t: f64) -> Vec<f64> {
        flow(&self.field, g, t)
            .map(|p| p.coords)
            .unwrap_or_else(|_| vec![f64::NAN; g.len()])
    }

    fn join(g: Vec<f64>, tau: f64) -> Vec<f64> {
        let mut out = g;
        out.push(tau);
        out
    }
}

impl GroupChart for LiftedChart {
    fn name(&self) -> String {
        format!("{}-lift", self.base().name())
    }

    fn dim(&self) -> usize {
        self.base().dim() + 1
    }

    fn coord_dim(&self) -> usize {
        self.base().coord_dim() + 1
    }

    fn coord_labels(&self) -> Vec<String> {
        let mut l = self.base().coord_labels();
        l.push("tau".into());
        l
    }

    fn algebra(&self) -> &LieAlgebraModel<f64> {
        &self.algebra
    }

    fn exact_algebra(&self) -> Option<ExactAlgebra> {
        self.exact.clone()
    }

    fn identity(&self) -> Vec<f64> {
        Self::join(self.base().identity(), 0.0)
    }

    fn validate(&self, g: &[f64]) -> Result<()> {
        let m = self.base().coord_dim();
        if g.len() != m + 1 {
            return Err(Error::validation(format!(
                "lifted point needs {} coordinates, got {}",
                m + 1,
                g.len()
            )));
        }
        if !g[m].is_finite() {
            return Err(Error::validation("lifted τ coordinate must be finite"));
        }
        self.base().validate(&g[..m])
    }

    fn multiply(&self, a: &[f64], b: &[f64]) -> Vec<f64> {
        let (g1, t1) = self.split(a);
        let (g2, t2) = self.split(b);
        Self::join(self.base().multiply(&self.phi(g1, t2), g2), t1 + t2)
    }

    fn inverse(&self, a: &[f64]) -> Vec<f64> {
        let (g, t) = self.split(a);
        Self::join(self.phi(&self.base().inverse(g), -t), -t)
    }

    fn exp_map(&self, y: &[f64]) -> Vec<f64> {
        let n = self.base().dim();
        let t = y[n];
        if t == 0.0 {
            return Self::join(self.base().exp_map(&y[..n]), 0.0);
        }
        let base = self.base().clone();
        let yb = y[..n].to_vec();
        let out = rk4_fixed(
            |_s, g, dg| {
                let (l, _) = base.left_field(g, &yb);
                let x = self.field.value_unchecked(g);
                for k in 0..dg.len() {
                    dg[k] = l[k] + t * x[k];
                }
                Ok::<(), Error>(())
            },
            0.0,
            &base.identity(),
            1.0,
            LIFT_EXP_STEPS,
        )
        .unwrap_or_else(|_| vec![f64::NAN; base.coord_dim()]);
        let mut out = out;
        base.renormalize(&mut out, &mut []);
        Self::join(out, t)
    }

    /// `[[L(g), 𝒳(g)], [0, 1]]`.
    fn left_jacobian(&self, g: &[f64]) -> Mat<f64> {
        let (gb, _) = self.split(g);
        let l = self.base().left_jacobian(gb);
        let x = self.field.value_unchecked(gb);
        let (m, n) = (l.rows(), l.cols());
        let mut out = Mat::zeros(m + 1, n + 1);
        for i in 0..m {
            for j in 0..n {
                out.set(i, j, *l.get(i, j));
            }
            out.set(i, n, x[i]);
        }
        out.set(m, n, 1.0);
        out
    }

    fn left_field(&self, g: &[f64], y: &[f64]) -> (Vec<f64>, Mat<f64>) {
        let (gb, _) = self.split(g);
        let n = self.base().dim();
        let m = self.base().coord_dim();
        let (mut val, jb) = self.base().left_field(gb, &y[..n]);
        let mut jac = Mat::zeros(m + 1, m + 1);
        for i in 0..m {
            for k in 0..m {
                jac.set(i, k, *jb.get(i, k));
            }
        }
        if y[n] != 0.0 {
            let (x, jx) = self
                .field
                .eval(gb)
                .unwrap_or_else(|_| (vec![f64::NAN; m], Mat::zeros(m, m)));
            for i in 0..m {
                val[i] += y[n] * x[i];
                for k in 0..m {
                    let v = *jac.get(i, k) + y[n] * *jx.get(i, k);
                    jac.set(i, k, v);
                }
            }
        }
        val.push(y[n]);
        (val, jac)
    }

    fn to_algebra(&self, g: &[f64], v: &[f64]) -> Vec<f64> {
        let (gb, _) = self.split(g);
        let m = self.base().coord_dim();
        let vt = v[m];
        let x = self.field.value_unchecked(gb);
        let vb: Vec<f64> = (0..m).map(|i| v[i] - vt * x[i]).collect();
        let mut out = self.base().to_algebra(gb, &vb);
        out.push(vt);
        out
    }

    /// `Ad(g, τ) = Ad(φ_{−τ}(g), 0)·Ad(e, τ)`, with `Ad(e, τ) = e^{−τD} ⊕ 1`
    /// and `Ad(h, 0)X̃ = X̃ + Ad(h)F(h)`.
    fn adjoint(&self, g: &[f64]) -> Mat<f64> {
        let (gb, t) = self.split(g);
        let n = self.base().dim();
        let h = self.phi(gb, -t);
        let adh = self.base().adjoint(&h);
        let fh = self.field.f_unchecked(&h);
        let adf = adh.mul_vec(&fh.coeffs);
        let mut a0 = Mat::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                a0.set(i, j, *adh.get(i, j));
            }
            a0.set(i, n, adf[i]);
        }
        a0.set(n, n, 1.0);
        let etd = crate::group_models::expm(&self.field.derivation().matrix().scale(&-t));
        let mut ae = Mat::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                ae.set(i, j, *etd.get(i, j));
            }
        }
        ae.set(n, n, 1.0);
        a0.mul(&ae)
    }

    fn linear_field(
        &self,
        _d: &DerivationMatrix<f64>,
        _generator: Option<&AlgebraVector<f64>>,
        _g: &[f64],
    ) -> Result<(Vec<f64>, Mat<f64>)> {
        Err(Error::validation("linear fields on a lifted group are not supported"))
    }

    fn renormalize(&self, g: &mut [f64], p: &mut [f64]) {
        let m = self.base().coord_dim();
        let pb = if p.len() > m { &mut p[..m] } else { p };
        self.base().renormalize(&mut g[..m], pb);
    }

    fn param_dim(&self) -> usize {
        self.base().param_dim() + 1
    }

    fn point_from_params(&self, params: &[f64]) -> Option<Vec<f64>> {
        let k = self.base().param_dim();
        self.base()
            .point_from_params(&params[..k])
            .map(|g| Self::join(g, params[k]))
    }

    fn default_box(&self) -> Vec<(f64, f64)> {
        let mut b = self.base().default_box();
        b.push((-1.0, 1.0));
        b
    }
}
