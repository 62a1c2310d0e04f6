use super::chart::{check_len, GroupChart};
use crate::error::{Error, Result};
use crate::lie_core::{AlgebraVector, DerivationMatrix, ExactAlgebra, LieAlgebraModel, Mat};

/// Smallest admissible x before a point is considered to have left Aff₊(2).
pub const AFF2_X_MIN: f64 = 1e-12;

/// Aff₊(2) as matrices `[[x, y], [0, 1]]` with x > 0; algebra basis (X, Y)
/// with `[X, Y] = Y`.
#[derive(Clone, Debug)]
pub struct Aff2 {
    alg: LieAlgebraModel<f64>,
}

impl Default for Aff2 {
    fn default() -> Self {
        Self::new()
    }
}

impl Aff2 {
    pub fn new() -> Self {
        Self {
            alg: LieAlgebraModel::aff2(),
        }
    }
}

// (e^a − 1)/a, with the removable singularity filled in.
fn expm1_ratio(a: f64) -> f64 {
    if a.abs() < 1e-8 {
        1.0 + a / 2.0 + a * a / 6.0
    } else {
        a.exp_m1() / a
    }
}

impl GroupChart for Aff2 {
    fn name(&self) -> String {
        "aff2".into()
    }

    fn dim(&self) -> usize {
        2
    }

    fn coord_labels(&self) -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    fn algebra(&self) -> &LieAlgebraModel<f64> {
        &self.alg
    }

    fn exact_algebra(&self) -> Option<ExactAlgebra> {
        Some(LieAlgebraModel::aff2())
    }

    fn identity(&self) -> Vec<f64> {
        vec![1.0, 0.0]
    }

    fn validate(&self, g: &[f64]) -> Result<()> {
        check_len(g, 2, "aff2")?;
        if g[0] <= AFF2_X_MIN {
            return Err(Error::validation(format!("aff2 point needs x > 0, got x = {}", g[0])));
        }
        Ok(())
    }

    fn multiply(&self, g: &[f64], h: &[f64]) -> Vec<f64> {
        vec![g[0] * h[0], g[0] * h[1] + g[1]]
    }

    fn inverse(&self, g: &[f64]) -> Vec<f64> {
        vec![1.0 / g[0], -g[1] / g[0]]
    }

    fn exp_map(&self, y: &[f64]) -> Vec<f64> {
        vec![y[0].exp(), y[1] * expm1_ratio(y[0])]
    }

    fn log_map(&self, g: &[f64]) -> Option<Vec<f64>> {
        if g[0] <= 0.0 {
            return None;
        }
        let a = g[0].ln();
        Some(vec![a, g[1] / expm1_ratio(a)])
    }

    fn left_jacobian(&self, g: &[f64]) -> Mat<f64> {
        Mat::identity(2).scale(&g[0])
    }

    fn left_field(&self, g: &[f64], y: &[f64]) -> (Vec<f64>, Mat<f64>) {
        let jac = Mat::from_rows(&[vec![y[0], 0.0], vec![y[1], 0.0]]).unwrap();
        (vec![g[0] * y[0], g[0] * y[1]], jac)
    }

    fn to_algebra(&self, g: &[f64], v: &[f64]) -> Vec<f64> {
        vec![v[0] / g[0], v[1] / g[0]]
    }

    fn adjoint(&self, g: &[f64]) -> Mat<f64> {
        Mat::from_rows(&[vec![1.0, 0.0], vec![-g[1], g[0]]]).unwrap()
    }

    /// Every derivation has the form `DX = aY`, `DY = bY`, giving
    /// `𝒳(x, y) = (0, a(x − 1) + by)`.
    fn linear_field(
        &self,
        d: &DerivationMatrix<f64>,
        _generator: Option<&AlgebraVector<f64>>,
        g: &[f64],
    ) -> Result<(Vec<f64>, Mat<f64>)> {
        let m = d.matrix();
        let (a, b) = (*m.get(1, 0), *m.get(1, 1));
        let jac = Mat::from_rows(&[vec![0.0, 0.0], vec![a, b]]).unwrap();
        Ok((vec![0.0, a * (g[0] - 1.0) + b * g[1]], jac))
    }

    fn default_box(&self) -> Vec<(f64, f64)> {
        vec![(0.5, 2.5), (-1.0, 1.0)]
    }
}
