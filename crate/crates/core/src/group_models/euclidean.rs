use super::chart::{check_len, GroupChart};
use crate::error::Result;
use crate::lie_core::{AlgebraVector, DerivationMatrix, ExactAlgebra, LieAlgebraModel, Mat};

/// ℝⁿ under addition. Left translations are the identity in these
/// coordinates and linear fields are `g ↦ Dg`.
#[derive(Clone, Debug)]
pub struct Euclidean {
    n: usize,
    alg: LieAlgebraModel<f64>,
}

impl Euclidean {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            alg: LieAlgebraModel::abelian(n),
        }
    }
}

impl GroupChart for Euclidean {
    fn name(&self) -> String {
        format!("euclidean{}", self.n)
    }

    fn dim(&self) -> usize {
        self.n
    }

    fn coord_labels(&self) -> Vec<String> {
        (1..=self.n).map(|i| format!("x{i}")).collect()
    }

    fn algebra(&self) -> &LieAlgebraModel<f64> {
        &self.alg
    }

    fn exact_algebra(&self) -> Option<ExactAlgebra> {
        Some(LieAlgebraModel::abelian(self.n))
    }

    fn identity(&self) -> Vec<f64> {
        vec![0.0; self.n]
    }

    fn validate(&self, g: &[f64]) -> Result<()> {
        check_len(g, self.n, "euclidean")
    }

    fn multiply(&self, g: &[f64], h: &[f64]) -> Vec<f64> {
        g.iter().zip(h).map(|(a, b)| a + b).collect()
    }

    fn inverse(&self, g: &[f64]) -> Vec<f64> {
        g.iter().map(|a| -a).collect()
    }

    fn exp_map(&self, y: &[f64]) -> Vec<f64> {
        y.to_vec()
    }

    fn log_map(&self, g: &[f64]) -> Option<Vec<f64>> {
        Some(g.to_vec())
    }

    fn left_jacobian(&self, _g: &[f64]) -> Mat<f64> {
        Mat::identity(self.n)
    }

    fn left_field(&self, _g: &[f64], y: &[f64]) -> (Vec<f64>, Mat<f64>) {
        (y.to_vec(), Mat::zeros(self.n, self.n))
    }

    fn to_algebra(&self, _g: &[f64], v: &[f64]) -> Vec<f64> {
        v.to_vec()
    }

    fn adjoint(&self, _g: &[f64]) -> Mat<f64> {
        Mat::identity(self.n)
    }

    fn linear_field(
        &self,
        d: &DerivationMatrix<f64>,
        _generator: Option<&AlgebraVector<f64>>,
        g: &[f64],
    ) -> Result<(Vec<f64>, Mat<f64>)> {
        Ok((d.matrix().mul_vec(g), d.matrix().clone()))
    }

    fn default_box(&self) -> Vec<(f64, f64)> {
        vec![(-1.0, 1.0); self.n]
    }
}
