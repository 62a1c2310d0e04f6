use super::chart::{check_len, GroupChart};
use crate::error::Result;
use crate::lie_core::{AlgebraVector, DerivationMatrix, ExactAlgebra, LieAlgebraModel, Mat};

/// The Heisenberg group on ℝ³ with `(x₁,y₁,z₁)(x₂,y₂,z₂) = (x₁+x₂, y₁+y₂,
/// z₁+z₂+x₁y₂)`. Left-invariant fields: X = ∂x, Y = ∂y + x∂z, Z = ∂z.
#[derive(Clone, Debug)]
pub struct Heisenberg {
    alg: LieAlgebraModel<f64>,
}

impl Default for Heisenberg {
    fn default() -> Self {
        Self::new()
    }
}

impl Heisenberg {
    pub fn new() -> Self {
        Self {
            alg: LieAlgebraModel::heisenberg(),
        }
    }
}

impl GroupChart for Heisenberg {
    fn name(&self) -> String {
        "heisenberg".into()
    }

    fn dim(&self) -> usize {
        3
    }

    fn coord_labels(&self) -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into()]
    }

    fn algebra(&self) -> &LieAlgebraModel<f64> {
        &self.alg
    }

    fn exact_algebra(&self) -> Option<ExactAlgebra> {
        Some(LieAlgebraModel::heisenberg())
    }

    fn identity(&self) -> Vec<f64> {
        vec![0.0; 3]
    }

    fn validate(&self, g: &[f64]) -> Result<()> {
        check_len(g, 3, "heisenberg")
    }

    fn multiply(&self, g: &[f64], h: &[f64]) -> Vec<f64> {
        vec![g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1]]
    }

    fn inverse(&self, g: &[f64]) -> Vec<f64> {
        vec![-g[0], -g[1], -g[2] + g[0] * g[1]]
    }

    fn exp_map(&self, y: &[f64]) -> Vec<f64> {
        vec![y[0], y[1], y[2] + 0.5 * y[0] * y[1]]
    }

    fn log_map(&self, g: &[f64]) -> Option<Vec<f64>> {
        Some(vec![g[0], g[1], g[2] - 0.5 * g[0] * g[1]])
    }

    fn left_jacobian(&self, g: &[f64]) -> Mat<f64> {
        Mat::from_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, g[0], 1.0]]).unwrap()
    }

    fn left_field(&self, g: &[f64], y: &[f64]) -> (Vec<f64>, Mat<f64>) {
        let mut jac = Mat::zeros(3, 3);
        jac.set(2, 0, y[1]);
        (vec![y[0], y[1], y[2] + g[0] * y[1]], jac)
    }

    fn to_algebra(&self, g: &[f64], v: &[f64]) -> Vec<f64> {
        vec![v[0], v[1], v[2] - g[0] * v[1]]
    }

    fn adjoint(&self, g: &[f64]) -> Mat<f64> {
        Mat::from_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![-g[1], g[0], 1.0]]).unwrap()
    }

    /// For `D = [[a, b, 0], [c, d, 0], [e, f, a+d]]`:
    /// `𝒳 = (ax+by, cx+dy, ex+fy+(a+d)z+½cx²+½by²)`.
    fn linear_field(
        &self,
        dm: &DerivationMatrix<f64>,
        _generator: Option<&AlgebraVector<f64>>,
        g: &[f64],
    ) -> Result<(Vec<f64>, Mat<f64>)> {
        let m = dm.matrix();
        let (a, b, c, d) = (*m.get(0, 0), *m.get(0, 1), *m.get(1, 0), *m.get(1, 1));
        let (e, f, k) = (*m.get(2, 0), *m.get(2, 1), *m.get(2, 2));
        let (x, y, z) = (g[0], g[1], g[2]);
        let value = vec![
            a * x + b * y,
            c * x + d * y,
            e * x + f * y + k * z + 0.5 * c * x * x + 0.5 * b * y * y,
        ];
        let jac = Mat::from_rows(&[vec![a, b, 0.0], vec![c, d, 0.0], vec![e + c * x, f + b * y, k]]).unwrap();
        Ok((value, jac))
    }

    fn default_box(&self) -> Vec<(f64, f64)> {
        vec![(-2.0, 2.0); 3]
    }
}
