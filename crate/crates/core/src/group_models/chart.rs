use std::fmt::Debug;

use crate::error::Result;
use crate::lie_core::{AlgebraVector, DerivationMatrix, ExactAlgebra, LieAlgebraModel, Mat};

/// A point of a group in chart coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupPoint {
    pub coords: Vec<f64>,
}

impl GroupPoint {
    pub fn new(coords: Vec<f64>) -> Self {
        Self { coords }
    }
}

impl From<Vec<f64>> for GroupPoint {
    fn from(coords: Vec<f64>) -> Self {
        Self { coords }
    }
}

/// Coordinate model of a connected Lie group.
///
/// Points are plain coordinate slices. Tangent vectors at `g` are chart
/// coordinate vectors; `left_jacobian(g)` maps algebra coordinates to them.
/// Charts whose coordinate count exceeds the dimension (SL(2) as four matrix
/// entries) use an ambient linear space, with `to_algebra` left-inverting
/// `left_jacobian` on tangent vectors.
pub trait GroupChart: Debug + Send + Sync {
    fn name(&self) -> String;
    fn dim(&self) -> usize;
    fn coord_dim(&self) -> usize {
        self.dim()
    }
    fn coord_labels(&self) -> Vec<String>;
    fn algebra(&self) -> &LieAlgebraModel<f64>;
    /// Structure constants as exact rationals, when the algebra is a built-in.
    fn exact_algebra(&self) -> Option<ExactAlgebra> {
        None
    }
    fn identity(&self) -> Vec<f64>;
    fn validate(&self, g: &[f64]) -> Result<()>;
    fn multiply(&self, g: &[f64], h: &[f64]) -> Vec<f64>;
    fn inverse(&self, g: &[f64]) -> Vec<f64>;
    fn exp_map(&self, y: &[f64]) -> Vec<f64>;
    /// Global logarithm where one exists.
    fn log_map(&self, _g: &[f64]) -> Option<Vec<f64>> {
        None
    }
    fn left_jacobian(&self, g: &[f64]) -> Mat<f64>;
    /// The left-invariant field of `y` at `g` and its coordinate Jacobian.
    fn left_field(&self, g: &[f64], y: &[f64]) -> (Vec<f64>, Mat<f64>);
    /// Left trivialization of a tangent vector at `g`.
    fn to_algebra(&self, g: &[f64], v: &[f64]) -> Vec<f64>;
    fn adjoint(&self, g: &[f64]) -> Mat<f64>;
    /// The linear field of `d` at `g` and its coordinate Jacobian. `generator`
    /// is some `W` with `D = −ad W`, when known.
    fn linear_field(
        &self,
        d: &DerivationMatrix<f64>,
        generator: Option<&AlgebraVector<f64>>,
        g: &[f64],
    ) -> Result<(Vec<f64>, Mat<f64>)>;
    /// Whether linear fields on this chart need an inner generator.
    fn requires_inner(&self) -> bool {
        false
    }
    /// Pulls a drifting point back onto the group, rescaling the chart
    /// covector so that its left trivialization is unchanged.
    fn renormalize(&self, _g: &mut [f64], _p: &mut [f64]) {}
    /// Number of free parameters used for grid sampling.
    fn param_dim(&self) -> usize {
        self.coord_dim()
    }
    fn point_from_params(&self, params: &[f64]) -> Option<Vec<f64>> {
        Some(params.to_vec())
    }
    fn default_box(&self) -> Vec<(f64, f64)>;
}

/// Solves `L(g)ᵀ p = λ` for a chart covector, minimum-norm when the chart
/// has more coordinates than dimensions.
pub fn covector_from_algebra(chart: &dyn GroupChart, g: &[f64], lambda: &[f64]) -> Vec<f64> {
    let l = chart.left_jacobian(g);
    let lt = nalgebra::DMatrix::from_row_slice(l.cols(), l.rows(), l.transpose().row_major());
    let rhs = nalgebra::DVector::from_column_slice(lambda);
    let svd = lt.svd(true, true);
    svd.solve(&rhs, 1e-14)
        .expect("SVD with both factors computed")
        .iter()
        .copied()
        .collect()
}

/// `L(g)ᵀ p`.
pub fn covector_to_algebra(chart: &dyn GroupChart, g: &[f64], p: &[f64]) -> Vec<f64> {
    chart.left_jacobian(g).transpose().mul_vec(p)
}

pub(crate) fn check_len(g: &[f64], n: usize, what: &str) -> Result<()> {
    if g.len() != n {
        return Err(crate::error::Error::validation(format!(
            "{what} point needs {n} coordinates, got {}",
            g.len()
        )));
    }
    if g.iter().any(|x| !x.is_finite()) {
        return Err(crate::error::Error::validation(format!(
            "{what} point has non-finite coordinates"
        )));
    }
    Ok(())
}
