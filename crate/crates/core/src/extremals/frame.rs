use crate::ars::SimpleArs;
use crate::error::Result;
use crate::lie_core::Mat;

/// An orthonormal frame of vector fields in chart coordinates, the input to
/// the maximized-Hamiltonian system `H = ½ Σ ⟨p, f_i(g)⟩²`.
///
/// Field 0 is the one whose control is called `v`; the rest are `u₁, u₂, …`.
pub trait ControlFrame: Send + Sync {
    fn coord_dim(&self) -> usize;
    fn n_controls(&self) -> usize;
    /// Every frame field at `g` with its coordinate Jacobian.
    fn fields(&self, g: &[f64]) -> Result<Vec<(Vec<f64>, Mat<f64>)>>;
    fn check_point(&self, g: &[f64]) -> Result<()>;
    fn renormalize(&self, _g: &mut [f64], _p: &mut [f64]) {}
    fn coord_labels(&self) -> Vec<String>;
}

impl ControlFrame for SimpleArs {
    fn coord_dim(&self) -> usize {
        self.chart().coord_dim()
    }

    fn n_controls(&self) -> usize {
        self.dim()
    }

    fn fields(&self, g: &[f64]) -> Result<Vec<(Vec<f64>, Mat<f64>)>> {
        let mut out = Vec::with_capacity(self.dim());
        out.push(self.field().eval(g)?);
        for y in self.delta_basis() {
            out.push(self.chart().left_field(g, &y.coeffs));
        }
        Ok(out)
    }

    fn check_point(&self, g: &[f64]) -> Result<()> {
        self.chart().validate(g)
    }

    fn renormalize(&self, g: &mut [f64], p: &mut [f64]) {
        self.chart().renormalize(g, p)
    }

    fn coord_labels(&self) -> Vec<String> {
        self.chart().coord_labels()
    }
}

/// Covector column names matching the chart coordinates.
pub fn covector_labels(coord_labels: &[String]) -> Vec<String> {
    coord_labels.iter().map(|l| format!("p_{l}")).collect()
}
