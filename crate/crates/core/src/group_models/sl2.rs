use super::chart::{check_len, GroupChart};
use super::expm::expm;
use crate::error::{Error, Result};
use crate::lie_core::{AlgebraVector, DerivationMatrix, ExactAlgebra, LieAlgebraModel, Mat};

/// Largest tolerated |det g − 1|.
pub const SL2_DET_TOL: f64 = 1e-10;

/// SL(2,ℝ) as four matrix entries (a, b, c, d), row-major. Algebra basis
/// H = diag(1,−1), X = E₁₂, Y = E₂₁; a traceless matrix has coordinates
/// (m₁₁, m₁₂, m₂₁).
#[derive(Clone, Debug)]
pub struct Sl2 {
    alg: LieAlgebraModel<f64>,
}

impl Default for Sl2 {
    fn default() -> Self {
        Self::new()
    }
}

type M2 = [[f64; 2]; 2];

fn to_m2(g: &[f64]) -> M2 {
    [[g[0], g[1]], [g[2], g[3]]]
}

fn from_m2(m: M2) -> Vec<f64> {
    vec![m[0][0], m[0][1], m[1][0], m[1][1]]
}

fn algebra_matrix(y: &[f64]) -> M2 {
    [[y[0], y[1]], [y[2], -y[0]]]
}

fn mul(a: M2, b: M2) -> M2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn inv(a: M2) -> M2 {
    let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    [[a[1][1] / det, -a[0][1] / det], [-a[1][0] / det, a[0][0] / det]]
}

fn coords_of(m: M2) -> Vec<f64> {
    vec![m[0][0], m[0][1], m[1][0]]
}

// Jacobian of g ↦ g·M on the four entries.
fn right_mul_jacobian(m: M2) -> Mat<f64> {
    Mat::from_rows(&[
        vec![m[0][0], m[1][0], 0.0, 0.0],
        vec![m[0][1], m[1][1], 0.0, 0.0],
        vec![0.0, 0.0, m[0][0], m[1][0]],
        vec![0.0, 0.0, m[0][1], m[1][1]],
    ])
    .unwrap()
}

// Jacobian of g ↦ M·g on the four entries.
fn left_mul_jacobian(m: M2) -> Mat<f64> {
    Mat::from_rows(&[
        vec![m[0][0], 0.0, m[0][1], 0.0],
        vec![0.0, m[0][0], 0.0, m[0][1]],
        vec![m[1][0], 0.0, m[1][1], 0.0],
        vec![0.0, m[1][0], 0.0, m[1][1]],
    ])
    .unwrap()
}

pub fn det(g: &[f64]) -> f64 {
    g[0] * g[3] - g[1] * g[2]
}

impl Sl2 {
    pub fn new() -> Self {
        Self {
            alg: LieAlgebraModel::sl2(),
        }
    }
}

impl GroupChart for Sl2 {
    fn name(&self) -> String {
        "sl2".into()
    }

    fn dim(&self) -> usize {
        3
    }

    fn coord_dim(&self) -> usize {
        4
    }

    fn coord_labels(&self) -> Vec<String> {
        vec!["a".into(), "b".into(), "c".into(), "d".into()]
    }

    fn algebra(&self) -> &LieAlgebraModel<f64> {
        &self.alg
    }

    fn exact_algebra(&self) -> Option<ExactAlgebra> {
        Some(LieAlgebraModel::sl2())
    }

    fn identity(&self) -> Vec<f64> {
        vec![1.0, 0.0, 0.0, 1.0]
    }

    fn validate(&self, g: &[f64]) -> Result<()> {
        check_len(g, 4, "sl2")?;
        let dv = det(g);
        if (dv - 1.0).abs() > SL2_DET_TOL {
            return Err(Error::validation(format!("sl2 point has determinant {dv}")));
        }
        Ok(())
    }

    fn multiply(&self, g: &[f64], h: &[f64]) -> Vec<f64> {
        from_m2(mul(to_m2(g), to_m2(h)))
    }

    fn inverse(&self, g: &[f64]) -> Vec<f64> {
        from_m2(inv(to_m2(g)))
    }

    fn exp_map(&self, y: &[f64]) -> Vec<f64> {
        let m = algebra_matrix(y);
        let e = expm(&Mat::from_rows(&[m[0].to_vec(), m[1].to_vec()]).unwrap());
        e.row_major().to_vec()
    }

    fn left_jacobian(&self, g: &[f64]) -> Mat<f64> {
        let gm = to_m2(g);
        let cols: Vec<Vec<f64>> = (0..3)
            .map(|k| {
                let mut e = [0.0; 3];
                e[k] = 1.0;
                from_m2(mul(gm, algebra_matrix(&e)))
            })
            .collect();
        Mat::from_columns(&cols, 4)
    }

    fn left_field(&self, g: &[f64], y: &[f64]) -> (Vec<f64>, Mat<f64>) {
        let m = algebra_matrix(y);
        (from_m2(mul(to_m2(g), m)), right_mul_jacobian(m))
    }

    fn to_algebra(&self, g: &[f64], v: &[f64]) -> Vec<f64> {
        coords_of(mul(inv(to_m2(g)), to_m2(v)))
    }

    fn adjoint(&self, g: &[f64]) -> Mat<f64> {
        let gm = to_m2(g);
        let gi = inv(gm);
        let cols: Vec<Vec<f64>> = (0..3)
            .map(|k| {
                let mut e = [0.0; 3];
                e[k] = 1.0;
                coords_of(mul(mul(gm, algebra_matrix(&e)), gi))
            })
            .collect();
        Mat::from_columns(&cols, 3)
    }

    /// `𝒳_g = gW − Wg` for `D = −ad W`.
    fn linear_field(
        &self,
        _d: &DerivationMatrix<f64>,
        generator: Option<&AlgebraVector<f64>>,
        g: &[f64],
    ) -> Result<(Vec<f64>, Mat<f64>)> {
        let w = generator.ok_or_else(|| Error::validation("sl2 linear fields need an inner generator"))?;
        let wm = algebra_matrix(&w.coeffs);
        let gm = to_m2(g);
        let a = mul(gm, wm);
        let b = mul(wm, gm);
        let value = vec![
            a[0][0] - b[0][0],
            a[0][1] - b[0][1],
            a[1][0] - b[1][0],
            a[1][1] - b[1][1],
        ];
        let jac = right_mul_jacobian(wm).add(&left_mul_jacobian(wm).scale(&-1.0));
        Ok((value, jac))
    }

    fn requires_inner(&self) -> bool {
        true
    }

    fn renormalize(&self, g: &mut [f64], p: &mut [f64]) {
        let dv = det(g);
        if dv > 0.0 {
            let s = dv.sqrt();
            g.iter_mut().for_each(|x| *x /= s);
            p.iter_mut().for_each(|x| *x *= s);
        }
    }

    fn param_dim(&self) -> usize {
        3
    }

    /// (a, b, c) ↦ [[a, b], [c, (1 + bc)/a]].
    fn point_from_params(&self, params: &[f64]) -> Option<Vec<f64>> {
        let (a, b, c) = (params[0], params[1], params[2]);
        (a.abs() >= 1e-9).then(|| vec![a, b, c, (1.0 + b * c) / a])
    }

    fn default_box(&self) -> Vec<(f64, f64)> {
        vec![(-2.0, 2.0); 3]
    }
}
