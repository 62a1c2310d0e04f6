//! Controls, maximized Hamiltonian, and the normal-extremal vector field.
//!
//! States carry the covector in chart cotangent coordinates `p`; its left
//! trivialization is `λ = L(g)ᵀp`.

use super::frame::ControlFrame;
use crate::ars::SimpleArs;
use crate::error::{Error, Result};
use crate::lie_core::linalg::dot;
use crate::lie_core::{AlgebraVector, Mat, OneForm};

#[derive(Clone, Debug, PartialEq)]
pub struct ExtremalState {
    pub g: Vec<f64>,
    pub p: Vec<f64>,
}

impl ExtremalState {
    pub fn new(g: Vec<f64>, p: Vec<f64>) -> Self {
        Self { g, p }
    }

    /// Left-trivialized covector `L(g)ᵀp`.
    pub fn lambda(&self, ars: &SimpleArs) -> OneForm<f64> {
        OneForm::new(ars.chart().left_jacobian(&self.g).transpose().mul_vec(&self.p))
    }
}

fn check_shape(frame: &dyn ControlFrame, state: &ExtremalState) -> Result<()> {
    let m = frame.coord_dim();
    if state.g.len() != m || state.p.len() != m {
        return Err(Error::validation(format!(
            "state needs {m} coordinates and {m} covector components, got {} and {}",
            state.g.len(),
            state.p.len()
        )));
    }
    Ok(())
}

/// `(v, u₁, …)` with each control `⟨p, f_i(g)⟩`.
pub fn normal_controls(frame: &dyn ControlFrame, state: &ExtremalState) -> Result<Vec<f64>> {
    check_shape(frame, state)?;
    Ok(frame.fields(&state.g)?.iter().map(|(f, _)| dot(&state.p, f)).collect())
}

pub fn hamiltonian_of_controls(controls: &[f64]) -> f64 {
    0.5 * controls.iter().map(|u| u * u).sum::<f64>()
}

/// `½(v² + Σ u_j²)`.
pub fn maximized_hamiltonian(frame: &dyn ControlFrame, state: &ExtremalState) -> Result<f64> {
    Ok(hamiltonian_of_controls(&normal_controls(frame, state)?))
}

/// `ġ = Σ u_i f_i(g)`, `ṗ = −Σ u_i (∂f_i/∂g)ᵀ p`, plus the controls.
pub(crate) fn rhs_raw(frame: &dyn ControlFrame, g: &[f64], p: &[f64]) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let m = g.len();
    let fields = frame.fields(g)?;
    let mut gdot = vec![0.0; m];
    let mut pdot = vec![0.0; m];
    let mut controls = Vec::with_capacity(fields.len());
    for (f, jac) in &fields {
        let u = dot(p, f);
        controls.push(u);
        for k in 0..m {
            gdot[k] += u * f[k];
        }
        add_transpose_product(&mut pdot, jac, p, -u);
    }
    Ok((gdot, pdot, controls))
}

// out += s · Jᵀp, skipping zero Jacobian entries so that components
// conjugate to cyclic coordinates stay exactly zero.
fn add_transpose_product(out: &mut [f64], jac: &Mat<f64>, p: &[f64], s: f64) {
    for (i, pi) in p.iter().enumerate() {
        for (k, o) in out.iter_mut().enumerate() {
            let j = *jac.get(i, k);
            if j != 0.0 {
                *o += s * j * pi;
            }
        }
    }
}

/// Chart-coordinate derivative of a normal extremal.
pub fn extremal_rhs(frame: &dyn ControlFrame, state: &ExtremalState) -> Result<(Vec<f64>, Vec<f64>)> {
    check_shape(frame, state)?;
    frame.check_point(&state.g)?;
    let (gd, pd, _) = rhs_raw(frame, &state.g, &state.p)?;
    Ok((gd, pd))
}

/// Left-trivialized covector derivative along a normal extremal,
/// `λ̇ = (ad(W) − v(D + ad F_g))*λ` with `W = vF_g + Σ u_j Y_j`, which
/// reduces to `(−vD + ad(Σ u_j Y_j))*λ`.
pub fn algebra_covector_rhs(ars: &SimpleArs, g: &[f64], lambda: &OneForm<f64>) -> Result<OneForm<f64>> {
    ars.chart().validate(g)?;
    let n = ars.dim();
    let alg = ars.algebra();
    let f = ars.field().f_unchecked(g);
    let v = lambda.pair(&f);
    let mut w = f.scale(&v);
    for y in ars.delta_basis() {
        w = w.add(&y.scale(&lambda.pair(y)));
    }
    let d = ars.derivation();
    let coeffs = (0..n)
        .map(|k| {
            let ek = AlgebraVector::basis(n, k);
            let adw = alg.bracket_unchecked(&w, &ek);
            let lin = d.apply(&ek).add(&alg.bracket_unchecked(&f, &ek));
            lambda.pair(&adw) - v * lambda.pair(&lin)
        })
        .collect();
    Ok(OneForm::new(coeffs))
}
