//! Abnormal extremals: curves in cosets g₀·A of the abnormal subgroup, with
//! covector `p(t)ω` where `ṗ = ⟨ω, ad(ġ)Y_n⟩ p`.

use crate::ars::{abnormal_algebra, in_locus, psi, SimpleArs};
use crate::error::{Error, Result};
use crate::group_models::GroupPoint;
use crate::lie_core::AlgebraVector;

#[derive(Clone, Debug, PartialEq)]
pub struct AbnormalDescription {
    pub g0: GroupPoint,
    /// Basis of the abnormal subalgebra 𝔞; empty when abnormals are fixed points.
    pub basis: Vec<AlgebraVector<f64>>,
    pub statement: String,
}

pub fn abnormal_description(ars: &SimpleArs, g0: &[f64]) -> Result<AbnormalDescription> {
    ars.chart().validate(g0)?;
    if !in_locus(ars, g0)? {
        return Err(Error::validation(format!(
            "g0 = {g0:?} is not in the singular locus (ψ = {:e})",
            psi(ars, g0)?
        )));
    }
    let a = abnormal_algebra(ars)?;
    let basis = a.basis().to_vec();
    let statement = if basis.is_empty() {
        format!("abnormal extremals through {g0:?} are constant curves")
    } else {
        format!(
            "abnormal curves through {g0:?} are the absolutely continuous curves in g0·exp(span{{{}}})",
            basis
                .iter()
                .map(|b| format!("{:?}", b.coeffs))
                .collect::<Vec<_>>()
                .join(", ")
        )
    };
    Ok(AbnormalDescription {
        g0: GroupPoint::new(g0.to_vec()),
        basis,
        statement,
    })
}

impl AbnormalDescription {
    pub fn is_trivial(&self) -> bool {
        self.basis.is_empty()
    }

    fn check_member(&self, ars: &SimpleArs, xi: &AlgebraVector<f64>) -> Result<()> {
        if xi.dim() != ars.dim() {
            return Err(Error::validation(format!(
                "velocity needs {} components, got {}",
                ars.dim(),
                xi.dim()
            )));
        }
        let sub = crate::lie_core::Subspace::span(ars.dim(), &self.basis);
        if !sub.contains(xi) {
            return Err(Error::validation(format!(
                "{:?} is not in the abnormal subalgebra",
                xi.coeffs
            )));
        }
        Ok(())
    }

    /// `c = ⟨ω, ad(ġ)Y_n⟩` for a left-trivialized velocity `ġ ∈ 𝔞`.
    pub fn c_coefficient(&self, ars: &SimpleArs, gdot: &AlgebraVector<f64>) -> Result<f64> {
        self.check_member(ars, gdot)?;
        Ok(ars.omega().pair(&ars.algebra().bracket(gdot, ars.y_n())?))
    }

    /// Points `g₀·exp(tξ)` for `ξ ∈ 𝔞`.
    pub fn coset_curve(&self, ars: &SimpleArs, xi: &AlgebraVector<f64>, times: &[f64]) -> Result<Vec<GroupPoint>> {
        self.check_member(ars, xi)?;
        let chart = ars.chart();
        Ok(times
            .iter()
            .map(|&t| GroupPoint::new(chart.multiply(&self.g0.coords, &chart.exp_map(&xi.scale(&t).coeffs))))
            .collect())
    }

    /// Covector scale `p(t) = p₀ e^{ct}` along `g₀·exp(tξ)`.
    pub fn covector_scale(&self, ars: &SimpleArs, xi: &AlgebraVector<f64>, p0: f64, t: f64) -> Result<f64> {
        Ok(p0 * (self.c_coefficient(ars, xi)? * t).exp())
    }
}
