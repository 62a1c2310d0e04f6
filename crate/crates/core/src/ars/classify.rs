//! Which structural results about the singular locus apply to a given ARS.

use std::fmt;

use super::build::SimpleArs;
use super::locus::sample_locus;
use crate::lie_core::{
    condition_hz, derived_subalgebra, is_subalgebra, preimage, solvability, subspace_classify, AlgebraVector,
    DerivationMatrix, LieAlgebraModel, OneForm, Scalar, Subspace,
};

/// Grid resolution per axis for the sampled 𝒵 = 𝒵_𝒳 test.
pub const ZX_RESOLUTION: usize = 21;

/// Three-valued outcome of comparing sampled zeros of ψ with zeros of 𝒳.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZxConsistency {
    Consistent,
    Inconsistent,
    Unsampled,
}

impl fmt::Display for ZxConsistency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ZxConsistency::Consistent => "consistent",
            ZxConsistency::Inconsistent => "inconsistent",
            ZxConsistency::Unsampled => "unsampled",
        })
    }
}

/// Stable verdict identifiers, one per structural result.
pub mod verdict_id {
    pub const SUBMANIFOLD: &str = "subalgebra-submanifold";
    pub const IDEAL: &str = "ideal-subgroup";
    pub const SOLVABLE: &str = "solvable-subgroup";
    pub const FIXED_POINTS: &str = "fixed-point-locus";
    pub const LOCAL_SUBGROUP: &str = "hz-local-subgroup";
    pub const NECESSARY_HZ: &str = "necessary-hz";
    pub const ALL: [&str; 6] = [SUBMANIFOLD, IDEAL, SOLVABLE, FIXED_POINTS, LOCAL_SUBGROUP, NECESSARY_HZ];
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub id: &'static str,
    pub applies: bool,
    pub conclusion: String,
}

#[derive(Clone, Debug)]
pub struct LocusReport {
    pub delta_subalgebra: bool,
    pub delta_ideal: bool,
    /// 𝒟¹𝔤 ⊆ Δ; always equal to `delta_ideal` for a hyperplane Δ.
    pub derived_in_delta: bool,
    pub solvable: bool,
    pub nilpotent: bool,
    pub d_star_omega: OneForm<f64>,
    pub d_star_omega_zero: bool,
    /// D⁻¹Δ, the tangent space of 𝒵 at e when Δ is a subalgebra.
    pub z_tangent: Subspace<f64>,
    /// 𝔷 = ker D*ω (all of 𝔤 when D*ω = 0).
    pub kernel: Subspace<f64>,
    pub kernel_subalgebra: bool,
    /// Condition (HZ) on 𝔷, when 𝔷 is a subalgebra.
    pub hz_on_kernel: Option<bool>,
    pub ker_d: Subspace<f64>,
    pub numeric_zx: ZxConsistency,
    pub zx_samples: usize,
    pub verdicts: Vec<Verdict>,
    /// False if a subgroup branch fired while (HZ) fails on 𝔷.
    pub internally_consistent: bool,
    /// Whether the algebraic part was decided in exact arithmetic.
    pub exact: bool,
}

impl LocusReport {
    pub fn verdict(&self, id: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.id == id)
    }

    pub fn applies(&self, id: &str) -> bool {
        self.verdict(id).is_some_and(|v| v.applies)
    }

    pub fn hz_holds(&self) -> bool {
        self.hz_on_kernel == Some(true)
    }
}

struct Facts {
    delta_subalgebra: bool,
    delta_ideal: bool,
    derived_in_delta: bool,
    solvable: bool,
    nilpotent: bool,
    dso: OneForm<f64>,
    dso_zero: bool,
    z_tangent: Subspace<f64>,
    kernel: Subspace<f64>,
    kernel_subalgebra: bool,
    hz: Option<bool>,
    ker_d: Subspace<f64>,
}

fn facts<S: Scalar>(
    alg: &LieAlgebraModel<S>,
    d: &DerivationMatrix<S>,
    delta: &[AlgebraVector<S>],
    omega: &OneForm<S>,
) -> Facts {
    let n = alg.dim();
    let delta = Subspace::span(n, delta);
    let class = subspace_classify(alg, &delta);
    let solv = solvability(alg);
    let dso = d.dual(omega);
    let dso_zero = dso.is_negligible();
    let kernel = Subspace::from_equations(n, std::slice::from_ref(&dso));
    let kernel_subalgebra = is_subalgebra(alg, &kernel);
    let hz = kernel_subalgebra.then(|| condition_hz(alg, &kernel, d, omega).unwrap_or(false));
    let rows: Vec<OneForm<S>> = (0..n).map(|i| OneForm::new(d.matrix().row(i).to_vec())).collect();
    Facts {
        delta_subalgebra: class.is_subalgebra,
        delta_ideal: class.is_ideal,
        derived_in_delta: delta.contains_subspace(&derived_subalgebra(alg)),
        solvable: solv.solvable,
        nilpotent: solv.nilpotent,
        dso: dso.to_f64(),
        dso_zero,
        z_tangent: preimage(d, &delta).to_f64(),
        kernel: kernel.to_f64(),
        kernel_subalgebra,
        hz,
        ker_d: Subspace::from_equations(n, &rows).to_f64(),
    }
}

pub fn describe_span(sub: &Subspace<f64>, labels: &[String]) -> String {
    if sub.is_zero() {
        return "{0}".into();
    }
    let parts: Vec<String> = sub
        .basis()
        .iter()
        .map(|v| {
            let terms: Vec<String> = v
                .coeffs
                .iter()
                .zip(labels)
                .filter(|(c, _)| c.abs() > 1e-12)
                .map(|(c, l)| {
                    if (c - 1.0).abs() < 1e-12 {
                        l.clone()
                    } else if (c + 1.0).abs() < 1e-12 {
                        format!("-{l}")
                    } else {
                        format!("{c}{l}")
                    }
                })
                .collect();
            terms.join("+").replace("+-", "-")
        })
        .collect();
    format!("span{{{}}}", parts.join(", "))
}

/// Numeric check of 𝒵 = 𝒵_𝒳 on the chart's default box.
pub fn zx_consistency(ars: &SimpleArs, resolution: usize) -> (ZxConsistency, usize) {
    let chart = ars.chart();
    let Ok(points) = sample_locus(ars, &chart.default_box(), resolution) else {
        return (ZxConsistency::Unsampled, 0);
    };
    if points.is_empty() {
        return (ZxConsistency::Unsampled, 0);
    }
    let ok = points.iter().all(|p| {
        let x = ars.field().value_unchecked(&p.coords);
        let xn = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let gn = p.coords.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        xn <= 1e-6 * (1.0 + gn)
    });
    let outcome = if ok {
        ZxConsistency::Consistent
    } else {
        ZxConsistency::Inconsistent
    };
    (outcome, points.len())
}

pub fn classify_locus(ars: &SimpleArs) -> LocusReport {
    let f = match ars.exact() {
        Some(e) => facts(&e.algebra, &e.derivation, &e.delta, &e.omega),
        None => facts(ars.algebra(), ars.derivation(), ars.delta_basis(), ars.omega()),
    };
    let labels = ars.algebra().labels().to_vec();
    let span = |s: &Subspace<f64>| describe_span(s, &labels);
    let (numeric_zx, zx_samples) = zx_consistency(ars, ZX_RESOLUTION);

    let mut verdicts = Vec::with_capacity(6);
    verdicts.push(Verdict {
        id: verdict_id::SUBMANIFOLD,
        applies: f.delta_subalgebra,
        conclusion: if f.delta_subalgebra {
            format!(
                "Δ is a subalgebra: Z is an embedded analytic codimension-one submanifold with T_eZ = D^-1 Δ = {}",
                span(&f.z_tangent)
            )
        } else {
            "Δ is not a subalgebra: no submanifold conclusion".into()
        },
    });
    verdicts.push(Verdict {
        id: verdict_id::IDEAL,
        applies: f.delta_ideal,
        conclusion: if f.delta_ideal {
            format!(
                "Δ is an ideal (D^1 g ⊆ Δ): ω is closed and Z is a codimension-one subgroup with Lie algebra ker D*ω = {}",
                span(&f.kernel)
            )
        } else {
            "Δ is not an ideal: D^1 g is not contained in Δ".into()
        },
    });
    let solvable_branch = f.solvable && f.delta_subalgebra;
    verdicts.push(Verdict {
        id: verdict_id::SOLVABLE,
        applies: solvable_branch,
        conclusion: if solvable_branch {
            format!(
                "g is solvable and Δ a subalgebra: Z is a codimension-one subgroup with Lie algebra {}",
                span(&f.kernel)
            )
        } else if f.solvable {
            "g is solvable but Δ is not a subalgebra: no conclusion".into()
        } else {
            "g is not solvable: no conclusion".into()
        },
    });
    verdicts.push(Verdict {
        id: verdict_id::FIXED_POINTS,
        applies: numeric_zx == ZxConsistency::Consistent,
        conclusion: match numeric_zx {
            ZxConsistency::Consistent => format!(
                "all {zx_samples} sampled zeros of ψ are zeros of X: consistent with Z = Z_X, which would make Z a subgroup with Lie algebra ker D = {}",
                span(&f.ker_d)
            ),
            ZxConsistency::Inconsistent => {
                "a sampled zero of ψ is not a zero of X: Z differs from Z_X".into()
            }
            ZxConsistency::Unsampled => "no zero of ψ found on the sampling grid".into(),
        },
    });
    let local = !f.dso_zero && f.kernel_subalgebra && f.hz == Some(true);
    verdicts.push(Verdict {
        id: verdict_id::LOCAL_SUBGROUP,
        applies: local,
        conclusion: if local {
            format!(
                "ker D*ω = {} is a subalgebra satisfying (HZ): near e, Z coincides with the subgroup it generates",
                span(&f.kernel)
            )
        } else if f.dso_zero {
            "D*ω = 0: local subgroup criterion does not apply".into()
        } else if !f.kernel_subalgebra {
            "ker D*ω is not a subalgebra: local subgroup criterion does not apply".into()
        } else {
            "(HZ) fails on ker D*ω: local subgroup criterion does not apply".into()
        },
    });
    let necessary_fails = !f.dso_zero && (!f.kernel_subalgebra || f.hz == Some(false));
    verdicts.push(Verdict {
        id: verdict_id::NECESSARY_HZ,
        applies: necessary_fails,
        conclusion: if f.dso_zero {
            "D*ω = 0: necessary condition not applicable".into()
        } else if !f.kernel_subalgebra {
            format!(
                "ker D*ω = {} is not a subalgebra: Z cannot be a codimension-one subgroup",
                span(&f.kernel)
            )
        } else if f.hz == Some(false) {
            "necessary condition (HZ) on ker D*ω FAILS: Z is not a subgroup, even locally".into()
        } else {
            "necessary condition (HZ) on ker D*ω holds".into()
        },
    });

    let claims_subgroup = f.delta_ideal || solvable_branch;
    let internally_consistent = (!claims_subgroup || f.hz == Some(true)) && f.delta_ideal == f.derived_in_delta;

    LocusReport {
        delta_subalgebra: f.delta_subalgebra,
        delta_ideal: f.delta_ideal,
        derived_in_delta: f.derived_in_delta,
        solvable: f.solvable,
        nilpotent: f.nilpotent,
        d_star_omega: f.dso,
        d_star_omega_zero: f.dso_zero,
        z_tangent: f.z_tangent,
        kernel: f.kernel,
        kernel_subalgebra: f.kernel_subalgebra,
        hz_on_kernel: f.hz,
        ker_d: f.ker_d,
        numeric_zx,
        zx_samples,
        verdicts,
        internally_consistent,
        exact: ars.exact().is_some(),
    }
}
