//! ψ(g) = ⟨ω, F(g)⟩, its differential, and numeric extraction of its zeros.

use super::build::SimpleArs;
use crate::error::{Error, Result};
use crate::group_models::GroupPoint;
use crate::lie_core::{AlgebraVector, OneForm};

/// Threshold on |ψ| / (‖dψ‖ + 1) for membership in 𝒵.
pub const LOCUS_TOL: f64 = 1e-9;

pub fn psi(ars: &SimpleArs, g: &[f64]) -> Result<f64> {
    ars.chart().validate(g)?;
    Ok(psi_unchecked(ars, g))
}

pub(crate) fn psi_unchecked(ars: &SimpleArs, g: &[f64]) -> f64 {
    ars.omega().pair(&ars.field().f_unchecked(g))
}

/// Left-trivialized differential `(D + ad F_g)*ω`.
pub fn grad_psi(ars: &SimpleArs, g: &[f64]) -> Result<OneForm<f64>> {
    ars.chart().validate(g)?;
    Ok(grad_psi_unchecked(ars, g))
}

fn grad_psi_unchecked(ars: &SimpleArs, g: &[f64]) -> OneForm<f64> {
    let n = ars.dim();
    let f = ars.field().f_unchecked(g);
    let alg = ars.algebra();
    let d = ars.derivation();
    let coeffs = (0..n)
        .map(|j| {
            let ej = AlgebraVector::basis(n, j);
            let w = d.apply(&ej).add(&alg.bracket_unchecked(&f, &ej));
            ars.omega().pair(&w)
        })
        .collect();
    OneForm::new(coeffs)
}

/// |ψ(g)| / (‖dψ(g)‖ + 1).
pub fn normalized_psi(ars: &SimpleArs, g: &[f64]) -> Result<f64> {
    ars.chart().validate(g)?;
    Ok(normalized_psi_unchecked(ars, g))
}

fn normalized_psi_unchecked(ars: &SimpleArs, g: &[f64]) -> f64 {
    let grad = grad_psi_unchecked(ars, g);
    let norm = grad.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
    psi_unchecked(ars, g).abs() / (norm + 1.0)
}

pub fn in_locus(ars: &SimpleArs, g: &[f64]) -> Result<bool> {
    Ok(normalized_psi(ars, g)? <= LOCUS_TOL)
}

/// Zeros of ψ on a parameter grid: grid vertices already in 𝒵, plus
/// bisection roots on every grid edge where ψ changes sign. Output is
/// sorted lexicographically and free of duplicates.
pub fn sample_locus(ars: &SimpleArs, bounds: &[(f64, f64)], resolution: usize) -> Result<Vec<GroupPoint>> {
    let chart = ars.chart();
    let m = chart.param_dim();
    if bounds.len() != m {
        return Err(Error::validation(format!(
            "sampling box needs {m} ranges, got {}",
            bounds.len()
        )));
    }
    if resolution < 2 {
        return Err(Error::validation("sampling resolution must be at least 2"));
    }
    if bounds
        .iter()
        .any(|(lo, hi)| !(lo < hi) || !lo.is_finite() || !hi.is_finite())
    {
        return Err(Error::validation("sampling box ranges must be finite with lo < hi"));
    }
    let axis = |k: usize, i: usize| {
        let (lo, hi) = bounds[k];
        lo + (hi - lo) * i as f64 / (resolution - 1) as f64
    };
    let point = |params: &[f64]| -> Option<Vec<f64>> {
        let g = chart.point_from_params(params)?;
        chart.validate(&g).ok().map(|_| g)
    };

    let total = resolution.pow(m as u32);
    let index_params = |mut idx: usize| -> (Vec<usize>, Vec<f64>) {
        let mut ids = vec![0; m];
        for k in (0..m).rev() {
            ids[k] = idx % resolution;
            idx /= resolution;
        }
        let ps = ids.iter().enumerate().map(|(k, &i)| axis(k, i)).collect();
        (ids, ps)
    };
    let values: Vec<Option<f64>> = (0..total)
        .map(|idx| point(&index_params(idx).1).map(|g| psi_unchecked(ars, &g)))
        .collect();

    let mut found: Vec<Vec<f64>> = Vec::new();
    for idx in 0..total {
        let (ids, params) = index_params(idx);
        let Some(v0) = values[idx] else { continue };
        let g0 = point(&params).expect("defined above");
        if normalized_psi_unchecked(ars, &g0) <= LOCUS_TOL {
            found.push(g0);
        }
        let mut stride = 1;
        for k in (0..m).rev() {
            if ids[k] + 1 < resolution {
                if let Some(v1) = values[idx + stride] {
                    if v0 * v1 < 0.0 {
                        let mut lo = params[k];
                        let mut hi = axis(k, ids[k] + 1);
                        let mut flo = v0;
                        let mut ps = params.clone();
                        for _ in 0..200 {
                            let mid = 0.5 * (lo + hi);
                            if mid <= lo || mid >= hi {
                                break;
                            }
                            ps[k] = mid;
                            let Some(g) = point(&ps) else { break };
                            let fm = psi_unchecked(ars, &g);
                            if fm == 0.0 {
                                lo = mid;
                                hi = mid;
                                break;
                            }
                            if (fm < 0.0) == (flo < 0.0) {
                                lo = mid;
                                flo = fm;
                            } else {
                                hi = mid;
                            }
                        }
                        ps[k] = 0.5 * (lo + hi);
                        if let Some(g) = point(&ps) {
                            if normalized_psi_unchecked(ars, &g) <= LOCUS_TOL {
                                found.push(g);
                            }
                        }
                    }
                }
            }
            stride *= resolution;
        }
    }
    found.sort_by(|a, b| {
        a.iter()
            .zip(b)
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    found.dedup_by(|a, b| a.iter().zip(b.iter()).all(|(x, y)| (x - y).abs() <= 1e-12));
    Ok(found.into_iter().map(GroupPoint::new).collect())
}
