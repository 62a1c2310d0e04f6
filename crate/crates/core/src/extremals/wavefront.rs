//! Fronts of unit-energy normal geodesics from a fixed point.

use nalgebra::{DMatrix, DVector};

use super::hamiltonian::ExtremalState;
use super::integrate::{integrate, IntegrateOptions};
use crate::ars::{in_locus, SimpleArs};
use crate::error::{Error, Result};
use crate::group_models::{covector_from_algebra, f_map, GroupPoint};

#[derive(Clone, Debug, PartialEq)]
pub struct WavefrontRay {
    pub index: usize,
    /// Sphere angles (or the sign ±1 for a 0-sphere), followed by the
    /// kernel angle when the start point is singular.
    pub params: Vec<f64>,
    pub initial: ExtremalState,
    pub endpoint: Option<GroupPoint>,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Wavefront {
    pub g0: GroupPoint,
    pub t_final: f64,
    pub singular_start: bool,
    pub rays: Vec<WavefrontRay>,
}

impl Wavefront {
    pub fn endpoints(&self) -> Vec<&GroupPoint> {
        self.rays.iter().filter_map(|r| r.endpoint.as_ref()).collect()
    }
}

/// Deterministic points on the unit sphere of ℝᵈ with their parameters.
/// `d = 1` gives ±1 regardless of `count`.
pub fn sphere_points(d: usize, count: usize) -> Vec<(Vec<f64>, Vec<f64>)> {
    use std::f64::consts::PI;
    match d {
        0 => vec![(vec![], vec![])],
        1 => vec![(vec![1.0], vec![1.0]), (vec![-1.0], vec![-1.0])],
        2 => (0..count)
            .map(|k| {
                let a = 2.0 * PI * k as f64 / count as f64;
                (vec![a], vec![a.cos(), a.sin()])
            })
            .collect(),
        3 => {
            // Fibonacci lattice.
            let golden = PI * (3.0 - 5f64.sqrt());
            (0..count)
                .map(|k| {
                    let z = 1.0 - 2.0 * (k as f64 + 0.5) / count as f64;
                    let polar = z.acos();
                    let az = (golden * k as f64).rem_euclid(2.0 * PI);
                    let r = polar.sin();
                    (vec![polar, az], vec![r * az.cos(), r * az.sin(), z])
                })
                .collect()
        }
        _ => {
            // Hyperspherical product grid truncated to `count` points.
            let m = (count as f64).powf(1.0 / (d - 1) as f64).ceil().max(2.0) as usize;
            let mut out = Vec::with_capacity(count);
            let total = m.pow((d - 1) as u32);
            for idx in 0..total.min(count) {
                let mut rest = idx;
                let mut angles = Vec::with_capacity(d - 1);
                for j in 0..d - 1 {
                    let k = rest % m;
                    rest /= m;
                    let a = if j + 1 == d - 1 {
                        2.0 * PI * k as f64 / m as f64
                    } else {
                        PI * (k as f64 + 0.5) / m as f64
                    };
                    angles.push(a);
                }
                let mut v = vec![0.0; d];
                let mut s = 1.0;
                for j in 0..d - 1 {
                    v[j] = s * angles[j].cos();
                    s *= angles[j].sin();
                }
                v[d - 1] = s;
                out.push((angles, v));
            }
            out
        }
    }
}

// Column signs fixed so the entry of largest magnitude is positive.
fn fix_sign(mut v: DVector<f64>) -> DVector<f64> {
    let k = v.iamax();
    if v[k] < 0.0 {
        v.neg_mut();
    }
    v
}

/// Sweep parameters and the algebra covector of one ray.
pub type RayStart = (Vec<f64>, Vec<f64>);

/// Initial left-trivialized covectors with `½Σ⟨λ, frame_i⟩² = ½` at `g0`.
///
/// Off the singular locus the control vector sweeps the unit sphere. On it
/// the controls sweep the unit sphere of the frame's image and the free
/// kernel component is `tan φ` for angles φ uniform in (−π/2, π/2).
pub fn initial_covectors(ars: &SimpleArs, g0: &[f64], count: usize) -> Result<(bool, Vec<RayStart>)> {
    if count < 4 {
        return Err(Error::validation(format!(
            "wavefront needs at least 4 rays, got {count}"
        )));
    }
    let n = ars.dim();
    let singular = in_locus(ars, g0)?;
    let f = f_map(ars.field(), g0)?;
    let mut a = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        a[(0, k)] = f.coeffs[k];
    }
    for (j, y) in ars.delta_basis().iter().enumerate() {
        for k in 0..n {
            a[(j + 1, k)] = y.coeffs[k];
        }
    }
    let svd = a.svd(true, true);
    let (u, vt, sig) = (
        svd.u.expect("requested"),
        svd.v_t.expect("requested"),
        svd.singular_values,
    );
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sig[j].total_cmp(&sig[i]));
    let r = if singular { n - 1 } else { n };
    if sig[order[r - 1]] <= 1e-12 * sig[order[0]].max(1.0) {
        return Err(Error::numeric(0.0, "frame rank at g0 is below the expected value"));
    }
    let ucols: Vec<DVector<f64>> = order[..r].iter().map(|&i| fix_sign(u.column(i).into_owned())).collect();
    // λ_u = V_r Σ⁻¹ U_rᵀ u, with the signs of U and V flipped together.
    let vcols: Vec<DVector<f64>> = order[..r]
        .iter()
        .zip(&ucols)
        .map(|(&i, uc)| {
            let raw = u.column(i).into_owned();
            let flip = if raw.dot(uc) < 0.0 { -1.0 } else { 1.0 };
            vt.row(i).transpose() * (flip / sig[i])
        })
        .collect();
    let kernel = singular.then(|| fix_sign(vt.row(order[n - 1]).transpose()));
    let mut out = Vec::new();
    if let Some(kv) = kernel {
        let sphere_d = r;
        let (n_sphere, n_kernel) = if sphere_d == 1 {
            (2, count.div_ceil(2))
        } else {
            let m = (count as f64).sqrt().ceil() as usize;
            (m, count.div_ceil(m))
        };
        for (params, w) in sphere_points(sphere_d, n_sphere) {
            let base = combine(&vcols, &w);
            for k in 0..n_kernel {
                let phi = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * (k as f64 + 0.5) / n_kernel as f64;
                let lam: Vec<f64> = base.iter().zip(kv.iter()).map(|(b, kk)| b + phi.tan() * kk).collect();
                let mut p = params.clone();
                p.push(phi);
                out.push((p, lam));
            }
        }
    } else {
        for (params, w) in sphere_points(n, count) {
            out.push((params, combine(&vcols, &w)));
        }
    }
    Ok((singular, out))
}

fn combine(vcols: &[DVector<f64>], w: &[f64]) -> Vec<f64> {
    let n = vcols[0].len();
    let mut lam = vec![0.0; n];
    for (c, wi) in vcols.iter().zip(w) {
        for k in 0..n {
            lam[k] += wi * c[k];
        }
    }
    lam
}

/// Endpoints at time `t_final` of unit-energy normal geodesics from `g0`,
/// in ray order. Integration failures are recorded on the ray.
pub fn wavefront(
    ars: &SimpleArs,
    g0: &[f64],
    t_final: f64,
    count: usize,
    options: &IntegrateOptions,
) -> Result<Wavefront> {
    ars.chart().validate(g0)?;
    let (singular, covectors) = initial_covectors(ars, g0, count)?;
    let chart = ars.chart();
    let rays = covectors
        .into_iter()
        .enumerate()
        .map(|(index, (params, lam))| {
            let p = covector_from_algebra(chart.as_ref(), g0, &lam);
            let initial = ExtremalState::new(g0.to_vec(), p);
            let (endpoint, failure) = match integrate(ars, &initial, t_final, options, &[]) {
                Ok(tr) => (Some(GroupPoint::new(tr.last().state.g.clone())), None),
                Err(e) => (None, Some(e.to_string())),
            };
            WavefrontRay {
                index,
                params,
                initial,
                endpoint,
                failure,
            }
        })
        .collect();
    Ok(Wavefront {
        g0: GroupPoint::new(g0.to_vec()),
        t_final,
        singular_start: singular,
        rays,
    })
}
