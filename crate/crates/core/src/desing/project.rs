use nalgebra::{DMatrix, DVector};

use super::structure::LiftedStructure;
use crate::error::{Error, Result};
use crate::extremals::{simpson, ControlFrame, ExtremalState, GeodesicTrajectory, TrajectorySample};

pub const TAU_TOL: f64 = 1e-8;
pub const LENGTH_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectedTrajectory {
    /// Base curve driven by the lifted controls; `h` is the lifted H̃.
    pub base: GeodesicTrajectory,
    pub tau: Vec<f64>,
    pub s: f64,
    pub tau_increment: f64,
    /// Quadrature of the recorded `v`.
    pub v_integral: f64,
    pub lifted_length: f64,
    /// Length of the projection under the recorded controls.
    pub projected_length: f64,
    /// Length with minimum-norm base controls at each sample.
    pub min_norm_length: f64,
}

/// Drops `τ` and `s`, and checks `τ(T) − τ(0) = ∫v dt` and the length
/// bookkeeping.
pub fn project(lift: &LiftedStructure, traj: &GeodesicTrajectory) -> Result<ProjectedTrajectory> {
    let m = lift.base().chart().coord_dim();
    if traj.initial.g.len() != m + 1 {
        return Err(Error::validation("trajectory is not on the lifted group"));
    }
    let strip = |st: &ExtremalState| ExtremalState::new(st.g[..m].to_vec(), st.p[..m].to_vec());
    let samples: Vec<TrajectorySample> = traj
        .samples
        .iter()
        .map(|s| TrajectorySample {
            t: s.t,
            state: strip(&s.state),
            controls: s.controls.clone(),
            h: s.h,
        })
        .collect();
    let tau: Vec<f64> = traj.samples.iter().map(|s| s.state.g[m]).collect();
    let times = traj.times();
    let v: Vec<f64> = traj.samples.iter().map(|s| s.controls[0]).collect();
    let tau_increment = tau.last().copied().unwrap_or(0.0) - tau[0];
    let v_integral = simpson(&times, &v);
    if (tau_increment - v_integral).abs() > TAU_TOL {
        return Err(Error::invariant(format!(
            "τ increment {tau_increment:e} differs from ∫v dt = {v_integral:e}"
        )));
    }
    let lifted_length = traj.length();
    let speeds: Vec<f64> = traj
        .samples
        .iter()
        .map(|s| s.controls.iter().map(|u| u * u).sum::<f64>().sqrt())
        .collect();
    let projected_length = simpson(&times, &speeds);
    let mut min_speeds = Vec::with_capacity(samples.len());
    for s in &samples {
        min_speeds.push(min_norm_speed(lift, &s.state.g, &s.controls)?);
    }
    let min_norm_length = simpson(&times, &min_speeds);
    if (projected_length - lifted_length).abs() > LENGTH_TOL || min_norm_length > lifted_length + LENGTH_TOL {
        return Err(Error::invariant(format!(
            "projected length {projected_length:e} (minimum-norm {min_norm_length:e}) against lifted {lifted_length:e}"
        )));
    }
    let initial = strip(&traj.initial);
    Ok(ProjectedTrajectory {
        base: GeodesicTrajectory {
            samples,
            step: traj.step,
            initial,
            options: traj.options.clone(),
            max_drift: traj.max_drift,
            events: traj
                .events
                .iter()
                .map(|e| crate::extremals::EventHit {
                    event: e.event,
                    t: e.t,
                    state: strip(&e.state),
                })
                .collect(),
        },
        tau,
        s: traj.initial.p[m],
        tau_increment,
        v_integral,
        lifted_length,
        projected_length,
        min_norm_length,
    })
}

// Norm of the least-squares controls reproducing ġ = v𝒳 + Σu_jY_j.
fn min_norm_speed(lift: &LiftedStructure, g: &[f64], controls: &[f64]) -> Result<f64> {
    let base = lift.base();
    let fields = base.fields(g)?;
    let m = g.len();
    let k = fields.len();
    let mut a = DMatrix::<f64>::zeros(m, k);
    let mut gdot = DVector::<f64>::zeros(m);
    for (j, (f, _)) in fields.iter().enumerate() {
        for i in 0..m {
            a[(i, j)] = f[i];
            gdot[i] += controls[j] * f[i];
        }
    }
    let scale = a.amax().max(1.0);
    let sol = a
        .svd(true, true)
        .solve(&gdot, 1e-12 * scale)
        .map_err(|e| Error::numeric(0.0, e.to_string()))?;
    Ok(sol.norm())
}
