//! Pendulum reduction of normal geodesics on the Heisenberg structure
//! 𝒳 = x∂y + ½x²∂z, Y₁ = X, Y₂ = Z.
//!
//! With `p = c cos α`, `qx + ½rx² = c sin α` and `c² = 2H − r²`, the angle
//! obeys `α̇ = q + rx` and `α̈ = cr cos α`.

use super::hamiltonian::ExtremalState;
use super::integrate::{integrate, IntegrateOptions};
use crate::ars::SimpleArs;
use crate::error::{Error, Result};
use crate::ode::rk4_step;

#[derive(Clone, Debug, PartialEq)]
pub struct PendulumReport {
    pub c: f64,
    pub r: f64,
    pub times: Vec<f64>,
    /// α from the reduced equation.
    pub alpha: Vec<f64>,
    /// α recovered from the full extremal, unwrapped.
    pub alpha_full: Vec<f64>,
    /// Max over samples of |α − α_full|, |c cos α − p| and |c sin α − (qx + ½rx²)|.
    pub max_deviation: f64,
    /// Max over interior samples of |α̈ − cr cos α| with α̈ from second
    /// differences of `alpha_full`.
    pub pendulum_residual: f64,
    pub max_drift: f64,
}

fn unwrap_angles(raw: &[f64]) -> Vec<f64> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut out = Vec::with_capacity(raw.len());
    let mut offset = 0.0;
    for (i, &a) in raw.iter().enumerate() {
        if i > 0 {
            let prev = raw[i - 1];
            let d = a - prev;
            if d > std::f64::consts::PI {
                offset -= two_pi;
            } else if d < -std::f64::consts::PI {
                offset += two_pi;
            }
        }
        out.push(a + offset);
    }
    out
}

/// Integrates both the full extremal and the reduced pendulum from
/// `state0 = ((x, y, z), (p, q, r))` and compares them.
pub fn heisenberg_pendulum(
    ars: &SimpleArs,
    state0: &ExtremalState,
    t_final: f64,
    options: &IntegrateOptions,
) -> Result<PendulumReport> {
    if ars.chart().name() != "heisenberg" || ars.dim() != 3 {
        return Err(Error::validation("pendulum reduction needs the Heisenberg structure"));
    }
    let probe = [0.7, -0.3, 0.2];
    let (fv, _) = ars.field().eval(&probe)?;
    let expected = [0.0, probe[0], 0.5 * probe[0] * probe[0]];
    let frame_ok = fv.iter().zip(expected).all(|(a, b)| (a - b).abs() < 1e-12)
        && ars.delta_basis().len() == 2
        && ars.delta_basis()[0].coeffs == [1.0, 0.0, 0.0]
        && ars.delta_basis()[1].coeffs == [0.0, 0.0, 1.0];
    if !frame_ok {
        return Err(Error::validation(
            "pendulum reduction needs 𝒳 = x∂y + ½x²∂z with Y₁ = X, Y₂ = Z",
        ));
    }
    let x0 = state0.g[0];
    let (p0, q, r) = (state0.p[0], state0.p[1], state0.p[2]);
    let w0 = q * x0 + 0.5 * r * x0 * x0;
    let c2 = p0 * p0 + w0 * w0;
    if !(c2 > 0.0) {
        return Err(Error::validation(format!(
            "pendulum constant c² = 2H − r² must be positive, got {c2:e}"
        )));
    }
    let c = if p0 < 0.0 { -c2.sqrt() } else { c2.sqrt() };
    let traj = integrate(ars, state0, t_final, options, &[])?;

    let raw: Vec<f64> = traj
        .samples
        .iter()
        .map(|s| {
            let x = s.state.g[0];
            let w = q * x + 0.5 * r * x * x;
            (w / c).atan2(s.state.p[0] / c)
        })
        .collect();
    let alpha_full = unwrap_angles(&raw);

    let h = traj.step;
    let mut y = vec![alpha_full[0], q + r * x0];
    let mut alpha = vec![y[0]];
    let mut f = |_t: f64, s: &[f64], d: &mut [f64]| -> Result<()> {
        d[0] = s[1];
        d[1] = c * r * s[0].cos();
        Ok(())
    };
    for i in 1..traj.samples.len() {
        let t = traj.samples[i - 1].t;
        let dt = traj.samples[i].t - t;
        y = rk4_step(&mut f, t, &y, dt)?;
        alpha.push(y[0]);
    }

    let mut max_deviation: f64 = 0.0;
    for (i, s) in traj.samples.iter().enumerate() {
        let x = s.state.g[0];
        let w = q * x + 0.5 * r * x * x;
        max_deviation = max_deviation
            .max((alpha[i] - alpha_full[i]).abs())
            .max((c * alpha[i].cos() - s.state.p[0]).abs())
            .max((c * alpha[i].sin() - w).abs());
    }
    let mut pendulum_residual: f64 = 0.0;
    for i in 1..alpha_full.len().saturating_sub(1) {
        let dd = (alpha_full[i + 1] - 2.0 * alpha_full[i] + alpha_full[i - 1]) / (h * h);
        pendulum_residual = pendulum_residual.max((dd - c * r * alpha_full[i].cos()).abs());
    }
    Ok(PendulumReport {
        c,
        r,
        times: traj.times(),
        alpha,
        alpha_full,
        max_deviation,
        pendulum_residual,
        max_drift: traj.max_drift,
    })
}
