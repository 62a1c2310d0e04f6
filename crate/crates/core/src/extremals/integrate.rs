//! Fixed-step RK4 integration of normal extremals with energy monitoring
//! and event location.

use super::frame::ControlFrame;
use super::hamiltonian::{hamiltonian_of_controls, rhs_raw, ExtremalState};
use crate::error::{Error, Result};
use crate::ode::rk4_step;

/// Events are located to this precision in t.
pub const EVENT_T_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct IntegrateOptions {
    pub step: f64,
    pub drift_bound: f64,
    /// Stop at the first located event.
    pub stop_at_event: bool,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self {
            step: 1e-3,
            drift_bound: 1e-8,
            stop_at_event: false,
        }
    }
}

/// Scalar function of `(t, g, p)` whose sign changes are reported.
pub type EventFn<'a> = Box<dyn Fn(f64, &[f64], &[f64]) -> f64 + Send + Sync + 'a>;

#[derive(Clone, Debug, PartialEq)]
pub struct EventHit {
    pub event: usize,
    pub t: f64,
    pub state: ExtremalState,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrajectorySample {
    pub t: f64,
    pub state: ExtremalState,
    /// `(v, u₁, …)`.
    pub controls: Vec<f64>,
    pub h: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicTrajectory {
    pub samples: Vec<TrajectorySample>,
    /// Actual step used: `T / ceil(T / requested step)`.
    pub step: f64,
    pub initial: ExtremalState,
    pub options: IntegrateOptions,
    pub max_drift: f64,
    pub events: Vec<EventHit>,
}

impl GeodesicTrajectory {
    pub fn last(&self) -> &TrajectorySample {
        self.samples
            .last()
            .expect("trajectories hold at least the initial sample")
    }

    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.t).collect()
    }

    /// Length `∫ √(v² + Σu²) dt` by composite Simpson quadrature.
    pub fn length(&self) -> f64 {
        let speeds: Vec<f64> = self.samples.iter().map(|s| (2.0 * s.h).max(0.0).sqrt()).collect();
        simpson(&self.times(), &speeds)
    }
}

/// Composite Simpson rule on a uniform grid (3/8 rule on the last three
/// panels when the panel count is odd, trapezoid for a single panel).
pub fn simpson(t: &[f64], f: &[f64]) -> f64 {
    let n = t.len().saturating_sub(1);
    if n == 0 {
        return 0.0;
    }
    if n == 1 {
        return 0.5 * (t[1] - t[0]) * (f[0] + f[1]);
    }
    let h = (t[n] - t[0]) / n as f64;
    let simpson_end = if n.is_multiple_of(2) { n } else { n - 3 };
    let mut s = 0.0;
    let mut i = 0;
    while i < simpson_end {
        s += h / 3.0 * (f[i] + 4.0 * f[i + 1] + f[i + 2]);
        i += 2;
    }
    if n % 2 == 1 {
        let j = n - 3;
        s += 3.0 * h / 8.0 * (f[j] + 3.0 * f[j + 1] + 3.0 * f[j + 2] + f[j + 3]);
    }
    s
}

fn split(y: &[f64], m: usize) -> (&[f64], &[f64]) {
    y.split_at(m)
}

fn step_state(frame: &dyn ControlFrame, t: f64, y: &[f64], h: f64) -> Result<Vec<f64>> {
    let m = frame.coord_dim();
    let mut f = |tt: f64, yy: &[f64], dy: &mut [f64]| -> Result<()> {
        let (g, p) = split(yy, m);
        let (gd, pd, _) = rhs_raw(frame, g, p).map_err(|e| Error::numeric(tt, e.to_string()))?;
        dy[..m].copy_from_slice(&gd);
        dy[m..].copy_from_slice(&pd);
        Ok(())
    };
    let mut out = rk4_step(&mut f, t, y, h)?;
    let (g, p) = out.split_at_mut(m);
    frame.renormalize(g, p);
    frame.check_point(g).map_err(|e| Error::numeric(t + h, e.to_string()))?;
    if out.iter().any(|v| !v.is_finite()) {
        return Err(Error::numeric(t + h, "state became non-finite"));
    }
    Ok(out)
}

fn sample(frame: &dyn ControlFrame, t: f64, y: &[f64]) -> Result<TrajectorySample> {
    let m = frame.coord_dim();
    let (g, p) = split(y, m);
    let (_, _, controls) = rhs_raw(frame, g, p).map_err(|e| Error::numeric(t, e.to_string()))?;
    Ok(TrajectorySample {
        t,
        state: ExtremalState::new(g.to_vec(), p.to_vec()),
        h: hamiltonian_of_controls(&controls),
        controls,
    })
}

/// Integrates a normal extremal from `state0` over `[0, t_final]`.
pub fn integrate(
    frame: &dyn ControlFrame,
    state0: &ExtremalState,
    t_final: f64,
    options: &IntegrateOptions,
    events: &[EventFn<'_>],
) -> Result<GeodesicTrajectory> {
    let m = frame.coord_dim();
    if state0.g.len() != m || state0.p.len() != m {
        return Err(Error::validation(format!(
            "state needs {m} coordinates and {m} covector components"
        )));
    }
    if !(t_final >= 0.0) || !t_final.is_finite() {
        return Err(Error::validation(format!(
            "final time must be finite and ≥ 0, got {t_final}"
        )));
    }
    if !(options.step > 0.0) {
        return Err(Error::validation("step must be positive"));
    }
    frame.check_point(&state0.g)?;
    let mut y: Vec<f64> = state0.g.iter().chain(&state0.p).copied().collect();
    let first = sample(frame, 0.0, &y)?;
    let h0 = first.h;
    let mut traj = GeodesicTrajectory {
        samples: vec![first],
        step: options.step,
        initial: state0.clone(),
        options: options.clone(),
        max_drift: 0.0,
        events: Vec::new(),
    };
    if t_final == 0.0 {
        return Ok(traj);
    }
    let n = ((t_final / options.step) - 1e-9).ceil().max(1.0) as usize;
    let h = t_final / n as f64;
    traj.step = h;
    let eval_events = |t: f64, y: &[f64]| -> Vec<f64> {
        let (g, p) = split(y, m);
        events.iter().map(|e| e(t, g, p)).collect()
    };
    let mut ev_prev = eval_events(0.0, &y);
    for i in 0..n {
        let t = i as f64 * h;
        let t_next = if i + 1 == n { t_final } else { (i + 1) as f64 * h };
        let y_next = step_state(frame, t, &y, h)?;
        let ev_next = eval_events(t_next, &y_next);
        let mut hits: Vec<EventHit> = Vec::new();
        for (k, (a, b)) in ev_prev.iter().zip(&ev_next).enumerate() {
            if a * b < 0.0 {
                hits.push(locate_event(frame, events, k, t, &y, h, *a)?);
            }
        }
        hits.sort_by(|a, b| a.t.total_cmp(&b.t));
        let stop = options.stop_at_event && !hits.is_empty();
        if stop {
            let hit = hits[0].clone();
            let yh: Vec<f64> = hit.state.g.iter().chain(&hit.state.p).copied().collect();
            let s = sample(frame, hit.t, &yh)?;
            record(&mut traj, s, h0)?;
            traj.events.push(hit);
            return Ok(traj);
        }
        traj.events.extend(hits);
        let s = sample(frame, t_next, &y_next)?;
        record(&mut traj, s, h0)?;
        y = y_next;
        ev_prev = ev_next;
    }
    Ok(traj)
}

fn record(traj: &mut GeodesicTrajectory, s: TrajectorySample, h0: f64) -> Result<()> {
    let drift = (s.h - h0).abs();
    if drift > traj.options.drift_bound {
        return Err(Error::numeric(
            s.t,
            format!(
                "Hamiltonian drift {drift:e} exceeds bound {:e}",
                traj.options.drift_bound
            ),
        ));
    }
    traj.max_drift = traj.max_drift.max(drift);
    traj.samples.push(s);
    Ok(())
}

// Bisection on the sub-step length from the last accepted state.
fn locate_event(
    frame: &dyn ControlFrame,
    events: &[EventFn<'_>],
    k: usize,
    t: f64,
    y: &[f64],
    h: f64,
    f_start: f64,
) -> Result<EventHit> {
    let m = frame.coord_dim();
    let mut lo = 0.0;
    let mut hi = h;
    let mut y_hi = step_state(frame, t, y, h)?;
    while hi - lo > EVENT_T_TOL {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let ym = step_state(frame, t, y, mid)?;
        let (g, p) = split(&ym, m);
        let fm = events[k](t + mid, g, p);
        if fm == 0.0 {
            hi = mid;
            y_hi = ym;
            break;
        }
        if (fm < 0.0) == (f_start < 0.0) {
            lo = mid;
        } else {
            hi = mid;
            y_hi = ym;
        }
    }
    let (g, p) = split(&y_hi, m);
    Ok(EventHit {
        event: k,
        t: t + hi,
        state: ExtremalState::new(g.to_vec(), p.to_vec()),
    })
}

/// Endpoint error estimate from one step halving, `‖y_h − y_{h/2}‖∞ / 15`.
/// Reported only; never used to adapt the grid.
pub fn richardson_estimate(
    frame: &dyn ControlFrame,
    state0: &ExtremalState,
    t_final: f64,
    options: &IntegrateOptions,
) -> Result<f64> {
    let coarse = integrate(frame, state0, t_final, options, &[])?;
    let fine_opts = IntegrateOptions {
        step: options.step / 2.0,
        ..options.clone()
    };
    let fine = integrate(frame, state0, t_final, &fine_opts, &[])?;
    let a = &coarse.last().state;
    let b = &fine.last().state;
    let diff =
        a.g.iter()
            .chain(&a.p)
            .zip(b.g.iter().chain(&b.p))
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
    Ok(diff / 15.0)
}
