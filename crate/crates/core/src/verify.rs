//! The fixture oracle suite behind `arslie verify` and the acceptance tests.

use std::time::{Duration, Instant};

use crate::ars::{abnormal_algebra, classify_locus, grad_psi, normalized_psi, psi, verdict_id, SimpleArs};
use crate::desing::{lift, lifted_integrate, project};
use crate::error::Result;
use crate::extremals::{
    abnormal_description, first_return, heisenberg_pendulum, integrate, EventFn, ExtremalState, FirstReturn,
    IntegrateOptions,
};
use crate::fixtures;
use crate::group_models::{cocycle_check, covector_from_algebra, f_map, f_series};
use crate::lie_core::{AlgebraVector, Subspace};

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl std::fmt::Display for CriterionOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "criterion {} [{}] {}: {} ({:.3}s)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed.as_secs_f64()
        )
    }
}

fn run(id: usize, title: &'static str, body: impl FnOnce() -> Result<(bool, String)>) -> CriterionOutcome {
    let start = Instant::now();
    let (passed, detail) = body().unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionOutcome {
        id,
        title,
        passed,
        detail,
        elapsed: start.elapsed(),
    }
}

// Deterministic low-discrepancy points in a box (Halton, bases 2, 3, 5, 7).
fn halton_points(bounds: &[(f64, f64)], count: usize) -> Vec<Vec<f64>> {
    const BASES: [u64; 6] = [2, 3, 5, 7, 11, 13];
    (1..=count as u64)
        .map(|i| {
            bounds
                .iter()
                .zip(BASES)
                .map(|(&(lo, hi), b)| {
                    let (mut f, mut r, mut k) = (1.0, 0.0, i);
                    while k > 0 {
                        f /= b as f64;
                        r += f * (k % b) as f64;
                        k /= b;
                    }
                    lo + (hi - lo) * r
                })
                .collect()
        })
        .collect()
}

fn sup(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Return to {x = 1} of the Aff₊(2) geodesic from (1, 0) with covector
/// (ε, q), located by event bisection on x − 1.
pub fn aff2_numeric_return(epsilon: f64, q: f64, t_max: f64, step: f64) -> Result<Option<FirstReturn>> {
    let ars = fixtures::aff2_geodesic();
    let state = ExtremalState::new(vec![1.0, 0.0], vec![epsilon, q]);
    let events: Vec<EventFn<'_>> = vec![Box::new(|_t, g: &[f64], _p: &[f64]| g[0] - 1.0)];
    let options = IntegrateOptions {
        step,
        stop_at_event: true,
        ..IntegrateOptions::default()
    };
    let traj = integrate(&ars, &state, t_max, &options, &events)?;
    Ok(traj.events.first().map(|h| FirstReturn {
        t: h.t,
        dy: h.state.g[1],
    }))
}

fn compare_return(epsilon: f64, q: f64, detail: &mut Vec<String>) -> Result<bool> {
    let closed = first_return(epsilon, q)?;
    let horizon = closed.map(|c| 1.5 * c.t).unwrap_or(8.0);
    let numeric = aff2_numeric_return(epsilon, q, horizon, 1e-3)?;
    let ok = match (closed, numeric) {
        (Some(c), Some(n)) => {
            let err = (c.dy - n.dy).abs().max((c.t - n.t).abs());
            detail.push(format!("(ε={epsilon}, q={q}) Δy={:.9} err={err:.1e}", c.dy));
            err <= 1e-5
        }
        (None, None) => {
            detail.push(format!("(ε={epsilon}, q={q}) no return"));
            true
        }
        (c, n) => {
            detail.push(format!("(ε={epsilon}, q={q}) closed {c:?} numeric {n:?}"));
            false
        }
    };
    Ok(ok)
}

pub fn criterion_1() -> CriterionOutcome {
    run(1, "Aff2 first return, q = 1", || {
        let c = first_return(1.0, 1.0)?.expect("ε = 1 returns");
        let mut detail = Vec::new();
        let exact = c.t == 2.0 && (c.dy - (4.0 - std::f64::consts::PI)).abs() <= 1e-15;
        let numeric = compare_return(1.0, 1.0, &mut detail)?;
        detail.push(format!("t*={} Δy={:.9}", c.t, c.dy));
        Ok((exact && numeric, detail.join("; ")))
    })
}

pub fn criterion_2() -> CriterionOutcome {
    run(2, "Aff2 first returns, q ≠ 1", || {
        let mut detail = Vec::new();
        let mut ok = true;
        for (e, q) in [(1.0, 0.5), (1.0, 2.0), (-1.0, 2.0), (-1.0, 0.5), (-1.0, 1.0)] {
            ok &= compare_return(e, q, &mut detail)?;
        }
        ok &= first_return(-1.0, 0.5)?.is_none() && first_return(-1.0, 1.0)?.is_none();
        Ok((ok, detail.join("; ")))
    })
}

type LocusFormula = Box<dyn Fn(&[f64]) -> f64>;

/// Points on a level set, built independently of ψ.
struct LocusCase {
    name: &'static str,
    ars: SimpleArs,
    formula: LocusFormula,
    on_set: Vec<Vec<f64>>,
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

// ex + fy + (a+d)z − ½cx² + ½by² − dxy.
fn quadric(k: [f64; 6]) -> impl Fn(&[f64]) -> f64 {
    let [a, b, c, d, e, f] = k;
    move |g: &[f64]| {
        e * g[0] + f * g[1] + (a + d) * g[2] - 0.5 * c * g[0] * g[0] + 0.5 * b * g[1] * g[1] - d * g[0] * g[1]
    }
}

fn quadric_points(k: [f64; 6]) -> Vec<Vec<f64>> {
    let [a, b, c, d, e, f] = k;
    let mut out = Vec::new();
    for x in grid(-1.0, 1.0, 9) {
        for s in grid(-1.0, 1.0, 9) {
            if a + d != 0.0 {
                let y = s;
                let z = -(e * x + f * y - 0.5 * c * x * x + 0.5 * b * y * y - d * x * y) / (a + d);
                out.push(vec![x, y, z]);
                continue;
            }
            // Quadratic in y with z = s free.
            let qa = 0.5 * b;
            let qb = f - d * x;
            let qc = e * x - 0.5 * c * x * x;
            if qa == 0.0 {
                if qb != 0.0 {
                    out.push(vec![x, -qc / qb, s]);
                }
                continue;
            }
            let disc = qb * qb - 4.0 * qa * qc;
            if disc < 0.0 {
                continue;
            }
            for sign in [1.0, -1.0] {
                let y = (-qb + sign * disc.sqrt()) / (2.0 * qa);
                if y.abs() <= 2.0 {
                    out.push(vec![x, y, s]);
                }
            }
        }
    }
    out
}

fn locus_cases() -> Vec<LocusCase> {
    let mut cases = vec![
        LocusCase {
            name: "grushin x1 = 0",
            ars: fixtures::grushin(),
            formula: Box::new(|g| g[0]),
            on_set: grid(-1.0, 1.0, 21).into_iter().map(|s| vec![0.0, s]).collect(),
        },
        LocusCase {
            name: "aff2 2(x-1) + y = 0",
            ars: fixtures::aff2_locus(),
            formula: Box::new(|g| 2.0 * (g[0] - 1.0) + g[1]),
            on_set: grid(0.5, 1.5, 21)
                .into_iter()
                .map(|x| vec![x, -2.0 * (x - 1.0)])
                .collect(),
        },
    ];
    let planar: [(&'static str, SimpleArs, [f64; 6]); 6] = [
        (
            "heisenberg quadric, tangent c = 1",
            fixtures::heisenberg_tangent(1, 1, 1),
            [1.0, 1.0, 1.0, -1.0, 0.0, 1.0],
        ),
        (
            "heisenberg quadric, tangent c = 0",
            fixtures::heisenberg_tangent(1, 1, 0),
            [1.0, 1.0, 0.0, -1.0, 0.0, 1.0],
        ),
        (
            "heisenberg quadric, b > 0 > c",
            fixtures::heisenberg_quadratic(1, -1),
            [0.0, 1.0, -1.0, 0.0, 0.0, 0.0],
        ),
        (
            "heisenberg quadric, b, c > 0",
            fixtures::heisenberg_quadratic(1, 1),
            [0.0, 1.0, 1.0, 0.0, 0.0, 0.0],
        ),
        (
            "heisenberg quadric, c = 0",
            fixtures::heisenberg_quadratic(1, 0),
            [0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        ),
        (
            "heisenberg quadric, parabolic",
            fixtures::heisenberg_parabolic(),
            [0.0, 0.0, 2.0, 1.0, 0.0, 0.0],
        ),
    ];
    for (name, ars, k) in planar {
        cases.push(LocusCase {
            name,
            ars,
            formula: Box::new(quadric(k)),
            on_set: quadric_points(k),
        });
    }
    let mut para = Vec::new();
    for x in grid(-1.0, 1.0, 9) {
        for y in grid(-1.0, 1.0, 9) {
            para.push(vec![x, y, x * x + x * y]);
        }
    }
    cases.push(LocusCase {
        name: "heisenberg z = x^2 + xy",
        ars: fixtures::heisenberg_parabolic(),
        formula: Box::new(|g| g[2] - g[0] * g[0] - g[0] * g[1]),
        on_set: para,
    });
    let mut sl = Vec::new();
    for a in [1.0, -1.0] {
        for b in grid(-1.0, 1.0, 7) {
            for c in grid(-1.0, 1.0, 7) {
                sl.push(vec![a, b, c, (1.0 + b * c) / a]);
            }
        }
    }
    cases.push(LocusCase {
        name: "sl2 a = ±1",
        ars: fixtures::sl2_borel(),
        formula: Box::new(|g| g[0] * g[0] - 1.0),
        on_set: sl,
    });
    cases
}

pub fn criterion_3() -> CriterionOutcome {
    run(3, "singular-locus formulas", || {
        let mut ok = true;
        let mut detail = Vec::new();
        for case in locus_cases() {
            let chart = case.ars.chart();
            let mut on_max: f64 = 0.0;
            for g in &case.on_set {
                on_max = on_max.max(normalized_psi(&case.ars, g)?);
            }
            let mut off_min = f64::INFINITY;
            let mut controls = 0;
            for params in halton_points(&chart.default_box(), 400) {
                let Some(g) = chart.point_from_params(&params) else {
                    continue;
                };
                if chart.validate(&g).is_err() || (case.formula)(&g).abs() < 0.1 {
                    continue;
                }
                controls += 1;
                off_min = off_min.min(normalized_psi(&case.ars, &g)?);
            }
            let pass = !case.on_set.is_empty() && on_max <= 1e-9 && controls > 0 && off_min >= 1e-3;
            ok &= pass;
            detail.push(format!(
                "{}: {} on-set max {:.1e}, {} off-set min {:.1e}",
                case.name,
                case.on_set.len(),
                on_max,
                controls,
                off_min
            ));
        }
        Ok((ok, detail.join("; ")))
    })
}

/// Expected classification facts for one fixture.
#[derive(Clone, Debug, PartialEq)]
pub struct Expectation {
    pub fixture: &'static str,
    pub delta_subalgebra: bool,
    pub delta_ideal: bool,
    pub d_star_omega_zero: bool,
    pub kernel_subalgebra: bool,
    pub hz_on_kernel: Option<bool>,
    /// D⁻¹Δ as rows.
    pub z_tangent: Vec<Vec<f64>>,
    /// Verdicts expected to apply.
    pub applies: Vec<&'static str>,
}

pub fn expectation_table() -> Vec<Expectation> {
    use verdict_id::*;
    let e = |fixture, sub, ideal, dso0, ksub, hz, zt: &[&[f64]], applies: &[&'static str]| Expectation {
        fixture,
        delta_subalgebra: sub,
        delta_ideal: ideal,
        d_star_omega_zero: dso0,
        kernel_subalgebra: ksub,
        hz_on_kernel: hz,
        z_tangent: zt.iter().map(|r| r.to_vec()).collect(),
        applies: applies.to_vec(),
    };
    vec![
        e(
            "grushin",
            true,
            true,
            false,
            true,
            Some(true),
            &[&[0.0, 1.0]],
            &[SUBMANIFOLD, IDEAL, SOLVABLE, FIXED_POINTS, LOCAL_SUBGROUP],
        ),
        e(
            "aff2-locus",
            true,
            false,
            false,
            true,
            Some(true),
            &[&[1.0, -2.0]],
            &[SUBMANIFOLD, SOLVABLE, FIXED_POINTS, LOCAL_SUBGROUP],
        ),
        e(
            "heisenberg-subalgebra",
            true,
            true,
            false,
            true,
            Some(true),
            &[&[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]],
            &[SUBMANIFOLD, IDEAL, SOLVABLE, FIXED_POINTS, LOCAL_SUBGROUP],
        ),
        e(
            "heisenberg-tangent-c1",
            false,
            false,
            false,
            true,
            Some(false),
            &[&[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0]],
            &[NECESSARY_HZ],
        ),
        e(
            "heisenberg-tangent-c0",
            false,
            false,
            false,
            true,
            Some(true),
            &[&[1.0, 0.0, 0.0], &[0.0, 0.0, 1.0]],
            &[LOCAL_SUBGROUP],
        ),
        e(
            "heisenberg-quadratic-point",
            false,
            false,
            true,
            true,
            Some(false),
            &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]],
            &[FIXED_POINTS],
        ),
        e(
            "heisenberg-quadratic-cross",
            false,
            false,
            true,
            true,
            Some(false),
            &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]],
            &[],
        ),
        e(
            "heisenberg-quadratic-plane",
            false,
            false,
            true,
            true,
            Some(false),
            &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]],
            &[FIXED_POINTS],
        ),
        e(
            "heisenberg-parabolic",
            false,
            false,
            false,
            false,
            None,
            &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]],
            &[NECESSARY_HZ],
        ),
        e(
            "sl2-borel",
            true,
            false,
            false,
            false,
            None,
            &[&[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]],
            &[SUBMANIFOLD, NECESSARY_HZ],
        ),
        e(
            "sl2-off-diagonal",
            false,
            false,
            false,
            true,
            Some(true),
            &[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]],
            &[LOCAL_SUBGROUP],
        ),
    ]
}

/// Mismatches between `classify_locus` and the expectation for `fixture`.
pub fn check_expectation(ex: &Expectation, ars: &SimpleArs) -> Vec<String> {
    let r = classify_locus(ars);
    let mut bad = Vec::new();
    let mut cmp = |what: &str, got: String, want: String| {
        if got != want {
            bad.push(format!("{}: {what} = {got}, expected {want}", ex.fixture));
        }
    };
    cmp(
        "Δ subalgebra",
        r.delta_subalgebra.to_string(),
        ex.delta_subalgebra.to_string(),
    );
    cmp("Δ ideal", r.delta_ideal.to_string(), ex.delta_ideal.to_string());
    cmp(
        "D*ω = 0",
        r.d_star_omega_zero.to_string(),
        ex.d_star_omega_zero.to_string(),
    );
    cmp(
        "ker D*ω subalgebra",
        r.kernel_subalgebra.to_string(),
        ex.kernel_subalgebra.to_string(),
    );
    cmp(
        "(HZ) on ker D*ω",
        format!("{:?}", r.hz_on_kernel),
        format!("{:?}", ex.hz_on_kernel),
    );
    let n = ars.dim();
    let want = Subspace::span(
        n,
        &ex.z_tangent
            .iter()
            .map(|v| AlgebraVector::new(v.clone()))
            .collect::<Vec<_>>(),
    );
    cmp("D^-1 Δ", r.z_tangent.same_as(&want).to_string(), "true".into());
    for id in verdict_id::ALL {
        cmp(id, r.applies(id).to_string(), ex.applies.contains(&id).to_string());
    }
    if !r.internally_consistent {
        bad.push(format!("{}: report is not internally consistent", ex.fixture));
    }
    bad
}

pub fn criterion_4() -> CriterionOutcome {
    run(4, "classification verdicts", || {
        let catalog = fixtures::catalog();
        let mut bad = Vec::new();
        let table = expectation_table();
        for ex in &table {
            match catalog.iter().find(|(n, _)| *n == ex.fixture) {
                Some((_, ars)) => bad.extend(check_expectation(ex, ars)),
                None => bad.push(format!("missing fixture {}", ex.fixture)),
            }
        }
        let detail = if bad.is_empty() {
            format!("{} fixtures match", table.len())
        } else {
            bad.join("; ")
        };
        Ok((bad.is_empty(), detail))
    })
}

pub fn criterion_5() -> CriterionOutcome {
    run(5, "abnormal structure", || {
        let h = fixtures::heisenberg_engel();
        let a = fixtures::aff2_geodesic();
        let ah = abnormal_algebra(&h)?;
        let aa = abnormal_algebra(&a)?;
        let y2 = h.delta_basis()[1].clone();
        let span_ok = ah.same_as(&Subspace::span(3, std::slice::from_ref(&y2))) && aa.is_zero();
        let mut psi_max: f64 = 0.0;
        let mut line_dev: f64 = 0.0;
        let times = grid(-2.0, 2.0, 41);
        for y0 in [-1.5, 0.0, 2.0] {
            let desc = abnormal_description(&h, &[0.0, y0, 0.0])?;
            for xi in &desc.basis {
                for g in desc.coset_curve(&h, xi, &times)? {
                    psi_max = psi_max.max(psi(&h, &g.coords)?.abs());
                    line_dev = line_dev.max(g.coords[0].abs()).max((g.coords[1] - y0).abs());
                }
                if desc.c_coefficient(&h, xi)?.abs() > 0.0 {
                    line_dev = f64::INFINITY;
                }
            }
        }
        let fixed = abnormal_description(&a, &[1.0, 0.3])?.is_trivial();
        let ok = span_ok && fixed && psi_max <= 1e-9 && line_dev == 0.0;
        Ok((
            ok,
            format!(
                "heisenberg a = span{{Y2 = Z}}: {}, aff2 a = {{0}}: {}, max |psi| {psi_max:.1e}, line deviation {line_dev:.1e}",
                ah.same_as(&Subspace::span(3, &[y2])),
                aa.is_zero()
            ),
        ))
    })
}

/// Initial state with H = ½ for a fixture, from a fixed algebra covector.
pub fn unit_state(ars: &SimpleArs, params: &[f64], lambda: &[f64]) -> Result<ExtremalState> {
    let chart = ars.chart();
    let g = chart
        .point_from_params(params)
        .ok_or_else(|| crate::error::Error::validation("parameters outside the chart"))?;
    let p = covector_from_algebra(chart.as_ref(), &g, lambda);
    let s = ExtremalState::new(g, p);
    let h = crate::extremals::maximized_hamiltonian(ars, &s)?;
    if h <= 0.0 {
        return Err(crate::error::Error::validation(
            "initial covector annihilates the frame",
        ));
    }
    let k = (0.5 / h).sqrt();
    Ok(ExtremalState::new(s.g, s.p.iter().map(|x| x * k).collect()))
}

fn default_params(ars: &SimpleArs) -> Vec<f64> {
    let chart = ars.chart();
    let mut p: Vec<f64> = chart
        .default_box()
        .iter()
        .map(|(lo, hi)| lo + 0.6 * (hi - lo))
        .collect();
    if chart.name() == "sl2" {
        p = vec![1.2, 0.3, -0.2];
    }
    p
}

fn rk4_ratio() -> Result<f64> {
    let ars = fixtures::aff2_geodesic();
    let cf = crate::extremals::ClosedFormGeodesic::new(1.0, 2.0, 0.0)?;
    let t = 1.0;
    let exact = cf.eval(t);
    let s0 = ExtremalState::new(vec![1.0, 0.0], vec![1.0, 2.0]);
    let err = |step: f64| -> Result<f64> {
        // Coarse steps on purpose; energy drift is not what is measured here.
        let opts = IntegrateOptions {
            step,
            drift_bound: f64::INFINITY,
            ..IntegrateOptions::default()
        };
        let tr = integrate(&ars, &s0, t, &opts, &[])?;
        let g = &tr.last().state.g;
        Ok((g[0] - exact.x).abs().max((g[1] - exact.dy).abs()))
    };
    Ok(err(0.02)? / err(0.01)?)
}

pub fn criterion_6() -> CriterionOutcome {
    run(6, "PMP integrator properties", || {
        let opts = IntegrateOptions::default();
        let mut max_drift: f64 = 0.0;
        let mut detail = Vec::new();
        for (name, ars) in fixtures::catalog() {
            let lambda: Vec<f64> = (0..ars.dim()).map(|i| [0.6, -0.3, 0.5][i % 3]).collect();
            let s0 = unit_state(&ars, &default_params(&ars), &lambda)?;
            match integrate(&ars, &s0, 10.0, &opts, &[]) {
                Ok(tr) => max_drift = max_drift.max(tr.max_drift),
                Err(e) => {
                    detail.push(format!("{name}: {e}"));
                    max_drift = f64::INFINITY;
                }
            }
        }
        let aff = fixtures::aff2_geodesic();
        let ta = integrate(
            &aff,
            &ExtremalState::new(vec![1.2, 0.1], vec![0.8, -0.6]),
            10.0,
            &opts,
            &[],
        )?;
        let q_drift = ta
            .samples
            .iter()
            .map(|s| (s.state.p[1] - (-0.6)).abs())
            .fold(0.0, f64::max);
        let heis = fixtures::heisenberg_engel();
        let th = integrate(
            &heis,
            &ExtremalState::new(vec![0.1, 0.2, 0.3], vec![0.7, 0.4, -0.5]),
            10.0,
            &opts,
            &[],
        )?;
        let qr_drift = th
            .samples
            .iter()
            .map(|s| (s.state.p[1] - 0.4).abs().max((s.state.p[2] + 0.5).abs()))
            .fold(0.0, f64::max);
        let l = lift(&heis)?;
        let tl = lifted_integrate(
            &l,
            &ExtremalState::new(vec![0.1, 0.2, 0.3, 0.0], vec![0.7, 0.4, -0.5, 0.3]),
            10.0,
            &opts,
            &[],
        )?;
        let qrs_drift = tl
            .samples
            .iter()
            .map(|s| {
                (s.state.p[1] - 0.4)
                    .abs()
                    .max((s.state.p[2] + 0.5).abs())
                    .max((s.state.p[3] - 0.3).abs())
            })
            .fold(0.0, f64::max);
        max_drift = max_drift.max(ta.max_drift).max(th.max_drift).max(tl.max_drift);
        let ratio = rk4_ratio()?;
        let ok = max_drift <= 1e-8 && q_drift <= 1e-12 && qr_drift <= 1e-12 && qrs_drift <= 1e-12 && ratio >= 12.0;
        detail.push(format!(
            "max H drift {max_drift:.1e}, q drift {q_drift:.1e}, (q,r) drift {qr_drift:.1e}, (q,r,s) drift {qrs_drift:.1e}, halving ratio {ratio:.2}"
        ));
        Ok((ok, detail.join("; ")))
    })
}

pub fn criterion_7() -> CriterionOutcome {
    run(7, "closed-form oracles", || {
        let mut detail = Vec::new();
        // Terminating series on the Heisenberg group.
        let h = fixtures::heisenberg_parabolic();
        let mut heis_err: f64 = 0.0;
        for (i, t) in grid(-1.0, 1.0, 11).into_iter().enumerate() {
            let y = AlgebraVector::new(vec![0.7 - 0.1 * i as f64, -0.4, 0.9]);
            let g = h.chart().exp_map(&y.scale(&t).coeffs);
            let a = f_map(h.field(), &g)?;
            let b = f_series(h.algebra(), h.derivation(), &y, t, 20);
            heis_err = heis_err.max(a.sub(&b).max_abs());
        }
        let a2 = fixtures::aff2_locus();
        let mut aff_err: f64 = 0.0;
        for (i, t) in grid(-1.0, 1.0, 11).into_iter().enumerate() {
            let y = AlgebraVector::new(vec![1.1 - 0.2 * i as f64, 0.8]);
            let g = a2.chart().exp_map(&y.scale(&t).coeffs);
            let a = f_map(a2.field(), &g)?;
            let b = f_series(a2.algebra(), a2.derivation(), &y, t, 20);
            aff_err = aff_err.max(a.sub(&b).max_abs());
        }
        // dψ against central differences along left translations.
        let mut grad_err: f64 = 0.0;
        let reps = [
            fixtures::grushin(),
            fixtures::aff2_locus(),
            fixtures::heisenberg_parabolic(),
            fixtures::sl2_borel(),
        ];
        for ars in &reps {
            let chart = ars.chart();
            let n = ars.dim();
            let mut count = 0;
            for params in halton_points(&chart.default_box(), 400) {
                if count == 100 {
                    break;
                }
                let Some(g) = chart.point_from_params(&params) else {
                    continue;
                };
                if chart.validate(&g).is_err() {
                    continue;
                }
                count += 1;
                let grad = grad_psi(ars, &g)?;
                let eps = 1e-5;
                for j in 0..n {
                    let e = AlgebraVector::basis(n, j);
                    let gp = chart.multiply(&g, &chart.exp_map(&e.scale(&eps).coeffs));
                    let gm = chart.multiply(&g, &chart.exp_map(&e.scale(&-eps).coeffs));
                    let fd = (psi(ars, &gp)? - psi(ars, &gm)?) / (2.0 * eps);
                    let rel = (fd - grad.coeffs[j]).abs() / grad.coeffs[j].abs().max(1.0);
                    grad_err = grad_err.max(rel);
                }
            }
        }
        // Cocycle identities.
        let mut coc: f64 = 0.0;
        for (_, ars) in fixtures::catalog() {
            let chart = ars.chart();
            let pts: Vec<Vec<f64>> = halton_points(&chart.default_box(), 40)
                .into_iter()
                .filter_map(|p| chart.point_from_params(&p))
                .filter(|g| chart.validate(g).is_ok())
                .collect();
            for w in pts.windows(2) {
                let y = AlgebraVector::new((0..ars.dim()).map(|i| 0.5 - 0.3 * i as f64).collect());
                let r = cocycle_check(ars.field(), &w[0], &w[1], &y, 0.7)?;
                coc = coc.max(r.exp_residual).max(r.product_residual);
            }
        }
        detail.push(format!(
            "series: heisenberg {heis_err:.1e}, aff2 {aff_err:.1e}; grad_psi rel {grad_err:.1e}; cocycle {coc:.1e}"
        ));
        let ok = heis_err <= 1e-14 && aff_err <= 1e-10 && grad_err <= 1e-6 && coc <= 1e-9;
        Ok((ok, detail.join("; ")))
    })
}

pub fn criterion_8() -> CriterionOutcome {
    run(8, "desingularization", || {
        let h = fixtures::heisenberg_engel();
        let l = lift(&h)?;
        let engel = l.exact_lifted_algebra().map(|alg| {
            use num_rational::Rational64;
            let e = |i| AlgebraVector::<Rational64>::basis(4, i);
            let mut ok = true;
            for i in 0..4 {
                for j in 0..4 {
                    let want = match (i, j) {
                        (0, 3) => e(1),
                        (3, 0) => e(1).scale(&Rational64::from_integer(-1)),
                        (0, 1) => e(2),
                        (1, 0) => e(2).scale(&Rational64::from_integer(-1)),
                        _ => AlgebraVector::zero(4),
                    };
                    ok &= alg.bracket(&e(i), &e(j)).map(|b| b == want).unwrap_or(false);
                }
            }
            ok
        });
        let opts = IntegrateOptions::default();
        let mut proj_dev: f64 = 0.0;
        let mut tau_err: f64 = 0.0;
        for (g, p) in [
            (vec![0.0, 0.0, 0.0], vec![1.0, 0.7, 0.4]),
            (vec![0.3, -0.2, 0.5], vec![-0.6, 0.2, 0.9]),
        ] {
            let s0 = ExtremalState::new(g, p);
            let base = integrate(&h, &s0, 5.0, &opts, &[])?;
            let lifted = lifted_integrate(&l, &l.lifted_state(&s0, 0.0, 0.0), 5.0, &opts, &[])?;
            let pr = project(&l, &lifted)?;
            for (a, b) in base.samples.iter().zip(&pr.base.samples) {
                proj_dev = proj_dev.max(sup(&a.state.g, &b.state.g));
            }
            tau_err = tau_err.max((pr.tau_increment - pr.v_integral).abs());
        }
        let s1 = l.lifted_state(&ExtremalState::new(vec![0.2, 0.1, 0.0], vec![0.5, -0.3, 0.6]), 0.4, 0.8);
        let pr = project(&l, &lifted_integrate(&l, &s1, 5.0, &opts, &[])?)?;
        tau_err = tau_err.max((pr.tau_increment - pr.v_integral).abs());
        let ok = engel == Some(true) && proj_dev <= 1e-9 && tau_err <= 1e-8;
        Ok((
            ok,
            format!(
                "Engel table exact: {engel:?}; projection deviation {proj_dev:.1e}; tau quadrature error {tau_err:.1e}"
            ),
        ))
    })
}

pub fn criterion_9() -> CriterionOutcome {
    run(9, "Heisenberg pendulum reduction", || {
        let h = fixtures::heisenberg_engel();
        let mut res: f64 = 0.0;
        let mut dev: f64 = 0.0;
        for (p0, q, r) in [(1.0, 0.7, 0.4), (1.0, -0.5, 1.2), (-1.0, 0.3, 0.8), (1.0, 0.9, 0.0)] {
            let rep = heisenberg_pendulum(
                &h,
                &ExtremalState::new(vec![0.0, 0.0, 0.0], vec![p0, q, r]),
                5.0,
                &IntegrateOptions::default(),
            )?;
            res = res.max(rep.pendulum_residual);
            dev = dev.max(rep.max_deviation);
        }
        Ok((
            res <= 1e-6 && dev <= 1e-7,
            format!("pendulum residual {res:.1e}, reduced vs full {dev:.1e}"),
        ))
    })
}

pub fn all_criteria() -> Vec<CriterionOutcome> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ]
}
