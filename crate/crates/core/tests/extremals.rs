use arslie::ars::{psi, sample_locus, SimpleArs};
use arslie::extremals::*;
use arslie::fixtures;
use arslie::group_models::{covector_from_algebra, GroupChart};
use arslie::lie_core::AlgebraVector;
use arslie::Error;
use proptest::prelude::*;

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn opts() -> IntegrateOptions {
    IntegrateOptions::default()
}

fn point(chart: &dyn GroupChart, a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = chart.dim();
    chart.multiply(&chart.exp_map(&a[..n]), &chart.exp_map(&b[..n]))
}

fn all_fixtures() -> Vec<(&'static str, SimpleArs)> {
    fixtures::names()
        .into_iter()
        .map(|n| (n, fixtures::by_name(n).unwrap()))
        .collect()
}

fn aff2_start(epsilon: f64, q: f64) -> ExtremalState {
    // at x = 1 the chart covector (p, q) has u = p, v = 0
    ExtremalState::new(vec![1.0, 0.0], vec![epsilon, q])
}

#[test]
fn aff2_controls_hamiltonian_and_rhs() {
    let ars = fixtures::aff2_geodesic();
    let (x, y, p, q) = (1.7, -0.4, 0.6, -1.3);
    let s = ExtremalState::new(vec![x, y], vec![p, q]);
    let c = normal_controls(&ars, &s).unwrap();
    assert!(dist(&c, &[q * (x - 1.0), p * x]) <= 1e-15);
    let h = maximized_hamiltonian(&ars, &s).unwrap();
    assert!((h - (0.5 * p * p * x * x + 0.5 * q * q * (x - 1.0) * (x - 1.0))).abs() <= 1e-15);
    let (gd, pd) = extremal_rhs(&ars, &s).unwrap();
    assert!(dist(&gd, &[p * x * x, q * (x - 1.0) * (x - 1.0)]) <= 1e-14);
    assert!(dist(&pd, &[-p * p * x - q * q * (x - 1.0), 0.0]) <= 1e-14);
}

#[test]
fn heisenberg_controls_hamiltonian_and_rhs() {
    let ars = fixtures::heisenberg_engel();
    let (x, p, q, r) = (0.8, -0.5, 1.1, 0.7);
    let s = ExtremalState::new(vec![x, 0.3, -2.0], vec![p, q, r]);
    let w = q * x + 0.5 * r * x * x;
    assert!(dist(&normal_controls(&ars, &s).unwrap(), &[w, p, r]) <= 1e-15);
    let h = maximized_hamiltonian(&ars, &s).unwrap();
    assert!((h - 0.5 * (p * p + r * r + w * w)).abs() <= 1e-15);
    let (_, pd) = extremal_rhs(&ars, &s).unwrap();
    assert!(dist(&pd, &[-(q + r * x) * w, 0.0, 0.0]) <= 1e-15);
}

#[test]
fn zero_and_annihilating_covectors() {
    for (name, ars) in all_fixtures() {
        let chart = ars.chart();
        let g = point(chart.as_ref(), &[0.2, -0.1, 0.3], &[0.1, 0.2, -0.2]);
        let zero = ExtremalState::new(g.clone(), vec![0.0; chart.coord_dim()]);
        assert!(
            normal_controls(&ars, &zero).unwrap().iter().all(|c| *c == 0.0),
            "{name}"
        );
        assert_eq!(maximized_hamiltonian(&ars, &zero).unwrap(), 0.0);
        let (gd, pd) = extremal_rhs(&ars, &zero).unwrap();
        assert!(gd.iter().chain(&pd).all(|v| *v == 0.0), "{name}");
        let tr = integrate(&ars, &zero, 1.0, &opts(), &[]).unwrap();
        // SL(2) points are renormalized onto det = 1 after each step
        assert!(dist(&tr.last().state.g, &g) <= 1e-14, "{name}");
        assert!(tr.last().state.p.iter().all(|v| *v == 0.0), "{name}");
    }
    // λ annihilating F(g) and every Y_j at a point of 𝒵 where F(g) ∈ Δ
    let ars = fixtures::heisenberg_engel();
    let s = ExtremalState::new(vec![0.0, 1.0, 2.0], vec![0.0, 1.0, 0.0]);
    let (gd, pd) = extremal_rhs(&ars, &s).unwrap();
    assert!(gd.iter().chain(&pd).all(|v| v.abs() <= 1e-15));
}

#[test]
fn shape_and_argument_validation() {
    let ars = fixtures::aff2_geodesic();
    let bad = ExtremalState::new(vec![1.0, 0.0, 0.0], vec![1.0, 0.0]);
    assert!(matches!(normal_controls(&ars, &bad), Err(Error::Validation(_))));
    let s = aff2_start(1.0, 1.0);
    assert!(matches!(
        integrate(&ars, &s, -1.0, &opts(), &[]),
        Err(Error::Validation(_))
    ));
    assert!(matches!(
        integrate(&ars, &s, f64::NAN, &opts(), &[]),
        Err(Error::Validation(_))
    ));
    let zero_step = IntegrateOptions { step: 0.0, ..opts() };
    assert!(matches!(
        integrate(&ars, &s, 1.0, &zero_step, &[]),
        Err(Error::Validation(_))
    ));
    let off = ExtremalState::new(vec![-1.0, 0.0], vec![1.0, 0.0]);
    assert!(integrate(&ars, &off, 1.0, &opts(), &[]).is_err());
}

#[test]
fn zero_final_time_gives_single_sample() {
    let ars = fixtures::aff2_geodesic();
    let s = aff2_start(1.0, 1.0);
    let tr = integrate(&ars, &s, 0.0, &opts(), &[]).unwrap();
    assert_eq!(tr.samples.len(), 1);
    assert_eq!(tr.samples[0].state, s);
    assert_eq!(tr.length(), 0.0);
}

#[test]
fn drift_bound_violation_is_numeric_failure() {
    let ars = fixtures::aff2_geodesic();
    let s = ExtremalState::new(vec![1.5, 0.0], vec![1.0, 2.0]);
    let coarse = IntegrateOptions {
        step: 0.2,
        drift_bound: 1e-12,
        ..opts()
    };
    match integrate(&ars, &s, 5.0, &coarse, &[]) {
        Err(Error::Numeric { t, .. }) => assert!(t > 0.0 && t <= 5.0),
        other => panic!("expected numeric failure, got {other:?}"),
    }
}

#[test]
fn aff2_horizontal_lines_for_q_zero() {
    let ars = fixtures::aff2_geodesic();
    for (x0, c) in [(1.0, 1.0), (2.0, -1.0), (0.5, 0.7)] {
        // algebra covector u = c at x0
        let s = ExtremalState::new(vec![x0, 0.4], vec![c / x0, 0.0]);
        let tr = integrate(&ars, &s, 2.0, &opts(), &[]).unwrap();
        for smp in tr.samples.iter().step_by(100) {
            let expected = x0 * (c * smp.t).exp();
            assert!(
                (smp.state.g[0] - expected).abs() <= 1e-9 * expected,
                "{x0} {c} {}",
                smp.t
            );
            assert_eq!(smp.state.g[1], 0.4);
        }
    }
}

#[test]
fn heisenberg_lines_parallel_to_x() {
    let ars = fixtures::heisenberg_engel();
    let s = ExtremalState::new(vec![0.0, 1.0, -0.5], vec![0.8, 0.0, 0.0]);
    let tr = integrate(&ars, &s, 3.0, &opts(), &[]).unwrap();
    for smp in &tr.samples {
        assert!((smp.state.g[0] - 0.8 * smp.t).abs() <= 1e-12);
        assert_eq!(smp.state.g[1], 1.0);
        assert_eq!(smp.state.g[2], -0.5);
    }
}

#[test]
fn trajectory_invariants() {
    let ars = fixtures::heisenberg_engel();
    let s = ExtremalState::new(vec![0.0, 0.0, 0.0], vec![0.6, -1.2, 0.9]);
    let tr = integrate(&ars, &s, 10.0, &opts(), &[]).unwrap();
    assert!(tr.samples.windows(2).all(|w| w[1].t > w[0].t));
    assert!((tr.last().t - 10.0).abs() <= 1e-12);
    let h0 = tr.samples[0].h;
    let drift = tr.samples.iter().map(|x| (x.h - h0).abs()).fold(0.0, f64::max);
    assert!(drift <= 1e-8);
    assert_eq!(drift, tr.max_drift);
    for smp in &tr.samples {
        assert_eq!(smp.state.p[1], -1.2);
        assert_eq!(smp.state.p[2], 0.9);
    }
    // constant speed √(2H)
    assert!((tr.length() - 10.0 * (2.0 * h0).sqrt()).abs() <= 1e-8);
}

#[test]
fn step_halving_shrinks_error_by_about_sixteen() {
    let ars = fixtures::heisenberg_engel();
    let s = ExtremalState::new(vec![0.0, 0.0, 0.0], vec![0.6, -1.2, 0.9]);
    let loose = |step: f64| IntegrateOptions {
        step,
        drift_bound: f64::INFINITY,
        ..opts()
    };
    let reference = integrate(&ars, &s, 2.0, &loose(1e-3), &[]).unwrap();
    let err = |step: f64| {
        let tr = integrate(&ars, &s, 2.0, &loose(step), &[]).unwrap();
        dist(&tr.last().state.g, &reference.last().state.g)
    };
    let ratio = err(0.04) / err(0.02);
    assert!(ratio >= 12.0, "ratio {ratio}");
    let e1 = richardson_estimate(&ars, &s, 2.0, &loose(0.04)).unwrap();
    let e2 = richardson_estimate(&ars, &s, 2.0, &loose(0.02)).unwrap();
    assert!(e1 / e2 >= 12.0, "{e1} {e2}");
}

#[test]
fn simpson_is_exact_on_cubics() {
    for n in [1usize, 2, 3, 4, 5, 8, 9] {
        let t: Vec<f64> = (0..=n).map(|i| 2.0 * i as f64 / n as f64).collect();
        let f: Vec<f64> = t.iter().map(|x| x * x * x - x + 1.0).collect();
        let exact = 4.0 - 2.0 + 2.0;
        let tol = if n == 1 { 10.0 } else { 1e-12 };
        assert!((simpson(&t, &f) - exact).abs() <= tol, "n = {n}");
    }
    assert_eq!(simpson(&[0.0], &[1.0]), 0.0);
}

#[test]
fn algebra_covector_rhs_matches_chart_route() {
    // d/dt (L(g)ᵀp) by the chain rule, with dL/dt from finite differences
    for (name, ars) in all_fixtures() {
        let chart = ars.chart();
        for (a, b, lam) in [
            ([0.2, -0.4, 0.3], [0.1, 0.5, -0.2], [0.7, -0.3, 0.5]),
            ([-0.3, 0.2, 0.1], [0.4, -0.1, 0.3], [-0.2, 0.9, 0.4]),
        ] {
            let n = ars.dim();
            let g = point(chart.as_ref(), &a, &b);
            let p = covector_from_algebra(chart.as_ref(), &g, &lam[..n]);
            let s = ExtremalState::new(g.clone(), p.clone());
            let (gd, pd) = extremal_rhs(&ars, &s).unwrap();
            let h = 1e-6;
            let gp: Vec<f64> = g.iter().zip(&gd).map(|(x, v)| x + h * v).collect();
            let gm: Vec<f64> = g.iter().zip(&gd).map(|(x, v)| x - h * v).collect();
            let lp = chart.left_jacobian(&gp).transpose().mul_vec(&p);
            let lm = chart.left_jacobian(&gm).transpose().mul_vec(&p);
            let lt = chart.left_jacobian(&g).transpose().mul_vec(&pd);
            let chain: Vec<f64> = (0..n).map(|k| (lp[k] - lm[k]) / (2.0 * h) + lt[k]).collect();
            let direct = algebra_covector_rhs(&ars, &g, &s.lambda(&ars)).unwrap();
            assert!(
                dist(&chain, &direct.coeffs) <= 1e-7,
                "{name}: {chain:?} vs {:?}",
                direct.coeffs
            );
        }
    }
}

#[test]
fn algebra_covector_rhs_matches_trajectory_differences() {
    let ars = fixtures::aff2_locus();
    let s = ExtremalState::new(vec![1.2, 0.3], vec![0.5, -0.8]);
    let tr = integrate(&ars, &s, 1.0, &opts(), &[]).unwrap();
    let h = tr.step;
    // five-point stencil so the truncation error sits well below the tolerance
    for i in (2..tr.samples.len() - 2).step_by(97) {
        let l = |k: usize| tr.samples[k].state.lambda(&ars).coeffs;
        let (a, b, c, d) = (l(i + 1), l(i - 1), l(i + 2), l(i - 2));
        let fd: Vec<f64> = (0..a.len())
            .map(|k| (8.0 * (a[k] - b[k]) - (c[k] - d[k])) / (12.0 * h))
            .collect();
        let smp = &tr.samples[i].state;
        let direct = algebra_covector_rhs(&ars, &smp.g, &smp.lambda(&ars)).unwrap();
        let e = dist(&fd, &direct.coeffs);
        assert!(e <= 1e-6, "{i}: {e:e}");
    }
}

#[test]
fn closed_form_matches_numeric_for_twenty_pairs() {
    let ars = fixtures::aff2_geodesic();
    let qs = [0.2, 0.5, 0.8, 0.95, 1.0, 1.05, 1.5, 2.0, 3.0, 5.0];
    let mut pairs = 0;
    for eps in [1.0, -1.0] {
        for q in qs {
            let cf = ClosedFormGeodesic::new(eps, q, 0.0).unwrap();
            let t_end = cf.first_return().map_or(3.0, |r| 0.9 * r.t);
            let tr = integrate(&ars, &aff2_start(eps, q), t_end, &opts(), &[]).unwrap();
            let mut worst: f64 = 0.0;
            for smp in &tr.samples {
                let c = cf.eval(smp.t);
                worst = worst
                    .max((smp.state.g[0] - c.x).abs())
                    .max((smp.state.g[1] - c.dy).abs());
            }
            assert!(worst <= 1e-6, "ε = {eps}, q = {q}: {worst:e}");
            pairs += 1;
        }
    }
    assert_eq!(pairs, 20);
}

#[test]
fn closed_form_cases_and_returns() {
    use std::f64::consts::PI;
    let c = ClosedFormGeodesic::new(1.0, 1.0 + 1e-12, 0.0).unwrap();
    assert_eq!(c.case, Aff2Case::Critical);
    assert_eq!(ClosedFormGeodesic::new(1.0, 0.5, 0.0).unwrap().case, Aff2Case::Below);
    let above = ClosedFormGeodesic::new(-1.0, 2.0, 3.0).unwrap();
    assert_eq!(above.case, Aff2Case::Above);
    assert!((above.theta.unwrap() - (1.0 / 3f64.sqrt()).atan()).abs() <= 1e-15);
    assert_eq!(above.r, -0.5);
    assert!(matches!(
        ClosedFormGeodesic::new(0.5, 1.0, 0.0),
        Err(Error::Validation(_))
    ));

    let p0 = aff2_closed_form(1.0, 2.0, 0.0).unwrap();
    assert_eq!((p0.x, p0.dy, p0.tau, p0.alpha), (1.0, 0.0, 0.0, 0.0));

    let r = first_return(1.0, 0.5).unwrap().unwrap();
    let s = 0.75f64.sqrt();
    assert!((r.t - ((1.0 + s) / (1.0 - s)).ln() / s).abs() <= 1e-14);
    assert!((r.dy - (0.5 * r.t + 4.0 - PI)).abs() <= 1e-14);
    let r = first_return(1.0, 2.0).unwrap().unwrap();
    let theta = (1.0 / 3f64.sqrt()).atan();
    assert!((r.t - (PI - 2.0 * theta) / 3f64.sqrt()).abs() <= 1e-14);
    assert!(first_return(-1.0, 2.0).unwrap().is_some());
}

#[test]
fn return_event_matches_closed_form() {
    let ars = fixtures::aff2_geodesic();
    for (eps, q) in [(1.0, 0.5), (1.0, 2.0), (-1.0, 2.0)] {
        let ret = first_return(eps, q).unwrap().unwrap();
        let events: Vec<EventFn> = vec![Box::new(|_t, g, _p| g[0] - 1.0)];
        let tr = integrate(&ars, &aff2_start(eps, q), ret.t + 0.5, &opts(), &events).unwrap();
        let hit = tr.events.iter().find(|e| e.t > 1e-6).expect("return event");
        assert!((hit.t - ret.t).abs() <= 1e-5, "{eps} {q}: {} vs {}", hit.t, ret.t);
        assert!((hit.state.g[1] - ret.dy).abs() <= 1e-5);
    }
}

#[test]
fn wavefront_at_zero_time_is_the_start_point() {
    for (g0, ars) in [
        (vec![1.0, 0.0], fixtures::aff2_geodesic()),
        (vec![0.3, 0.1, 0.0], fixtures::heisenberg_engel()),
    ] {
        let f = wavefront(&ars, &g0, 0.0, 16, &opts()).unwrap();
        assert!(!f.rays.is_empty());
        assert!(f.rays.iter().all(|r| r.endpoint.as_ref().unwrap().coords == g0));
    }
}

#[test]
fn wavefront_needs_four_rays() {
    let ars = fixtures::grushin();
    assert!(matches!(
        wavefront(&ars, &[0.0, 0.0], 1.0, 3, &opts()),
        Err(Error::Validation(_))
    ));
    assert!(matches!(
        initial_covectors(&ars, &[0.0, 0.0], 0),
        Err(Error::Validation(_))
    ));
}

#[test]
fn wavefront_initial_energy_is_one_half() {
    for (name, ars) in all_fixtures() {
        let chart = ars.chart();
        let g0 = point(chart.as_ref(), &[0.3, -0.2, 0.1], &[0.1, 0.4, 0.2]);
        let e = chart.identity();
        for g in [g0, e] {
            let (_, covs) = initial_covectors(&ars, &g, 12).unwrap();
            assert!(covs.len() >= 12, "{name}");
            for (_, lam) in covs {
                let p = covector_from_algebra(chart.as_ref(), &g, &lam);
                let h = maximized_hamiltonian(&ars, &ExtremalState::new(g.clone(), p)).unwrap();
                assert!((h - 0.5).abs() <= 1e-10, "{name}: H = {h}");
            }
        }
    }
}

#[test]
fn wavefront_is_deterministic_and_ordered() {
    let ars = fixtures::heisenberg_engel();
    let a = wavefront(&ars, &[0.2, 0.0, 0.0], 0.5, 20, &opts()).unwrap();
    let b = wavefront(&ars, &[0.2, 0.0, 0.0], 0.5, 20, &opts()).unwrap();
    assert_eq!(a, b);
    assert!(a.rays.iter().enumerate().all(|(i, r)| r.index == i));
    assert!(!a.singular_start);
    assert!(
        wavefront(&ars, &[0.0, 0.0, 0.0], 0.5, 20, &opts())
            .unwrap()
            .singular_start
    );
}

#[test]
fn aff2_front_is_mirror_symmetric() {
    let ars = fixtures::aff2_geodesic();
    let y0 = 0.7;
    for t in [0.3, 1.0, 2.5] {
        let f = wavefront(&ars, &[1.0, y0], t, 40, &opts()).unwrap();
        assert!(f.singular_start);
        let pts = f.endpoints();
        assert_eq!(pts.len(), f.rays.len());
        for p in &pts {
            let mirrored = [p.coords[0], 2.0 * y0 - p.coords[1]];
            let best = pts
                .iter()
                .map(|q| dist(&q.coords, &mirrored))
                .fold(f64::INFINITY, f64::min);
            assert!(best <= 1e-9, "T = {t}: {best:e}");
        }
    }
}

fn grushin_closed_form(eps: f64, lam: f64, t: f64) -> [f64; 2] {
    if lam.abs() < 1e-12 {
        return [eps * t, 0.0];
    }
    let s = lam * t;
    [eps * s.sin() / lam, (2.0 * s - (2.0 * s).sin()) / (4.0 * lam * lam)]
}

#[test]
fn grushin_front_matches_classical_sphere() {
    let ars = fixtures::grushin();
    let f = wavefront(&ars, &[0.0, 0.0], 1.0, 64, &opts()).unwrap();
    for ray in &f.rays {
        let p = &ray.initial.p;
        let end = grushin_closed_form(p[0].signum(), p[1], 1.0);
        let got = &ray.endpoint.as_ref().unwrap().coords;
        assert!(dist(got, &end) <= 1e-8, "ray {}: {got:?} vs {end:?}", ray.index);
    }
}

#[test]
fn grushin_front_converges_under_ray_doubling() {
    let ars = fixtures::grushin();
    let fronts: Vec<Vec<Vec<f64>>> = [32, 64, 128, 256]
        .iter()
        .map(|&n| {
            wavefront(&ars, &[0.0, 0.0], 1.0, n, &opts())
                .unwrap()
                .endpoints()
                .into_iter()
                .map(|p| p.coords.clone())
                .collect()
        })
        .collect();
    // fine sweep of the closed-form sphere as the reference set
    let dense: Vec<[f64; 2]> = (0..20000)
        .flat_map(|k| {
            let phi = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * (k as f64 + 0.5) / 20000.0;
            [1.0, -1.0].map(|e| grushin_closed_form(e, phi.tan(), 1.0))
        })
        .collect();
    let gap = |front: &Vec<Vec<f64>>| {
        // largest distance from the reference set to the sampled front,
        // restricted to the part of the sphere with |λ| ≤ 8
        dense
            .iter()
            .filter(|d| d[0].abs() >= 1.0 / 8.0 || d[1].abs() >= 0.004)
            .map(|d| front.iter().map(|p| dist(p, d)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    let gaps: Vec<f64> = fronts.iter().map(gap).collect();
    for w in gaps.windows(2) {
        assert!(w[1] < w[0], "{gaps:?}");
    }
}

#[test]
fn abnormal_examples() {
    let h = fixtures::heisenberg_engel();
    let times: Vec<f64> = (-20..=20).map(|k| k as f64 * 0.1).collect();
    for y0 in [-1.0, 0.0, 2.0] {
        let d = abnormal_description(&h, &[0.0, y0, 0.0]).unwrap();
        assert!(!d.is_trivial());
        assert!(d.statement.contains("absolutely continuous"));
        for xi in &d.basis {
            for g in d.coset_curve(&h, xi, &times).unwrap() {
                assert_eq!(g.coords[0], 0.0);
                assert_eq!(g.coords[1], y0);
                assert!(psi(&h, &g.coords).unwrap().abs() <= 1e-9);
            }
            assert_eq!(d.c_coefficient(&h, xi).unwrap(), 0.0);
            assert_eq!(d.covector_scale(&h, xi, 1.5, 3.0).unwrap(), 1.5);
        }
    }
    assert!(matches!(
        abnormal_description(&h, &[0.5, 0.0, 0.0]),
        Err(Error::Validation(_))
    ));
    let d = abnormal_description(&h, &[0.0, 0.0, 0.0]).unwrap();
    let outside = AlgebraVector::new(vec![1.0, 0.0, 0.0]);
    assert!(matches!(d.c_coefficient(&h, &outside), Err(Error::Validation(_))));
    assert!(d.coset_curve(&h, &AlgebraVector::new(vec![0.0, 1.0]), &[0.0]).is_err());

    let a = fixtures::aff2_geodesic();
    let d = abnormal_description(&a, &[1.0, 0.4]).unwrap();
    assert!(d.is_trivial());
    assert!(d.statement.contains("constant"));
}

#[test]
fn abnormal_curves_stay_in_locus_on_all_fixtures() {
    let times: Vec<f64> = (-10..=10).map(|k| k as f64 * 0.15).collect();
    for (name, ars) in all_fixtures() {
        let pts = sample_locus(&ars, &ars.chart().default_box(), 5).unwrap();
        for g0 in pts.iter().step_by(7).take(6) {
            let d = abnormal_description(&ars, &g0.coords).unwrap();
            for xi in &d.basis {
                let c = d.c_coefficient(&ars, xi).unwrap();
                let p = d.covector_scale(&ars, xi, 2.0, 0.5).unwrap();
                assert!((p - 2.0 * (0.5 * c).exp()).abs() <= 1e-15);
                for g in d.coset_curve(&ars, xi, &times).unwrap() {
                    let v = psi(&ars, &g.coords).unwrap().abs();
                    assert!(v <= 1e-9, "{name}: |ψ| = {v:e} at {:?}", g.coords);
                }
            }
        }
    }
}

#[test]
fn pendulum_linear_growth_when_r_vanishes() {
    let ars = fixtures::heisenberg_engel();
    let q = 0.8;
    let s = ExtremalState::new(vec![0.0, 0.0, 0.0], vec![1.0, q, 0.0]);
    let rep = heisenberg_pendulum(&ars, &s, 5.0, &opts()).unwrap();
    assert_eq!(rep.alpha[0], 0.0);
    assert_eq!(rep.alpha_full[0], 0.0);
    assert!(rep.max_deviation <= 1e-8, "{}", rep.max_deviation);
    for (t, a) in rep.times.iter().zip(&rep.alpha) {
        assert!((a - q * t).abs() <= 1e-8);
    }
}

#[test]
fn pendulum_generic_case() {
    let ars = fixtures::heisenberg_engel();
    for (q, r) in [(0.7, 0.5), (-1.1, 0.9), (0.3, -1.4)] {
        let s = ExtremalState::new(vec![0.0, 0.5, -0.2], vec![1.0, q, r]);
        let rep = heisenberg_pendulum(&ars, &s, 5.0, &opts()).unwrap();
        assert_eq!(rep.c, 1.0);
        assert!(rep.max_deviation <= 1e-7, "{q} {r}: {}", rep.max_deviation);
        assert!(rep.pendulum_residual <= 1e-6, "{q} {r}: {}", rep.pendulum_residual);
        assert!(rep.max_drift <= 1e-8);
    }
}

#[test]
fn pendulum_rejects_degenerate_input() {
    let ars = fixtures::heisenberg_engel();
    let s = ExtremalState::new(vec![0.0, 0.0, 0.0], vec![0.0, 1.0, 1.0]);
    assert!(matches!(
        heisenberg_pendulum(&ars, &s, 1.0, &opts()),
        Err(Error::Validation(_))
    ));
    let other = fixtures::heisenberg_subalgebra();
    let s = ExtremalState::new(vec![0.0, 0.0, 0.0], vec![1.0, 1.0, 1.0]);
    assert!(matches!(
        heisenberg_pendulum(&other, &s, 1.0, &opts()),
        Err(Error::Validation(_))
    ));
    assert!(matches!(
        heisenberg_pendulum(&fixtures::aff2_geodesic(), &aff2_start(1.0, 1.0), 1.0, &opts()),
        Err(Error::Validation(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn energy_and_conserved_components(lam in prop::collection::vec(-1.0f64..1.0, 3), a in prop::collection::vec(-0.5f64..0.5, 3)) {
        let h = fixtures::heisenberg_engel();
        let chart = h.chart();
        let g = chart.exp_map(&a);
        let p = covector_from_algebra(chart.as_ref(), &g, &lam);
        let tr = integrate(&h, &ExtremalState::new(g, p.clone()), 4.0, &opts(), &[]).unwrap();
        prop_assert!(tr.max_drift <= 1e-8);
        for smp in &tr.samples {
            prop_assert_eq!(smp.state.p[1], p[1]);
            prop_assert_eq!(smp.state.p[2], p[2]);
        }

        let aff = fixtures::aff2_geodesic();
        let ga = vec![a[0].exp(), a[1]];
        let pa = vec![lam[0], lam[1]];
        let tr = integrate(&aff, &ExtremalState::new(ga, pa.clone()), 4.0, &opts(), &[]).unwrap();
        prop_assert!(tr.max_drift <= 1e-8);
        prop_assert!(tr.samples.iter().all(|s| s.state.p[1] == pa[1]));
    }
}
