use arslie::desing::*;
use arslie::extremals::{
    extremal_rhs, integrate, maximized_hamiltonian, normal_controls, ControlFrame, ExtremalState, IntegrateOptions,
};
use arslie::fixtures;
use arslie::group_models::{covector_from_algebra, expm, GroupChart};
use arslie::lie_core::{bracket_span, qi, AlgebraVector, Mat, Subspace};
use num_rational::Rational64;
use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn mat_dist(a: &Mat<f64>, b: &Mat<f64>) -> f64 {
    dist(a.row_major(), b.row_major())
}

fn all_lifts() -> Vec<(&'static str, LiftedStructure)> {
    fixtures::names()
        .into_iter()
        .map(|n| (n, lift(&fixtures::by_name(n).unwrap()).unwrap()))
        .collect()
}

fn lifted_point(chart: &LiftedChart, a: &[f64]) -> Vec<f64> {
    let n = chart.base().dim();
    let mut y = a[..n].to_vec();
    y.push(a[3]);
    let mut g = chart.base().exp_map(&y[..n]);
    g.push(y[n]);
    g
}

#[test]
fn lifted_bracket_satisfies_jacobi_exactly() {
    for (name, l) in all_lifts() {
        let ex = l.exact_lifted_algebra().expect("fixtures carry exact data");
        assert_eq!(ex.jacobi_residual(), qi(0), "{name}");
        assert!(l.lifted_algebra().jacobi_residual() <= 1e-12, "{name}");
        assert_eq!(l.dim(), l.base().dim() + 1);
    }
}

#[test]
fn engel_lift_bracket_table() {
    let l = lift(&fixtures::heisenberg_engel()).unwrap();
    let a = l.exact_lifted_algebra().unwrap();
    assert_eq!(a.labels().last().unwrap(), LIFT_LABEL);
    let e = |i| AlgebraVector::<Rational64>::basis(4, i);
    // basis X, Y, Z, X̃: only [X, Y] = Z and [X, X̃] = Y survive
    for i in 0..4 {
        for j in 0..4 {
            let b = a.bracket(&e(i), &e(j)).unwrap();
            let expected = match (i, j) {
                (0, 1) => e(2),
                (1, 0) => e(2).scale(&qi(-1)),
                (0, 3) => e(1),
                (3, 0) => e(1).scale(&qi(-1)),
                _ => AlgebraVector::zero(4),
            };
            assert_eq!(b, expected, "[e{i}, e{j}]");
        }
    }
    // X̃, X, Y, Z is a filiform chain: growth 2, 3, 4 from span{X, X̃}
    let mut cur = Subspace::span(4, &[e(0), e(3)]);
    let gen = cur.clone();
    let mut growth = vec![cur.dim()];
    while !cur.is_full() {
        cur = cur.sum(&bracket_span(&a, &gen, &cur));
        growth.push(cur.dim());
    }
    assert_eq!(growth, vec![2, 3, 4]);
}

#[test]
fn grushin_lift_is_heisenberg() {
    let l = lift(&fixtures::grushin()).unwrap();
    let a = l.exact_lifted_algebra().unwrap();
    let e = |i| AlgebraVector::<Rational64>::basis(3, i);
    assert_eq!(a.bracket(&e(0), &e(2)).unwrap(), e(1));
    assert!(a.bracket(&e(0), &e(1)).unwrap().is_negligible());
    assert!(a.bracket(&e(1), &e(2)).unwrap().is_negligible());
    // center spanned by e₁ and [A, B] for the generators A = e₀, B = X̃
    let d = arslie::lie_core::derived_subalgebra(&a);
    assert!(d.same_as(&Subspace::span(3, &[e(1)])));
}

#[test]
fn lifted_frame_has_full_rank_everywhere() {
    let mut rng = StdRng::seed_from_u64(17);
    for (name, l) in all_lifts() {
        let chart = l.chart();
        let n = l.base().dim();
        let mut checked = 0;
        while checked < 1000 / 14 + 1 {
            let a: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.5..1.5)).collect();
            let g = lifted_point(chart, &a);
            if chart.validate(&g).is_err() {
                continue;
            }
            assert_eq!(l.frame_rank(&g).unwrap(), n, "{name} at {g:?}");
            checked += 1;
        }
    }
}

#[test]
fn lifted_frame_rank_on_the_base_locus() {
    // the base frame drops rank on 𝒵; the lift does not
    let base = fixtures::heisenberg_engel();
    let l = lift(&base).unwrap();
    for y in [-1.0, 0.0, 2.0] {
        for tau in [-0.5, 0.0, 0.7] {
            assert_eq!(l.frame_rank(&[0.0, y, 1.0, tau]).unwrap(), 3);
        }
    }
}

#[test]
fn lifted_hamiltonian_formula() {
    let base = fixtures::heisenberg_engel();
    let l = lift(&base).unwrap();
    let (x, p, q, r, s) = (0.6, 0.4, -0.9, 1.2, 0.35);
    let st = ExtremalState::new(vec![x, -0.2, 0.5, 3.0], vec![p, q, r, s]);
    let v = s + q * x + 0.5 * r * x * x;
    let c = normal_controls(l.as_frame(), &st).unwrap();
    assert!(dist(&c, &[v, p, r]) <= 1e-15);
    let h = maximized_hamiltonian(l.as_frame(), &st).unwrap();
    assert!((h - 0.5 * (v * v + p * p + r * r)).abs() <= 1e-15);
    let (gd, pd) = extremal_rhs(l.as_frame(), &st).unwrap();
    assert!((gd[3] - v).abs() <= 1e-15);
    assert_eq!(pd[3], 0.0);
}

trait AsFrame {
    fn as_frame(&self) -> &dyn ControlFrame;
}

impl AsFrame for LiftedStructure {
    fn as_frame(&self) -> &dyn ControlFrame {
        self
    }
}

#[test]
fn tau_covector_is_conserved_along_trajectories() {
    for (name, l) in all_lifts() {
        let chart = l.chart();
        let base = l.base().chart();
        let g0 = lifted_point(chart, &[0.2, -0.1, 0.3, 0.4]);
        let m = base.coord_dim();
        let mut p: Vec<f64> = (0..m).map(|i| 0.3 - 0.2 * i as f64).collect();
        p.push(0.45);
        let tr = integrate(&l, &ExtremalState::new(g0, p), 1.5, &IntegrateOptions::default(), &[]).unwrap();
        assert!(tr.samples.iter().all(|s| s.state.p[m] == 0.45), "{name}");
        assert!(tr.max_drift <= 1e-8, "{name}");
    }
}

#[test]
fn zero_s_lift_projects_onto_the_base_extremal() {
    for (name, l) in all_lifts() {
        let base = l.base();
        let chart = base.chart();
        let n = base.dim();
        let g = chart.exp_map(&[0.3, 0.1, -0.2][..n]);
        let lam = [0.6, -0.4, 0.5];
        let p = covector_from_algebra(chart.as_ref(), &g, &lam[..n]);
        let st = ExtremalState::new(g, p);
        let lifted = l.lifted_state(&st, 0.25, 0.0);

        let (gb, pb) = extremal_rhs(base, &st).unwrap();
        let (gl, pl) = extremal_rhs(&l, &lifted).unwrap();
        let m = gb.len();
        assert!(dist(&gb, &gl[..m]) <= 1e-12, "{name}");
        assert!(dist(&pb, &pl[..m]) <= 1e-12, "{name}");

        let o = IntegrateOptions::default();
        let tb = integrate(base, &st, 2.0, &o, &[]).unwrap();
        let tl = integrate(&l, &lifted, 2.0, &o, &[]).unwrap();
        let proj = project(&l, &tl).unwrap();
        assert_eq!(proj.s, 0.0);
        assert_eq!(proj.base.samples.len(), tb.samples.len());
        for (a, b) in proj.base.samples.iter().zip(&tb.samples) {
            assert!(dist(&a.state.g, &b.state.g) <= 1e-9, "{name} at t = {}", a.t);
        }
        assert!((proj.tau_increment - proj.v_integral).abs() <= TAU_TOL);
        assert!((proj.projected_length - proj.lifted_length).abs() <= LENGTH_TOL);
        assert!(proj.min_norm_length <= proj.lifted_length + LENGTH_TOL);
    }
}

#[test]
fn projection_through_the_locus() {
    // s ≠ 0 lets the projected curve run through 𝒵 = {x = 0}
    let l = lift(&fixtures::heisenberg_engel()).unwrap();
    let st = l.lifted_state(
        &ExtremalState::new(vec![-0.5, 0.0, 0.0], vec![1.0, 0.3, -0.4]),
        0.0,
        0.8,
    );
    let tr = integrate(&l, &st, 2.0, &IntegrateOptions::default(), &[]).unwrap();
    assert!(tr.samples.iter().any(|s| s.state.g[0] > 0.0));
    let proj = project(&l, &tr).unwrap();
    assert_eq!(proj.s, 0.8);
    assert_eq!(proj.tau.len(), proj.base.samples.len());
    assert!((proj.tau_increment - proj.v_integral).abs() <= TAU_TOL);
    // the base frame reproduces the lifted velocity, so no shorter controls exist
    assert!(proj.min_norm_length <= proj.lifted_length + LENGTH_TOL);

    // Aff₊(2): the projected velocity is v𝒳 + uY₁
    let l = lift(&fixtures::aff2_geodesic()).unwrap();
    let st = l.lifted_state(&ExtremalState::new(vec![1.5, 0.0], vec![0.5, 0.7]), 0.0, -0.3);
    let tr = integrate(&l, &st, 1.0, &IntegrateOptions::default(), &[]).unwrap();
    let proj = project(&l, &tr).unwrap();
    for smp in &proj.base.samples {
        let x = smp.state.g[0];
        let c = &smp.controls;
        let lifted = tr.samples.iter().find(|s| s.t == smp.t).unwrap();
        let (gd, _) = extremal_rhs(&l, &lifted.state).unwrap();
        let recon = [c[1] * x, c[0] * (x - 1.0)];
        assert!(dist(&gd[..2], &recon) <= 1e-12);
    }
}

#[test]
fn zero_covector_keeps_tau_constant() {
    let l = lift(&fixtures::aff2_locus()).unwrap();
    let st = ExtremalState::new(vec![1.3, 0.2, -0.7], vec![0.0, 0.0, 0.0]);
    let tr = integrate(&l, &st, 1.0, &IntegrateOptions::default(), &[]).unwrap();
    let proj = project(&l, &tr).unwrap();
    assert!(proj.tau.iter().all(|t| *t == -0.7));
    assert_eq!(proj.tau_increment, 0.0);
}

#[test]
fn project_rejects_base_trajectories() {
    let base = fixtures::aff2_geodesic();
    let l = lift(&base).unwrap();
    let tr = integrate(
        &base,
        &ExtremalState::new(vec![1.0, 0.0], vec![1.0, 0.5]),
        0.5,
        &IntegrateOptions::default(),
        &[],
    )
    .unwrap();
    assert!(project(&l, &tr).is_err());
}

#[test]
fn lifted_chart_rejects_bad_points() {
    let l = lift(&fixtures::aff2_geodesic()).unwrap();
    let c = l.chart();
    assert!(c.validate(&[1.0, 0.0]).is_err());
    assert!(c.validate(&[-1.0, 0.0, 0.0]).is_err());
    assert!(c.validate(&[1.0, 0.0, f64::INFINITY]).is_err());
    assert!(c.validate(&[1.0, 0.0, 2.0]).is_ok());
}

#[test]
fn lifted_left_jacobian_matches_left_translation() {
    // d/dh (g · exp(hY))|₀ against L̃(g)Y
    for (name, l) in all_lifts() {
        let c = l.chart();
        let g = lifted_point(c, &[0.3, -0.2, 0.1, 0.4]);
        let n = l.dim();
        let y: Vec<f64> = [0.5, -0.3, 0.2, 0.7][4 - n..].to_vec();
        let h = 1e-5;
        let step = |s: f64| {
            let ys: Vec<f64> = y.iter().map(|v| s * v).collect();
            c.multiply(&g, &c.exp_map(&ys))
        };
        let (a, b) = (step(h), step(-h));
        let fd: Vec<f64> = a.iter().zip(&b).map(|(x, z)| (x - z) / (2.0 * h)).collect();
        let direct = c.left_jacobian(&g).mul_vec(&y);
        assert!(dist(&fd, &direct) <= 1e-6, "{name}: {fd:?} vs {direct:?}");
        let back = c.to_algebra(&g, &direct);
        assert!(dist(&back, &y) <= 1e-12, "{name}");
    }
}

fn small() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-0.6f64..0.6, 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn lifted_group_axioms(a in small(), b in small(), cc in small()) {
        for (name, l) in all_lifts() {
            let c = l.chart();
            let (g, h, k) = (lifted_point(c, &a), lifted_point(c, &b), lifted_point(c, &cc));
            let lhs = c.multiply(&c.multiply(&g, &h), &k);
            let rhs = c.multiply(&g, &c.multiply(&h, &k));
            prop_assert!(dist(&lhs, &rhs) <= 1e-9, "{}: associativity", name);
            let e = c.identity();
            prop_assert!(dist(&c.multiply(&g, &e), &g) <= 1e-12);
            prop_assert!(dist(&c.multiply(&e, &g), &g) <= 1e-12);
            prop_assert!(dist(&c.multiply(&g, &c.inverse(&g)), &e) <= 1e-9, "{}: inverse", name);
        }
    }

    #[test]
    fn lifted_adjoint_is_a_homomorphism(a in small(), b in small()) {
        for (name, l) in all_lifts() {
            let c = l.chart();
            let (g, h) = (lifted_point(c, &a), lifted_point(c, &b));
            let lhs = c.adjoint(&c.multiply(&g, &h));
            let rhs = c.adjoint(&g).mul(&c.adjoint(&h));
            prop_assert!(mat_dist(&lhs, &rhs) <= 1e-8, "{}", name);
        }
    }

    #[test]
    fn lifted_adjoint_of_exp(a in small()) {
        for (name, l) in all_lifts() {
            let c = l.chart();
            let n = l.dim();
            let y = a[4 - n..].to_vec();
            let g = c.exp_map(&y);
            let ad = l.lifted_algebra().ad(&AlgebraVector::new(y.clone()));
            prop_assert!(mat_dist(&c.adjoint(&g), &expm(&ad)) <= 1e-8, "{}", name);
        }
    }
}
