use arslie::ars::*;
use arslie::fixtures;
use arslie::group_models::{GroupChart, GroupKind};
use arslie::lie_core::{invariant_core, qi, AlgebraVector, DerivationMatrix, Subspace};
use arslie::Error;
use num_rational::Rational64;
use proptest::prelude::*;

fn vq(c: &[i64]) -> AlgebraVector<Rational64> {
    AlgebraVector::new(c.iter().map(|&x| qi(x)).collect())
}

fn dq(n: usize, rows: &[i64]) -> DerivationMatrix<Rational64> {
    DerivationMatrix::from_row_major(n, rows.iter().map(|&x| qi(x)).collect()).unwrap()
}

fn exact(kind: GroupKind, d: &[i64], delta: &[&[i64]]) -> arslie::Result<SimpleArs> {
    let n = kind.dim();
    build_ars_exact(kind.chart(), dq(n, d), delta.iter().map(|r| vq(r)).collect())
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

#[test]
fn grushin_builds_with_vertical_locus() {
    let g = fixtures::grushin();
    for y in [-1.0, 0.0, 2.5] {
        assert_eq!(psi(&g, &[0.0, y]).unwrap(), 0.0);
        assert!(psi(&g, &[0.3, y]).unwrap().abs() > 0.1);
    }
    let built = build_ars(
        GroupKind::Euclidean(2).chart(),
        DerivationMatrix::from_row_major(2, vec![0.0, 0.0, 1.0, 0.0]).unwrap(),
        vec![AlgebraVector::new(vec![1.0, 0.0])],
    )
    .unwrap();
    assert_eq!(psi(&built, &[0.7, 3.0]).unwrap(), psi(&g, &[0.7, 3.0]).unwrap());
}

#[test]
fn rank_condition_failures_are_rejected() {
    // Δ = span{X, Z} with DX ∈ Δ (c = 0)
    let r = exact(
        GroupKind::Heisenberg,
        &[1, 0, 0, 0, 2, 0, 3, 1, 3],
        &[&[1, 0, 0], &[0, 0, 1]],
    );
    assert!(matches!(r, Err(Error::Validation(m)) if m.contains("rank condition")));
    // Δ closed under D and brackets in ℝ³
    let r = exact(
        GroupKind::Euclidean(3),
        &[1, 0, 0, 0, 1, 0, 0, 0, 1],
        &[&[1, 0, 0], &[0, 1, 0]],
    );
    assert!(matches!(r, Err(Error::Validation(_))));
    let r = exact(GroupKind::Euclidean(2), &[0, 0, 0, 0], &[&[1, 0]]);
    assert!(matches!(r, Err(Error::Validation(_))));
}

#[test]
fn malformed_inputs_are_rejected() {
    let dependent = exact(
        GroupKind::Heisenberg,
        &[0, 0, 0, 1, 0, 0, 0, 0, 0],
        &[&[1, 0, 0], &[2, 0, 0]],
    );
    assert!(matches!(dependent, Err(Error::Validation(_))));
    let count = exact(GroupKind::Heisenberg, &[0, 0, 0, 1, 0, 0, 0, 0, 0], &[&[1, 0, 0]]);
    assert!(matches!(count, Err(Error::Validation(_))));
    let not_derivation = exact(
        GroupKind::Heisenberg,
        &[1, 0, 0, 0, 0, 0, 0, 0, 0],
        &[&[1, 0, 0], &[0, 1, 0]],
    );
    assert!(matches!(not_derivation, Err(Error::Validation(m)) if m.contains("derivation")));
    let wrong_size = build_ars(
        GroupKind::Aff2.chart(),
        DerivationMatrix::zero(3),
        vec![AlgebraVector::new(vec![1.0, 0.0])],
    );
    assert!(matches!(wrong_size, Err(Error::Validation(_))));
}

#[test]
fn zero_derivation_is_rejected_even_when_brackets_fill() {
    // Δ + [Δ,Δ] = 𝔤, but ψ vanishes identically
    let h = exact(GroupKind::Heisenberg, &[0; 9], &[&[1, 0, 0], &[0, 1, 0]]);
    assert!(matches!(h, Err(Error::Validation(m)) if m.contains("singular everywhere")));
    let s = exact(GroupKind::Sl2, &[0; 9], &[&[0, 1, 0], &[0, 0, 1]]);
    assert!(matches!(s, Err(Error::Validation(m)) if m.contains("singular everywhere")));
}

#[test]
fn psi_vanishes_at_identity_for_every_fixture() {
    for (name, ars) in all_fixtures() {
        let e = ars.chart().identity();
        assert_eq!(psi(&ars, &e).unwrap(), 0.0, "{name}");
        assert!(in_locus(&ars, &e).unwrap());
    }
}

#[test]
fn heisenberg_planar_psi_formula() {
    let (a, b, c, d, e, f) = (1i64, 2, -1, 3, 2, -2);
    let ars = fixtures::heisenberg_planar([qi(a), qi(b), qi(c), qi(d), qi(e), qi(f)]).unwrap();
    let (a, b, c, d, e, f) = (a as f64, b as f64, c as f64, d as f64, e as f64, f as f64);
    let formula = |x: f64, y: f64, z: f64| e * x + f * y + (a + d) * z - 0.5 * c * x * x + 0.5 * b * y * y - d * x * y;
    let g0 = [0.3, -0.4, 0.8];
    let k = psi(&ars, &g0).unwrap() / formula(g0[0], g0[1], g0[2]);
    assert!(k.abs() > 1e-3);
    for g in [[1.0, 2.0, -1.0], [-0.7, 0.1, 0.4], [2.0, -1.5, 3.0]] {
        let lhs = psi(&ars, &g).unwrap();
        assert!((lhs - k * formula(g[0], g[1], g[2])).abs() <= 1e-12 * (1.0 + lhs.abs()));
    }
}

#[test]
fn sl2_borel_locus_is_a_equal_plus_minus_one() {
    let ars = fixtures::sl2_borel();
    for a in [1.0f64, -1.0] {
        for b in [-2.0, -0.5, 0.0, 1.5] {
            for c in [-1.0, 0.25, 2.0] {
                let g = [a, b, c, (1.0 + b * c) / a];
                assert!(in_locus(&ars, &g).unwrap(), "{g:?}");
            }
        }
    }
    for a in [0.5f64, 2.0, -3.0] {
        let g = [a, 0.7, 0.0, 1.0 / a];
        assert!(normalized_psi(&ars, &g).unwrap() >= 1e-3, "{g:?}");
    }
    let pts = sample_locus(&ars, &ars.chart().default_box(), 20).unwrap();
    assert!(!pts.is_empty());
    for p in &pts {
        assert!((p.coords[0].abs() - 1.0).abs() <= 1e-6, "{:?}", p.coords);
    }
}

#[test]
fn grad_psi_at_identity_is_dual_form() {
    for (name, ars) in all_fixtures() {
        let e = ars.chart().identity();
        let grad = grad_psi(&ars, &e).unwrap();
        let expected = ars.derivation().dual(ars.omega());
        for (x, y) in grad.coeffs.iter().zip(&expected.coeffs) {
            assert!((x - y).abs() <= 1e-15, "{name}");
        }
    }
}

#[test]
fn tangent_case_psi_singular_on_line() {
    // a = 1, c = 0: ψ = y + ½by² + xy is critical along (−1, 0, z)
    let ars = fixtures::heisenberg_tangent(1, 1, 0);
    for z in [-2.0, 0.0, 1.3] {
        let g = [-1.0, 0.0, z];
        assert!(psi(&ars, &g).unwrap().abs() <= 1e-15);
        assert!(grad_psi(&ars, &g).unwrap().max_abs() <= 1e-15);
    }
}

#[test]
fn tangent_case_f_leaves_invariant_core() {
    let ars = fixtures::heisenberg_tangent(1, 1, 0);
    let rep = classify_locus(&ars);
    assert!(rep.hz_holds());
    let alg = ars.algebra();
    let core = invariant_core(alg, &rep.kernel, &ars.delta());
    let b = 1.0;
    for y in [0.5, -1.0, 2.0] {
        let g = [-1.0 - b * y / 2.0, y, 0.3];
        assert!(in_locus(&ars, &g).unwrap());
        let f = ars.field().f_unchecked(&g);
        assert!(!core.contains(&f), "F(g) ∈ δ at y = {y}");
    }
    let e = ars.chart().identity();
    assert!(core.contains(&ars.field().f_unchecked(&e)));
}

#[test]
fn classification_examples() {
    let aff = classify_locus(&fixtures::aff2_locus());
    assert!(aff.solvable && aff.delta_subalgebra);
    assert!(aff.applies(verdict_id::SOLVABLE));

    let sl2 = classify_locus(&fixtures::sl2_borel());
    assert!(sl2.applies(verdict_id::SUBMANIFOLD));
    assert!(!sl2.applies(verdict_id::SOLVABLE));
    assert!(!sl2.kernel_subalgebra);
    assert!(sl2.applies(verdict_id::NECESSARY_HZ));
    let note = &sl2.verdict(verdict_id::NECESSARY_HZ).unwrap().conclusion;
    assert!(note.contains("cannot be a codimension-one subgroup"), "{note}");

    let sl2b = classify_locus(&fixtures::sl2_off_diagonal());
    assert!(sl2b.applies(verdict_id::LOCAL_SUBGROUP));
    assert!(sl2b.hz_holds());

    let e3 = classify_locus(&fixtures::euclidean3());
    assert!(e3.applies(verdict_id::IDEAL));
    assert_eq!(e3.kernel.dim(), 2);

    let c1 = classify_locus(&fixtures::heisenberg_tangent(1, 1, 1));
    assert!(c1.applies(verdict_id::NECESSARY_HZ));
    assert!(c1
        .verdict(verdict_id::NECESSARY_HZ)
        .unwrap()
        .conclusion
        .contains("FAILS"));
}

#[test]
fn verdicts_cover_each_result_once_and_stay_consistent() {
    for (name, ars) in all_fixtures() {
        let rep = classify_locus(&ars);
        assert_eq!(rep.verdicts.len(), verdict_id::ALL.len(), "{name}");
        for id in verdict_id::ALL {
            assert_eq!(rep.verdicts.iter().filter(|v| v.id == id).count(), 1, "{name} {id}");
        }
        assert!(rep.internally_consistent, "{name}");
        assert!(rep.exact, "{name}");
        if rep.applies(verdict_id::IDEAL) || rep.applies(verdict_id::SOLVABLE) {
            assert!(rep.hz_holds(), "{name}");
        }
    }
}

#[test]
fn abnormal_algebra_examples() {
    // spanned by the second frame vector Y₂ = Z: the vertical direction
    let engel = fixtures::heisenberg_engel();
    let h = abnormal_algebra(&engel).unwrap();
    assert!(h.same_as(&Subspace::span(3, &[AlgebraVector::new(vec![0.0, 0.0, 1.0])])));
    assert!(h.same_as(&Subspace::span(3, &engel.delta_basis()[1..])));
    assert!(abnormal_algebra(&fixtures::aff2_geodesic()).unwrap().is_zero());
    assert_eq!(abnormal_algebra(&fixtures::heisenberg_subalgebra()).unwrap().dim(), 1);
}

#[test]
fn abnormal_algebra_properties_on_fixtures() {
    for (name, ars) in all_fixtures() {
        let a = abnormal_algebra(&ars).unwrap();
        let n = ars.dim();
        let delta = ars.delta();
        assert!(a.dim() + 2 <= n, "{name}");
        assert!(delta.contains_subspace(&a), "{name}");
        for x in a.basis() {
            assert!(delta.contains(&ars.derivation().apply(x)), "{name}");
            for y in delta.basis() {
                assert!(delta.contains(&ars.algebra().bracket(x, y).unwrap()), "{name}");
            }
            for y in a.basis() {
                assert!(a.contains(&ars.algebra().bracket(x, y).unwrap()), "{name}");
            }
        }
        if classify_locus(&ars).delta_subalgebra {
            assert_eq!(a.dim() + 2, n, "{name}");
        }
    }
}

#[test]
fn scaling_omega_scales_psi_and_keeps_verdicts() {
    for (name, ars) in all_fixtures() {
        let base = classify_locus(&ars);
        for c in [-2.5, 0.1] {
            let scaled = ars.with_scaled_omega(c).unwrap();
            let chart = ars.chart();
            for (a, b) in [
                ([0.2, -0.3, 0.1], [0.4, 0.0, -0.2]),
                ([-0.5, 0.6, 0.3], [0.1, 0.2, 0.0]),
            ] {
                let g = point(chart.as_ref(), &a, &b);
                let p = psi(&ars, &g).unwrap();
                assert!(
                    (psi(&scaled, &g).unwrap() - c * p).abs() <= 1e-14 * (1.0 + p.abs()),
                    "{name}"
                );
                assert_eq!(in_locus(&scaled, &g).unwrap(), in_locus(&ars, &g).unwrap(), "{name}");
            }
            let rep = classify_locus(&scaled);
            for id in verdict_id::ALL {
                assert_eq!(rep.applies(id), base.applies(id), "{name} {id} c = {c}");
            }
            assert_eq!(rep.hz_on_kernel, base.hz_on_kernel, "{name}");
        }
    }
    assert!(fixtures::grushin().with_scaled_omega(0.0).is_err());
}

#[test]
fn ideal_branch_locus_is_closed_under_products() {
    for name in ["grushin", "euclidean3", "heisenberg-subalgebra"] {
        let ars = fixtures::by_name(name).unwrap();
        assert!(classify_locus(&ars).applies(verdict_id::IDEAL));
        let pts = sample_locus(&ars, &ars.chart().default_box(), 7).unwrap();
        assert!(pts.len() >= 4, "{name}");
        let chart = ars.chart();
        for g in pts.iter().step_by(3) {
            for h in pts.iter().step_by(5) {
                let gh = chart.multiply(&h.coords, &g.coords);
                assert!(psi(&ars, &gh).unwrap().abs() <= 1e-8, "{name}");
            }
        }
    }
}

#[test]
fn sample_locus_examples() {
    let g = fixtures::grushin();
    let pts = sample_locus(&g, &[(-1.0, 1.0), (-1.0, 1.0)], 11).unwrap();
    assert!(!pts.is_empty());
    assert!(pts.iter().all(|p| p.coords[0].abs() <= 1e-9));

    let par = fixtures::heisenberg_parabolic();
    let pts = sample_locus(&par, &par.chart().default_box(), 9).unwrap();
    assert!(pts.len() > 10);
    for p in &pts {
        let (x, y, z) = (p.coords[0], p.coords[1], p.coords[2]);
        assert!((z - (x * x + x * y)).abs() <= 1e-8, "{:?}", p.coords);
    }

    let quad = fixtures::heisenberg_quadratic(1, -1);
    let pts = sample_locus(&quad, &quad.chart().default_box(), 11).unwrap();
    assert!(!pts.is_empty());
    assert!(pts
        .iter()
        .all(|p| p.coords[0].abs() <= 1e-6 && p.coords[1].abs() <= 1e-6));
}

#[test]
fn sample_locus_is_sorted_and_deterministic() {
    let ars = fixtures::aff2_locus();
    let a = sample_locus(&ars, &ars.chart().default_box(), 15).unwrap();
    let b = sample_locus(&ars, &ars.chart().default_box(), 15).unwrap();
    assert_eq!(a, b);
    for w in a.windows(2) {
        assert!(w[0].coords.partial_cmp(&w[1].coords) == Some(std::cmp::Ordering::Less));
    }
    for p in &a {
        assert!((2.0 * (p.coords[0] - 1.0) + p.coords[1]).abs() <= 1e-8);
    }
    assert!(sample_locus(&ars, &[(0.5, 2.0)], 5).is_err());
    assert!(sample_locus(&ars, &[(0.5, 2.0), (1.0, 0.0)], 5).is_err());
    assert!(sample_locus(&ars, &ars.chart().default_box(), 1).is_err());
}

fn alg3() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn grad_psi_matches_finite_differences(a in alg3(), b in alg3(), y in alg3()) {
        for (name, ars) in all_fixtures() {
            let chart = ars.chart();
            let n = ars.dim();
            let g = point(chart.as_ref(), &a, &b);
            let yv = AlgebraVector::new(y[..n].to_vec());
            let h = 1e-5;
            let at = |s: f64| psi(&ars, &chart.multiply(&g, &chart.exp_map(&yv.scale(&s).coeffs))).unwrap();
            let fd = (at(h) - at(-h)) / (2.0 * h);
            let exact = grad_psi(&ars, &g).unwrap().pair(&yv);
            let scale = grad_psi(&ars, &g).unwrap().max_abs() * yv.max_abs() + 1e-3;
            prop_assert!((fd - exact).abs() <= 1e-6 * scale.max(1.0), "{} {} {}", name, fd, exact);
        }
    }

    #[test]
    fn psi_is_invalid_only_off_chart(x in -2.0f64..2.0, y in -2.0f64..2.0) {
        let ars = fixtures::aff2_locus();
        let r = psi(&ars, &[x, y]);
        prop_assert_eq!(r.is_ok(), x > 0.0);
        if let Ok(v) = r {
            prop_assert!((v.abs() - ((2.0 * (x - 1.0) + y) / x).abs()).abs() <= 1e-12 * (1.0 + v.abs()));
        }
    }
}
