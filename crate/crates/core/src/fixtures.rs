//! Built-in example structures, all with exact rational data.

use num_rational::Rational64;

use crate::ars::{build_ars_exact, SimpleArs};
use crate::error::Result;
use crate::group_models::GroupKind;
use crate::lie_core::{inner_derivation, qi, AlgebraVector, DerivationMatrix, LieAlgebraModel};

fn vecq(c: &[i64]) -> AlgebraVector<Rational64> {
    AlgebraVector::new(c.iter().map(|&x| qi(x)).collect())
}

fn derivation(n: usize, rows: &[i64]) -> DerivationMatrix<Rational64> {
    DerivationMatrix::from_row_major(n, rows.iter().map(|&x| qi(x)).collect()).expect("square")
}

fn build(kind: GroupKind, d: DerivationMatrix<Rational64>, delta: &[&[i64]]) -> Result<SimpleArs> {
    build_ars_exact(kind.chart(), d, delta.iter().map(|r| vecq(r)).collect())
}

/// ℝ² with 𝒳 = x₁∂₂ and Y₁ = ∂₁; ψ = x₁.
pub fn grushin() -> SimpleArs {
    build(GroupKind::Euclidean(2), derivation(2, &[0, 0, 1, 0]), &[&[1, 0]]).expect("valid")
}

/// ℝ³ with 𝒳 = x₁∂₃, Δ = span{e₁, e₂}.
pub fn euclidean3() -> SimpleArs {
    build(
        GroupKind::Euclidean(3),
        derivation(3, &[0, 0, 0, 0, 0, 0, 1, 0, 0]),
        &[&[1, 0, 0], &[0, 1, 0]],
    )
    .expect("valid")
}

/// Aff₊(2) with DX = aY, DY = bY and Y₁ = X + Y.
pub fn aff2_slanted(a: i64, b: i64) -> Result<SimpleArs> {
    build(GroupKind::Aff2, derivation(2, &[0, 0, a, b]), &[&[1, 1]])
}

/// Aff₊(2) with a = 2, b = 1; 𝒵 = {2(x − 1) + y = 0}.
pub fn aff2_locus() -> SimpleArs {
    aff2_slanted(2, 1).expect("valid")
}

/// Aff₊(2) with 𝒳 = (x − 1)∂y (D = −ad Y) and Y₁ = X; 𝒵 = {x = 1}.
pub fn aff2_geodesic() -> SimpleArs {
    build(GroupKind::Aff2, derivation(2, &[0, 0, 1, 0]), &[&[1, 0]]).expect("valid")
}

/// Heisenberg with DX = Y + eZ and Δ = span{X, Z}; 𝒵 = {x = 0}.
pub fn heisenberg_vertical(e: i64) -> SimpleArs {
    build(
        GroupKind::Heisenberg,
        derivation(3, &[0, 0, 0, 1, 0, 0, e, 0, 0]),
        &[&[1, 0, 0], &[0, 0, 1]],
    )
    .expect("valid")
}

/// Subalgebra case, `heisenberg_vertical(1)`.
pub fn heisenberg_subalgebra() -> SimpleArs {
    heisenberg_vertical(1)
}

/// Geodesic and lift fixture, `heisenberg_vertical(0)`: 𝒳 = x∂y + ½x²∂z.
pub fn heisenberg_engel() -> SimpleArs {
    heisenberg_vertical(0)
}

/// Heisenberg with Δ = span{X, Y} and the general derivation
/// `[[a, b, 0], [c, d, 0], [e, f, a+d]]`.
pub fn heisenberg_planar(coeffs: [Rational64; 6]) -> Result<SimpleArs> {
    let [a, b, c, d, e, f] = coeffs;
    let z = qi(0);
    let dm = DerivationMatrix::from_row_major(3, vec![a, b, z, c, d, z, e, f, a + d])?;
    build_ars_exact(
        GroupKind::Heisenberg.chart(),
        dm,
        vec![vecq(&[1, 0, 0]), vecq(&[0, 1, 0])],
    )
}

fn planar(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64) -> Result<SimpleArs> {
    heisenberg_planar([qi(a), qi(b), qi(c), qi(d), qi(e), qi(f)])
}

/// D = [[a, b, 0], [c, −a, 0], [0, 1, 0]], Δ = span{X, Y}: 𝒵 tangent to the
/// plane y = 0 at e.
pub fn heisenberg_tangent(a: i64, b: i64, c: i64) -> SimpleArs {
    planar(a, b, c, -a, 0, 1).expect("valid")
}

/// D = [[0, b, 0], [c, 0, 0], [0, 0, 0]], Δ = span{X, Y}: D*ω = 0 and
/// ψ = ½(by² − cx²).
pub fn heisenberg_quadratic(b: i64, c: i64) -> SimpleArs {
    planar(0, b, c, 0, 0, 0).expect("valid")
}

/// D = [[0, 0, 0], [2, 1, 0], [0, 0, 1]], Δ = span{X, Y}: 𝒵 = {z = x² + xy}.
pub fn heisenberg_parabolic() -> SimpleArs {
    planar(0, 0, 2, 1, 0, 0).expect("valid")
}

fn sl2_inner(generator: &[i64], delta: &[&[i64]]) -> SimpleArs {
    let alg = LieAlgebraModel::<Rational64>::sl2();
    let d = inner_derivation(&alg, &vecq(generator));
    build(GroupKind::Sl2, d, delta).expect("valid")
}

/// SL(2) with D = −ad Y and Δ = span{H, X}; 𝒵 = {a = ±1}.
pub fn sl2_borel() -> SimpleArs {
    sl2_inner(&[0, 0, 1], &[&[1, 0, 0], &[0, 1, 0]])
}

/// SL(2) with D = −ad X and Δ = span{X, Y}; ψ = −cd.
pub fn sl2_off_diagonal() -> SimpleArs {
    sl2_inner(&[0, 1, 0], &[&[0, 1, 0], &[0, 0, 1]])
}

/// Every named fixture used by the classification table.
pub fn catalog() -> Vec<(&'static str, SimpleArs)> {
    vec![
        ("grushin", grushin()),
        ("euclidean3", euclidean3()),
        ("aff2-locus", aff2_locus()),
        ("heisenberg-subalgebra", heisenberg_subalgebra()),
        ("heisenberg-tangent-c1", heisenberg_tangent(1, 1, 1)),
        ("heisenberg-tangent-c0", heisenberg_tangent(1, 1, 0)),
        ("heisenberg-quadratic-point", heisenberg_quadratic(1, -1)),
        ("heisenberg-quadratic-cross", heisenberg_quadratic(1, 1)),
        ("heisenberg-quadratic-plane", heisenberg_quadratic(1, 0)),
        ("heisenberg-parabolic", heisenberg_parabolic()),
        ("sl2-borel", sl2_borel()),
        ("sl2-off-diagonal", sl2_off_diagonal()),
    ]
}

/// Looks up a fixture by the names used in `catalog`, plus `aff2-geodesic`
/// and `heisenberg-engel`.
pub fn by_name(name: &str) -> Option<SimpleArs> {
    match name {
        "aff2-geodesic" => Some(aff2_geodesic()),
        "heisenberg-engel" => Some(heisenberg_engel()),
        _ => catalog().into_iter().find(|(n, _)| *n == name).map(|(_, a)| a),
    }
}

pub fn names() -> Vec<&'static str> {
    let mut v: Vec<&'static str> = catalog().into_iter().map(|(n, _)| n).collect();
    v.extend(["aff2-geodesic", "heisenberg-engel"]);
    v
}
