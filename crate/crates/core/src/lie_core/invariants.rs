//! Subalgebra tests, normalizers, preimages, series, and the two fixed-point
//! iterations behind condition (HZ).

use super::algebra::{AlgebraVector, LieAlgebraModel, OneForm};
use super::derivation::DerivationMatrix;
use super::linalg::kernel;
use super::scalar::Scalar;
use super::subspace::Subspace;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubspaceClass {
    pub is_subalgebra: bool,
    pub is_ideal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Solvability {
    pub solvable: bool,
    pub nilpotent: bool,
}

/// Span of `[a, b]` for a ∈ A, b ∈ B.
pub fn bracket_span<S: Scalar>(alg: &LieAlgebraModel<S>, a: &Subspace<S>, b: &Subspace<S>) -> Subspace<S> {
    let mut out = Vec::with_capacity(a.dim() * b.dim());
    for x in a.basis() {
        for y in b.basis() {
            out.push(alg.bracket_unchecked(x, y));
        }
    }
    Subspace::span(alg.dim(), &out)
}

pub fn derived_subalgebra<S: Scalar>(alg: &LieAlgebraModel<S>) -> Subspace<S> {
    let g = Subspace::full(alg.dim());
    bracket_span(alg, &g, &g)
}

/// `{Y : [Y, Δ] ⊆ Δ}`, as the kernel of Y ↦ (α([Y, b]))_{α ∈ Δ^⊥, b ∈ Δ}.
pub fn normalizer<S: Scalar>(alg: &LieAlgebraModel<S>, delta: &Subspace<S>) -> Subspace<S> {
    let n = alg.dim();
    let ann = delta.annihilator();
    let mut rows = Vec::new();
    for b in delta.basis() {
        // column i of ad(b) is [b, e_i] = −[e_i, b]
        let adb = alg.ad(b);
        for alpha in &ann {
            rows.push(
                (0..n)
                    .map(|i| -alpha.pair(&AlgebraVector::new(adb.column(i))))
                    .collect(),
            );
        }
    }
    let k: Vec<AlgebraVector<S>> = kernel(&rows, n).into_iter().map(AlgebraVector::new).collect();
    Subspace::span(n, &k)
}

/// `D⁻¹Δ = {Y : DY ∈ Δ}`.
pub fn preimage<S: Scalar>(d: &DerivationMatrix<S>, delta: &Subspace<S>) -> Subspace<S> {
    let forms: Vec<OneForm<S>> = delta.annihilator().iter().map(|a| d.dual(a)).collect();
    Subspace::from_equations(d.dim(), &forms)
}

pub fn image<S: Scalar>(d: &DerivationMatrix<S>, v: &Subspace<S>) -> Subspace<S> {
    let imgs: Vec<AlgebraVector<S>> = v.basis().iter().map(|x| d.apply(x)).collect();
    Subspace::span(d.dim(), &imgs)
}

pub fn is_subalgebra<S: Scalar>(alg: &LieAlgebraModel<S>, v: &Subspace<S>) -> bool {
    v.contains_subspace(&bracket_span(alg, v, v))
}

pub fn subspace_classify<S: Scalar>(alg: &LieAlgebraModel<S>, delta: &Subspace<S>) -> SubspaceClass {
    let g = Subspace::full(alg.dim());
    SubspaceClass {
        is_subalgebra: is_subalgebra(alg, delta),
        is_ideal: delta.contains_subspace(&bracket_span(alg, &g, delta)),
    }
}

/// Least ad(h)-invariant subspace containing `seed`.
pub fn invariant_hull<S: Scalar>(alg: &LieAlgebraModel<S>, h: &Subspace<S>, seed: &Subspace<S>) -> Subspace<S> {
    let mut v = seed.clone();
    loop {
        let next = v.sum(&bracket_span(alg, h, &v));
        if next.dim() == v.dim() {
            return v;
        }
        v = next;
    }
}

/// Greatest ad(h)-invariant subspace contained in `delta`.
pub fn invariant_core<S: Scalar>(alg: &LieAlgebraModel<S>, h: &Subspace<S>, delta: &Subspace<S>) -> Subspace<S> {
    let n = alg.dim();
    let mut v = delta.clone();
    loop {
        if v.is_zero() {
            return v;
        }
        // x = Σ a_k v_k stays iff α([z, x]) = 0 for all α ∈ V^⊥, z ∈ h
        let ann = v.annihilator();
        let mut rows = Vec::new();
        for z in h.basis() {
            let images: Vec<AlgebraVector<S>> = v.basis().iter().map(|b| alg.bracket_unchecked(z, b)).collect();
            for alpha in &ann {
                rows.push(images.iter().map(|w| alpha.pair(w)).collect());
            }
        }
        let combos = kernel(&rows, v.dim());
        let vectors: Vec<AlgebraVector<S>> = combos
            .iter()
            .map(|a| {
                v.basis()
                    .iter()
                    .zip(a)
                    .fold(AlgebraVector::zero(n), |acc, (b, c)| acc.add(&b.scale(c)))
            })
            .collect();
        let next = Subspace::span(n, &vectors);
        if next.dim() == v.dim() {
            return v;
        }
        v = next;
    }
}

/// ω annihilates every word ad(Z₁)…ad(Z_m)DY with Y, Z_i ∈ h.
pub fn condition_hz<S: Scalar>(
    alg: &LieAlgebraModel<S>,
    h: &Subspace<S>,
    d: &DerivationMatrix<S>,
    omega: &OneForm<S>,
) -> Result<bool> {
    if !is_subalgebra(alg, h) {
        return Err(Error::validation("condition (HZ) is only defined for a subalgebra"));
    }
    let hull = invariant_hull(alg, h, &image(d, h));
    Ok(hull.basis().iter().all(|v| omega.pair(v).is_negligible()))
}

pub fn solvability<S: Scalar>(alg: &LieAlgebraModel<S>) -> Solvability {
    let n = alg.dim();
    let g = Subspace::full(n);
    let mut derived = g.clone();
    let mut central = g.clone();
    for _ in 0..=n {
        derived = bracket_span(alg, &derived, &derived);
        central = bracket_span(alg, &g, &central);
    }
    Solvability {
        solvable: derived.is_zero(),
        nilpotent: central.is_zero(),
    }
}

/// Smallest subalgebra containing `v`.
pub fn generated_subalgebra<S: Scalar>(alg: &LieAlgebraModel<S>, v: &Subspace<S>) -> Subspace<S> {
    let mut cur = v.clone();
    loop {
        let next = cur.sum(&bracket_span(alg, &cur, &cur));
        if next.dim() == cur.dim() {
            return cur;
        }
        cur = next;
    }
}
