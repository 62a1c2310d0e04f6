//! Simple almost-Riemannian structures: construction, the singular locus,
//! and the abnormal subalgebra.

pub mod abnormal;
pub mod build;
pub mod classify;
pub mod locus;

pub use abnormal::abnormal_algebra;
pub use build::{build_ars, build_ars_exact, ExactParts, SimpleArs};
pub use classify::{classify_locus, describe_span, verdict_id, zx_consistency, LocusReport, Verdict, ZxConsistency};
pub use locus::{grad_psi, in_locus, normalized_psi, psi, sample_locus, LOCUS_TOL};
