//! Desingularization: the sub-Riemannian lift to `G ⋊_φ ℝ` and projection
//! of its geodesics.

pub mod algebra;
pub mod chart;
pub mod project;
pub mod structure;

pub use algebra::{lifted_algebra, LIFT_LABEL};
pub use chart::LiftedChart;
pub use project::{project, ProjectedTrajectory, LENGTH_TOL, TAU_TOL};
pub use structure::{lift, lifted_integrate, LiftedStructure};
