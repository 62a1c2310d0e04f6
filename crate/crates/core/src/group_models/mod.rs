//! Coordinate charts for ℝⁿ, Aff₊(2), the Heisenberg group and SL(2,ℝ),
//! and linear vector fields on them.

pub mod aff2;
pub mod chart;
pub mod euclidean;
pub mod expm;
pub mod field;
pub mod heisenberg;
pub mod sl2;

pub use aff2::Aff2;
pub use chart::{covector_from_algebra, covector_to_algebra, GroupChart, GroupPoint};
pub use euclidean::Euclidean;
pub use expm::expm;
pub use field::{cocycle_check, f_map, f_series, flow, flow_numeric, linear_field_at, CocycleReport, LinearField};
pub use heisenberg::Heisenberg;
pub use sl2::Sl2;

use std::sync::Arc;

/// The built-in groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Euclidean(usize),
    Aff2,
    Heisenberg,
    Sl2,
}

impl GroupKind {
    pub fn chart(self) -> Arc<dyn GroupChart> {
        match self {
            GroupKind::Euclidean(n) => Arc::new(Euclidean::new(n)),
            GroupKind::Aff2 => Arc::new(Aff2::new()),
            GroupKind::Heisenberg => Arc::new(Heisenberg::new()),
            GroupKind::Sl2 => Arc::new(Sl2::new()),
        }
    }

    pub fn dim(self) -> usize {
        match self {
            GroupKind::Euclidean(n) => n,
            GroupKind::Aff2 => 2,
            GroupKind::Heisenberg | GroupKind::Sl2 => 3,
        }
    }
}
