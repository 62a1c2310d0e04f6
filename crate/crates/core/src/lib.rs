// `!(x > 0.0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod ars;
pub mod cli;
pub mod desing;
pub mod error;
pub mod extremals;
pub mod fixtures;
pub mod group_models;
pub mod lie_core;
pub mod ode;
pub mod verify;

pub use error::{Error, Result};
