//! Exchange coupling between trapped ions that collide in a merged trap,
//! the resulting sqrt(SWAP) gate, and merge/split schedules for trap arrays.

// `!(x > 0.0)` is the NaN-rejecting form used for input checks throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod config;
pub mod coupling;
pub mod drive;
pub mod error;
pub mod gate;
pub mod potential;
pub mod quadrature;
pub mod schedule;
pub mod special;
pub mod species;
pub mod sweep;
pub mod trap;
pub mod units;

pub use error::{Error, Result};
