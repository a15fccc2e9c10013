//! Independent brute-force distances for small instances.
//!
//! Neither oracle shares code with the engine: [`ucs_distance`] searches
//! the space of working strings directly, and [`matching_distance`]
//! enumerates symbol-preserving matchings and counts their crossings.

mod matching;
mod ucs;

use thiserror::Error;

pub use matching::{matching_distance, DEFAULT_COMBINATION_BUDGET};
pub use ucs::{ucs_distance, ucs_weighted_distance, DEFAULT_STATE_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance too large for the oracle: needs more than {budget} {unit}")]
    InstanceTooLarge { budget: u64, unit: &'static str },
}
