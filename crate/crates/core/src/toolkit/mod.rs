//! Instance measures, synthetic instances and benchmarking.

mod bench;
mod generate;
mod selftest;
mod stats;

use thiserror::Error;

pub use bench::{bench_instance, run_bench, BenchRecord, OutputFormat, CSV_COLUMNS};
pub use generate::{generate_instance, symbol_for, GeneratorSpec, Profile};
pub use selftest::{check_pair, exhaustive_selftest, SelftestReport};
pub use stats::{instance_stats, InstanceStats};

use crate::alphabet::AlphabetError;

#[derive(Debug, Error)]
pub enum ToolkitError {
    #[error("infeasible generator profile: {0}")]
    InfeasibleProfile(String),
    #[error("unknown profile {0:?} (expected zero-g, balanced-g, max-g or custom:g1,g2,...)")]
    UnknownProfile(String),
    #[error("memo holds {memo_entries} entries, above the predicted bound {bound}")]
    BoundViolation { memo_entries: usize, bound: u64 },
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
