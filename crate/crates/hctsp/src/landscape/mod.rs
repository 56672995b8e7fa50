//! Search-trace instrumentation, the four landscape metrics (local-optimum
//! density, escaping rate, FDC, runtime), excess/AUC benchmarking statistics
//! and the rank-sum test used to compare algorithm samples.

mod analyze;
mod metrics;
mod stats;
mod trace;

pub use analyze::{analyze_transform, AnalyzeOptions, AnchorKind, LandscapeReport};
pub use metrics::{
    auc, distance_to_reference, escape_counts, escaping_rate, excess, fdc,
    local_optimum_density, local_optimum_density_distinct,
};
pub use stats::{mann_whitney_less, RankSumTest};
pub use trace::{SearchTrace, TraceEvent};
