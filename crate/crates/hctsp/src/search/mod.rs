//! 3-Opt iterated local search and its landscape-smoothing variants,
//! instrumented for evaluation accounting and trace collection.

mod engine;
mod perturb;
mod schedule;
mod three_opt;

pub use engine::{
    is_local_optimum, run_ils, run_lsils, run_on_model, run_smoothed, three_opt_descent, Budget,
    ImprovementPoint, ModelKind, SearchParams, SearchResult, SmoothingFamily,
};
pub use perturb::{double_bridge, MIN_DOUBLE_BRIDGE_N};
pub use schedule::LambdaSchedule;
