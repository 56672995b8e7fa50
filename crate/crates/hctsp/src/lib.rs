// `!(x > 0)` style guards are used on purpose throughout: unlike `x <= 0`
// they also reject NaN inputs, which must never pass parameter validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

//! TSP landscape smoothing toolkit.
//!
//! The crate models symmetric TSP instances (TSPLIB `EUC_2D`, `GEO` and
//! `EXPLICIT` cost types), builds the homotopic-convex (HC) blend of an
//! instance with its circle-shaped companion TSP, runs 3-Opt based
//! iterated local search on any of the supported cost models, and computes
//! landscape metrics (local-optimum density, escaping rate, fitness-distance
//! correlation, excess, AUC) from instrumented search traces.
//!
//! Core math is generic over the scalar type through [`Float`]; the
//! `f64`-backed aliases below are what the CLI and most callers use.

pub mod error;
pub mod float;
pub mod landscape;
pub mod model;
pub mod search;
pub mod smoothing;

pub use error::Error;
pub use float::Float;

/// Instance with `f64` costs, the canonical choice for TSPLIB bit-exactness.
pub type Instance = model::TspInstance<f64>;
pub type Tour = model::Tour<f64>;
pub type NeighborTable = model::NeighborTable<f64>;
pub type ConvexHullTsp = smoothing::ConvexHullTsp<f64>;
pub type HcTransform<'a> = smoothing::HcTransform<'a, f64>;
pub type SearchParams = search::SearchParams;
pub type SearchResult = search::SearchResult<f64>;
pub type SearchTrace = landscape::SearchTrace<f64>;

pub type Result<T> = std::result::Result<T, Error>;
