//! Cost models the local search can run against: the original instance, the
//! HC blend with a circle-shaped companion TSP, and the GH/SSA smoothed
//! variants of the original costs.

mod gh;
mod hc;
mod hull;

pub use gh::{SmoothKind, SmoothedCostModel};
pub use hc::HcTransform;
pub use hull::ConvexHullTsp;

use crate::float::Float;
use crate::model::TspInstance;

/// The abstraction every local search runs against.
pub trait CostModel<F: Float>: Sync {
    fn edge(&self, i: usize, j: usize) -> F;

    fn cycle_cost(&self, order: &[u32]) -> F {
        let mut total = F::zero();
        for (k, &c) in order.iter().enumerate() {
            let next = order[(k + 1) % order.len()];
            total = total + self.edge(c as usize, next as usize);
        }
        total
    }
}

/// The untransformed instance is itself a cost model.
impl<F: Float> CostModel<F> for TspInstance<F> {
    #[inline]
    fn edge(&self, i: usize, j: usize) -> F {
        self.edge_cost(i, j)
    }
}
