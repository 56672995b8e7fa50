/// One instrumented event of a search run, in the order it happened.
#[derive(Debug, Clone, PartialEq)]
pub enum TraceEvent<F> {
    /// A local-search move was applied. Costs are the running totals after
    /// the move, under the active cost model and the original instance.
    Move { cost_model: F, cost_orig: F },
    /// Descent reached a scan-clean state on the active model.
    LocalOptimum {
        cost_model: F,
        cost_orig: F,
        order: Vec<u32>,
    },
    /// One perturbation episode (possibly several double bridges).
    Perturbation,
    /// The active cost model changed (smoothing rounds, final plain phase).
    ModelSwitch { label: String },
}

/// Full event log of one run; landscape metrics are computed from this.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SearchTrace<F> {
    pub events: Vec<TraceEvent<F>>,
}

impl<F> SearchTrace<F> {
    pub fn new() -> Self {
        Self { events: Vec::new() }
    }

    pub fn local_optima(&self) -> impl Iterator<Item = (&F, &[u32])> {
        self.events.iter().filter_map(|e| match e {
            TraceEvent::LocalOptimum { cost_orig, order, .. } => Some((cost_orig, order.as_slice())),
            _ => None,
        })
    }

    /// Moves plus perturbation episodes, the denominator of the
    /// local-optimum density.
    pub fn move_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, TraceEvent::Move { .. } | TraceEvent::Perturbation))
            .count()
    }

    pub fn local_optimum_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, TraceEvent::LocalOptimum { .. }))
            .count()
    }
}
