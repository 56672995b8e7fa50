use std::collections::VecDeque;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::float::Float;
use crate::landscape::{SearchTrace, TraceEvent};
use crate::model::{NeighborTable, Tour, TspInstance};
use crate::smoothing::{ConvexHullTsp, CostModel, HcTransform, SmoothKind, SmoothedCostModel};

use super::perturb::{double_bridge_order, sample_cuts, MIN_DOUBLE_BRIDGE_N};
use super::schedule::LambdaSchedule;
use super::three_opt::{scan_city, AppliedMove, WorkTour};

/// Evaluation budget in whole-tour units: one evaluation is `n` edge-cost
/// computations. The engine charges every edge lookup it makes — candidate
/// scanning, delta accounting and model-cost refreshes alike — so runs are
/// comparable across algorithms regardless of which cost model they search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    pub evals: Option<u64>,
    pub seconds: Option<f64>,
}

impl Budget {
    pub fn evals(n: u64) -> Self {
        Self { evals: Some(n), seconds: None }
    }

    pub fn seconds(s: f64) -> Self {
        Self { evals: None, seconds: Some(s) }
    }

    fn validate(&self) -> Result<(), Error> {
        if self.evals.is_none() && self.seconds.is_none() {
            return Err(Error::InvalidParameter(
                "budget needs an evaluation or time limit".into(),
            ));
        }
        if matches!(self.evals, Some(0)) {
            return Err(Error::InvalidParameter("evaluation budget is zero".into()));
        }
        if let Some(s) = self.seconds {
            if !(s > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "time budget {s} must be positive"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SearchParams {
    pub seed: u64,
    pub budget: Budget,
    /// Double bridges applied per perturbation episode.
    pub perturb_strength: usize,
    pub collect_trace: bool,
}

impl SearchParams {
    pub fn new(seed: u64, budget: Budget) -> Self {
        Self { seed, budget, perturb_strength: 1, collect_trace: false }
    }

    pub fn with_trace(mut self) -> Self {
        self.collect_trace = true;
        self
    }

    pub fn with_perturb_strength(mut self, strength: usize) -> Self {
        self.perturb_strength = strength;
        self
    }
}

/// A point on the best-so-far curve, recorded whenever the incumbent under
/// the original objective improves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImprovementPoint<F> {
    /// Whole-tour evaluations consumed when the improvement happened.
    pub evals: f64,
    pub secs: f64,
    pub cost: F,
}

#[derive(Debug, Clone)]
pub struct SearchResult<F> {
    pub best: Tour<F>,
    pub evaluations: f64,
    pub elapsed_secs: f64,
    /// Perturbation episodes performed (descent-only runs report 0).
    pub iterations: u64,
    pub improvements: Vec<ImprovementPoint<F>>,
    pub trace: Option<SearchTrace<F>>,
}

impl<F: Float> SearchResult<F> {
    /// Best cost seen once `evals` whole-tour evaluations were spent.
    pub fn best_at(&self, evals: f64) -> F {
        let mut cost = self.improvements[0].cost;
        for p in &self.improvements {
            if p.evals <= evals {
                cost = p.cost;
            } else {
                break;
            }
        }
        cost
    }
}

/// Edge-lookup counter shared by the scanner and the engine.
#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct EvalCounter {
    units: u64,
}

impl EvalCounter {
    #[inline]
    pub fn charge(&mut self, k: u64) {
        self.units += k;
    }

    #[inline]
    pub fn units(&self) -> u64 {
        self.units
    }
}

/// The cost models a run can descend on. Kept as an enum so one monomorphic
/// engine serves every algorithm with identical control flow and accounting.
#[derive(Debug, Clone)]
pub enum ModelKind<'a, F> {
    Original(&'a TspInstance<F>),
    Hc(HcTransform<'a, F>),
    Smoothed(SmoothedCostModel<F>),
}

impl<F: Float> CostModel<F> for ModelKind<'_, F> {
    #[inline]
    fn edge(&self, i: usize, j: usize) -> F {
        match self {
            ModelKind::Original(inst) => inst.edge_cost(i, j),
            ModelKind::Hc(t) => t.edge_cost(i, j),
            ModelKind::Smoothed(s) => s.edge(i, j),
        }
    }
}

struct Engine<'a, F> {
    inst: &'a TspInstance<F>,
    table: &'a NeighborTable<F>,
    wt: WorkTour,
    cur_orig: F,
    cur_model: F,
    counter: EvalCounter,
    unit_limit: Option<u64>,
    seconds_limit: Option<f64>,
    start: Instant,
    tick: u32,
    out_of_budget: bool,
    rng: ChaCha8Rng,
    best_order: Vec<u32>,
    best_cost: F,
    improvements: Vec<ImprovementPoint<F>>,
    trace: Option<SearchTrace<F>>,
    iterations: u64,
    perturb_strength: usize,
}

impl<'a, F: Float> Engine<'a, F> {
    fn new(
        inst: &'a TspInstance<F>,
        table: &'a NeighborTable<F>,
        params: &SearchParams,
    ) -> Result<Self, Error> {
        params.budget.validate()?;
        let n = inst.len();
        if n < MIN_DOUBLE_BRIDGE_N {
            return Err(Error::InvalidParameter(format!(
                "search needs at least {MIN_DOUBLE_BRIDGE_N} cities, got {n}"
            )));
        }
        if table.lists_len() != n {
            return Err(Error::LengthMismatch { got: table.lists_len(), expected: n });
        }
        if params.perturb_strength == 0 {
            return Err(Error::InvalidParameter("perturb strength is zero".into()));
        }
        inst.materialize_costs();

        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        let start_tour = Tour::random(inst, &mut rng);
        let mut counter = EvalCounter::default();
        counter.charge(n as u64);
        let cur_orig = start_tour.cost();

        let mut eng = Self {
            inst,
            table,
            wt: WorkTour::from_order(start_tour.order().to_vec()),
            cur_orig,
            cur_model: cur_orig,
            counter,
            unit_limit: params.budget.evals.map(|e| e.saturating_mul(n as u64)),
            seconds_limit: params.budget.seconds,
            start: Instant::now(),
            tick: 0,
            out_of_budget: false,
            rng,
            best_order: start_tour.order().to_vec(),
            best_cost: cur_orig,
            improvements: Vec::new(),
            trace: params.collect_trace.then(SearchTrace::new),
            iterations: 0,
            perturb_strength: params.perturb_strength,
        };
        eng.push_improvement();
        Ok(eng)
    }

    fn n(&self) -> usize {
        self.inst.len()
    }

    fn exhausted(&mut self) -> bool {
        if self.out_of_budget {
            return true;
        }
        if let Some(limit) = self.unit_limit {
            if self.counter.units() >= limit {
                self.out_of_budget = true;
                return true;
            }
        }
        if let Some(secs) = self.seconds_limit {
            self.tick = self.tick.wrapping_add(1);
            if self.tick & 0xFF == 0 && self.start.elapsed().as_secs_f64() >= secs {
                self.out_of_budget = true;
                return true;
            }
        }
        false
    }

    /// Budget fraction consumed, for schedule lookups.
    fn frac(&self) -> f64 {
        if let Some(limit) = self.unit_limit {
            self.counter.units() as f64 / limit as f64
        } else if let Some(secs) = self.seconds_limit {
            (self.start.elapsed().as_secs_f64() / secs).min(1.0)
        } else {
            0.0
        }
    }

    fn push_improvement(&mut self) {
        self.improvements.push(ImprovementPoint {
            evals: self.counter.units() as f64 / self.n() as f64,
            secs: self.start.elapsed().as_secs_f64(),
            cost: self.best_cost,
        });
    }

    fn note_current(&mut self) {
        if self.cur_orig < self.best_cost {
            self.best_cost = self.cur_orig;
            self.best_order.clear();
            self.best_order.extend_from_slice(self.wt.order());
            self.push_improvement();
        }
    }

    /// Refreshes the running model cost after the active model changed,
    /// charging one whole-tour evaluation.
    fn set_model(&mut self, model: &ModelKind<'_, F>) {
        self.counter.charge(self.n() as u64);
        self.cur_model = model.cycle_cost(self.wt.order());
    }

    fn account_move(&mut self, mv: &AppliedMove<F>) {
        let mut delta = F::zero();
        for t in 0..mv.arity {
            self.counter.charge(2);
            delta = delta
                + self.inst.edge_cost(mv.added[t].0 as usize, mv.added[t].1 as usize)
                - self.inst.edge_cost(mv.removed[t].0 as usize, mv.removed[t].1 as usize);
        }
        self.cur_orig = self.cur_orig + delta;
        self.cur_model = self.cur_model - mv.gain_model;
        if let Some(trace) = &mut self.trace {
            trace.events.push(TraceEvent::Move {
                cost_model: self.cur_model,
                cost_orig: self.cur_orig,
            });
        }
        self.note_current();
    }

    fn enqueue_move_cities(
        mv: &AppliedMove<F>,
        queue: &mut VecDeque<u32>,
        in_queue: &mut [bool],
    ) {
        for t in 0..mv.arity {
            for c in [mv.removed[t].0, mv.removed[t].1, mv.added[t].0, mv.added[t].1] {
                if !in_queue[c as usize] {
                    in_queue[c as usize] = true;
                    queue.push_back(c);
                }
            }
        }
    }

    /// Runs first-improvement descent to a scan-clean state. Returns false
    /// if the budget ran out first (the tour is then not a local optimum).
    fn descent(&mut self, model: &ModelKind<'_, F>) -> bool {
        let n = self.n();
        let mut in_queue = vec![true; n];
        let mut queue: VecDeque<u32> = (0..n as u32).collect();
        loop {
            while let Some(c) = queue.pop_front() {
                in_queue[c as usize] = false;
                if self.exhausted() {
                    return false;
                }
                while let Some(mv) = scan_city(&mut self.wt, model, self.table, &mut self.counter, c)
                {
                    self.account_move(&mv);
                    Self::enqueue_move_cities(&mv, &mut queue, &mut in_queue);
                    if self.exhausted() {
                        return false;
                    }
                }
            }
            // Don't-look bits can miss moves enabled by later changes; a
            // clean full sweep certifies the local optimum.
            let mut any = false;
            for c in 0..n as u32 {
                if self.exhausted() {
                    return false;
                }
                while let Some(mv) = scan_city(&mut self.wt, model, self.table, &mut self.counter, c)
                {
                    any = true;
                    self.account_move(&mv);
                    Self::enqueue_move_cities(&mv, &mut queue, &mut in_queue);
                }
            }
            if !any {
                return true;
            }
        }
    }

    fn record_local_optimum(&mut self) {
        if let Some(trace) = &mut self.trace {
            trace.events.push(TraceEvent::LocalOptimum {
                cost_model: self.cur_model,
                cost_orig: self.cur_orig,
                order: self.wt.order().to_vec(),
            });
        }
    }

    fn record_model_switch(&mut self, label: &str) {
        if let Some(trace) = &mut self.trace {
            trace.events.push(TraceEvent::ModelSwitch { label: label.to_string() });
        }
    }

    /// One perturbation episode. Only the original-cost delta is maintained;
    /// the model cost is refreshed by the `set_model` that follows.
    fn perturb(&mut self) {
        for _ in 0..self.perturb_strength {
            let n = self.n();
            let cuts = sample_cuts(&mut self.rng, n);
            let (order, removed, added) = double_bridge_order(self.wt.order(), cuts);
            self.wt = WorkTour::from_order(order);
            let mut delta = F::zero();
            for t in 0..4 {
                self.counter.charge(2);
                delta = delta
                    + self.inst.edge_cost(added[t].0 as usize, added[t].1 as usize)
                    - self.inst.edge_cost(removed[t].0 as usize, removed[t].1 as usize);
            }
            self.cur_orig = self.cur_orig + delta;
            self.note_current();
        }
        if let Some(trace) = &mut self.trace {
            trace.events.push(TraceEvent::Perturbation);
        }
    }

    fn finish(self) -> Result<SearchResult<F>, Error> {
        let best = Tour::new(self.inst, self.best_order)?;
        Ok(SearchResult {
            best,
            evaluations: self.counter.units() as f64 / self.inst.len() as f64,
            elapsed_secs: self.start.elapsed().as_secs_f64(),
            iterations: self.iterations,
            improvements: self.improvements,
            trace: self.trace,
        })
    }
}

/// Iterated-local-search core shared by every algorithm: descend, then
/// repeat (perturb, re-select model, descend) from the newest local optimum
/// until the budget is spent. `provider` is consulted before every descent
/// with the budget fraction and the incumbent order; returning `None` keeps
/// the current model object (its running cost is refreshed either way, so
/// accounting is identical across algorithms).
fn run_loop<'a, F, P>(
    inst: &'a TspInstance<F>,
    table: &'a NeighborTable<F>,
    params: &SearchParams,
    mut provider: P,
) -> Result<SearchResult<F>, Error>
where
    F: Float,
    P: FnMut(f64, &[u32]) -> Result<Option<ModelKind<'a, F>>, Error>,
{
    let mut eng = Engine::new(inst, table, params)?;
    let mut model = provider(eng.frac(), &eng.best_order)?.ok_or_else(|| {
        Error::InvalidParameter("model provider returned no initial model".into())
    })?;
    eng.set_model(&model);
    if eng.descent(&model) {
        eng.record_local_optimum();
    }
    while !eng.exhausted() {
        eng.iterations += 1;
        eng.perturb();
        if let Some(next) = provider(eng.frac(), &eng.best_order)? {
            model = next;
        }
        eng.set_model(&model);
        if eng.descent(&model) {
            eng.record_local_optimum();
        }
    }
    eng.finish()
}

/// Plain iterated local search on the original costs.
pub fn run_ils<F: Float>(
    inst: &TspInstance<F>,
    table: &NeighborTable<F>,
    params: &SearchParams,
) -> Result<SearchResult<F>, Error> {
    run_loop(inst, table, params, |_, _| Ok(Some(ModelKind::Original(inst))))
}

/// Above this size the circle companion is rebuilt only when the schedule
/// changes lambda, not on every iteration.
const REBUILD_EVERY_ITER_MAX_N: usize = 2000;

/// Landscape-smoothing ILS: each iteration descends on the blend of the
/// original costs with the circle companion anchored at the incumbent.
pub fn run_lsils<F: Float>(
    inst: &TspInstance<F>,
    table: &NeighborTable<F>,
    schedule: &LambdaSchedule<F>,
    params: &SearchParams,
) -> Result<SearchResult<F>, Error> {
    let rebuild_every_iter = inst.len() <= REBUILD_EVERY_ITER_MAX_N;
    let mut last_lambda: Option<F> = None;
    // The circle geometry (interval, radius) depends only on the instance;
    // per-iteration rebuilds just re-rank the cities along the new anchor.
    let base_hull = ConvexHullTsp::construct(inst, &Tour::identity(inst))?;
    run_loop(inst, table, params, move |frac, best| {
        let lambda = schedule.value_at(frac);
        if !rebuild_every_iter && last_lambda == Some(lambda) {
            return Ok(None);
        }
        last_lambda = Some(lambda);
        let anchor = Tour::new(inst, best.to_vec())?;
        let hull = base_hull.reanchored(&anchor)?;
        Ok(Some(ModelKind::Hc(HcTransform::new(inst, hull, lambda)?)))
    })
}

/// ILS on one fixed cost model, for landscape analysis of a static
/// transformed instance.
pub fn run_on_model<'a, F: Float>(
    inst: &'a TspInstance<F>,
    table: &NeighborTable<F>,
    model: &ModelKind<'a, F>,
    params: &SearchParams,
) -> Result<SearchResult<F>, Error> {
    let mut first = true;
    run_loop(inst, table, params, move |_, _| {
        if first {
            first = false;
            Ok(Some(model.clone()))
        } else {
            Ok(None)
        }
    })
}

/// Which fixed smoothing-round sequence to run before the plain phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothingFamily {
    /// Convex exponents 6,5,4,3,2,1.
    Gh,
    /// Alternating convex/concave exponents 7,7,5,5,3,3,1.
    Ssa,
}

impl SmoothingFamily {
    pub fn rounds(self) -> Vec<(SmoothKind, f64)> {
        match self {
            SmoothingFamily::Gh => [6.0, 5.0, 4.0, 3.0, 2.0, 1.0]
                .iter()
                .map(|&a| (SmoothKind::Gh, a))
                .collect(),
            SmoothingFamily::Ssa => vec![
                (SmoothKind::SsaConvex, 7.0),
                (SmoothKind::SsaConcave, 7.0),
                (SmoothKind::SsaConvex, 5.0),
                (SmoothKind::SsaConcave, 5.0),
                (SmoothKind::SsaConvex, 3.0),
                (SmoothKind::SsaConcave, 3.0),
                (SmoothKind::SsaConvex, 1.0),
            ],
        }
    }
}

/// Smoothing-schedule search: one descent per smoothed round, then plain
/// ILS on the original costs for the rest of the budget.
pub fn run_smoothed<F: Float>(
    inst: &TspInstance<F>,
    table: &NeighborTable<F>,
    family: SmoothingFamily,
    params: &SearchParams,
) -> Result<SearchResult<F>, Error> {
    // Build all round models up front so a degenerate cost range fails
    // before any search effort is spent.
    let rounds: Vec<(String, SmoothedCostModel<F>)> = family
        .rounds()
        .into_iter()
        .map(|(kind, alpha)| {
            let label = match kind {
                SmoothKind::Gh => format!("gh alpha={alpha}"),
                SmoothKind::SsaConvex => format!("ssa convex alpha={alpha}"),
                SmoothKind::SsaConcave => format!("ssa concave alpha={alpha}"),
            };
            Ok((label, SmoothedCostModel::new(inst, kind, F::from_f64_lossy(alpha))?))
        })
        .collect::<Result<_, Error>>()?;

    let mut eng = Engine::new(inst, table, params)?;
    for (label, smoothed) in rounds {
        if eng.exhausted() {
            break;
        }
        let model = ModelKind::Smoothed(smoothed);
        eng.record_model_switch(&label);
        eng.set_model(&model);
        if eng.descent(&model) {
            eng.record_local_optimum();
        }
    }
    let model = ModelKind::Original(inst);
    eng.record_model_switch("original");
    if !eng.exhausted() {
        eng.set_model(&model);
        if eng.descent(&model) {
            eng.record_local_optimum();
        }
    }
    while !eng.exhausted() {
        eng.iterations += 1;
        eng.perturb();
        eng.set_model(&model);
        if eng.descent(&model) {
            eng.record_local_optimum();
        }
    }
    eng.finish()
}

/// Unbudgeted candidate-list descent on `model` from `order`, sweeping until
/// a full pass finds no improving move. Returns the reached local optimum.
pub fn three_opt_descent<F: Float, M: CostModel<F>>(
    model: &M,
    table: &NeighborTable<F>,
    order: &[u32],
) -> Vec<u32> {
    let mut wt = WorkTour::from_order(order.to_vec());
    let mut counter = EvalCounter::default();
    loop {
        let mut improved = false;
        for c in 0..order.len() as u32 {
            while scan_city(&mut wt, model, table, &mut counter, c).is_some() {
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
    wt.order().to_vec()
}

/// True when no scan (the same one the descent uses) finds an improving
/// move anywhere on the tour: the shared definition of "local optimum".
pub fn is_local_optimum<F: Float, M: CostModel<F>>(
    model: &M,
    table: &NeighborTable<F>,
    order: &[u32],
) -> bool {
    let mut wt = WorkTour::from_order(order.to_vec());
    let mut counter = EvalCounter::default();
    for c in 0..order.len() as u32 {
        if scan_city(&mut wt, model, table, &mut counter, c).is_some() {
            return false;
        }
    }
    true
}
