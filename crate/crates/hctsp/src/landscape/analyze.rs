use std::sync::Mutex;

use crate::error::Error;
use crate::float::Float;
use crate::model::{nearest_neighbor_lists, Tour, TspInstance};
use crate::search::{run_on_model, ModelKind, SearchParams, SearchResult};
use crate::smoothing::{ConvexHullTsp, HcTransform};

use super::metrics::{distance_to_reference, escape_counts, fdc};
use super::trace::SearchTrace;

/// How the anchor tour was obtained; recorded verbatim in report rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnchorKind {
    /// A known (archived) global optimum.
    Global,
    /// A fresh 3-Opt local optimum.
    Local,
    /// A caller-provided tour file.
    Provided,
    /// A random tour.
    Random,
}

impl AnchorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AnchorKind::Global => "global",
            AnchorKind::Local => "local",
            AnchorKind::Provided => "provided",
            AnchorKind::Random => "random",
        }
    }
}

/// Aggregated landscape metrics for one (instance, lambda) cell.
#[derive(Debug, Clone)]
pub struct LandscapeReport {
    pub instance: String,
    pub lambda: f64,
    pub anchor_kind: AnchorKind,
    /// Runs aggregated into this row.
    pub sample_size: usize,
    pub lo_density: f64,
    pub escaping_rate: f64,
    pub fdc: f64,
    /// Mean wall time to first reach the reference cost; censored runs
    /// contribute their full elapsed time.
    pub mean_runtime_s: f64,
    /// Runs that never reached the reference within budget.
    pub censored: usize,
    pub reference_cost: f64,
    /// False when the reference is merely the best tour found in the sweep.
    pub reference_is_proven: bool,
}

impl LandscapeReport {
    fn assert_invariants(&self) {
        assert!(self.sample_size > 0);
        assert!(self.lo_density >= 0.0);
        assert!((0.0..=1.0).contains(&self.escaping_rate));
        assert!((-1.0..=1.0).contains(&self.fdc));
        assert!(self.censored <= self.sample_size);
    }
}

#[derive(Debug, Clone)]
pub struct AnalyzeOptions<F> {
    pub anchor_kind: AnchorKind,
    pub neighbor_k: usize,
    /// When given, the reference for FDC/runtime is this proven optimum
    /// instead of the best tour found in the sweep.
    pub known_optimum: Option<Tour<F>>,
    /// Worker threads; 0 picks the available parallelism.
    pub jobs: usize,
}

impl<F> AnalyzeOptions<F> {
    pub fn new(anchor_kind: AnchorKind, neighbor_k: usize) -> Self {
        Self { anchor_kind, neighbor_k, known_optimum: None, jobs: 0 }
    }
}

/// Runs `runs` instrumented ILS processes on the HC-transformed landscape
/// for every lambda in the grid (all sharing the anchor) and aggregates the
/// four landscape metrics per lambda.
pub fn analyze_transform<F: Float>(
    inst: &TspInstance<F>,
    anchor: &Tour<F>,
    lambdas: &[f64],
    runs: usize,
    params: &SearchParams,
    opts: &AnalyzeOptions<F>,
) -> Result<Vec<LandscapeReport>, Error> {
    if lambdas.is_empty() {
        return Err(Error::InvalidParameter("empty lambda grid".into()));
    }
    for &l in lambdas {
        if !(0.0..=1.0).contains(&l) {
            return Err(Error::InvalidParameter(format!("lambda {l} outside [0,1]")));
        }
    }
    if runs == 0 {
        return Err(Error::InvalidParameter("runs must be positive".into()));
    }
    let table = nearest_neighbor_lists(inst, opts.neighbor_k)?;
    let hull = ConvexHullTsp::construct(inst, anchor)?;

    let models: Vec<ModelKind<'_, F>> = lambdas
        .iter()
        .map(|&l| {
            Ok(ModelKind::Hc(HcTransform::new(
                inst,
                hull.clone(),
                F::from_f64_lossy(l),
            )?))
        })
        .collect::<Result<_, Error>>()?;

    // One task per (lambda, run) with a deterministic per-task seed.
    let tasks: Vec<(usize, usize)> = (0..lambdas.len())
        .flat_map(|li| (0..runs).map(move |r| (li, r)))
        .collect();
    let results = parallel_map(opts.jobs, &tasks, |&(li, r)| {
        let mut p = params.clone();
        p.seed = params
            .seed
            .wrapping_add((li * runs + r) as u64)
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            | 1;
        p.collect_trace = true;
        run_on_model(inst, &table, &models[li], &p)
    });
    let mut by_lambda: Vec<Vec<SearchResult<F>>> = (0..lambdas.len()).map(|_| Vec::new()).collect();
    for ((li, _), res) in tasks.iter().zip(results) {
        by_lambda[*li].push(res?);
    }

    // Reference: the provided optimum, or the best tour seen anywhere in the
    // sweep (anchor included).
    let (reference, reference_is_proven) = match &opts.known_optimum {
        Some(t) => (t.clone(), true),
        None => {
            let mut best = anchor.clone();
            for res in by_lambda.iter().flatten() {
                if res.best.cost() < best.cost() {
                    best = res.best.clone();
                }
            }
            (best, false)
        }
    };
    let ref_cost = reference.cost().to_f64().unwrap_or(f64::INFINITY);
    let ref_orders = vec![reference.order().to_vec()];
    let reach = ref_cost * (1.0 + 1e-12) + 1e-9;

    let mut reports = Vec::with_capacity(lambdas.len());
    for (li, group) in by_lambda.iter().enumerate() {
        let mut moves = 0usize;
        let mut optima = 0usize;
        let mut escaped = 0usize;
        let mut episodes = 0usize;
        let mut samples: Vec<(f64, f64)> = Vec::new();
        let mut runtime_sum = 0.0;
        let mut censored = 0usize;
        for res in group {
            let trace: &SearchTrace<F> =
                res.trace.as_ref().expect("analysis runs collect traces");
            moves += trace.move_count();
            optima += trace.local_optimum_count();
            let (e, n) = escape_counts(trace)?;
            escaped += e;
            episodes += n;
            for (cost, order) in trace.local_optima() {
                let d = distance_to_reference(order, &ref_orders)?;
                samples.push((cost.to_f64().unwrap_or(f64::NAN), d as f64));
            }
            match res
                .improvements
                .iter()
                .find(|p| p.cost.to_f64().unwrap_or(f64::INFINITY) <= reach)
            {
                Some(p) => runtime_sum += p.secs,
                None => {
                    runtime_sum += res.elapsed_secs;
                    censored += 1;
                }
            }
        }
        if moves == 0 {
            return Err(Error::DegenerateInput(format!(
                "no moves recorded at lambda {}",
                lambdas[li]
            )));
        }
        if episodes == 0 {
            return Err(Error::DegenerateInput(format!(
                "no complete perturbation episode at lambda {} (budget too small)",
                lambdas[li]
            )));
        }
        let report = LandscapeReport {
            instance: inst.name().to_string(),
            lambda: lambdas[li],
            anchor_kind: opts.anchor_kind,
            sample_size: group.len(),
            lo_density: 100.0 * optima as f64 / moves as f64,
            escaping_rate: escaped as f64 / episodes as f64,
            fdc: fdc(&samples)?,
            mean_runtime_s: runtime_sum / group.len() as f64,
            censored,
            reference_cost: ref_cost,
            reference_is_proven,
        };
        report.assert_invariants();
        reports.push(report);
    }
    Ok(reports)
}

/// Maps `f` over `tasks` on a small scoped worker pool, preserving order.
pub(crate) fn parallel_map<T, R, Func>(jobs: usize, tasks: &[T], f: Func) -> Vec<R>
where
    T: Sync,
    R: Send,
    Func: Fn(&T) -> R + Sync,
{
    let workers = if jobs == 0 {
        std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1)
    } else {
        jobs
    }
    .min(tasks.len())
    .max(1);

    if workers == 1 {
        return tasks.iter().map(&f).collect();
    }

    let next = Mutex::new(0usize);
    let out: Vec<Mutex<Option<R>>> = (0..tasks.len()).map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = {
                    let mut guard = next.lock().unwrap();
                    let i = *guard;
                    *guard += 1;
                    i
                };
                if i >= tasks.len() {
                    break;
                }
                *out[i].lock().unwrap() = Some(f(&tasks[i]));
            });
        }
    });
    out.into_iter()
        .map(|m| m.into_inner().unwrap().expect("task completed"))
        .collect()
}
