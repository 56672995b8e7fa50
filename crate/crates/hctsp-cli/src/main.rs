//! Command-line front end: solve single instances, benchmark algorithm sets,
//! run landscape sweeps, and generate random instances.
//!
//! Exit codes: 0 on success, 2 for configuration errors, 3 for I/O errors.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand};

use hctsp::landscape::{auc, excess, AnalyzeOptions, AnchorKind, LandscapeReport};
use hctsp::model::{
    gen_random_euclidean, nearest_neighbor_lists, parse_tsplib, read_tour_file, write_tour_file,
    write_tsplib,
};
use hctsp::search::{
    run_ils, run_lsils, run_smoothed, three_opt_descent, Budget, LambdaSchedule, SearchParams,
    SmoothingFamily,
};
use hctsp::landscape::{analyze_transform, TraceEvent};
use hctsp::{Instance, NeighborTable, SearchResult, Tour};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.code());
    }
}

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

#[derive(Debug)]
enum CliError {
    /// Bad flags, config values, or parameters. Exit code 2.
    Config(String),
    /// Failed reads, writes, or unparseable data files. Exit code 3.
    Io(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl From<hctsp::Error> for CliError {
    fn from(e: hctsp::Error) -> Self {
        match e {
            hctsp::Error::Io(_) | hctsp::Error::Parse { .. } => CliError::Io(e.to_string()),
            _ => CliError::Config(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

// ---------------------------------------------------------------------------
// Argument surface
// ---------------------------------------------------------------------------

#[derive(Parser)]
#[command(name = "hctsp", version, about = "TSP landscape-smoothing toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one algorithm on one instance and write its artifacts.
    Solve(CommonArgs),
    /// Run several algorithms on shared seeds; emit excess curves and AUCs.
    Compare(CommonArgs),
    /// Landscape sweep over a lambda grid around one or more anchors.
    Analyze(CommonArgs),
    /// Generate a random Euclidean instance file.
    Gen(GenArgs),
}

#[derive(Args, Default)]
struct CommonArgs {
    /// Flat `key = value` config file; command-line flags win.
    #[arg(long)]
    config: Option<PathBuf>,
    /// TSPLIB instance file.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// Algorithm, or comma-separated list for `compare`: ils, lsils, gh, ssa.
    #[arg(long)]
    algo: Option<String>,
    /// Lambda schedule: setting1..setting5 or explicit `frac:λ,frac:λ,...`.
    #[arg(long)]
    schedule: Option<String>,
    /// Comma-separated λ grid for `analyze` (default 0,0.01,...,0.1).
    #[arg(long)]
    lambda_grid: Option<String>,
    /// Runs per algorithm or per λ cell.
    #[arg(long)]
    runs: Option<usize>,
    /// Base seed; run r uses seed + r.
    #[arg(long)]
    seed: Option<u64>,
    /// Evaluation budget (whole-tour evaluations).
    #[arg(long)]
    budget_evals: Option<u64>,
    /// Wall-clock budget in seconds.
    #[arg(long)]
    budget_seconds: Option<f64>,
    /// Candidate-list size.
    #[arg(long)]
    neighbor_k: Option<usize>,
    /// Double bridges per perturbation episode.
    #[arg(long)]
    perturb_strength: Option<usize>,
    /// Anchor source for `analyze`: `local`, `opt:<tour file>` (proven
    /// optimum), or `tour:<tour file>`. Repeatable for multi-anchor sweeps.
    #[arg(long)]
    anchor: Vec<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long)]
    jobs: Option<usize>,
    /// Write the full search trace (`solve` only).
    #[arg(long)]
    trace: bool,
    /// Reference optimum cost for excess curves; omitted = best found × 0.99.
    #[arg(long)]
    ref_cost: Option<f64>,
}

#[derive(Args)]
struct GenArgs {
    /// Number of cities.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Square side length the coordinates are drawn from.
    #[arg(long, default_value_t = 1000.0)]
    side: f64,
    /// Output file (default `rand<n>-s<seed>.tsp`).
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Fully resolved settings: defaults, overridden by the config file,
/// overridden by flags.
struct Settings {
    instance: Option<PathBuf>,
    algos: Vec<String>,
    schedule: String,
    lambda_grid: Vec<f64>,
    runs: usize,
    seed: u64,
    budget: Budget,
    neighbor_k: usize,
    perturb_strength: usize,
    anchors: Vec<String>,
    out: PathBuf,
    jobs: usize,
    trace: bool,
    ref_cost: Option<f64>,
}

fn parse_config_file(path: &Path) -> CliResult<HashMap<String, String>> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("config {}: {e}", path.display())))?;
    let mut map = HashMap::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            CliError::Config(format!("config {}:{}: expected key = value", path.display(), ln + 1))
        })?;
        map.insert(k.trim().to_string(), v.trim().to_string());
    }
    Ok(map)
}

fn conf<T: std::str::FromStr>(map: &HashMap<String, String>, key: &str) -> CliResult<Option<T>> {
    match map.get(key) {
        None => Ok(None),
        Some(v) => v
            .parse()
            .map(Some)
            .map_err(|_| CliError::Config(format!("config key {key}: bad value '{v}'"))),
    }
}

impl Settings {
    fn resolve(a: &CommonArgs) -> CliResult<Self> {
        let file = match &a.config {
            Some(p) => parse_config_file(p)?,
            None => HashMap::new(),
        };
        let instance = a
            .instance
            .clone()
            .or(conf::<PathBuf>(&file, "instance")?);
        let algo: Option<String> = a.algo.clone().or(conf(&file, "algo")?);
        let algos = algo
            .unwrap_or_else(|| "ils".into())
            .split(',')
            .map(|s| s.trim().to_string())
            .filter(|s| !s.is_empty())
            .collect::<Vec<_>>();
        let lambda_grid = match a.lambda_grid.clone().or(conf(&file, "lambda-grid")?) {
            Some(s) => parse_float_list(&s)?,
            None => (0..=10).map(|k| k as f64 / 100.0).collect(),
        };
        let budget_evals = a.budget_evals.or(conf(&file, "budget-evals")?);
        let budget_seconds = a.budget_seconds.or(conf(&file, "budget-seconds")?);
        let budget = match (budget_evals, budget_seconds) {
            (Some(e), None) => Budget::evals(e),
            (None, Some(s)) => Budget::seconds(s),
            (Some(e), Some(s)) => Budget { evals: Some(e), seconds: Some(s) },
            (None, None) => Budget::evals(100_000),
        };
        let mut anchors: Vec<String> = a.anchor.clone();
        if anchors.is_empty() {
            if let Some(s) = conf::<String>(&file, "anchor")? {
                anchors = s.split(',').map(|x| x.trim().to_string()).collect();
            }
        }
        let runs = a.runs.or(conf(&file, "runs")?).unwrap_or(1);
        if runs == 0 {
            return Err(CliError::Config("runs must be at least 1".into()));
        }
        Ok(Settings {
            instance,
            algos,
            schedule: a
                .schedule
                .clone()
                .or(conf(&file, "schedule")?)
                .unwrap_or_else(|| "setting1".into()),
            lambda_grid,
            runs,
            seed: a.seed.or(conf(&file, "seed")?).unwrap_or(0),
            budget,
            neighbor_k: a.neighbor_k.or(conf(&file, "neighbor-k")?).unwrap_or(20),
            perturb_strength: a
                .perturb_strength
                .or(conf(&file, "perturb-strength")?)
                .unwrap_or(1),
            anchors,
            out: a.out.clone().or(conf(&file, "out")?).unwrap_or_else(|| PathBuf::from(".")),
            jobs: a.jobs.or(conf(&file, "jobs")?).unwrap_or(0),
            trace: a.trace || conf::<bool>(&file, "trace")?.unwrap_or(false),
            ref_cost: a.ref_cost.or(conf(&file, "ref-cost")?),
        })
    }

    fn load_instance(&self) -> CliResult<Instance> {
        let path = self
            .instance
            .as_ref()
            .ok_or_else(|| CliError::Config("--instance is required".into()))?;
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Ok(parse_tsplib::<f64, _>(text.as_bytes())?)
    }

    fn params(&self, seed: u64) -> SearchParams {
        let mut p = SearchParams::new(seed, self.budget);
        p.perturb_strength = self.perturb_strength;
        p
    }

    fn schedule(&self) -> CliResult<LambdaSchedule<f64>> {
        parse_schedule(&self.schedule)
    }
}

fn parse_float_list(s: &str) -> CliResult<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Config(format!("bad number '{t}' in list")))
        })
        .collect()
}

fn parse_schedule(s: &str) -> CliResult<LambdaSchedule<f64>> {
    if let Ok(sched) = LambdaSchedule::from_name(s) {
        return Ok(sched);
    }
    let mut points = Vec::new();
    for part in s.split(',') {
        let (frac, lam) = part.split_once(':').ok_or_else(|| {
            CliError::Config(format!(
                "schedule '{s}' is neither a named setting nor a frac:λ breakpoint list"
            ))
        })?;
        let frac: f64 = frac
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("bad schedule fraction '{frac}'")))?;
        let lam: f64 = lam
            .trim()
            .parse()
            .map_err(|_| CliError::Config(format!("bad schedule lambda '{lam}'")))?;
        points.push((frac, lam));
    }
    Ok(LambdaSchedule::new(points)?)
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.cmd {
        Cmd::Solve(a) => cmd_solve(&Settings::resolve(&a)?),
        Cmd::Compare(a) => cmd_compare(&Settings::resolve(&a)?),
        Cmd::Analyze(a) => cmd_analyze(&Settings::resolve(&a)?),
        Cmd::Gen(a) => cmd_gen(&a),
    }
}

// ---------------------------------------------------------------------------
// solve
// ---------------------------------------------------------------------------

fn run_algo(
    algo: &str,
    inst: &Instance,
    table: &NeighborTable,
    sched: &LambdaSchedule<f64>,
    params: &SearchParams,
) -> CliResult<SearchResult> {
    Ok(match algo {
        "ils" => run_ils(inst, table, params)?,
        "lsils" => run_lsils(inst, table, sched, params)?,
        "gh" => run_smoothed(inst, table, SmoothingFamily::Gh, params)?,
        "ssa" => run_smoothed(inst, table, SmoothingFamily::Ssa, params)?,
        other => {
            return Err(CliError::Config(format!(
                "unknown algorithm '{other}' (expected ils, lsils, gh or ssa)"
            )))
        }
    })
}

fn cmd_solve(s: &Settings) -> CliResult<()> {
    if s.algos.len() != 1 {
        return Err(CliError::Config("solve takes exactly one --algo".into()));
    }
    let algo = &s.algos[0];
    let inst = s.load_instance()?;
    let table = nearest_neighbor_lists(&inst, s.neighbor_k)?;
    let sched = s.schedule()?;
    let mut params = s.params(s.seed);
    params.collect_trace = s.trace;
    let res = run_algo(algo, &inst, &table, &sched, &params)?;

    fs::create_dir_all(&s.out)?;
    let stem = format!("{}-{}-s{}", inst.name(), algo, s.seed);
    let tour_path = s.out.join(format!("{stem}.tour"));
    let mut buf = Vec::new();
    write_tour_file(inst.name(), res.best.cost(), res.best.order(), &mut buf)?;
    fs::write(&tour_path, &buf)?;
    // Emitted tours must re-evaluate to the reported cost exactly.
    let (_, cost, order) = read_tour_file(&buf[..])?;
    debug_assert_eq!(inst.cycle_cost(&order), cost);

    let mut w = csv::Writer::from_path(s.out.join(format!("{stem}.csv")))?;
    w.write_record([
        "instance",
        "algo",
        "schedule",
        "seed",
        "best_cost",
        "evaluations",
        "iterations",
        "elapsed_secs",
    ])?;
    w.write_record([
        inst.name().to_string(),
        algo.clone(),
        s.schedule.clone(),
        s.seed.to_string(),
        fmt_f64(res.best.cost()),
        fmt_f64(res.evaluations),
        res.iterations.to_string(),
        fmt_f64(res.elapsed_secs),
    ])?;
    w.flush()?;

    if s.trace {
        write_trace_csv(&s.out.join(format!("{stem}.trace.csv")), &res)?;
    }
    println!(
        "{} {algo}: cost {} after {:.0} evaluations ({} iterations) -> {}",
        inst.name(),
        res.best.cost(),
        res.evaluations,
        res.iterations,
        tour_path.display()
    );
    Ok(())
}

/// Plain formatting without scientific notation, stable across runs.
fn fmt_f64(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

fn write_trace_csv(path: &Path, res: &SearchResult) -> CliResult<()> {
    let trace = res
        .trace
        .as_ref()
        .ok_or_else(|| CliError::Config("trace requested but not collected".into()))?;
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["event", "cost_model", "cost_orig", "label", "order"])?;
    for ev in &trace.events {
        match ev {
            TraceEvent::Move { cost_model, cost_orig } => {
                w.write_record(["move", &fmt_f64(*cost_model), &fmt_f64(*cost_orig), "", ""])?
            }
            TraceEvent::LocalOptimum { cost_model, cost_orig, order } => {
                let o: Vec<String> = order.iter().map(|c| c.to_string()).collect();
                w.write_record([
                    "local_optimum",
                    &fmt_f64(*cost_model),
                    &fmt_f64(*cost_orig),
                    "",
                    &o.join(" "),
                ])?
            }
            TraceEvent::Perturbation => w.write_record(["perturbation", "", "", "", ""])?,
            TraceEvent::ModelSwitch { label } => {
                w.write_record(["model_switch", "", "", label, ""])?
            }
        }
    }
    w.flush()?;
    Ok(())
}

// ---------------------------------------------------------------------------
// compare
// ---------------------------------------------------------------------------

const CURVE_POINTS: usize = 100;

fn cmd_compare(s: &Settings) -> CliResult<()> {
    if s.algos.is_empty() {
        return Err(CliError::Config("compare needs at least one --algo".into()));
    }
    let inst = s.load_instance()?;
    let table = nearest_neighbor_lists(&inst, s.neighbor_k)?;
    let sched = s.schedule()?;

    // All (algo, run) jobs share the same per-run seeds.
    let jobs: Vec<(usize, usize)> = (0..s.algos.len())
        .flat_map(|a| (0..s.runs).map(move |r| (a, r)))
        .collect();
    let results: Vec<CliResult<SearchResult>> = pool_map(s.jobs, &jobs, |&(a, r)| {
        run_algo(&s.algos[a], &inst, &table, &sched, &s.params(s.seed + r as u64))
    });
    let mut per_algo: Vec<Vec<SearchResult>> = (0..s.algos.len()).map(|_| Vec::new()).collect();
    for ((a, _), res) in jobs.iter().zip(results) {
        per_algo[*a].push(res?);
    }

    let reference = match s.ref_cost {
        Some(c) => c,
        None => {
            // Fallback rule for instances without a proven optimum.
            let best = per_algo
                .iter()
                .flatten()
                .map(|r| r.best.cost())
                .fold(f64::INFINITY, f64::min);
            best * 0.99
        }
    };

    // Abscissas: an even grid over the budget, in evaluations when an
    // evaluation budget is set, otherwise in seconds.
    let eval_grid = s.budget.evals.is_some();
    let limit = if eval_grid {
        s.budget.evals.unwrap() as f64
    } else {
        s.budget.seconds.unwrap()
    };
    let grid: Vec<f64> = (1..=CURVE_POINTS)
        .map(|k| limit * k as f64 / CURVE_POINTS as f64)
        .collect();

    fs::create_dir_all(&s.out)?;
    let mut auc_rows: Vec<(String, f64)> = Vec::new();
    for (a, algo) in s.algos.iter().enumerate() {
        let mut curve: Vec<(f64, f64, f64)> = Vec::with_capacity(grid.len());
        for &x in &grid {
            let ex: Vec<f64> = per_algo[a]
                .iter()
                .map(|res| {
                    let cost = if eval_grid { res.best_at(x) } else { best_by_secs(res, x) };
                    excess(cost, reference).unwrap_or(f64::NAN)
                })
                .collect();
            let n = ex.len() as f64;
            let mean = ex.iter().sum::<f64>() / n;
            let var = ex.iter().map(|e| (e - mean) * (e - mean)).sum::<f64>() / n.max(1.0);
            curve.push((x, mean, (var / n).sqrt()));
        }
        let path = s.out.join(format!("curve-{}-{algo}.csv", inst.name()));
        let mut w = csv::Writer::from_path(&path)?;
        w.write_record(["abscissa", "mean_excess", "stderr"])?;
        for &(x, m, se) in &curve {
            w.write_record([fmt_f64(x), fmt_f64(m), fmt_f64(se)])?;
        }
        w.flush()?;
        let mean_curve: Vec<(f64, f64)> = curve.iter().map(|&(x, m, _)| (x, m)).collect();
        auc_rows.push((algo.clone(), auc(&mean_curve)?));
    }

    let mut w = csv::Writer::from_path(s.out.join(format!("auc-{}.csv", inst.name())))?;
    w.write_record(["instance", "algo", "runs", "reference_cost", "auc"])?;
    for (algo, a) in &auc_rows {
        w.write_record([
            inst.name().to_string(),
            algo.clone(),
            s.runs.to_string(),
            fmt_f64(reference),
            fmt_f64(*a),
        ])?;
        println!("{} {algo}: auc {a:.3} (reference {reference})", inst.name());
    }
    w.flush()?;
    Ok(())
}

/// Best incumbent cost once `secs` of wall time had elapsed.
fn best_by_secs(res: &SearchResult, secs: f64) -> f64 {
    let mut cost = res.improvements[0].cost;
    for p in &res.improvements {
        if p.secs <= secs {
            cost = p.cost;
        } else {
            break;
        }
    }
    cost
}

/// Order-preserving map over `tasks` on `jobs` worker threads (0 = cores).
fn pool_map<T: Sync, R: Send>(
    jobs: usize,
    tasks: &[T],
    f: impl Fn(&T) -> R + Sync,
) -> Vec<R> {
    let workers = if jobs == 0 {
        std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1)
    } else {
        jobs
    }
    .clamp(1, tasks.len().max(1));
    if workers <= 1 {
        return tasks.iter().map(&f).collect();
    }
    let next = Mutex::new(0usize);
    let out: Vec<Mutex<Option<R>>> = (0..tasks.len()).map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = {
                    let mut g = next.lock().unwrap();
                    let i = *g;
                    *g += 1;
                    i
                };
                if i >= tasks.len() {
                    break;
                }
                *out[i].lock().unwrap() = Some(f(&tasks[i]));
            });
        }
    });
    out.into_iter().map(|m| m.into_inner().unwrap().unwrap()).collect()
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

struct Anchor {
    kind: AnchorKind,
    tour: Tour,
    proven: bool,
}

fn resolve_anchor(spec: &str, inst: &Instance, s: &Settings) -> CliResult<Anchor> {
    if spec == "local" {
        // Fresh 3-Opt local optimum from a seeded random start.
        let table = nearest_neighbor_lists(inst, s.neighbor_k)?;
        let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
        let start = Tour::random(inst, &mut rng);
        let order = three_opt_descent(inst, &table, start.order());
        return Ok(Anchor { kind: AnchorKind::Local, tour: Tour::new(inst, order)?, proven: false });
    }
    let (kind, path, proven) = match spec.split_once(':') {
        Some(("opt", p)) => (AnchorKind::Global, p, true),
        Some(("tour", p)) => (AnchorKind::Provided, p, false),
        _ => (AnchorKind::Provided, spec, false),
    };
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
    let (_, cost, order) = read_tour_file(text.as_bytes())?;
    let tour = Tour::new(inst, order)
        .map_err(|e| CliError::Config(format!("anchor {path} invalid for instance: {e}")))?;
    if (tour.cost() - cost).abs() > 1e-6 {
        return Err(CliError::Config(format!(
            "anchor {path}: header cost {cost} does not match re-evaluated {}",
            tour.cost()
        )));
    }
    Ok(Anchor { kind, tour, proven })
}

fn cmd_analyze(s: &Settings) -> CliResult<()> {
    let inst = s.load_instance()?;
    let specs: Vec<String> =
        if s.anchors.is_empty() { vec!["local".into()] } else { s.anchors.clone() };
    let anchors: Vec<Anchor> = specs
        .iter()
        .map(|spec| resolve_anchor(spec, &inst, s))
        .collect::<CliResult<_>>()?;

    fs::create_dir_all(&s.out)?;
    let params = s.params(s.seed);
    let mut all: Vec<(f64, Vec<LandscapeReport>)> = Vec::new();
    for anchor in &anchors {
        let mut opts = AnalyzeOptions::new(anchor.kind, s.neighbor_k);
        opts.jobs = s.jobs;
        if anchor.proven {
            opts.known_optimum = Some(anchor.tour.clone());
        }
        let reports =
            analyze_transform(&inst, &anchor.tour, &s.lambda_grid, s.runs, &params, &opts)?;
        all.push((anchor.tour.cost(), reports));
    }

    let path = s.out.join(format!("landscape-{}.csv", inst.name()));
    let mut w = csv::Writer::from_path(&path)?;
    w.write_record([
        "instance",
        "lambda",
        "anchor_kind",
        "runs",
        "lo_density",
        "escaping_rate",
        "fdc",
        "mean_runtime_s",
        "censored",
    ])?;
    for (_, reports) in &all {
        for r in reports {
            w.write_record([
                r.instance.clone(),
                fmt_f64(r.lambda),
                r.anchor_kind.as_str().to_string(),
                r.sample_size.to_string(),
                fmt_f64(r.lo_density),
                fmt_f64(r.escaping_rate),
                fmt_f64(r.fdc),
                fmt_f64(r.mean_runtime_s),
                r.censored.to_string(),
            ])?;
        }
    }
    w.flush()?;

    // Multi-anchor study: one row per (anchor cost, λ).
    if all.len() > 1 {
        let mpath = s.out.join(format!("landscape-{}-by-anchor.csv", inst.name()));
        let mut w = csv::Writer::from_path(&mpath)?;
        w.write_record([
            "anchor_cost",
            "lambda",
            "anchor_kind",
            "lo_density",
            "escaping_rate",
            "fdc",
        ])?;
        for (cost, reports) in &all {
            for r in reports {
                w.write_record([
                    fmt_f64(*cost),
                    fmt_f64(r.lambda),
                    r.anchor_kind.as_str().to_string(),
                    fmt_f64(r.lo_density),
                    fmt_f64(r.escaping_rate),
                    fmt_f64(r.fdc),
                ])?;
            }
        }
        w.flush()?;
    }

    for (cost, reports) in &all {
        for r in reports {
            println!(
                "{} anchor={} λ={:.3}: lo_density {:.3}, escaping {:.3}, fdc {:.3}",
                r.instance, cost, r.lambda, r.lo_density, r.escaping_rate, r.fdc
            );
        }
    }
    println!("wrote {}", path.display());
    Ok(())
}

// ---------------------------------------------------------------------------
// gen
// ---------------------------------------------------------------------------

fn cmd_gen(a: &GenArgs) -> CliResult<()> {
    let inst = gen_random_euclidean::<f64>(a.n, a.seed, a.side)?;
    let path = a
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.tsp", inst.name())));
    let mut buf = Vec::new();
    write_tsplib(&inst, &mut buf)?;
    // The written file must round-trip to the in-memory instance.
    let back = parse_tsplib::<f64, _>(&buf[..])?;
    if back.coords() != inst.coords() {
        return Err(CliError::Io("generated file does not round-trip".into()));
    }
    fs::write(&path, &buf)?;
    println!("wrote {} ({} cities, seed {})", path.display(), a.n, a.seed);
    Ok(())
}
