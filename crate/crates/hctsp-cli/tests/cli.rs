//! End-to-end checks of the command-line interface: artifacts, CSV schemas,
//! determinism, and exit codes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use hctsp::landscape::auc;
use hctsp::model::{parse_tsplib, read_tour_file};

fn hctsp(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hctsp"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn assert_ok(out: &Output) {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    let mut rdr = csv::Reader::from_path(path).unwrap();
    let headers: Vec<String> = rdr.headers().unwrap().iter().map(str::to_string).collect();
    let mut rows = vec![headers];
    for rec in rdr.records() {
        rows.push(rec.unwrap().iter().map(str::to_string).collect());
    }
    rows
}

#[test]
fn gen_writes_a_round_tripping_instance() {
    let dir = tempfile::tempdir().unwrap();
    assert_ok(&hctsp(&["gen", "--n", "40", "--seed", "5", "--out", "a.tsp"], dir.path()));
    assert_ok(&hctsp(&["gen", "--n", "40", "--seed", "6", "--out", "b.tsp"], dir.path()));
    let a = fs::read_to_string(dir.path().join("a.tsp")).unwrap();
    let b = fs::read_to_string(dir.path().join("b.tsp")).unwrap();
    assert!(a.contains("DIMENSION : 40"));
    assert_ne!(a, b, "distinct seeds must give distinct coordinates");
    let inst = parse_tsplib::<f64, _>(a.as_bytes()).unwrap();
    assert_eq!(inst.len(), 40);
}

#[test]
fn solve_emits_consistent_artifacts_and_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    assert_ok(&hctsp(&["gen", "--n", "30", "--seed", "1", "--out", "t.tsp"], dir.path()));
    let args = [
        "solve",
        "--instance",
        "t.tsp",
        "--algo",
        "lsils",
        "--schedule",
        "setting2",
        "--budget-evals",
        "3000",
        "--seed",
        "9",
        "--out",
        "run1",
    ];
    assert_ok(&hctsp(&args, dir.path()));
    let mut args2 = args;
    args2[args.len() - 1] = "run2";
    assert_ok(&hctsp(&args2, dir.path()));

    // The emitted tour re-evaluates to the reported cost exactly.
    let inst = parse_tsplib::<f64, _>(
        fs::read_to_string(dir.path().join("t.tsp")).unwrap().as_bytes(),
    )
    .unwrap();
    let tour = fs::read_to_string(dir.path().join("run1/rand30-s1-lsils-s9.tour")).unwrap();
    let (_, cost, order) = read_tour_file(tour.as_bytes()).unwrap();
    assert_eq!(inst.cycle_cost(&order), cost);

    // Identical config + seed: identical CSV rows modulo the wall-time
    // column, which is last.
    let r1 = csv_rows(&dir.path().join("run1/rand30-s1-lsils-s9.csv"));
    let r2 = csv_rows(&dir.path().join("run2/rand30-s1-lsils-s9.csv"));
    assert_eq!(*r1[0].last().unwrap(), "elapsed_secs");
    let strip = |rows: &[Vec<String>]| -> Vec<Vec<String>> {
        rows.iter().map(|r| r[..r.len() - 1].to_vec()).collect()
    };
    assert_eq!(strip(&r1), strip(&r2));
}

#[test]
fn solve_trace_flag_writes_the_event_log() {
    let dir = tempfile::tempdir().unwrap();
    assert_ok(&hctsp(&["gen", "--n", "25", "--seed", "2", "--out", "t.tsp"], dir.path()));
    assert_ok(&hctsp(
        &[
            "solve", "--instance", "t.tsp", "--algo", "ils", "--budget-evals", "2000", "--out",
            ".", "--trace",
        ],
        dir.path(),
    ));
    let rows = csv_rows(&dir.path().join("rand25-s2-ils-s0.trace.csv"));
    assert_eq!(rows[0], ["event", "cost_model", "cost_orig", "label", "order"]);
    assert!(rows.iter().any(|r| r[0] == "local_optimum"));
    assert!(rows.iter().any(|r| r[0] == "perturbation"));
}

#[test]
fn compare_curves_have_full_grids_and_self_consistent_auc() {
    let dir = tempfile::tempdir().unwrap();
    assert_ok(&hctsp(&["gen", "--n", "30", "--seed", "3", "--out", "t.tsp"], dir.path()));
    assert_ok(&hctsp(
        &[
            "compare",
            "--instance",
            "t.tsp",
            "--algo",
            "ils,ils,lsils",
            "--runs",
            "2",
            "--budget-evals",
            "4000",
            "--out",
            "cmp",
        ],
        dir.path(),
    ));
    let auc_rows = csv_rows(&dir.path().join("cmp/auc-rand30-s3.csv"));
    assert_eq!(auc_rows[0], ["instance", "algo", "runs", "reference_cost", "auc"]);
    assert_eq!(auc_rows.len(), 4);
    // Two copies of the same algorithm on shared seeds agree exactly.
    assert_eq!(auc_rows[1][4], auc_rows[2][4]);

    // The reported AUC equals auc() applied to the emitted curve.
    let curve_rows = csv_rows(&dir.path().join("cmp/curve-rand30-s3-ils.csv"));
    assert_eq!(curve_rows.len() - 1, 100, "expected the 100-point grid");
    let curve: Vec<(f64, f64)> = curve_rows[1..]
        .iter()
        .map(|r| (r[0].parse().unwrap(), r[1].parse().unwrap()))
        .collect();
    let reported: f64 = auc_rows[1][4].parse().unwrap();
    assert!((auc(&curve).unwrap() - reported).abs() < 1e-9);
}

#[test]
fn analyze_reports_global_anchor_kind_for_known_optimum() {
    let dir = tempfile::tempdir().unwrap();
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../..");
    let inst = root.join("data/tsplib/berlin52.tsp");
    let opt = root.join("data/tours/berlin52.opt.tour");
    assert_ok(&hctsp(
        &[
            "analyze",
            "--instance",
            inst.to_str().unwrap(),
            "--anchor",
            &format!("opt:{}", opt.to_str().unwrap()),
            "--lambda-grid",
            "0,0.1",
            "--runs",
            "2",
            "--budget-evals",
            "5000",
            "--out",
            ".",
        ],
        dir.path(),
    ));
    let rows = csv_rows(&dir.path().join("landscape-berlin52.csv"));
    assert_eq!(
        rows[0],
        [
            "instance",
            "lambda",
            "anchor_kind",
            "runs",
            "lo_density",
            "escaping_rate",
            "fdc",
            "mean_runtime_s",
            "censored"
        ]
    );
    assert_eq!(rows.len(), 3);
    for row in &rows[1..] {
        assert_eq!(row[0], "berlin52");
        assert_eq!(row[2], "global");
    }
}

#[test]
fn config_file_values_are_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    assert_ok(&hctsp(&["gen", "--n", "30", "--seed", "4", "--out", "t.tsp"], dir.path()));
    fs::write(
        dir.path().join("exp.conf"),
        "instance = t.tsp\nalgo = ils\nbudget-evals = 2000\nseed = 3\nout = fromconf\n",
    )
    .unwrap();
    // Config alone.
    assert_ok(&hctsp(&["solve", "--config", "exp.conf"], dir.path()));
    assert!(dir.path().join("fromconf/rand30-s4-ils-s3.tour").exists());
    // Flag wins over config.
    assert_ok(&hctsp(&["solve", "--config", "exp.conf", "--seed", "8"], dir.path()));
    assert!(dir.path().join("fromconf/rand30-s4-ils-s8.tour").exists());
}

#[test]
fn exit_codes_distinguish_config_and_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    assert_ok(&hctsp(&["gen", "--n", "30", "--seed", "1", "--out", "t.tsp"], dir.path()));
    let bad_algo = hctsp(
        &["solve", "--instance", "t.tsp", "--algo", "nope", "--out", "."],
        dir.path(),
    );
    assert_eq!(bad_algo.status.code(), Some(2));
    let missing = hctsp(
        &["solve", "--instance", "missing.tsp", "--algo", "ils", "--out", "."],
        dir.path(),
    );
    assert_eq!(missing.status.code(), Some(3));
    let bad_schedule = hctsp(
        &[
            "solve", "--instance", "t.tsp", "--algo", "lsils", "--schedule", "setting9", "--out",
            ".",
        ],
        dir.path(),
    );
    assert_eq!(bad_schedule.status.code(), Some(2));
    let tiny = hctsp(&["gen", "--n", "2", "--seed", "0"], dir.path());
    assert_eq!(tiny.status.code(), Some(2));
}
