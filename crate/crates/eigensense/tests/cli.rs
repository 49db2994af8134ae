use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use eigensense::cli::sidecar_path;
use eigensense::formats::{load_threshold_table, load_tw_table};
use tempfile::{tempdir, TempDir};

fn run(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eigensense"))
        .args(args)
        .env("EIGENSENSE_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn workspace() -> (TempDir, std::path::PathBuf) {
    let dir = tempdir().unwrap();
    let cache = dir.path().join("cache");
    (dir, cache)
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn asymptotic_threshold_printed_with_twelve_digits() {
    let (_d, cache) = workspace();
    let o = run(&cache, &["threshold", "-K", "50", "-N", "1000", "--method", "as"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "2.48382110864\n");
}

#[test]
fn ratio_threshold_below_semi_asymptotic() {
    let (_d, cache) = workspace();
    let sa = run(&cache, &["threshold", "-K", "50", "-N", "1000", "--method", "sa", "--pfa", "0.1"]);
    let rd = run(&cache, &["threshold", "-K", "50", "-N", "1000", "--method", "rd", "--pfa", "0.1"]);
    assert!(sa.status.success() && rd.status.success());
    let sa: f64 = stdout(&sa).trim().parse().unwrap();
    let rd: f64 = stdout(&rd).trim().parse().unwrap();
    assert!(rd < sa, "rd {rd} sa {sa}");
    assert!(rd > 1.0);
}

#[test]
fn usage_errors_exit_with_two() {
    let (d, cache) = workspace();
    let out = d.path().join("x.out");
    let o = path_str(&out);
    let cases: Vec<Vec<&str>> = vec![
        vec!["tw-table", "--s-right", "3", "--out", o],
        vec!["threshold", "-K", "50", "-N", "1000", "--method", "sa", "--pfa", "1.5"],
        vec!["threshold", "-K", "50", "-N", "1000", "--method", "as", "--pfa", "0.1"],
        vec!["threshold", "-K", "1000", "-N", "50", "--method", "as"],
        vec!["threshold", "-K", "50", "-N", "1000", "--method", "rd"],
        vec!["roc", "--trials", "0", "--out", o],
        vec!["roc", "--workers", "0", "--trials", "5", "--out", o],
        vec!["cdf", "--out="],
        vec!["cdf", "--trials", "50", "--out", o],
        vec!["simulate", "--uncertainty-db=-1", "--trials", "5", "--out", o],
        vec!["threshold", "--method", "xx"],
    ];
    for args in cases {
        let r = run(&cache, &args);
        assert_eq!(r.status.code(), Some(2), "{args:?}: {}", stderr(&r));
        assert!(!out.exists(), "{args:?} wrote output");
    }
    assert!(!cache.exists(), "validation must precede any table construction");
}

#[test]
fn missing_table_is_a_file_error() {
    let (d, cache) = workspace();
    let missing = d.path().join("nope.json");
    let r = run(&cache, &["threshold", "--method", "rd", "--pfa", "0.1", "--table", path_str(&missing)]);
    assert_eq!(r.status.code(), Some(1));
    assert!(stderr(&r).contains("nope.json"));
}

#[test]
fn tw_table_rerun_is_byte_identical() {
    let (d, cache) = workspace();
    let a = d.path().join("a.json");
    let b = d.path().join("b.json");
    let r1 = run(&cache, &["tw-table", "--out", path_str(&a)]);
    let r2 = run(&cache, &["tw-table", "--rebuild", "--out", path_str(&b)]);
    assert!(r1.status.success() && r2.status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let table = load_tw_table(&a).unwrap();
    let summary = stdout(&r1);
    assert!(summary.contains(&format!("grid points: {}", table.grid().len())));
    assert!(summary.contains("mean: -1.77108"));
    assert!(summary.contains("variance: 0.81319"));
}

#[test]
fn threshold_table_written_and_reused() {
    let (d, cache) = workspace();
    let table = d.path().join("thr.json");
    let args = ["threshold", "-K", "8", "-N", "80", "--method", "rd", "--pfa", "0.01,0.1"];
    let first = run(&cache, &[&args[..], &["--out", path_str(&table)]].concat());
    assert!(first.status.success(), "{}", stderr(&first));
    assert_eq!(load_threshold_table(&table).unwrap().len(), 2);
    let again = run(&cache, &[&args[..], &["--table", path_str(&table)]].concat());
    assert_eq!(stdout(&again), stdout(&first));
    let missing = run(
        &cache,
        &["threshold", "-K", "8", "-N", "80", "--method", "rd", "--pfa", "0.2", "--table", path_str(&table)],
    );
    assert_eq!(missing.status.code(), Some(1));
}

#[test]
fn ratio_table_reused_by_threshold() {
    let (d, cache) = workspace();
    let ratio = d.path().join("ratio.json");
    let r = run(&cache, &["ratio-dist", "-K", "8", "-N", "80", "--out", path_str(&ratio)]);
    assert!(r.status.success(), "{}", stderr(&r));
    assert!(stdout(&r).contains("median: "));
    let direct = run(&cache, &["threshold", "-K", "8", "-N", "80", "--method", "rd", "--pfa", "0.1"]);
    let via = run(
        &cache,
        &["threshold", "-K", "8", "-N", "80", "--method", "rd", "--pfa", "0.1", "--table", path_str(&ratio)],
    );
    assert_eq!(stdout(&direct), stdout(&via));
    let wrong = run(
        &cache,
        &["threshold", "-K", "8", "-N", "90", "--method", "rd", "--pfa", "0.1", "--table", path_str(&ratio)],
    );
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn roc_csv_identical_across_worker_counts() {
    let (d, cache) = workspace();
    let mut outputs = Vec::new();
    for w in ["1", "3"] {
        let out = d.path().join(format!("roc{w}.csv"));
        let r = run(
            &cache,
            &[
                "roc", "-K", "6", "-N", "60", "--snr-db", "-8", "--trials", "150", "--seed", "9", "--pfa", "0.05,0.2",
                "--workers", w, "--out", path_str(&out),
            ],
        );
        assert!(r.status.success(), "{}", stderr(&r));
        outputs.push(fs::read_to_string(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let lines: Vec<&str> = outputs[0].lines().collect();
    assert_eq!(lines[0], "detector,target_pfa,empirical_pfa,empirical_pmd,trials_h0,trials_h1,gamma");
    assert_eq!(lines.len(), 1 + 1 + 3 * 2);
    assert!(lines[1].starts_with("as,,"));
}

#[test]
fn cdf_columns_monotone_and_sidecar_written() {
    let (d, cache) = workspace();
    let out = d.path().join("cdf.csv");
    let r = run(&cache, &["cdf", "-K", "6", "-N", "60", "--trials", "300", "--out", path_str(&out)]);
    assert!(r.status.success(), "{}", stderr(&r));
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,empirical_cdf,analytic_cdf"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 300);
    for w in rows.windows(2) {
        assert!(w[0][0] <= w[1][0] && w[0][1] <= w[1][1] && w[0][2] <= w[1][2]);
    }
    assert_eq!(rows[299][1], 1.0);
    let refs: serde_json::Value = serde_json::from_str(&fs::read_to_string(sidecar_path(&out)).unwrap()).unwrap();
    let (k, n) = (6f64, 60f64);
    let gamma_as = (n.sqrt() + k.sqrt()).powi(2) / (n.sqrt() - k.sqrt()).powi(2);
    assert!((refs["gamma_as"].as_f64().unwrap() - gamma_as).abs() < 1e-12);
    assert_eq!(refs["gamma_sa"].as_array().unwrap().len(), 5);
    let ks = refs["ks_distance"].as_f64().unwrap();
    assert!(ks > 0.0 && ks < 1.0);
}

#[test]
fn simulate_writes_rows_per_trial_and_detector() {
    let (d, cache) = workspace();
    let out = d.path().join("trials.csv");
    let args = [
        "simulate", "-K", "4", "-N", "40", "--trials", "5", "--detector", "rd", "--detector", "as", "--out",
        path_str(&out),
    ];
    let r = run(&cache, &args);
    assert!(r.status.success(), "{}", stderr(&r));
    let first = fs::read_to_string(&out).unwrap();
    assert_eq!(first.lines().count(), 1 + 2 * 5 * 2);
    assert!(first.starts_with("trial,hypothesis,detector,target_pfa,statistic,gamma,decision\n0,H0,rd,0.1,"));
    let r = run(&cache, &args);
    assert!(r.status.success());
    assert_eq!(fs::read_to_string(&out).unwrap(), first);
}
