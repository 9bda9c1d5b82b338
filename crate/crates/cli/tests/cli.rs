use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fht_cli::csvio::{self, Samples};
use serde_json::Value;
use tempfile::TempDir;

fn fht(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fht"))
        .args(args)
        .output()
        .unwrap()
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("bad report ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

fn write_csv(p: &Path, x: Vec<f64>, v: Vec<f64>) {
    csvio::write_samples(p, &Samples::new(x, v)).unwrap();
}

fn s_nodes(n: usize) -> Vec<f64> {
    (0..n)
        .map(|m| ((m as f64 + 0.5) * std::f64::consts::PI / n as f64).cos())
        .collect()
}

#[test]
fn forward_on_shipped_data() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "F.csv");
    let plot = path(&dir, "F.svg");
    let o = fht(&[
        "forward",
        "-i",
        &data("shifted_f_t256.csv"),
        "-o",
        s(&out),
        "--plot",
        s(&plot),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rep = report(&o);
    assert_eq!(rep["command"], "forward");
    assert_eq!(rep["n"], 256);
    let err = rep["max_error"].as_f64().unwrap();
    assert!(err > 0.0 && err < 2e-2, "{err}");
    assert_eq!(csvio::read_samples(&out).unwrap().len(), 256);
    assert!(path(&dir, "F.uniform.csv").exists());
    assert!(std::fs::read_to_string(&plot).unwrap().contains("<svg"));
}

#[test]
fn invert_on_shipped_data() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "f.csv");
    let rep_path = path(&dir, "rep.json");
    let o = fht(&[
        "invert",
        "-i",
        &data("shifted_F_s256.csv"),
        "-o",
        s(&out),
        "--report",
        s(&rep_path),
    ]);
    assert!(o.status.success());
    let rep: Value = serde_json::from_str(&std::fs::read_to_string(&rep_path).unwrap()).unwrap();
    assert!(rep["max_error"].as_f64().unwrap() < 2e-2);
}

#[test]
fn invert_of_constant_is_zero() {
    let dir = TempDir::new().unwrap();
    let input = path(&dir, "one.csv");
    let out = path(&dir, "f.csv");
    write_csv(&input, s_nodes(64), vec![1.0; 64]);
    let o = fht(&["invert", "--n", "64", "-i", s(&input), "-o", s(&out)]);
    assert!(o.status.success());
    let f = csvio::read_samples(&out).unwrap();
    assert!(f.value.iter().all(|v| v.abs() < 1e-13), "{:?}", f.value);
}

fn sampled_f_mu(dir: &TempDir, mu: &str, grid: &str, n: &str) -> PathBuf {
    let p = path(dir, &format!("F_{mu}_{grid}.csv"));
    let reference = if grid == "u" { "s" } else { "t" };
    let o = fht(&[
        "sample",
        "--pair",
        "unit_circle",
        "--side",
        "F",
        "--grid",
        grid,
        "--n",
        n,
        "--mu",
        mu,
        "--reference-grid",
        reference,
        "--oracle-points",
        "4096",
        "-o",
        s(&p),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    p
}

#[test]
fn cosh_invert_direct_and_neumann_agree() {
    let dir = TempDir::new().unwrap();
    let input = sampled_f_mu(&dir, "1", "s", "64");
    let a = path(&dir, "direct.csv");
    let b = path(&dir, "neumann.csv");
    let o = fht(&[
        "cosh-invert",
        "--n",
        "64",
        "--mu",
        "1",
        "-i",
        s(&input),
        "-o",
        s(&a),
    ]);
    assert!(o.status.success());
    assert!(report(&o)["max_error"].as_f64().unwrap() < 1e-3);
    let o = fht(&[
        "cosh-invert",
        "--n",
        "64",
        "--mu",
        "1",
        "--method",
        "neumann",
        "--tol",
        "1e-13",
        "-i",
        s(&input),
        "-o",
        s(&b),
    ]);
    assert!(o.status.success());
    let rep = report(&o);
    assert!(rep["iterations"].as_u64().unwrap() > 1);
    assert!(rep["measured_ratio"].as_f64().unwrap() <= rep["bound_ratio"].as_f64().unwrap() + 0.02);
    assert!(!rep["residual_history"].as_array().unwrap().is_empty());
    let (a, b) = (
        csvio::read_samples(&a).unwrap(),
        csvio::read_samples(&b).unwrap(),
    );
    let diff = a
        .value
        .iter()
        .zip(&b.value)
        .fold(0.0_f64, |m, (x, y)| m.max((x - y).abs()));
    assert!(diff < 1e-10, "{diff}");
}

#[test]
fn cosh_forward_runs() {
    let dir = TempDir::new().unwrap();
    let input = path(&dir, "f.csv");
    let out = path(&dir, "F.csv");
    let o = fht(&[
        "sample",
        "--pair",
        "unit_circle",
        "--n",
        "64",
        "-o",
        s(&input),
    ]);
    assert!(o.status.success());
    let o = fht(&[
        "cosh-forward",
        "--n",
        "64",
        "--eta",
        "0.5",
        "-i",
        s(&input),
        "-o",
        s(&out),
    ]);
    assert!(o.status.success());
    assert_eq!(csvio::read_samples(&out).unwrap().len(), 64);
}

#[test]
fn mean_constrained_flow() {
    let dir = TempDir::new().unwrap();
    let input = sampled_f_mu(&dir, "0.5", "u", "64");
    let out = path(&dir, "f.csv");
    let o = fht(&[
        "cosh-invert",
        "--n",
        "64",
        "--mu",
        "0.5",
        "--method",
        "mean_constrained",
        "-i",
        s(&input),
        "-o",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(4), "mean-fbar is required");
    // (1/2) int cosh(t / 2) w(t) dt = pi I_1(1/2)
    let fbar = "0.8101988552186826";
    let o = fht(&[
        "cosh-invert",
        "--n",
        "64",
        "--mu",
        "0.5",
        "--method",
        "mean_constrained",
        "--mean-fbar",
        fbar,
        "-i",
        s(&input),
        "-o",
        s(&out),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(csvio::read_samples(&out).unwrap().len(), 64);
    let err = report(&o)["max_error"].as_f64().unwrap();
    assert!(err < 1e-3, "{err}");
}

#[test]
fn not_converged_exits_2_with_report() {
    let dir = TempDir::new().unwrap();
    let input = sampled_f_mu(&dir, "3", "s", "64");
    let out = path(&dir, "f.csv");
    let o = fht(&[
        "cosh-invert",
        "--n",
        "64",
        "--mu",
        "3",
        "--method",
        "neumann",
        "--max-iter",
        "5",
        "-i",
        s(&input),
        "-o",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(report(&o)["iterations"], 5);
}

#[test]
fn malformed_input_exits_3_with_line() {
    let dir = TempDir::new().unwrap();
    let input = path(&dir, "bad.csv");
    std::fs::write(&input, "x,value\n0.5,1.0\n0.25,oops\n").unwrap();
    let o = fht(&[
        "forward",
        "--n",
        "8",
        "-i",
        s(&input),
        "-o",
        s(&path(&dir, "o.csv")),
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(
        String::from_utf8_lossy(&o.stderr).contains("line 3"),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}

#[test]
fn wrong_grid_exits_3() {
    let dir = TempDir::new().unwrap();
    let input = path(&dir, "s.csv");
    write_csv(&input, s_nodes(64), vec![1.0; 64]);
    let o = fht(&[
        "forward",
        "--n",
        "64",
        "-i",
        s(&input),
        "-o",
        s(&path(&dir, "o.csv")),
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn parameter_errors_exit_4() {
    assert_eq!(fht(&["verify", "--eta", "0.9"]).status.code(), Some(4));
    assert_eq!(
        fht(&["cond-sweep", "--mu", "1", "--n", "4"]).status.code(),
        Some(4)
    );
}

#[test]
fn output_is_lossless() {
    let dir = TempDir::new().unwrap();
    let p = path(&dir, "x.csv");
    let v = vec![
        0.1,
        1.0 / 3.0,
        -2.5e-300,
        f64::MAX,
        f64::MIN_POSITIVE,
        12345.678901234567,
    ];
    write_csv(&p, v.clone(), v.clone());
    let back = csvio::read_samples(&p).unwrap();
    assert_eq!(back.x, v);
    assert_eq!(back.value, v);
}

#[test]
fn cond_sweep_table() {
    let o = fht(&["cond-sweep", "--mu", "0,4", "--n", "256"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows[0], vec![0.0, 1.0, 1.0]);
    assert!((rows[1][2] - 1490.5).abs() < 0.05);
    assert!(rows[1][1] <= rows[1][2]);
}

#[test]
fn null_experiment_table() {
    let o = fht(&["null-experiment", "--mu", "3", "--sizes", "16,32,64,128"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.starts_with("n,norm_ld,norm_lm"));
    assert_eq!(
        fht(&["null-experiment", "--mu", "0"]).status.code(),
        Some(4)
    );
}
