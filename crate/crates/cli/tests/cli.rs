use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_involis")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_file(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn flag_errors_exit_two() {
    assert_eq!(run(&["tabulate-tw", "--ensemble"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(run(&["exact-cdf", "--n", "1", "--m", "1"]).status.code(), Some(2));
    assert!(run(&["--help"]).status.success());
}

#[test]
fn numerical_errors_exit_one() {
    let o = run(&["tabulate-tw", "--ensemble", "3", "--xmin", "0", "--xmax", "1", "--step", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
    let o = run(&["exact-cdf", "--n", "30", "--m", "1", "--row", "1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["pgen", "--family", "diamond", "--l", "4", "--t", "1", "--beta", "0.5"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tabulate_tw_rows() {
    let o = run(&["tabulate-tw", "--ensemble", "2", "--xmin", "-5", "--xmax", "2", "--step", "0.1"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("x,cdf,density"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 71);
    let last: Vec<f64> = rows[70].split(',').map(|v| v.parse().unwrap()).collect();
    assert!((last[0] - 2.0).abs() < 1e-12);
    assert!(last[1] > 0.999 && last[1] <= 1.0);
}

#[test]
fn exact_cdf_json() {
    let o = run(&["exact-cdf", "--n", "1", "--m", "1", "--row", "1"]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["which"], "row");
    let row = &v["cdf"][1];
    assert_eq!((row["l"].as_u64(), row["p_num"].as_str(), row["p_den"].as_str()), (Some(1), Some("1"), Some("3")));
    // the manifest goes to stderr when the output goes to stdout
    let m: Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(m["subcommand"], "exact-cdf");
}

#[test]
fn grid_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.csv");
    let o = run(&["solve-pii", "--out", grid.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let header = std::fs::read_to_string(&grid).unwrap().lines().next().unwrap().to_string();
    assert_eq!(header, "x,u,du,v,logE,logF");
    let manifest = json_file(&dir.path().join("grid.csv.manifest.json"));
    assert_eq!(manifest["schema_version"], 1);
    assert_eq!(manifest["parameters"]["nodes"], 2001);

    let args = ["tabulate-tw", "--ensemble", "1", "--xmin", "-4", "--xmax", "3", "--step", "0.5"];
    let direct = run(&args);
    let mut with_grid = args.to_vec();
    with_grid.extend(["--grid", grid.to_str().unwrap()]);
    let loaded = run(&with_grid);
    assert!(loaded.status.success());
    assert_eq!(stdout(&direct), stdout(&loaded));
}

#[test]
fn monte_carlo_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let base = ["mc", "--ensemble", "involution_fixed_m", "--n", "300", "--alpha", "0.5", "--samples", "700", "--seed", "9", "--limit", "F4"];
    let mut outs = Vec::new();
    for threads in ["1", "3", "1"] {
        let path = dir.path().join(format!("mc{}.json", outs.len()));
        let samples = dir.path().join(format!("s{}.csv", outs.len()));
        let mut args = base.to_vec();
        args.extend(["--threads", threads, "--out", path.to_str().unwrap(), "--samples-out", samples.to_str().unwrap()]);
        let o = run(&args);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        outs.push((std::fs::read(&path).unwrap(), std::fs::read(&samples).unwrap()));
    }
    assert_eq!(outs[0], outs[1]);
    assert_eq!(outs[0], outs[2]);
    let v: Value = serde_json::from_slice(&outs[0].0).unwrap();
    assert_eq!(v["samples"], 700);
    assert_eq!(v["m"], 12);
    assert!(v["ks"].as_f64().unwrap() < 0.5);
    let csv = String::from_utf8(outs[0].1.clone()).unwrap();
    assert_eq!(csv.lines().next(), Some("lambda1,lambda2,chi1,chi2"));
    assert_eq!(csv.lines().count(), 701);
}

#[test]
fn pgen_and_depoisson() {
    let o = run(&["pgen", "--family", "square", "--l", "6", "--t", "1", "--alpha", "0.7"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let p = v["value"].as_f64().unwrap();
    assert!(p > 0.99 && p < 1.0);
    assert!(v["certified_tail_bound"].as_f64().unwrap() < 1e-12);

    let o = run(&["depoisson", "--l", "2,3", "--n", "3", "--m", "2", "--slack", "tail", "--with-exact"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let records = v["records"].as_array().unwrap();
    assert_eq!(records.len(), 2);
    assert!(records.iter().all(|r| r["contained"] == true));
}

#[test]
fn reproduce_recipes() {
    let o = run(&["reproduce", "poissonized", "--family", "square", "--alpha", "0.5", "--l", "40,80", "--x", "0"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["points"].as_array().unwrap().len(), 2);
    let o = run(&["reproduce", "first-row", "--alpha", "1.5"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["reproduce", "no-such-recipe"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn tabulate_interp_columns() {
    let o = run(&["tabulate-interp", "--xmin", "-2", "--xmax", "0", "--step", "1", "--w", "0,0.5"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,w,F_square,F_diamond");
    assert_eq!(lines.len(), 1 + 3 * 2);
}

#[test]
fn reproduce_crossover_report() {
    let o = run(&["reproduce", "crossover", "--w", "0.5", "--n", "2000", "--samples", "5000"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["recipe"], "crossover");
    assert_eq!(v["limit"], "Square(0.5)");
    assert_eq!(v["samples"], 5000);
    let ks = v["ks"].as_f64().unwrap();
    assert!((0.0..1.0).contains(&ks), "{ks}");
}
