//! The `walshform` binary driven as a subprocess.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use walshform::io::FunctionFile;
use walshform::scalar;
use walshform::stepfun::StepFun2D;
use walshform::triple::Triple;
use walshform::verify::{random_triple, ValuePool};

fn walshform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_walshform")).args(args).output().expect("binary runs")
}

fn json(bytes: &[u8]) -> Value {
    serde_json::from_slice(bytes).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(bytes)))
}

fn write_triple(dir: &Path, name: &str, t: &Triple) -> String {
    let path = dir.join(name);
    std::fs::write(&path, FunctionFile::from_triple(t).to_json()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn evaluate_zero_input() {
    let dir = tempfile::tempdir().unwrap();
    let z = StepFun2D::zeros(2);
    let input = write_triple(dir.path(), "zero.json", &Triple::new(z.clone(), z.clone(), z).unwrap());
    let out = walshform(&["evaluate", "--input", &input, "--method", "both"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert_eq!(v["lambda_exact"], "0");
    assert_eq!(v["lambda_approx"], "0");
    assert_eq!(v["agree"], true);
    assert_eq!(v["M"], 2);
}

#[test]
fn evaluate_indicator_example() {
    let dir = tempfile::tempdir().unwrap();
    let f = StepFun2D::from_fn(1, |x, y| scalar::int(i64::from(x == 0 && y == 0)));
    let input = write_triple(dir.path(), "ind.json", &Triple::new(f.clone(), f.clone(), f).unwrap());
    let output = dir.path().join("out.json");
    let out = walshform(&["evaluate", "--input", &input, "--output", output.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v = json(&std::fs::read(&output).unwrap());
    assert_eq!(v["lambda_exact"], "1/16");
    assert_eq!(v["lambda_approx"], "0.0625");
    assert_eq!(v["methods"]["direct"], "1/16");
    assert_eq!(v["methods"]["tiles"], "1/16");
    assert_eq!(v["agree"], true);
}

#[test]
fn evaluate_single_methods() {
    let dir = tempfile::tempdir().unwrap();
    let t = random_triple(3, 4, 0, &ValuePool::default());
    let input = write_triple(dir.path(), "r.json", &t);
    let tiles = json(&walshform(&["evaluate", "--input", &input, "--method", "tiles"]).stdout);
    let direct = json(&walshform(&["evaluate", "--input", &input, "--method", "direct"]).stdout);
    assert_eq!(tiles["lambda_exact"], direct["lambda_exact"]);
    assert!(tiles.get("agree").is_none());
    assert!(tiles["methods"].get("direct").is_none());

    let capped = walshform(&["evaluate", "--input", &input, "--method", "direct", "--oracle-max-M", "2"]);
    assert_eq!(capped.status.code(), Some(1));
    assert_eq!(json(&capped.stderr)["error"]["kind"], "config");
}

#[test]
fn evaluate_rejects_bad_files() {
    let dir = tempfile::tempdir().unwrap();
    let row = |n: usize| vec!["1".to_string(); n];
    let mut file = FunctionFile::from_triple(&random_triple(2, 0, 0, &ValuePool::default()));
    file.f2 = vec![row(4), row(4), row(4), row(3)];
    let path = dir.path().join("short.json");
    std::fs::write(&path, file.to_json()).unwrap();
    let out = walshform(&["evaluate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = json(&out.stderr);
    assert_eq!(err["error"]["kind"], "shape");
    assert!(err["error"]["message"].as_str().unwrap().contains("F2"));

    std::fs::write(&path, r#"{"M": 1, "F1": [["1","x"],["0","0"]], "F2": [["0","0"],["0","0"]], "F3": [["0","0"],["0","0"]]}"#).unwrap();
    let out = walshform(&["evaluate", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out.stderr)["error"]["kind"], "parse");

    let out = walshform(&["evaluate", "--input", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out.stderr)["error"]["kind"], "io");
}

#[test]
fn verify_default_run_passes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let out = walshform(&["verify", "--M", "2", "--trials", "50", "--seed", "1", "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&std::fs::read(&report).unwrap());
    assert_eq!(v["overall"], true);
    assert_eq!(v["config"]["trials"], 50);
    for c in v["checks"].as_array().unwrap() {
        assert_eq!(c["fail"], 0, "{}", c["name"]);
        assert!(c.get("counterexample").is_none());
    }
}

#[test]
fn verify_degenerate_resolution() {
    let out = walshform(&["verify", "--M", "0", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert!(v["notes"].as_array().unwrap().iter().any(|n| n.as_str().unwrap().contains("vacuous")));
}

#[test]
fn verify_check_selector() {
    let out = walshform(&["verify", "--checks", "lemma", "--M", "3", "--trials", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert_eq!(v["config"]["checks"], serde_json::json!(["lemma"]));
    for c in v["checks"].as_array().unwrap() {
        assert!(c["name"].as_str().unwrap().starts_with("lemma."));
    }
}

#[test]
fn verify_rejects_oracle_cap_without_override() {
    let out = walshform(&["verify", "--oracle-max-M", "7"]);
    assert_eq!(out.status.code(), Some(1));
    let out = walshform(&["verify", "--M", "1", "--trials", "1", "--oracle-max-M", "7", "--oracle-override"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn search_reproducible_and_rechecked() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for path in [&a, &b] {
        let out = walshform(&["search", "--M", "2", "--iters", "0", "--seed", "7", "--output", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let v = json(&std::fs::read(&a).unwrap());
    assert_eq!(v["exact_recheck"], true);
    assert!(v["best_ratio"].as_f64().unwrap() <= 7.0 + 1e-9);

    // The reported optimum is itself a valid function file.
    let best = dir.path().join("best.json");
    std::fs::write(&best, serde_json::to_string(&v["best_input"]).unwrap()).unwrap();
    let eval = walshform(&["evaluate", "--input", best.to_str().unwrap()]);
    assert_eq!(eval.status.code(), Some(0));
    assert_eq!(json(&eval.stdout)["lambda_exact"], v["exact_lambda"]);
}

#[test]
fn search_climbs() {
    let out = walshform(&["search", "--M", "2", "--iters", "500", "--restarts", "2", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out.stdout);
    assert!(v["best_ratio"].as_f64().unwrap() < 7.0);
    assert_eq!(v["restarts"].as_array().unwrap().len(), 2);
}

#[test]
fn packets_tables() {
    let out = walshform(&["packets", "--M", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out.stdout), serde_json::json!([[1, 1], [1, -1]]));

    let out = walshform(&["packets", "--M", "3", "--interval", "1:1"]);
    let rows: Vec<Vec<i64>> = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].iter().all(|&v| v == 1));

    for bad in ["4:0", "1:2", "x"] {
        let out = walshform(&["packets", "--M", "3", "--interval", bad]);
        assert_eq!(out.status.code(), Some(1), "{bad}");
        assert_eq!(json(&out.stderr)["error"]["kind"], "parse");
    }
}

#[test]
fn usage_errors() {
    let out = walshform(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out.stderr)["error"]["kind"], "usage");
    let out = walshform(&["--version"]);
    assert_eq!(out.status.code(), Some(0));
}
