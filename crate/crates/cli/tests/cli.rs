use std::process::{Command, Output};

use isog7_core::census::count_rational_brute;
use num_bigint::BigUint;
use serde_json::Value;

fn isog7(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isog7"))
        .args(args)
        .env_remove("ISOG7_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn enumerate_csv_rows() {
    let o = isog7(&["enumerate", "--max-height", "1e9", "--format", "csv"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let lines: Vec<&str> = s.lines().collect();
    assert_eq!(
        lines[0],
        "a,b,A_red,B_red,twist_height,twist_defect,C_value"
    );
    assert_eq!(lines.len(), 18);
    assert_eq!(lines[1], "14,5,-3,62,103788,1029,441");
    // configuration goes to stderr
    assert!(String::from_utf8_lossy(&o.stderr).contains("\"max_height\":\"1000000000\""));
}

#[test]
fn enumerate_json_empty_and_keys() {
    let o = isog7(&["enumerate", "--max-height", "100", "--format", "json"]);
    assert!(o.status.success());
    assert_eq!(json(&o), Value::Array(vec![]));
    let o = isog7(&["enumerate", "--max-height", "2e5", "--format", "json"]);
    let v = json(&o);
    let keys: Vec<&str> = v[0]
        .as_object()
        .unwrap()
        .keys()
        .map(String::as_str)
        .collect();
    assert_eq!(
        keys,
        [
            "a",
            "b",
            "A_red",
            "B_red",
            "twist_height",
            "twist_defect",
            "C_value"
        ]
    );
    assert_eq!(v[1]["twist_height"], 164268);
}

#[test]
fn deterministic_across_runs_and_threads() {
    let a = isog7(&["enumerate", "--max-height", "1e15", "--threads", "1"]);
    let b = isog7(&["enumerate", "--max-height", "1e15", "--threads", "3"]);
    let c = isog7(&["enumerate", "--max-height", "1e15"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn count_reports() {
    let o = isog7(&[
        "count",
        "--max-height",
        "1e9",
        "--prime-bound",
        "1e5",
        "--mc-samples",
        "1e5",
    ]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["n_tw"], 17);
    let brute = count_rational_brute(&BigUint::from(10u64.pow(9))).unwrap();
    assert_eq!(v["n_rational"], brute);
    assert_eq!(v["histogram"].as_array().unwrap().len(), 17);
    assert_eq!(v["config"]["prime_bound"], 100000);

    let o = isog7(&[
        "count",
        "--max-height",
        "1e3",
        "--prime-bound",
        "1e5",
        "--mc-samples",
        "1e5",
    ]);
    let v = json(&o);
    assert_eq!(
        (v["n_tw"].as_u64(), v["n_rational"].as_u64()),
        (Some(0), Some(0))
    );
}

#[test]
fn verify_passes_and_fails() {
    let o = isog7(&["verify", "--max-height", "1e10"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["passed"], true);

    let o = isog7(&["verify", "--max-height", "1e10", "--corrupt-record", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["passed"], false);
    let d = &v["discrepancies"][0];
    assert_eq!(d["kind"], "mismatch");
    assert_eq!(d["expected"]["a"], 0);
    assert_eq!(d["expected"]["twist_defect"], 21);
    assert_eq!(d["actual"]["twist_defect"], 22);

    let o = isog7(&["verify", "--max-height", "1e20"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    for args in [
        &["enumerate", "--max-height", "0"][..],
        &["enumerate", "--max-height", "1.5"],
        &["enumerate", "--max-height", "1e9", "--format", "xml"],
        &["frobnicate"],
        &["constants", "--mc-samples", "10"],
        &["count", "--max-height", "1e9", "--prime-bound", "5"],
        &["table", "--threads", "0"],
    ] {
        assert_eq!(isog7(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(isog7(&["--help"]).status.code(), Some(0));
}

#[test]
fn table_first_row() {
    let o = isog7(&["table"]);
    let s = stdout(&o);
    assert_eq!(s.lines().nth(1), Some("(-3, 62) (14, 5) 103788 1029"));
    assert_eq!(s.lines().count(), 18);
}

#[test]
fn constants_bundle() {
    let args = [
        "constants",
        "--prime-bound",
        "1e8",
        "--mc-samples",
        "1e7",
        "--seed",
        "42",
        "--census-cutoff",
        "1e24",
    ];
    let a = isog7(&args);
    assert!(a.status.success());
    let v = json(&a);
    let lo = v["Q"]["lower"].as_f64().unwrap();
    let hi = v["Q"]["upper"].as_f64().unwrap();
    assert!(lo < 17.4604052311 && 17.4604052311 < hi);
    assert_eq!(v["R"]["seed"], 42);
    assert_eq!(v["config"]["census_cutoff"], "1000000000000000000000000");
    let b = isog7(&args);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_file_and_env_dir() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_isog7"))
        .args(["table", "--output", "t.txt"])
        .env("ISOG7_OUTPUT_DIR", dir.path())
        .output()
        .unwrap();
    assert!(o.status.success() && o.stdout.is_empty());
    let s = std::fs::read_to_string(dir.path().join("t.txt")).unwrap();
    assert!(s.contains("(-603, 5706) (-28, 11) 879077772 1029"));
}

#[test]
fn table_cache_reuse() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("reps.bin");
    let c = cache.to_str().unwrap();
    let a = isog7(&["enumerate", "--max-height", "1e20", "--table-cache", c]);
    assert!(a.status.success() && cache.exists());
    let b = isog7(&["enumerate", "--max-height", "1e20", "--table-cache", c]);
    let plain = isog7(&["enumerate", "--max-height", "1e20"]);
    assert_eq!(a.stdout, plain.stdout);
    assert_eq!(b.stdout, plain.stdout);
    std::fs::write(&cache, b"garbage").unwrap();
    let bad = isog7(&["enumerate", "--max-height", "1e20", "--table-cache", c]);
    assert_eq!(bad.status.code(), Some(1));
}
