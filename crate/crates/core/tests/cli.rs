use std::process::Command;

use serde_json::Value;

fn modrecip(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_modrecip"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_stdout(args: &[&str]) -> Value {
    let out = modrecip(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn represent_reports_lexicographic_witness() {
    let v = json_stdout(&[
        "represent",
        "--p",
        "7",
        "--k",
        "1",
        "--epsilon",
        "1/1",
        "--a",
        "0",
    ]);
    assert_eq!(v["result"]["N"], 2);
    assert_eq!(v["result"]["witness"], serde_json::json!([1, 6]));
    assert_eq!(v["config"]["command"], "represent");
    assert_eq!(v["config"]["a"], 0);
    for key in ["config", "result", "diagnostics", "version"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn nmax_with_oracle() {
    let v = json_stdout(&[
        "nmax",
        "--p",
        "31",
        "--k",
        "2",
        "--epsilon",
        "1/2",
        "--oracle",
    ]);
    assert_eq!(v["diagnostics"][0], "oracle agrees");
    assert_eq!(v["result"]["histogram"].as_array().unwrap().len(), 31);
}

#[test]
fn exit_codes_and_error_objects() {
    let out = modrecip(&["represent", "--p", "10", "--epsilon", "1/2", "--a", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "NotPrime");
    assert!(out.stdout.is_empty());

    let out = modrecip(&["represent", "--p", "7", "--epsilon", "0.5", "--a", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "UsageError");

    let out = modrecip(&["nmax", "--p", "101", "--epsilon", "1/2", "--oracle"]);
    assert_eq!(out.status.code(), Some(2));

    let out = modrecip(&["grow", "--p", "101", "--beta", "1/2", "--u", "9"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "EmptyBase");
}

#[test]
fn output_file_and_formats() {
    let dir = std::env::temp_dir().join(format!("modrecip-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("scan.csv");
    let out = modrecip(&[
        "scan",
        "--primes",
        "2..31",
        "--k",
        "1",
        "--epsilon",
        "1/1",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next(),
        Some("p,H,base_size,n_max,max_layer,elapsed_ms")
    );
    assert_eq!(lines.count(), 11);
    std::fs::remove_dir_all(&dir).unwrap();

    let out = modrecip(&["nmax", "--p", "7", "--epsilon", "1/1", "--format", "text"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("n_max: 2"));
}

#[test]
fn json_output_is_reproducible_across_threads() {
    let args = ["grow", "--p", "997", "--beta", "1/4"];
    let a = modrecip(&[&args[..], &["--threads", "1"]].concat());
    let b = modrecip(&[&args[..], &["--threads", "8"]].concat());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn baseset_and_smoothset() {
    let v = json_stdout(&[
        "baseset", "--p", "101", "--k", "1", "--beta", "1/2", "--u", "2",
    ]);
    assert_eq!(v["result"]["report"]["tuple_count"], 6);
    assert_eq!(v["result"]["u_overridden"], true);
    let v = json_stdout(&["smoothset", "--p", "11", "--bound", "2"]);
    assert_eq!(v["result"]["members"], serde_json::json!([1, 2, 4, 8]));
}
