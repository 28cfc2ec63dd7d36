use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn ellitri(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ellitri"))
        .args(args)
        .output()
        .expect("spawn ellitri")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn verify_passes_and_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let csv = dir.path().join("r.csv");
    let out = ellitri(&[
        "verify",
        "--samples",
        "8",
        "--json",
        json.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = read_json(&json);
    for key in ["schema_version", "tool_version", "command", "config", "identities", "sections", "overall_pass"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["command"], "verify");
    assert_eq!(v["config"]["samples"], 8);
    let ids = v["identities"].as_array().unwrap();
    assert!(!ids.is_empty());
    for rec in ids {
        assert!(rec["max_abs"].is_number());
        assert_eq!(rec["pass"], true);
    }
    assert!(std::fs::read_to_string(&csv).unwrap().lines().count() > ids.len());
}

#[test]
fn eval_prints_value() {
    let out = ellitri(&["eval", "eta", "--tau", "i"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let re: f64 = text.split_whitespace().next().unwrap().parse().unwrap();
    assert!((re - 0.768_225_422_326_056_6).abs() < 1e-14);

    let out = ellitri(&["eval", "f", "--z", "0", "--tau", "0.1+1.3i"]);
    let text = String::from_utf8(out.stdout).unwrap();
    for part in text.split_whitespace() {
        assert!(part.parse::<f64>().unwrap().abs() < 1e-16);
    }
}

#[test]
fn exit_codes() {
    // domain: τ below the real axis
    assert_eq!(ellitri(&["eval", "eta", "--tau", "0.1-1i"]).status.code(), Some(3));
    // usage: bad literal, missing argument, unknown builtin
    assert_eq!(ellitri(&["eval", "eta", "--tau", "1+*i"]).status.code(), Some(2));
    assert_eq!(ellitri(&["eval", "eisenstein", "--tau", "i"]).status.code(), Some(2));
    assert_eq!(ellitri(&["wdvv", "--builtin", "e8"]).status.code(), Some(2));
    assert_eq!(ellitri(&["verify", "--samples", "0"]).status.code(), Some(2));
    // i/o: unreadable system file, unwritable report
    assert_eq!(ellitri(&["wdvv", "--system", "/nonexistent/sys.txt"]).status.code(), Some(4));
    assert_eq!(
        ellitri(&["verify", "--samples", "2", "--json", "/nonexistent/dir/r.json"]).status.code(),
        Some(4)
    );
    // fail: A2 with unit weights is not a solution
    assert_eq!(ellitri(&["wdvv", "--builtin", "a2-roots-unit-weights", "--samples", "4"]).status.code(), Some(1));
}

#[test]
fn malformed_system_file_is_a_usage_error_without_report() {
    let dir = tempfile::tempdir().unwrap();
    let sys = dir.path().join("bad.txt");
    std::fs::write(&sys, "dim 2\nvector 1 0 weight\n").unwrap();
    let json = dir.path().join("r.json");
    let out = ellitri(&["wdvv", "--system", sys.to_str().unwrap(), "--json", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bad.txt"));
    assert!(!json.exists());
}

#[test]
fn wdvv_a1_dual_sections() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("w.json");
    let out = ellitri(&["wdvv", "--builtin", "a1-dual", "--samples", "6", "--json", json.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = read_json(&json);
    for key in ["well_distributed", "quartic", "plane_conditions", "reducible", "weight_lattice"] {
        assert!(v["sections"].get(key).is_some(), "missing section {key}");
    }
    assert_eq!(v["overall_pass"], true);
}

#[test]
fn dunkl_single_sample() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("d.json");
    let out = ellitri(&["dunkl", "--samples", "1", "--json", json.to_str().unwrap()]);
    let v = read_json(&json);
    assert!(v["sections"]["trig_limit"].is_object());
    let ids = v["identities"].as_array().unwrap();
    assert_eq!(ids.len(), 5);
    for rec in ids {
        assert_eq!(rec["samples_used"], 1);
    }
    assert!(matches!(out.status.code(), Some(0) | Some(1)));
}

#[test]
fn thread_cap_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let run = |threads: &str, name: &str| {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_ellitri"))
            .env("ELLITRI_THREADS", threads)
            .args(["verify", "--samples", "6", "--json", path.to_str().unwrap()])
            .output()
            .unwrap()
            .status;
        assert!(status.success());
        std::fs::read(path).unwrap()
    };
    assert_eq!(run("1", "a.json"), run("3", "b.json"));
}
