use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn hasse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hasse"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn scratch(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name)
}

fn stdout_json(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("json line"))
        .collect()
}

#[test]
fn search_reports_smallest_alpha0() {
    let o = hasse(&["search", "--N", "7", "--count", "2"]);
    assert_eq!(code(&o), 0);
    let found = stdout_json(&o);
    assert_eq!(found.len(), 2);
    let a0: Vec<String> = found
        .iter()
        .map(|v| v["alpha0"]["value"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(a0, ["2", "18"]);
}

#[test]
fn inadmissible_prime_has_no_result() {
    let o = hasse(&["search", "--N", "13"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("hasse: "));
}

#[test]
fn malformed_arguments_exit_5() {
    assert_eq!(code(&hasse(&["search"])), 5);
    assert_eq!(
        code(&hasse(&["expand", "--N", "7", "--theta", "nonsense"])),
        5
    );
    let missing = scratch("does-not-exist.json");
    assert_eq!(code(&hasse(&["verify", missing.to_str().unwrap()])), 5);
    let garbage = scratch("garbage.json");
    std::fs::write(&garbage, "{not json").unwrap();
    assert_eq!(code(&hasse(&["verify", garbage.to_str().unwrap()])), 5);
}

#[test]
fn expand_emits_hashed_form() {
    let o = hasse(&["expand", "--N", "7", "--gamma", "2"]);
    assert_eq!(code(&o), 0);
    let v = &stdout_json(&o)[0];
    assert_eq!(v["gamma"], 2);
    assert_eq!(v["form"]["sha256"].as_str().unwrap().len(), 64);
}

#[test]
fn certify_then_verify_round_trip_and_tampering() {
    let o = hasse(&[
        "certify",
        "--corpus",
        "t1_n1",
        "--p-max",
        "40",
        "--height",
        "5",
        "--q-bound",
        "200",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let path = scratch("t1_n1.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let v = hasse(&["verify", path.to_str().unwrap()]);
    assert_eq!(code(&v), 0);
    assert_eq!(stdout_json(&v)[0]["pass"], true);

    let mut bundle: Value = serde_json::from_slice(&o.stdout).unwrap();
    bundle["local"]["certificates"][1]["v_grad"] = Value::from(3);
    let bad = scratch("t1_n1_tampered.json");
    std::fs::write(&bad, bundle.to_string()).unwrap();
    let v = hasse(&["verify", bad.to_str().unwrap()]);
    assert_eq!(code(&v), 4);
    assert_eq!(stdout_json(&v)[0]["pass"], false);

    let mut bundle: Value = serde_json::from_slice(&o.stdout).unwrap();
    bundle["form"]["sha256"] = Value::from("0".repeat(64));
    std::fs::write(&bad, bundle.to_string()).unwrap();
    let v = hasse(&["verify", bad.to_str().unwrap()]);
    assert_eq!(code(&v), 4);
    assert_eq!(stdout_json(&v)[0]["reason"], "hash mismatch");
}

#[test]
fn cubic_n7_does_not_certify() {
    let o = hasse(&[
        "certify",
        "--corpus",
        "cubic_n7",
        "--p-max",
        "10",
        "--height",
        "3",
    ]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("p = 7"));
}

#[test]
fn corpus_lists_every_entry() {
    let o = hasse(&["corpus"]);
    assert_eq!(code(&o), 0);
    let names: Vec<String> = stdout_json(&o)
        .iter()
        .map(|v| v["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(
        names,
        [
            "selmer",
            "swinnerton_dyer",
            "cubic_n7",
            "t1_n1",
            "t1_n2"
        ]
    );
}

#[test]
fn build_reads_search_output() {
    let o = hasse(&["search", "--N", "7"]);
    let path = scratch("params_n7.json");
    std::fs::write(&path, &o.stdout).unwrap();
    let b = hasse(&["build", path.to_str().unwrap()]);
    assert_eq!(code(&b), 0);
    let v = &stdout_json(&b)[0];
    assert_eq!(v["conditions"]["pass"], true);
    assert_eq!(v["form"]["variables"].as_array().unwrap().len(), 4);
}
