use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(dir: &Path, args: &[&str]) -> (i32, Value) {
    let out: Output = Command::new(env!("CARGO_BIN_EXE_poset-queues"))
        .current_dir(dir)
        .env_remove("POSET_QUEUES_JOBS")
        .args(args)
        .output()
        .expect("binary runs");
    let json: Value = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("stdout of {args:?} is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    assert_eq!(json["tool"], "poset-queues");
    assert!(json["version"].is_string());
    assert!(json["input_digest"].as_str().unwrap().starts_with("sha256:"));
    (out.status.code().expect("exit code"), json)
}

#[test]
fn small_counterexample_needs_three_queues() {
    let dir = TempDir::new().unwrap();
    let (code, _) = run(dir.path(), &["generate", "--family", "counterexample", "--p", "6", "--q", "2", "-o", "g.json"]);
    assert_eq!(code, 0);
    let (code, out) = run(dir.path(), &["qn-exact", "g.json"]);
    assert_eq!(code, 0);
    assert_eq!(out["result"]["queue_number"], 3);
    assert_eq!(out["result"]["proven"], true);
    assert_eq!(out["result"]["certificate"]["queue_count"], 3);
}

#[test]
fn mru_layout_of_the_mru_family() {
    let dir = TempDir::new().unwrap();
    run(dir.path(), &["generate", "--family", "mru-lb", "--w", "4", "-o", "m.json"]);
    let (code, out) = run(dir.path(), &["layout", "m.json", "--strategy", "mru", "--dot", "m.dot"]);
    assert_eq!(code, 0);
    assert_eq!(out["result"]["queue_count"], 10);
    let dot = std::fs::read_to_string(dir.path().join("m.dot")).unwrap();
    assert!(dot.starts_with("digraph {"));
}

#[test]
fn order_that_is_not_an_extension_is_rejected() {
    let dir = TempDir::new().unwrap();
    run(dir.path(), &["generate", "--family", "lazy-lb", "--w", "2", "-o", "l.json"]);
    // v2 is above v1
    std::fs::write(dir.path().join("order.json"), r#"["v2","v1","v3","v4","v5"]"#).unwrap();
    let (code, out) = run(dir.path(), &["rainbow", "l.json", "--order", "order.json"]);
    assert_eq!(code, 2);
    assert_eq!(out["error"]["kind"], "NotALinearExtension");
    std::fs::write(dir.path().join("order.json"), r#"["v1","v2","v3","v4","v5"]"#).unwrap();
    let (code, out) = run(dir.path(), &["rainbow", "l.json", "--order", "order.json"]);
    assert_eq!(code, 0);
    assert!(out["result"]["max_rainbow"].as_u64().unwrap() >= 1);
}

#[test]
fn usage_and_input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    assert_eq!(run(dir.path(), &["no-such-command"]).0, 2);
    assert_eq!(run(dir.path(), &["analyze", "missing.json"]).0, 2);
    assert_eq!(run(dir.path(), &["generate", "--family", "general", "--w", "3"]).0, 2);
    assert_eq!(run(dir.path(), &["generate", "--family", "counterexample", "--p", "6"]).0, 2);
    std::fs::write(dir.path().join("bad.json"), r#"{"schema_version":"1","elements":["a","a"],"relations":[]}"#).unwrap();
    let (code, out) = run(dir.path(), &["analyze", "bad.json"]);
    assert_eq!(code, 2);
    assert_eq!(out["error"]["kind"], "SchemaError");
    assert!(out["error"]["message"].as_str().unwrap().contains("$.elements[1]"));
    std::fs::write(
        dir.path().join("cyc.json"),
        r#"{"schema_version":"1","elements":["a","b"],"relations":[["a","b"],["b","a"]]}"#,
    )
    .unwrap();
    assert_eq!(run(dir.path(), &["analyze", "cyc.json"]).1["error"]["kind"], "Cycle");
}

#[test]
fn budget_exhaustion_exits_with_three() {
    let dir = TempDir::new().unwrap();
    run(dir.path(), &["generate", "--family", "counterexample", "--p", "31", "--q", "22", "--tilde", "-o", "t.json"]);
    let (code, out) = run(dir.path(), &["qn-exact", "t.json", "--node-budget", "10"]);
    assert_eq!(code, 3);
    assert_eq!(out["result"]["proven"], false);
    assert!(out["result"]["queue_number"].is_null());
}

#[test]
fn constraints_and_upper_bounds() {
    let dir = TempDir::new().unwrap();
    run(dir.path(), &["generate", "--family", "counterexample", "--p", "6", "--q", "2", "-o", "g.json"]);
    let (code, out) = run(dir.path(), &["qn-exact", "g.json", "--upper", "3"]);
    assert_eq!(code, 0, "nothing below 3 exists");
    assert_eq!(out["result"]["exhausted"], true);
    let (code, out) = run(dir.path(), &["qn-exact", "g.json", "--constraint", "b1,a1"]);
    assert_eq!(code, 2);
    assert_eq!(out["error"]["kind"], "InconsistentConstraint");
    let (code, _) = run(dir.path(), &["qn-exact", "g.json", "--constraint", "c6,b1"]);
    assert_eq!(code, 0);
}

#[test]
fn extend_and_analyze() {
    let dir = TempDir::new().unwrap();
    run(dir.path(), &["generate", "--family", "lazy-lb", "--w", "3", "-o", "l.json"]);
    let (_, a) = run(dir.path(), &["analyze", "l.json"]);
    assert_eq!(a["result"]["elements"], 19);
    assert_eq!(a["result"]["width"], 3);
    for s in ["lazy", "mru", "random"] {
        let (code, e) = run(dir.path(), &["extend", "l.json", "--strategy", s, "--seed", "7"]);
        assert_eq!(code, 0);
        assert_eq!(e["result"]["extension"].as_array().unwrap().len(), 19);
    }
    // two runs with one seed agree
    let first = run(dir.path(), &["extend", "l.json", "--strategy", "random", "--seed", "3"]).1;
    let second = run(dir.path(), &["extend", "l.json", "--strategy", "random", "--seed", "3"]).1;
    assert_eq!(first, second);
}

#[test]
fn digest_tracks_the_input() {
    let dir = TempDir::new().unwrap();
    run(dir.path(), &["generate", "--family", "general", "--w", "2", "-o", "a.json"]);
    run(dir.path(), &["generate", "--family", "general", "--w", "4", "-o", "b.json"]);
    let a = run(dir.path(), &["analyze", "a.json"]).1["input_digest"].clone();
    let a2 = run(dir.path(), &["analyze", "a.json"]).1["input_digest"].clone();
    let b = run(dir.path(), &["analyze", "b.json"]).1["input_digest"].clone();
    assert_eq!(a, a2);
    assert_ne!(a, b);
}

#[test]
fn lifted_generation() {
    let dir = TempDir::new().unwrap();
    let (code, out) = run(dir.path(), &["generate", "--family", "lifted", "--p", "6", "--q", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out["result"]["elements"], 31);
    assert_eq!(out["result"]["document"]["metadata"]["family"], "lifted");
    let (code, out) = run(dir.path(), &["generate", "--family", "lifted", "--w", "2"]);
    assert_eq!(code, 0);
    assert_eq!(out["result"]["elements"], 13);
}
