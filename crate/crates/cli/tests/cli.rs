//! End-to-end tests of the binary: every subcommand, the documented exit
//! codes, and the recheck round trip.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sosperfect"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

/// Scratch file seeded with the given contents.
fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sosperfect-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    let path = dir.join(name);
    std::fs::write(&path, contents).expect("scratch file");
    path
}

const C5: &str = "5 5\n0 1\n0 4\n1 2\n2 3\n3 4\n";
const DIAMOND: &str = "4 5\n0 1\n0 2\n1 2\n1 3\n2 3\n";
const PAW: &str = "4 4\n0 1\n0 2\n1 2\n2 3\n";

#[test]
fn generate_families_and_formats() {
    let out = run(&["generate", "cycle", "5"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), C5);

    let out = run(&["generate", "paley", "13"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("13 39\n"));

    let out = run(&["generate", "mycielski", "4"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("11 20\n"));

    let out = run(&["generate", "cycle", "5", "--format", "dot"]);
    assert!(stdout(&out).starts_with("graph g {"));

    let out = run(&["generate", "cycle", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 5);
    assert_eq!(v["m"], 5);

    // Same seed, same graph; different seed, different file (for n this
    // size a collision would be a miracle).
    let a = run(&["generate", "gnp", "20", "0.5", "--seed", "7"]);
    let b = run(&["generate", "gnp", "20", "0.5", "--seed", "7"]);
    let c = run(&["generate", "gnp", "20", "0.5", "--seed", "8"]);
    assert_eq!(stdout(&a), stdout(&b));
    assert_ne!(stdout(&a), stdout(&c));

    // No family: the listing, exit 0.
    let out = run(&["generate"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("complete-bipartite"));
}

#[test]
fn generate_usage_errors() {
    assert_eq!(code(&run(&["generate", "dodecahedron", "1"])), 4);
    assert_eq!(code(&run(&["generate", "cycle"])), 4);
    assert_eq!(code(&run(&["generate", "cycle", "2"])), 4);
    assert_eq!(code(&run(&["generate", "gnp", "10", "1.5"])), 4);
    assert_eq!(code(&run(&["not-a-command"])), 4);
}

#[test]
fn analyze_c5_report() {
    let path = scratch("c5.edges", C5);
    let out = run(&[
        "analyze",
        path.to_str().unwrap(),
        "--chi",
        "--perfect",
        "--aimp",
        "--certify",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["ladder"]["omega"], 2);
    let tp = v["ladder"]["theta_prime"].as_f64().unwrap();
    assert!((tp - 5.0f64.sqrt()).abs() < 1e-4);
    assert_eq!(v["ladder"]["chromatic"], 3);
    assert_eq!(v["sos"]["verdict_at_clique_number"], "NotSos");
    assert_eq!(v["perfect"]["perfect"], false);
    assert_eq!(v["perfect_by_definition"]["perfect"], false);
    assert_eq!(v["sos_perfect"]["sos_perfect"], false);
    assert!(v["certificates"]["hyperplane"].is_object());
    assert!(v["certificates"]["partitionable"].is_object());

    // The JSON report rechecks from the file alone.
    let report = scratch("c5-report.json", &stdout(&out));
    let out = run(&["analyze", "--recheck", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["passed"], true);

    // Tampering trips the recheck and exits 2.
    let tampered = stdout(&run(&["analyze", path.to_str().unwrap()]))
        .replace("\"omega\": 2", "\"omega\": 3");
    let bad = scratch("c5-tampered.json", &tampered);
    let out = run(&["analyze", "--recheck", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn analyze_reports_skips_and_honors_caps() {
    // Without --chi the chromatic number is skipped, explicitly.
    let path = scratch("skip.edges", C5);
    let out = run(&["analyze", path.to_str().unwrap()]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v["ladder"]["chromatic"].is_null());
    let skipped = v["skipped"].as_array().unwrap();
    assert!(skipped.iter().any(|s| s.as_str().unwrap().starts_with("chromatic number")));

    // An oversized graph is refused up front with the resource exit code.
    let out = bin()
        .args(["analyze", path.to_str().unwrap(), "--max-n", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code().unwrap(), 3);

    // Huge tolerance makes every verdict inconclusive.
    let out = run(&["analyze", path.to_str().unwrap(), "--tol", "0.2"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn certify_routes_by_verdict() {
    // Odd hole: separating hyperplane, bound near sqrt 5.
    let c5 = scratch("certify-c5.edges", C5);
    let out = run(&["certify", c5.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"], "separating-hyperplane");
    let sep = v["separation"]["hyperplane"]["separation"].as_f64().unwrap();
    assert!((sep - (2.0 - 5.0f64.sqrt())).abs() < 1e-3);
    assert!(v["separation"]["partitionable"].is_object());

    // Complete graph: the telescoping decomposition, n - 1 squares.
    let k4 = scratch("certify-k4.edges", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let out = run(&["certify", k4.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"], "sos-decomposition");
    assert_eq!(v["decomposition"]["k"], "4");
    assert_eq!(v["decomposition"]["terms"].as_array().unwrap().len(), 3);

    // Complete bipartite: one square (no nonadjacent cross pairs).
    let k32 = scratch("certify-k32.edges", "5 6\n0 3\n0 4\n1 3\n1 4\n2 3\n2 4\n");
    let out = run(&["certify", k32.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"], "sos-decomposition");
    assert_eq!(v["decomposition"]["k"], "2");
    assert_eq!(v["decomposition"]["terms"].as_array().unwrap().len(), 1);

    // Perfect, neither complete nor bipartite: explicit cone split.
    let diamond = scratch("certify-diamond.edges", DIAMOND);
    let out = run(&["certify", diamond.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["kind"], "cone-split");

    // Boundary case with no reachable split: honest inconclusive.
    let paw = scratch("certify-paw.edges", PAW);
    let out = run(&["certify", paw.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn certify_recheck_round_trip() {
    let c5 = scratch("roundtrip-c5.edges", C5);
    let json = stdout(&run(&["certify", c5.to_str().unwrap()]));
    let report = scratch("roundtrip-cert.json", &json);
    let out = run(&["certify", "--recheck", report.to_str().unwrap(), "--format", "text"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("verified"));

    let bad = scratch("roundtrip-bad.json", &json.replace("\"omega\": 2", "\"omega\": 3"));
    let out = run(&["certify", "--recheck", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}

#[test]
fn decompose_complete_and_bipartite() {
    let k4 = scratch("decompose-k4.edges", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let out = run(&["decompose", k4.to_str().unwrap(), "--format", "text"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("1/3 (3 x0^2"));

    let out = run(&["decompose", k4.to_str().unwrap(), "--method", "pairwise"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["decomposition"]["terms"].as_array().unwrap().len(), 6);

    let p4 = scratch("decompose-p4.edges", "4 3\n0 1\n1 2\n2 3\n");
    let out = run(&["decompose", p4.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["decomposition"]["k"], "2");

    // No exact route for an odd hole.
    let c5 = scratch("decompose-c5.edges", C5);
    assert_eq!(code(&run(&["decompose", c5.to_str().unwrap()])), 2);
}

#[test]
fn experiment_reruns_byte_identical() {
    let a = run(&["experiment", "10", "0.5", "4", "--seed", "5", "--tol", "1e-5"]);
    let b = run(&["experiment", "10", "0.5", "4", "--seed", "5", "--tol", "1e-5"]);
    assert_eq!(code(&a), 0);
    assert_eq!(stdout(&a), stdout(&b));
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["records"].as_array().unwrap().len(), 4);
    let noninteger = v["count_noninteger_theta_prime"].as_u64().unwrap();
    let not_sos = v["count_margin_certified_not_sos"].as_u64().unwrap();
    assert!(noninteger <= 4);
    assert!(not_sos >= noninteger);

    // p = 0: every graph is edgeless, the bound is exactly 1.
    let out = run(&["experiment", "10", "0", "3"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["count_noninteger_theta_prime"], 0);
}

#[test]
fn stdin_input_works() {
    use std::io::Write;
    let mut child = bin()
        .args(["analyze", "-", "--format", "text"])
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.as_mut().unwrap().write_all(C5.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code().unwrap(), 0);
    assert!(String::from_utf8(out.stdout).unwrap().contains("omega       = 2"));
}
