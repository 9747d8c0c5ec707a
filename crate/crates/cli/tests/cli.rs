//! End-to-end behavior of the `walk` binary: command payloads, file
//! ingestion, and exit codes.

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_walk"))
        .args(args)
        .output()
        .unwrap()
}

fn json(output: &Output) -> Value {
    assert!(output.status.success(), "command failed: {output:?}");
    serde_json::from_slice(&output.stdout).unwrap()
}

#[test]
fn pst_on_the_four_cycle_family() {
    let out = run(&[
        "pst",
        "--graph",
        "multipartite:2,2",
        "--x",
        "0",
        "--y",
        "1",
        "--tau",
        "2",
    ]);
    let payload = json(&out);
    assert_eq!(payload["pst"], Value::Bool(true));
    assert_eq!(payload["trivial"], Value::Bool(false));
    let gamma_re = payload["phase"][0].as_f64().unwrap();
    let gamma_im = payload["phase"][1].as_f64().unwrap();
    assert!((gamma_re - 1.0).abs() <= 1e-10 && gamma_im.abs() <= 1e-10);
}

#[test]
fn pst_tripartite_at_time_six() {
    let out = run(&[
        "pst",
        "--graph",
        "multipartite:3,2",
        "--x",
        "0",
        "--y",
        "1",
        "--tau",
        "6",
    ]);
    assert_eq!(json(&out)["pst"], Value::Bool(true));
}

#[test]
fn no_pst_on_the_triangle() {
    let out = run(&[
        "pst",
        "--graph",
        "complete:3",
        "--x",
        "0",
        "--y",
        "1",
        "--tau",
        "1",
    ]);
    let payload = json(&out);
    assert_eq!(payload["pst"], Value::Bool(false));
    assert_eq!(payload["phase"], Value::Null);
}

#[test]
fn scan_reports_the_single_bipartite_hit() {
    let out = run(&[
        "scan",
        "--graph",
        "multipartite:2,2",
        "--x",
        "0",
        "--tau-max",
        "3",
    ]);
    let payload = json(&out);
    let hits = payload["hits"].as_array().unwrap();
    assert_eq!(hits.len(), 1);
    assert_eq!(hits[0]["target"], Value::from(1));
    assert_eq!(hits[0]["time"], Value::from(2));
    assert_eq!(payload["pruned_times"], Value::from(2));
}

#[test]
fn scan_csv_has_one_row_per_hit() {
    let out = run(&[
        "scan",
        "--graph",
        "multipartite:3,2",
        "--x",
        "0",
        "--tau-max",
        "11",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(
        lines[0],
        "time,target,amplitude_re,amplitude_im,amplitude_abs,pst,trivial"
    );
    assert!(lines[1].starts_with("6,1,"));
}

#[test]
fn period_of_the_bipartite_family() {
    let out = run(&["period", "--graph", "multipartite:2,3"]);
    assert_eq!(json(&out)["period"], Value::from(4));
}

#[test]
fn period_none_within_bound_still_exits_zero() {
    let out = run(&["period", "--graph", "multipartite:3,2", "--bound", "11"]);
    let payload = json(&out);
    assert_eq!(payload["period"], Value::Null);
    assert_eq!(payload["bound"], Value::from(11));
}

#[test]
fn support_of_the_tripartite_family() {
    let out = run(&["support", "--graph", "multipartite:3,2", "--x", "0"]);
    let payload = json(&out);
    let support: Vec<f64> = payload["support"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_f64().unwrap())
        .collect();
    assert_eq!(support.len(), 3);
    for (value, expected) in support.iter().zip([1.0, 0.0, -0.5]) {
        assert!((value - expected).abs() <= 1e-12, "{value} vs {expected}");
    }
}

#[test]
fn simulate_two_steps_reaches_the_antipodal_vertex_state() {
    let out = run(&["simulate", "--graph", "cycle:4", "--x", "0", "--tau", "2"]);
    let payload = json(&out);
    let arcs = payload["arcs"].as_array().unwrap();
    let last = payload["trace"].as_array().unwrap().last().unwrap().clone();
    assert!((last["norm"].as_f64().unwrap() - 1.0).abs() <= 1e-9);
    // Final state must be the vertex state of the antipodal vertex 2:
    // amplitude 1/sqrt(2) exactly on the arcs terminating there.
    let weight = 1.0 / 2.0f64.sqrt();
    for (arc, amp) in arcs.iter().zip(last["amplitudes"].as_array().unwrap()) {
        let expected = if arc["terminus"] == 2 { weight } else { 0.0 };
        let re = amp["re"].as_f64().unwrap();
        let im = amp["im"].as_f64().unwrap();
        assert!((re - expected).abs() <= 1e-12 && im.abs() <= 1e-12);
    }
}

#[test]
fn simulate_zero_steps_echoes_the_initial_state() {
    let out = run(&[
        "simulate",
        "--graph",
        "complete:3",
        "--x",
        "0",
        "--tau",
        "0",
    ]);
    let payload = json(&out);
    assert_eq!(payload["trace"].as_array().unwrap().len(), 1);
}

#[test]
fn simulate_triangle_returns_after_three_steps() {
    let out = run(&[
        "simulate",
        "--graph",
        "complete:3",
        "--x",
        "1",
        "--tau",
        "3",
    ]);
    let payload = json(&out);
    let trace = payload["trace"].as_array().unwrap();
    let first = trace.first().unwrap()["amplitudes"]
        .as_array()
        .unwrap()
        .clone();
    let last = trace.last().unwrap()["amplitudes"]
        .as_array()
        .unwrap()
        .clone();
    for (a, b) in first.iter().zip(&last) {
        let da = (a["re"].as_f64().unwrap() - b["re"].as_f64().unwrap()).abs();
        let db = (a["im"].as_f64().unwrap() - b["im"].as_f64().unwrap()).abs();
        assert!(da <= 1e-12 && db <= 1e-12);
    }
}

#[test]
fn edge_list_file_roundtrip() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# a 5-cycle with labels").unwrap();
    writeln!(file, "a b\nb c\nc d\nd e\ne a").unwrap();
    let path = file.path().to_str().unwrap();
    let out = run(&["period", "--graph", path, "--bound", "100"]);
    let payload = json(&out);
    // A 5-cycle walk shifts arcs around two directed cycles of length 5.
    assert_eq!(payload["period"], Value::from(5));
}

#[test]
fn usage_errors_exit_two() {
    let bad_vertex = run(&[
        "pst", "--graph", "cycle:4", "--x", "9", "--y", "0", "--tau", "1",
    ]);
    assert_eq!(bad_vertex.status.code(), Some(2));
    assert!(!bad_vertex.stderr.is_empty());

    let unknown_family = run(&["period", "--graph", "torus:3"]);
    assert_eq!(unknown_family.status.code(), Some(2));

    let bad_family_args = run(&["period", "--graph", "multipartite:2"]);
    assert_eq!(bad_family_args.status.code(), Some(2));

    let missing_file = run(&["period", "--graph", "/nonexistent/graph.txt"]);
    assert_eq!(missing_file.status.code(), Some(2));

    let csv_not_a_table = run(&[
        "pst", "--graph", "cycle:4", "--x", "0", "--y", "1", "--tau", "1", "--format", "csv",
    ]);
    assert_eq!(csv_not_a_table.status.code(), Some(2));

    let missing_args = run(&["pst", "--graph", "cycle:4"]);
    assert_eq!(missing_args.status.code(), Some(2));

    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "0 0").unwrap();
    let self_loop = run(&["period", "--graph", file.path().to_str().unwrap()]);
    assert_eq!(self_loop.status.code(), Some(2));

    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "0 1\n2 3").unwrap();
    let disconnected = run(&["period", "--graph", file.path().to_str().unwrap()]);
    assert_eq!(disconnected.status.code(), Some(2));
}

#[test]
fn walk_threads_must_be_a_positive_integer() {
    let out = Command::new(env!("CARGO_BIN_EXE_walk"))
        .args(["verify"])
        .env("WALK_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
