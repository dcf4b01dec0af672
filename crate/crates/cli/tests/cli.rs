use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn tokenham(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tokenham"))
        .args(args)
        .output()
        .expect("run tokenham")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_owned()
}

/// Base graph of F_{m,n} as an edge list (the 1-token graph is the graph itself).
fn fan_edges(m: usize, n: usize) -> String {
    let params = format!("{m},{n}");
    let out = tokenham(&[
        "token-graph",
        "--family",
        "fan",
        "--params",
        &params,
        "--k",
        "1",
    ]);
    assert!(out.status.success());
    stdout(&out)
}

#[test]
fn fan_cycle_round_trips_through_verify() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "fan.txt", &fan_edges(3, 4));
    for k in ["2", "3"] {
        let out = tokenham(&["fan-cycle", "--m", "3", "--n", "4", "--k", k]);
        assert_eq!(out.status.code(), Some(0));
        let cert = write(dir.path(), "cert.json", &stdout(&out));
        let out = tokenham(&["verify", "--graph", &graph, "--k", k, "--cert", &cert]);
        assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
        let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
        assert_eq!(v["verdict"], "accept");
    }
}

#[test]
fn corrupted_certificate_reports_first_bad_step() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "fan.txt", &fan_edges(1, 3));
    let out = tokenham(&["fan-cycle", "--m", "1", "--n", "3", "--k", "2"]);
    let mut cert: Value = serde_json::from_str(&stdout(&out)).unwrap();
    cert["cycle"].as_array_mut().unwrap().swap(1, 4);
    let cert = write(dir.path(), "cert.json", &cert.to_string());

    let out = tokenham(&["verify", "--graph", &graph, "--k", "2", "--cert", &cert]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "reject");
    assert_eq!(v["reason"], "non_edge_at");
    assert_eq!(v["index"], 1);
}

#[test]
fn wrong_k_is_wrong_length() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "fan.txt", &fan_edges(2, 3));
    let out = tokenham(&["fan-cycle", "--m", "2", "--n", "3", "--k", "2"]);
    let cert = write(dir.path(), "cert.json", &stdout(&out));
    let out = tokenham(&["verify", "--graph", &graph, "--k", "3", "--cert", &cert]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["reason"], "wrong_length");
}

#[test]
fn text_output_names_fan_vertices() {
    let out = tokenham(&[
        "fan-cycle",
        "--m",
        "1",
        "--n",
        "3",
        "--k",
        "2",
        "--format",
        "text",
        "--normalize",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7);
    assert_eq!(lines[0], "{v1,w1}");
    assert_eq!(lines[1], "{v1,v2}");
    assert_eq!(lines[6], "marker: 0 1");
}

#[test]
fn over_threshold_fan_prints_witness() {
    let out = tokenham(&["fan-cycle", "--m", "5", "--n", "2", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["cut_size"], 10);
    assert_eq!(v["components"], 11);
    assert_eq!(v["cut"].as_array().unwrap().len(), 10);
}

#[test]
fn uncovered_parameters_are_unknown() {
    let out = tokenham(&["fan-cycle", "--m", "3", "--n", "2", "--k", "3"]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "unknown");
}

#[test]
fn cycle_token_graph_has_no_hamiltonian_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let out = tokenham(&[
        "token-graph",
        "--family",
        "cycle",
        "--params",
        "4",
        "--k",
        "2",
    ]);
    let edges = stdout(&out);
    assert!(edges.starts_with("# order 6\n"));
    let graph = write(dir.path(), "c4.txt", &edges);
    let out = tokenham(&["brute", "--graph", &graph]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stdout(&out), "none\n");
}

#[test]
fn star_token_graph_is_a_six_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let out = tokenham(&[
        "token-graph",
        "--family",
        "star",
        "--params",
        "3",
        "--k",
        "2",
    ]);
    let graph = write(dir.path(), "star.txt", &stdout(&out));
    let out = tokenham(&["brute", "--graph", &graph]);
    assert_eq!(out.status.code(), Some(0));
    let ids: Vec<usize> = stdout(&out)
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(sorted, (0..6).collect::<Vec<_>>());
}

#[test]
fn path_search_on_a_path() {
    let dir = tempfile::tempdir().unwrap();
    let graph = write(dir.path(), "p3.txt", "# order 3\n0 1\n1 2\n");
    let out = tokenham(&["brute", "--graph", &graph, "--path"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0 1 2\n");
    let out = tokenham(&["brute", "--graph", &graph]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn graycode_relations() {
    let out = tokenham(&[
        "graycode",
        "--relation",
        "transposition",
        "--n",
        "5",
        "--k",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 11);

    let out = tokenham(&["graycode", "--relation", "adjacent", "--n", "4", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = tokenham(&[
        "graycode",
        "--relation",
        "fan",
        "--m",
        "2",
        "--n",
        "3",
        "--k",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["words"].as_array().unwrap().len(), 10);
    assert_eq!(v["cyclic"], true);

    let out = tokenham(&[
        "graycode",
        "--relation",
        "apart2",
        "--n",
        "6",
        "--k",
        "3",
        "--budget",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(stdout(&out), "budget\n");
}

#[test]
fn usage_errors_and_cap() {
    assert_eq!(tokenham(&["fan-cycle", "--m", "x"]).status.code(), Some(64));
    assert_eq!(
        tokenham(&[
            "verify",
            "--graph",
            "/nonexistent",
            "--k",
            "2",
            "--cert",
            "/nonexistent"
        ])
        .status
        .code(),
        Some(64)
    );
    assert_eq!(
        tokenham(&["fan-cycle", "--m", "1", "--n", "2", "--k", "0"])
            .status
            .code(),
        Some(64)
    );

    let out = tokenham(&[
        "token-graph",
        "--family",
        "complete",
        "--params",
        "20",
        "--k",
        "10",
        "--max-vertices",
        "1000",
    ]);
    assert_eq!(out.status.code(), Some(65));
    let out = Command::new(env!("CARGO_BIN_EXE_tokenham"))
        .args([
            "token-graph",
            "--family",
            "complete",
            "--params",
            "8",
            "--k",
            "4",
        ])
        .env("TOKENHAM_MAX_VERTICES", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(65));
}

#[test]
fn dot_output_labels_subsets() {
    let out = tokenham(&[
        "token-graph",
        "--family",
        "fan",
        "--params",
        "1,2",
        "--k",
        "2",
        "--out",
        "dot",
    ]);
    let dot = stdout(&out);
    assert!(dot.starts_with("graph {\n"));
    assert!(dot.contains("[label=\"{v1,w1}\"]"));
    assert_eq!(dot.matches(" -- ").count(), 3);
}
