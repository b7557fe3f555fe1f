//! End-to-end checks of the binary: exit codes, JSON and CSV schemas,
//! file side effects, and byte-level determinism under fixed seeds.

use std::path::PathBuf;
use std::process::{Command, Output};

use edgedistant::comparability::ComparabilityBackend;
use edgedistant::distance::{find_distance, validate_set, DistanceOutcome};
use edgedistant::{ClassBackend, DistantEdgeSet, Graph};

const C5: &str = "5 5\n1 1 1 1 1\n0 1\n0 4\n1 2\n2 3\n3 4\n";
const P4: &str = "4 3\n1 1 1 1\n0 1\n1 2\n2 3\n";
const K5: &str = "5 10\n1 1 1 1 1\n0 1\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n";
/// Two disjoint 5-cycles: distance 2, no certificate of size 1.
const DOUBLE_C5: &str =
    "10 10\n1 1 1 1 1 1 1 1 1 1\n0 1\n0 4\n1 2\n2 3\n3 4\n5 6\n5 9\n6 7\n7 8\n8 9\n";

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("edgedistant-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("scratch dir");
    let path = dir.join(name);
    std::fs::write(&path, text).expect("scratch file");
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgedistant"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn keys(v: &serde_json::Value) -> Vec<&str> {
    let mut k: Vec<&str> = v.as_object().expect("object").keys().map(|s| s.as_str()).collect();
    k.sort();
    k
}

#[test]
fn solve_with_a_set_file_reports_the_full_schema() {
    let g = scratch("c5.graph", C5);
    let s = scratch("c5.set", "apex\n0 1\n");
    let out = run(&[
        "solve",
        "--graph",
        g.to_str().unwrap(),
        "--problem",
        "clique",
        "--set",
        s.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(
        keys(&v),
        [
            "class",
            "k",
            "leaf_calls",
            "m",
            "mode",
            "n",
            "problem",
            "runtime_ms",
            "verified",
            "vertices",
            "weight"
        ]
    );
    assert_eq!(v["problem"], "clique");
    assert_eq!(v["class"], "comparability");
    assert_eq!(v["n"], 5);
    assert_eq!(v["m"], 5);
    assert_eq!(v["k"], 1);
    assert_eq!(v["mode"], "apex");
    assert_eq!(v["vertices"], serde_json::json!([0, 1]));
    assert_eq!(v["weight"], 2);
    assert_eq!(v["leaf_calls"], 2);
    assert!(v["runtime_ms"].is_u64());
    assert!(v["verified"].is_null(), "no --verify, no oracle run");
}

#[test]
fn solve_search_verify_agrees_with_the_oracle() {
    let g = scratch("c5v.graph", C5);
    let out = run(&[
        "solve",
        "--graph",
        g.to_str().unwrap(),
        "--problem",
        "is",
        "--search",
        "--verify",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["k"], 1);
    assert_eq!(v["weight"], 2);
    assert_eq!(v["verified"], true);
}

#[test]
fn solve_search_never_branches_on_a_comparability_input() {
    let g = scratch("p4.graph", P4);
    let out = run(&[
        "solve",
        "--graph",
        g.to_str().unwrap(),
        "--problem",
        "clique",
        "--search",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["k"], 0);
    assert_eq!(v["leaf_calls"], 1);
    assert_eq!(v["mode"], "apex");
}

#[test]
fn exit_codes_follow_the_contract() {
    let c5 = scratch("codes-c5.graph", C5);
    let dc5 = scratch("codes-dc5.graph", DOUBLE_C5);
    let bad_edge = scratch("codes-bad-edge.set", "add\n0 1\n");
    let self_pair = scratch("codes-self.set", "apex\n2 2\n");
    let dup = scratch("codes-dup.set", "apex\n0 1\n1 0\n");
    let syntax = scratch("codes-syntax.set", "apex\nx y\n");
    let failing = scratch("codes-failing.set", "add\n0 2\n");
    let garbage = scratch("codes-garbage.graph", "not a graph\n");
    let c5s = c5.to_str().unwrap();
    let dc5s = dc5.to_str().unwrap();

    // 2: set edits that do not apply, and sets that are not well formed
    for set in [&bad_edge, &self_pair, &dup] {
        let out = run(&[
            "solve", "--graph", c5s, "--problem", "clique", "--set",
            set.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(2), "{}", set.display());
    }
    // 2: edited graph still outside the class
    let out = run(&[
        "solve", "--graph", dc5s, "--problem", "clique", "--set",
        failing.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    // 1: unparseable set text
    let out = run(&[
        "solve", "--graph", c5s, "--problem", "clique", "--set",
        syntax.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    // 1: unreadable or unparseable graph
    let out = run(&["solve", "--graph", "/no/such/file", "--problem", "is", "--search"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["recognize", "--graph", garbage.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    // 1: usage errors (missing certificate choice, or both at once)
    let out = run(&["solve", "--graph", c5s, "--problem", "clique"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&[
        "solve", "--graph", c5s, "--problem", "clique", "--search", "--set",
        bad_edge.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    // 3: search budget exhausted
    let out = run(&[
        "solve", "--graph", dc5s, "--problem", "clique", "--search", "--kmax", "1",
    ]);
    assert_eq!(out.status.code(), Some(3));
    // 0: help and version are not errors
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}

#[test]
fn recognize_reports_and_emits_an_orientation() {
    let g = scratch("rec-k5.graph", K5);
    let orient = std::env::temp_dir().join(format!("edgedistant-{}-k5.orient", std::process::id()));
    let out = run(&[
        "recognize",
        "--graph",
        g.to_str().unwrap(),
        "--emit-orientation",
        orient.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["is_comparability"], true);
    assert_eq!(v["orientation"].as_array().unwrap().len(), 10);
    let dump = std::fs::read_to_string(&orient).expect("orientation file written");
    assert_eq!(dump.lines().count(), 10);
    assert!(dump.lines().all(|l| l.contains(" -> ")));

    let c5 = scratch("rec-c5.graph", C5);
    let out = run(&["recognize", "--graph", c5.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    let v = stdout_json(&out);
    assert_eq!(v["is_comparability"], false);
    assert_eq!(keys(&v), ["is_comparability", "m", "n"]);
}

#[test]
fn distance_reports_xi_and_budget_overruns() {
    let c5 = scratch("dist-c5.graph", C5);
    let out = run(&["distance", "--graph", c5.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(
        keys(&v),
        ["memberships_tested", "mode", "pairs", "runtime_ms", "xi"]
    );
    assert_eq!(v["xi"], 1);
    assert_eq!(v["mode"], "apex");
    assert_eq!(v["pairs"], serde_json::json!([[0, 1]]));
    assert_eq!(v["memberships_tested"], 7);

    let dc5 = scratch("dist-dc5.graph", DOUBLE_C5);
    let out = run(&["distance", "--graph", dc5.to_str().unwrap(), "--kmax", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let v = stdout_json(&out);
    assert_eq!(
        keys(&v),
        ["exceeds_kmax", "kmax", "memberships_tested", "runtime_ms"]
    );
    assert_eq!(v["exceeds_kmax"], true);
    assert_eq!(v["kmax"], 1);
}

/// Pulls the certificate back out of gen's comment lines.
fn parse_gen_output(stdout: &str) -> (Graph, DistantEdgeSet) {
    let g = Graph::parse(stdout).expect("gen output parses as a graph");
    let set_text: String = stdout
        .lines()
        .skip_while(|l| !l.contains("distant-edge set"))
        .skip(1)
        .take_while(|l| l.starts_with('#'))
        .map(|l| l.trim_start_matches('#').trim())
        .map(|l| format!("{l}\n"))
        .collect();
    let set = DistantEdgeSet::parse(&set_text).expect("gen comments parse as a set");
    (g, set)
}

#[test]
fn gen_emits_a_graph_with_a_working_certificate() {
    let out = run(&["gen", "--n", "8", "--k", "2", "--density", "0.5", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let (g, set) = parse_gen_output(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(g.n(), 8);
    assert_eq!(set.k(), 2);
    let backend = ComparabilityBackend::new();
    assert!(validate_set(&g, &set, &backend));
    match find_distance(&g, &backend, 8) {
        DistanceOutcome::Found(report) => assert!(report.xi <= 2),
        DistanceOutcome::ExceedsKMax { .. } => panic!("xi is at most the flip count"),
    }
}

#[test]
fn gen_base_instances_are_comparability_and_density_one_is_complete() {
    let out = run(&["gen", "--n", "7", "--k", "0", "--density", "0.4", "--seed", "3"]);
    let (g, set) = parse_gen_output(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(set.k(), 0);
    assert!(ComparabilityBackend::new().contains(&g));

    let out = run(&["gen", "--n", "5", "--k", "0", "--density", "1.0", "--seed", "1"]);
    let (g, _) = parse_gen_output(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(g.m(), 10, "density 1 closes to the complete graph");

    let out = run(&["gen", "--n", "5", "--k", "0", "--density", "1.5", "--seed", "1"]);
    assert_eq!(out.status.code(), Some(1), "density outside [0, 1]");
}

#[test]
fn bench_emits_the_csv_contract() {
    let out = run(&["bench", "--n", "10", "--kmax", "3", "--trials", "2", "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,m,k,leaf_calls,runtime_ms,oracle_match"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 4 * 2, "one row per (k, trial)");
    for row in &rows {
        assert_eq!(row.len(), 6);
        assert_eq!(row[0], "10");
        let k: u32 = row[2].parse().unwrap();
        let leaves: u64 = row[3].parse().unwrap();
        assert!(leaves <= 1 << k, "leaf calls within the 2^k budget");
        if k == 0 {
            assert_eq!(leaves, 1);
        }
        assert_eq!(row[5], "true", "n = 10 rows carry an oracle verdict");
    }
}

/// Replaces runtime readings so reruns can be compared byte for byte.
fn mask_runtimes(raw: &str) -> String {
    let mut text = raw.to_string();
    let mut from = 0;
    while let Some(rel) = text[from..].find("\"runtime_ms\":") {
        let digits = from + rel + "\"runtime_ms\":".len();
        let end = text[digits..]
            .find(|c: char| !c.is_ascii_digit())
            .map(|i| digits + i)
            .unwrap_or(text.len());
        text.replace_range(digits..end, "0");
        from = digits + 1;
    }
    if text.starts_with("n,m,k,") {
        text = text
            .lines()
            .map(|l| {
                let mut cells: Vec<&str> = l.split(',').collect();
                if cells.len() == 6 && cells[4] != "runtime_ms" {
                    cells[4] = "0";
                }
                cells.join(",") + "\n"
            })
            .collect();
    }
    text
}

#[test]
fn fixed_seeds_reproduce_byte_identical_output() {
    let c5 = scratch("det-c5.graph", C5);
    let set = scratch("det-c5.set", "apex\n0 1\n");
    let commands: Vec<Vec<&str>> = vec![
        vec![
            "solve", "--graph", c5.to_str().unwrap(), "--problem", "clique",
            "--set", set.to_str().unwrap(), "--verify",
        ],
        vec!["solve", "--graph", c5.to_str().unwrap(), "--problem", "is", "--search"],
        vec!["recognize", "--graph", c5.to_str().unwrap()],
        vec!["distance", "--graph", c5.to_str().unwrap()],
        vec!["gen", "--n", "9", "--k", "3", "--density", "0.5", "--seed", "11"],
        vec!["bench", "--n", "9", "--kmax", "2", "--trials", "3", "--seed", "13"],
    ];
    for args in &commands {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), b.status.code(), "{args:?}");
        assert_eq!(
            mask_runtimes(&String::from_utf8(a.stdout).unwrap()),
            mask_runtimes(&String::from_utf8(b.stdout).unwrap()),
            "{args:?}"
        );
    }
}
