use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn avghac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_avghac")).args(args).output().expect("binary runs")
}

fn avghac_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_avghac"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

const PATH3: &str = "n 3\n0 1 3\n1 2 1\n";

#[test]
fn oracle_on_three_path_writes_two_lines() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "p3.txt", PATH3);
    let out = dir.path().join("d.jsonl");
    let o = avghac(&["run", "--algo", "oracle", &input, "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(
        (lines[0]["a"].as_u64(), lines[0]["b"].as_u64(), lines[0]["sim"].as_str()),
        (Some(0), Some(1), Some("3"))
    );
    assert_eq!((lines[1]["parent"].as_u64(), lines[1]["sim"].as_str()), (Some(4), Some("1/2")));
}

#[test]
fn every_engine_agrees_on_the_fixture() {
    let base = stdout(&avghac_stdin(&["run", "--algo", "oracle"], PATH3));
    for algo in ["heap", "path", "chain"] {
        assert_eq!(stdout(&avghac_stdin(&["run", "--algo", algo], PATH3)), base, "{algo}");
    }
}

#[test]
fn path_output_is_independent_of_workers() {
    let dir = tempfile::tempdir().unwrap();
    let gen = avghac(&["gen", "path", "--n", "3000", "--seed", "11", "--mode", "float"]);
    assert!(gen.status.success());
    let input = write(dir.path(), "path.txt", &stdout(&gen));
    for mode in ["rational", "float"] {
        let one = avghac(&["run", "--algo", "path", "--mode", mode, "--workers", "1", &input]);
        let eight = avghac(&["run", "--algo", "path", "--mode", mode, "--workers", "8", &input]);
        assert!(one.status.success() && eight.status.success());
        assert_eq!(one.stdout, eight.stdout, "{mode}");
    }
}

#[test]
fn heap_telemetry_follows_the_dendrogram() {
    let o = avghac_stdin(&["run", "--algo", "heap", "--telemetry"], PATH3);
    assert!(o.status.success());
    let text = stdout(&o);
    let last: Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["telemetry"]["merges"].as_u64(), Some(2));
    assert!(last["telemetry"]["heap_ops"].as_u64().unwrap() > 0);
    assert_eq!(text.lines().count(), 3);

    let dir = tempfile::tempdir().unwrap();
    let counters = dir.path().join("t.json");
    let flag = format!("--telemetry={}", counters.display());
    let o = avghac_stdin(&["run", "--algo", "heap", &flag], PATH3);
    assert_eq!(stdout(&o).lines().count(), 2);
    let t: Value = serde_json::from_str(&std::fs::read_to_string(counters).unwrap()).unwrap();
    assert_eq!(t["merges"].as_u64(), Some(2));
}

#[test]
fn malformed_input_exits_2_with_line_number() {
    let o = avghac_stdin(&["run"], "n 3\n0 1 1\n1 2 oops\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
}

#[test]
fn non_path_input_to_path_engine_exits_2() {
    let o = avghac_stdin(&["run", "--algo", "path"], "n 3\n0 1 1\n1 2 2\n0 2 3\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn missing_file_exits_2() {
    assert_eq!(avghac(&["run", "/nonexistent/graph.txt"]).status.code(), Some(2));
}

#[test]
fn reduce_triangle_on_k3() {
    let o = avghac_stdin(&["reduce", "triangle"], "0 1\n1 2\n0 2\n");
    assert_eq!(stdout(&o).trim(), "triangle: true");
    let o = avghac_stdin(&["reduce", "triangle", "--json"], "4\n0 1\n1 2\n2 3\n0 3\n");
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["triangle"], Value::Bool(false));
    assert_eq!((v["gadget_vertices"].as_u64(), v["gadget_edges"].as_u64()), (Some(20), Some(20)));
}

#[test]
fn reduce_admin_tree_identity_row() {
    let o = avghac_stdin(&["reduce", "admin-tree", "--x", "0"], "2 0\n0 1\n1 0\n");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "k_x = 0");
    let o = avghac_stdin(&["reduce", "admin-tree", "--variant", "unit-expanded"], "2 1\n1 0\n0 1\n");
    assert_eq!(stdout(&o).trim(), "k_x = 0");
}

#[test]
fn reduce_lfm_three_edge_fixture() {
    let o = avghac_stdin(&["reduce", "lfm"], "2\n0 0\n1 0\n1 1\nquery 1 0\n");
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "in_matching: false");
    let o = avghac_stdin(&["reduce", "lfm"], "2\n0 0\n1 0\n1 1\nquery 1 1\n");
    assert_eq!(stdout(&o).trim(), "in_matching: true");
}

#[test]
fn reduce_dumps_gadget_and_merges() {
    let dir = tempfile::tempdir().unwrap();
    let gadget = dir.path().join("g.txt");
    let merges = dir.path().join("m.jsonl");
    let o = avghac_stdin(
        &["reduce", "triangle", "--gadget", gadget.to_str().unwrap(), "--merges", merges.to_str().unwrap()],
        "0 1\n1 2\n0 2\n",
    );
    assert!(o.status.success());
    let replay = avghac(&["run", gadget.to_str().unwrap()]);
    assert_eq!(stdout(&replay), std::fs::read_to_string(merges).unwrap());
}

#[test]
fn reduce_refuses_float_and_oversized_expansion() {
    let o = avghac_stdin(&["reduce", "triangle", "--mode", "float"], "0 1\n1 2\n0 2\n");
    assert_eq!(o.status.code(), Some(2));
    let am = "4 3\n0 1 2 3\n0 1 2 3\n0 1 2 3\n0 1 2 3\n";
    let o = avghac_stdin(&["reduce", "admin-tree", "--variant", "unit-expanded"], am);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("capacity"), "{}", stderr(&o));
}

#[test]
fn verify_engines_reports_instance_counts() {
    let o = avghac(&["verify", "engines", "--seed", "7", "--max-n", "32"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let reports: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!reports.is_empty());
    for r in &reports {
        assert_eq!(r["passed"], Value::Bool(true));
        assert_eq!(r["seed"].as_u64().map(|s| s >= 7), Some(true));
        assert!(r["instances"].as_u64().unwrap() > 0);
    }
}

#[test]
fn injected_tie_bug_exits_1_with_counterexample() {
    let o = avghac(&["verify", "engines", "--seed", "7", "--max-n", "16", "--instances", "100", "--inject-tie-bug"]);
    assert_eq!(o.status.code(), Some(1));
    let failed: Vec<Value> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .filter(|r| r["passed"] == Value::Bool(false))
        .collect();
    assert!(!failed.is_empty());
    let cx = &failed[0]["counterexample"];
    assert!(cx["input"].as_str().unwrap().starts_with("n "));
    assert!(cx["step"].as_u64().is_some());
}

#[test]
fn verify_all_aggregates_suites() {
    let o = avghac(&["verify", "all", "--max-n", "16", "--instances", "10", "--expanded", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let suites: std::collections::BTreeSet<String> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["suite"].as_str().unwrap().to_owned())
        .collect();
    assert_eq!(suites.into_iter().collect::<Vec<_>>(), ["engines", "path", "reductions"]);
}

#[test]
fn bench_rows_have_ratio_and_work_columns() {
    let o = avghac(&["bench", "path", "--sizes", "1024,2048"]);
    assert!(o.status.success());
    let rows: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0]["ratio"].is_null() && rows[1]["ratio"].as_f64().is_some());

    let o = avghac(&["bench", "heap", "--sizes", "256,512"]);
    let rows: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(rows.iter().all(|r| r["m_h_log2n"].as_f64().unwrap() > 0.0));
    assert!(rows.iter().all(|r| r["heap_ops_per_m_h_log2n"].as_f64().is_some()));
}

#[test]
fn bench_oracle_is_refused_above_limit() {
    let o = avghac(&["bench", "oracle", "--sizes", "64,1024"]);
    assert!(o.status.success());
    let rows: Vec<Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(rows[0]["seconds"].as_f64().is_some());
    assert!(rows[1]["refused"].as_str().unwrap().contains("512"));
    assert!(stderr(&o).contains("refused"));
}

#[test]
fn query_reads_run_output() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "p3.txt", PATH3);
    let d = dir.path().join("d.jsonl");
    avghac(&["run", &input, "--telemetry", "--output", d.to_str().unwrap()]);
    let o = avghac(&["query", d.to_str().unwrap(), "0", "1"]);
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["merge_index"].as_u64(), Some(1));
    let o = avghac(&["query", d.to_str().unwrap(), "2", "0"]);
    assert_eq!(serde_json::from_str::<Value>(stdout(&o).trim()).unwrap()["merge_index"].as_u64(), Some(2));
    assert_eq!(avghac(&["query", d.to_str().unwrap(), "0", "9"]).status.code(), Some(2));
}

#[test]
fn gen_fixtures_feed_other_commands() {
    let dir = tempfile::tempdir().unwrap();
    for (kind, cmd) in [("triangle", "triangle"), ("lfm", "lfm"), ("am", "admin-tree")] {
        let n = if kind == "lfm" { "2" } else { "4" };
        let text = stdout(&avghac(&["gen", kind, "--n", n, "--seed", "3"]));
        let path = write(dir.path(), kind, &text);
        let o = avghac(&["reduce", cmd, &path]);
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", stderr(&o));
    }
    let gadget = stdout(&avghac(&["gen", "am", "--n", "3", "--gadget"]));
    let o = avghac_stdin(&["run"], &gadget);
    assert!(o.status.success());
    let sparse = stdout(&avghac(&["gen", "sparse", "--n", "50"]));
    let heap = avghac_stdin(&["run"], &sparse);
    let oracle = avghac_stdin(&["run", "--algo", "oracle"], &sparse);
    assert_eq!(heap.stdout, oracle.stdout);
    assert_eq!(stdout(&avghac(&["gen", "path", "--n", "20"])), stdout(&avghac(&["gen", "path", "--n", "20"])));
}
