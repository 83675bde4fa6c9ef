use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use gpss_cli::record::ExperimentRecord;

fn gpss(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gpss"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gen_writes_one_point_per_line() {
    let dir = tempfile::tempdir().unwrap();
    let o = gpss(dir.path(), &["gen", "grid", "--m", "8"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 64);
    let o = gpss(
        dir.path(),
        &["gen", "bundles", "--n", "30", "--out", "b.txt"],
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "bundles: 30 lines");
    assert_eq!(
        fs::read_to_string(dir.path().join("b.txt"))
            .unwrap()
            .lines()
            .count(),
        30
    );
}

#[test]
fn analyze_reports_structure() {
    let dir = tempfile::tempdir().unwrap();
    gpss(dir.path(), &["gen", "grid", "--m", "3", "--out", "g.txt"]);
    let o = gpss(dir.path(), &["analyze", "g.txt", "--alpha", "2"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 9);
    assert_eq!(v["max_collinear"], 3);
    assert_eq!(v["triples"], "8");
    assert_eq!(v["alpha_dense"]["2"], true);

    gpss(
        dir.path(),
        &["gen", "transversal", "--n", "6", "--out", "t.txt"],
    );
    let o = gpss(dir.path(), &["analyze", "t.txt"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kind"], "lines");
    assert_eq!(v["vertex_max_collinear"], 5);
    assert_eq!(v["max_collinear_at_most_n_minus_1"], true);
}

#[test]
fn solve_and_compare_emit_records() {
    let dir = tempfile::tempdir().unwrap();
    gpss(dir.path(), &["gen", "grid", "--m", "4", "--out", "g.txt"]);
    let o = gpss(
        dir.path(),
        &[
            "solve", "g.txt", "--alg", "exact", "--out", "s.txt", "--record", "r.jsonl",
        ],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let rec: ExperimentRecord = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(
        (rec.size, rec.opt, rec.bound_source.as_str()),
        (8, Some(8), "exact")
    );
    assert_eq!(
        fs::read_to_string(dir.path().join("s.txt"))
            .unwrap()
            .lines()
            .count(),
        8
    );

    let o = gpss(
        dir.path(),
        &[
            "compare",
            "g.txt",
            "--algs",
            "greedy,dense",
            "--alpha",
            "2",
            "--record",
            "r.jsonl",
        ],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let recs: Vec<ExperimentRecord> = stdout(&o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(recs.len(), 2);
    assert!(recs.iter().all(|r| r.opt == Some(8) && r.size <= 8));
    let log = fs::read_to_string(dir.path().join("r.jsonl")).unwrap();
    assert_eq!(log.lines().count(), 3);
}

#[test]
fn bench_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("empty.toml"), "").unwrap();
    let o = gpss(dir.path(), &["bench", "empty.toml"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);
    fs::write(
        dir.path().join("s.toml"),
        "seeds = [0, 1]\n[[group]]\nfamily = \"bundles\"\nsizes = [10]\nalgorithms = [\"sample-arrangement\", \"greedy\"]\n",
    )
    .unwrap();
    let o = gpss(dir.path(), &["bench", "s.toml", "--out", "t.csv"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let table = fs::read_to_string(dir.path().join("t.csv")).unwrap();
    // header, 2 seeds x 2 algorithms, 2 aggregates
    assert_eq!(table.lines().count(), 1 + 4 + 2);
    assert!(table.lines().all(|l| !l.contains("cannot run")));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let code = |args: &[&str]| gpss(dir.path(), args).status.code();
    assert_eq!(code(&["--help"]), Some(0));
    assert_eq!(code(&["frobnicate"]), Some(1));
    assert_eq!(code(&["solve", "missing.txt", "--alg", "exact"]), Some(2));
    fs::write(dir.path().join("bad.txt"), "0 0\n1/0 2\n").unwrap();
    assert_eq!(code(&["analyze", "bad.txt"]), Some(2));
    gpss(dir.path(), &["gen", "grid", "--m", "3", "--out", "g.txt"]);
    let o = gpss(
        dir.path(),
        &["solve", "g.txt", "--alg", "sample-arrangement"],
    );
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("gpss: "));
    assert_eq!(code(&["solve", "g.txt", "--alg", "dense"]), Some(1));
}
