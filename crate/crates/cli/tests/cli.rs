use std::path::Path;
use std::process::{Command, Output};

use pe_core::formula::{build_eta, serialize_formula};
use pe_core::lab::BipartiteGraph;
use serde_json::Value;

fn pe(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pe")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const P4: &str = "4 3\n0 1\n1 2\n2 3\n";
const C5: &str = "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n";

#[test]
fn solve_domset() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write(dir.path(), "p4.txt", P4);
    let out = pe(&["solve-domset", "--graph", &p4, "--k", "1", "--r", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["decision"], "NO_SOLUTION");
    assert_eq!(v["schema"], "pe/1");

    let v = json(&pe(&["solve-domset", "--graph", &p4, "--k", "2", "--r", "1"]));
    assert_eq!(v["decision"], "SOLUTION");
    assert_eq!(v["solution"].as_array().unwrap().len(), 2);
}

#[test]
fn solve_indep() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.txt", C5);
    let v = json(&pe(&["solve-indep", "--graph", &c5, "--k", "2", "--r", "2"]));
    assert_eq!(v["decision"], "NO_SOLUTION");
    let v = json(&pe(&["solve-indep", "--graph", &c5, "--k", "2", "--r", "1", "--strategy", "bfs-center"]));
    assert_eq!(v["decision"], "SOLUTION");
    let out = pe(&["solve-indep", "--graph", &c5, "--k", "2", "--r", "1", "--strategy", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn formula_and_core() {
    let dir = tempfile::tempdir().unwrap();
    let c5 = write(dir.path(), "c5.txt", C5);
    let eta = write(dir.path(), "eta.json", &serialize_formula(&build_eta(2, 2).unwrap()));
    let v = json(&pe(&["solve-domset-formula", "--graph", &c5, "--formula", &eta]));
    assert_eq!(v["decision"], "NOT_EXISTS");
    let v = json(&pe(&["coverage-core", "--graph", &c5, "--formula", &eta]));
    assert!(v["core_size"].as_u64().unwrap() >= 1);
    let bad = write(dir.path(), "bad.json", r#"{"c":1}"#);
    assert_eq!(pe(&["coverage-core", "--graph", &c5, "--formula", &bad]).status.code(), Some(2));
}

#[test]
fn measure_indices_on_ladder() {
    let dir = tempfile::tempdir().unwrap();
    let ladder = write(dir.path(), "ladder4.txt", &BipartiteGraph::ladder(4).to_text());
    let v = json(&pe(&["measure-indices", "--bipartite", &ladder]));
    assert_eq!(v["ladder"], 4);
    assert_eq!(v["semiladder"], 4);
    assert!(v["comatching"].as_u64().unwrap() <= 4);
}

#[test]
fn measure_profiles() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write(dir.path(), "p4.txt", P4);
    let v = json(&pe(&["measure-profiles", "--graph", &p4, "--r", "1", "--m", "1"]));
    assert_eq!(v["count"], 3);
    assert_eq!(v["exact"], true);
}

#[test]
fn generate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g.txt");
    let o = pe(&["generate", "--family", "grid", "--params", r#"{"rows":2,"cols":3}"#, "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("6 7\n"));
    let o = pe(&["generate", "--family", "grid", "--params", r#"{"rows":2}"#]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "bench.json",
        r#"{"instances":[{"family":"grid","rows":3,"cols":3},{"family":"cycle","n":6,"seed":2}],
            "ks":[1,2],"rs":[1],"workers":2,"cross_validate":true}"#,
    );
    let a = pe(&["bench", "--config", &cfg, "--no-timing"]);
    let b = pe(&["bench", "--config", &cfg, "--no-timing"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().skip(1).all(|l| l.contains(",true,")));
    let v = json(&pe(&["bench", "--config", &cfg, "--format", "json"]));
    assert_eq!(v["records"].as_array().unwrap().len(), 4);
}

#[test]
fn usage_errors() {
    assert_eq!(pe(&["solve-domset", "--k", "1"]).status.code(), Some(2));
    assert_eq!(pe(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(pe(&["solve-domset", "--graph", "/nonexistent", "--k", "1", "--r", "1"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "3 1\n0 7\n");
    assert_eq!(pe(&["solve-domset", "--graph", &bad, "--k", "1", "--r", "1"]).status.code(), Some(2));
}

#[test]
fn budget_exhaustion_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let p4 = write(dir.path(), "p4.txt", P4);
    let out = pe(&["solve-domset", "--graph", &p4, "--k", "1", "--r", "1", "--max-rounds", "1"]);
    assert_eq!(out.status.code(), Some(3));
}
