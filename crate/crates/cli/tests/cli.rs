use std::process::{Command, Output};

fn nmax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nmax")).args(args).output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn theorem_c_on_sl23() {
    let out = nmax(&["verify", "--theorem", "C", "--formation", "U", "--group", "SL23"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["lhs"], false);
    assert_eq!(r["rhs"], false);
    assert_eq!(r["conclusion_holds"], true);
}

#[test]
fn lemma_on_d8() {
    let out = nmax(&["verify", "--lemma", "2.2", "--formation", "N", "--group", "D8"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = json(&out);
    let reports = reports.as_array().unwrap();
    assert!(!reports.is_empty());
    assert!(reports.iter().all(|r| r["conclusion_holds"] == true && r["params"].as_str().unwrap().starts_with("F=N")));
}

#[test]
fn bad_input_exits_2() {
    let out = nmax(&["analyze", "--group", "S4", "--formation", "N^"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("syntax error"));
    assert_eq!(nmax(&["analyze", "--group", "S7x", "--formation", "N"]).status.code(), Some(2));
    assert_eq!(nmax(&["verify", "--theorem", "Z", "--formation", "N", "--group", "S3"]).status.code(), Some(2));
    assert_eq!(nmax(&["lattice", "--group", "S5", "--lattice-order-cap", "60"]).status.code(), Some(2));
    assert_eq!(nmax(&["lattice", "--group", "S3", "--max-subgroups", "0"]).status.code(), Some(2));
    assert_eq!(nmax(&["verify", "--theorem", "A", "--formation", "U", "--group", "S4"]).status.code(), Some(2));
}

#[test]
fn analysis_and_lattice() {
    let a = json(&nmax(&["analyze", "--group", "SL23", "--formation", "U"]));
    assert_eq!(a["critical"], true);
    assert_eq!(a["residual"]["order"], 8);
    assert_eq!(a["hypercentre"]["order"], 2);
    let l = json(&nmax(&["lattice", "--group", "S4"]));
    assert_eq!(l["subgroups"], 30);
    assert_eq!(l["by_order"]["2"], 9);
    let c = json(&nmax(&["classify", "--group", "Frob21", "--formation", "N", "-n", "2"]));
    assert_eq!(c["kind"], "type_ii");
}

#[test]
fn verify_over_a_corpus_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("small.json");
    std::fs::write(&path, r#"[{"name": "S4", "spec": "S4"}, {"name": "F21", "spec": "Frob21"}]"#).unwrap();
    let p = path.to_str().unwrap();
    let out = nmax(&["verify", "--theorem", "B", "--corpus", p]);
    assert_eq!(out.status.code(), Some(0));
    let s = json(&out);
    assert_eq!(s["corpus_size"], 2);
    assert_eq!(s["status"], "ok");
}

#[test]
fn reports_are_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    std::fs::write(&path, r#"[{"name": "S4", "spec": "S4"}, {"name": "D12", "spec": "D12"}, {"name": "A5", "spec": "A5"}]"#).unwrap();
    let run = |workers: &str, out: &str| {
        let o = dir.path().join(out);
        let status = nmax(&["corpus", "--path", path.to_str().unwrap(), "--suite", "full", "--workers", workers, "--output", o.to_str().unwrap()]);
        assert_eq!(status.status.code(), Some(0));
        std::fs::read(o).unwrap()
    };
    let a = run("1", "a.json");
    let b = run("3", "b.json");
    assert_eq!(a, b);
    assert!(!String::from_utf8_lossy(&a).contains("elapsed_ms"));
}

#[test]
fn lattice_cache_directory() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("cache");
    let first = nmax(&["lattice", "--group", "S4", "--cache-dir", d.to_str().unwrap()]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(&d).unwrap().count(), 1);
    let second = nmax(&["lattice", "--group", "S4", "--cache-dir", d.to_str().unwrap()]);
    assert_eq!(first.stdout, second.stdout);
}
