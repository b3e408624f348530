//! The binary end to end: outputs, exit codes and report determinism.

use std::path::Path;
use std::process::{Command, Output};

fn abelcheck(out: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abelcheck"))
        .env("ABELCHECK_OUT", out)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn surface_bound_at_k2_one() {
    let dir = tempfile::tempdir().unwrap();
    let o = abelcheck(dir.path(), &["bounds", "surface", "K2=1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("bound: 270 (thm7.7)"));
    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("bounds-surface.json")).unwrap()).unwrap();
    assert_eq!(body["schema_version"], 1);
    assert_eq!(body["data"]["result"]["value"], "270");
    assert!(body["data"]["result"]["hypothesis_trail"].as_array().is_some_and(|t| !t.is_empty()));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path();
    let code = |args: &[&str]| abelcheck(p, args).status.code();
    assert_eq!(code(&["verify-lemmas", "--lemma", "9.9"]), Some(64));
    assert_eq!(code(&["verify-lemmas", "--lemma", "2.4", "--trials", "0"]), Some(64));
    assert_eq!(code(&["no-such-command"]), Some(64));
    let o = abelcheck(p, &["bounds", "surface", "K2=10", "chi=0"]);
    assert_eq!(o.status.code(), Some(65));
    assert!(String::from_utf8_lossy(&o.stderr).contains("chi >= 1"));
    assert_eq!(code(&["bounds", "threefold", "K3=3", "chi=0"]), Some(65));
    assert_eq!(code(&["bounds", "margin", "variant=lemma9.9", "K2=1", "chi=1"]), Some(64));
    assert_eq!(code(&["enumerate-covers", "--bound", "3x+1"]), Some(64));
    // No shipped list for these parameters.
    assert_eq!(code(&["enumerate-covers", "--bound", "4g+4", "--gmax", "3", "--golden"]), Some(64));
}

#[test]
fn golden_mismatch_exits_two_and_lists_findings() {
    let dir = tempfile::tempdir().unwrap();
    let o = abelcheck(
        dir.path(),
        &["enumerate-covers", "--bound", "3g-3", "--gamma", "0", "--kmin", "4", "--gmin", "3", "--gmax", "6", "--golden"],
    );
    assert_eq!(o.status.code(), Some(2));
    let s = stdout(&o);
    assert!(s.contains("expected but not found: g=6 |G|=16 [8, 4, 2, 2]"));
    assert_eq!(s.matches("finding [").count(), 3);
}

#[test]
fn fermat_run_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let o = abelcheck(
        dir.path(),
        &["enumerate-covers", "--bound", "3g+6", "--gmin", "2", "--gmax", "8", "--no-hyperelliptic", "--golden"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("2 records"));
}

#[test]
fn verify_reports_are_byte_identical_across_runs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["verify-lemmas", "--lemma", "2.4", "--trials", "200", "--dim", "3", "--seed", "7", "--format", "csv"];
    for d in [&a, &b] {
        assert_eq!(abelcheck(d.path(), &args).status.code(), Some(0));
    }
    let name = "verify-lemmas-2.4-d3-s7";
    for ext in ["json", "csv"] {
        let x = std::fs::read(a.path().join(format!("{name}.{ext}"))).unwrap();
        let y = std::fs::read(b.path().join(format!("{name}.{ext}"))).unwrap();
        assert_eq!(x, y, "{ext}");
    }
    let header: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(a.path().join(format!("{name}.header.json"))).unwrap()).unwrap();
    assert_eq!(header["seed"], 7);
    assert_eq!(header["timings_ms"]["per_trial"].as_array().map(|t| t.len()), Some(200));
    // Per-trial derived seeds are in the body.
    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(a.path().join(format!("{name}.json"))).unwrap()).unwrap();
    let seed0 = body["data"]["records"][0]["seed"].as_u64().unwrap();
    assert_eq!(seed0, lemma_lab::derive_seed(7, 0));
}

#[test]
fn out_flag_overrides_environment() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let o = abelcheck(env_dir.path(), &["--out", flag_dir.path().to_str().unwrap(), "bounds", "plurigenus", "K3=2", "chi=0", "n=3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("P3 = 5"));
    assert!(flag_dir.path().join("bounds-plurigenus.json").exists());
    assert!(!env_dir.path().join("bounds-plurigenus.json").exists());
}

#[test]
fn surface_table_csv() {
    let dir = tempfile::tempdir().unwrap();
    let o = abelcheck(dir.path(), &["bounds", "surface", "--table", "--k2", "1..=9", "--chi", "1..=1"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(dir.path().join("bounds-surface-table.csv")).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "k2,chi,bound,source");
    assert_eq!(lines[1], "1,1,270,thm7.7");
    assert_eq!(lines.len(), 10);
}

#[test]
fn universal_n_writes_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let o = abelcheck(dir.path(), &["bounds", "universal-n"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("n_star = 27450"));
    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("bounds-universal-n.json")).unwrap()).unwrap();
    assert_eq!(body["data"]["certificate"]["n_star"], 27450);
}
