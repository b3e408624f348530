//! Acceptance criteria, one test each. Each prints a PASS/FAIL line and its
//! notes; run with `--nocapture` to see them.

use std::path::PathBuf;

use abelcheck::acceptance::{run, CriterionResult};

fn out_dir() -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn criterion(id: u8) -> CriterionResult {
    let r = run(id, &out_dir());
    println!("{}", r.report());
    r
}

fn assert_passed(r: CriterionResult) {
    assert!(r.passed, "{}", r.report());
}

#[test]
fn criterion_01_fermat_exceptions() {
    assert_passed(criterion(1));
}

#[test]
fn criterion_02_variable_moduli_signatures() {
    assert_passed(criterion(2));
}

#[test]
fn criterion_03_cyclic_run_is_empty() {
    assert_passed(criterion(3));
}

#[test]
fn criterion_04_example_family() {
    assert_passed(criterion(4));
}

#[test]
fn criterion_05_arrangement_suite() {
    assert_passed(criterion(5));
}

#[test]
fn criterion_06_lower_bound_suites() {
    assert_passed(criterion(6));
}

#[test]
fn criterion_07_thresholds() {
    assert_passed(criterion(7));
}

#[test]
fn criterion_08_universal_index() {
    assert_passed(criterion(8));
}

#[test]
fn criterion_09_surface_table() {
    assert_passed(criterion(9));
}

#[test]
fn criterion_10_oracle_equivalence() {
    assert_passed(criterion(10));
}
