use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(data(name)).unwrap()
}

fn ddg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ddg")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    data(name).to_string_lossy().into_owned()
}

#[test]
fn construct_lattice() {
    let o = ddg(&["construct", "lattice", "--n", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), fixture("lattice3.g6"));
}

#[test]
fn construct_reverse_switch() {
    let o = ddg(&["construct", "reverse-switch", "--n", "6", "--spec", "FourCube(3)+CocktailCycle(4,E12)"]);
    assert_eq!(stdout(&o), fixture("m5_n6.g6"));
}

#[test]
fn verify_report() {
    let o = ddg(&["verify", "--family", "a", &path("lattice3.g6")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), fixture("verify_lattice3.json"));
    assert!(stdout(&o).contains(r#""quotient_tag":"M3""#));
}

#[test]
fn verify_wrong_family_fails() {
    let o = ddg(&["verify", "--family", "b", "--n", "3", &path("lattice3.g6")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains(r#""is_ddg":false"#));
}

#[test]
fn classify_reports() {
    let o = ddg(&["classify", &path("m5_n6.g6")]);
    assert_eq!(stdout(&o), fixture("classify_m5_n6.json"));
    assert!(stdout(&o).contains(r#""components":["FourCube(3,E12)","CocktailCycle(4,E12)"]"#));
    let o = ddg(&["classify", "--family", "b", &path("m10_n6.g6")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), fixture("classify_m10_n6.json"));
}

#[test]
fn switch_round_trip() {
    let o = ddg(&["switch", "class-pair", &path("m5_n6.g6")]);
    assert_eq!(stdout(&o), fixture("m10_n6.g6"));
    let o = ddg(&["switch", "star", &path("lattice3.g6")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn enumerate_small_deza() {
    let o = ddg(&["enumerate", "--deza", "12,5,2,1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), fixture("deza_12_5_2_1.g6"));
}

#[test]
fn enumerate_non_ddg() {
    let o = ddg(&["enumerate", "--ddg", "24,16,12,10,4,6", "--mode", "non-ddg"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), fixture("nonddg_24_16_12_10.g6"));
}

#[test]
fn enumerate_budget_exit() {
    let o = ddg(&["enumerate", "--family", "a", "--n", "5", "--budget-nodes", "50"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("stopped by budget"));
}

#[test]
fn enumerate_checkpoint_resume() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("ck");
    let ck = ck.to_str().unwrap();
    let args = ["enumerate", "--ddg", "24,16,12,10,4,6", "--mode", "non-ddg", "--checkpoint", ck];
    let first = ddg(&[&args[..], &["--budget-nodes", "3000"]].concat());
    assert_eq!(first.status.code(), Some(1));
    assert!(std::path::Path::new(ck).exists());
    let second = ddg(&args);
    assert!(second.status.success());
    assert_eq!(stdout(&second), fixture("nonddg_24_16_12_10.g6"));
}

#[test]
fn tables_report() {
    let o = ddg(&["tables", "--family", "a", "--n", "9"]);
    assert_eq!(stdout(&o), fixture("tables_a9.json"));
}

#[test]
fn fetch_with_expectation() {
    let o = ddg(&["fetch", &path("corpus_24_16_12_10.html"), "--expect", &path("nonddg_24_16_12_10.g6")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains(r#""count":10"#));
    assert!(out.contains(r#""matches":true"#));
    assert!(out.contains("asymmetric"));
    let o = ddg(&["fetch", &path("corpus_24_16_12_10.html"), "--expect", &path("lattice3.g6")]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(ddg(&["construct", "q4", "--partition", "9"]).status.code(), Some(2));
    assert_eq!(ddg(&["verify", "--params", "12,5,2,2,4,3", &path("lattice3.g6")]).status.code(), Some(2));
    assert_eq!(ddg(&["enumerate"]).status.code(), Some(2));
    assert_eq!(ddg(&["verify", "--family", "a", "/nonexistent"]).status.code(), Some(2));
}

#[test]
fn verify_improper_with_blocks() {
    let o = ddg(&["construct", "lattice", "--n", "4"]);
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("l4.g6");
    std::fs::write(&f, o.stdout).unwrap();
    let o = ddg(&["verify", "--family", "a", "--blocks", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn cross_validate_small() {
    let o = ddg(&["cross-validate", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(r#""discrepancies":[]"#));
}
