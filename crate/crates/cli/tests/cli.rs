use std::path::PathBuf;
use std::process::{Command, Output};

use finhtop::io::from_json;
use finhtop::{CheckReport, FinitePoset, PosetDiagram};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finhtop"))
        .args(args)
        .env_remove("FINHTOP_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(name: &str) -> String {
    data(name).display().to_string()
}

#[test]
fn chain_is_contractible() {
    let o = run(&["poset", "contractible", &path("chain3.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "true\n");
    let o = run(&["poset", "contractible", &path("circle.json")]);
    assert_eq!(stdout(&o), "false\n");
}

#[test]
fn cylinder_collapses_onto_the_point() {
    let o = run(&["check", "maximum", "--input", &path("cyl_s1_pt.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("maximum") && out.contains("verified") && out.contains("all beat"), "{out}");
}

#[test]
fn random_thomason_suite() {
    let o = run(&["check", "thomason", "--random", "50", "--seed", "7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<CheckReport> = from_json(&stdout(&o)).unwrap();
    assert_eq!(reports.len(), 50);
    assert!(reports.iter().all(CheckReport::is_verified));
}

#[test]
fn json_output_reparses_and_is_byte_identical() {
    let args = ["diagram", "hocolim", &path("sphere_pushout.json"), "--format", "json"];
    let (a, b) = (stdout(&run(&args)), stdout(&run(&args)));
    assert_eq!(a, b);
    let h: FinitePoset = from_json(&a).unwrap();
    assert_eq!(h.len(), 6);
    let args = ["diagram", "restrict", &path("sphere_pushout.json"), "--keep", "0,2", "--format", "json"];
    let d: PosetDiagram = from_json(&stdout(&run(&args))).unwrap();
    assert_eq!(d.index().len(), 2);
    let args = ["check", "all", "--random", "2", "--seed", "5", "--format", "json"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn homology_and_faces() {
    let o = run(&["complex", "homology", &path("triangle.json")]);
    assert_eq!(stdout(&o), "H_0 = Z^1\nH_1 = Z^1\n");
    let o = run(&["complex", "faceposet", &path("triangle.json"), "--format", "json"]);
    let x: FinitePoset = from_json(&stdout(&o)).unwrap();
    assert_eq!(x.len(), 6);
    let o = run(&["poset", "export-dot", &path("w.json")]);
    assert!(stdout(&o).starts_with("digraph"));
}

#[test]
fn errors_exit_with_two() {
    assert_eq!(run(&["poset", "core", "missing.json"]).status.code(), Some(2));
    assert_eq!(run(&["poset", "core", &path("chain3.json"), "--nope"]).status.code(), Some(2));
    assert_eq!(run(&["check", "no-such-theorem"]).status.code(), Some(2));
    assert_eq!(run(&["diagram", "hocolim", &path("chain3.json")]).status.code(), Some(2));
}

#[test]
fn budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_finhtop"))
        .args(["check", "gamma-index"])
        .env("FINHTOP_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("oracle inconclusive"), "{}", stdout(&o));
    let o = run(&["check", "gamma-index"]);
    assert!(!stdout(&o).contains("oracle inconclusive"));
}
