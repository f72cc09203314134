use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

const C23: &str = "f_p: x^2 + y^2\nf_q: y^3 + z^3\np: 2\nq: 3\n";

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbipencil")).args(args).output().expect("spawn")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_orbipencil"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn pi1_sampled_fibers() {
    let pen = file(C23);
    let o = run(&["pi1", "--pencil", pen.path().to_str().unwrap(), "--generic", "2", "--seed", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["group"]["free_rank"], 1);
    assert_eq!(v["group"]["torsion"], serde_json::json!([2, 3]));
    assert_eq!(v["status"], "CertifiedProbabilistic");
    assert!(v["trace"].as_array().unwrap().len() >= 2);
}

#[test]
fn pi1_asserted_fiber_is_conditional() {
    let pen = file(C23);
    let o = run(&["pi1", "--pencil", pen.path().to_str().unwrap(), "--generic", "0", "--assert-fiber", "-1:1"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["status"], "Conditional");
}

#[test]
fn pi1_multiple_fiber_fails_hypothesis() {
    let pen = file(C23);
    let o = run(&["pi1", "--pencil", pen.path().to_str().unwrap(), "--generic", "0", "--assert-fiber", "1:0"]);
    assert_eq!(o.status.code(), Some(3));
    let v = json(&o);
    assert_eq!(v["status"], "HypothesisFailed");
    assert!(v["group"].is_null());
}

#[test]
fn pi1_with_component() {
    let pen = file("f_p: y*z - x^2\nf_q: 40*y^3 + 21*x*y*z - 21*x^3\np: 2\nq: 3\n");
    let conic = file("# the reduced [1:0] fiber\ny*z - x^2\n");
    let path = pen.path().to_str().unwrap();
    let o = run(&["pi1", "--pencil", path, "--generic", "2", "--with-component", conic.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["group"]["text"], "F2*Z2");

    let cubic = file("40*y^3 + 21*x*y*z - 21*x^3\n");
    let c = cubic.path().to_str().unwrap();
    let o = run(&["pi1", "--pencil", path, "--generic", "2", "--with-component", c, "--assert-group", "Z3"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(&o)["group"]["text"], "F2*Z3");
}

#[test]
fn audit_exit_codes() {
    let ok = run(&["audit", "--degrees", "6,6", "--group", "F1*Z2*Z3"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(json(&ok)["passed"], true);
    let bad = run(&["audit", "--degrees", "6", "--group", "Z2*Z5"]);
    assert_eq!(bad.status.code(), Some(3));
    assert_eq!(json(&bad)["passed"], false);
}

#[test]
fn corpus_filter_and_determinism() {
    let a = run(&["corpus", "run", "--filter", "table1-*", "--json"]);
    let b = run(&["corpus", "run", "--filter", "table1-*", "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["version"], 1);
    assert_eq!(v["cases"].as_array().unwrap().len(), 7);
    let md = run(&["corpus", "run", "--filter", "cpq-2-3*", "--markdown"]);
    let text = String::from_utf8(md.stdout).unwrap();
    assert!(text.contains("| cpq-2-3 |"));
    assert!(text.contains("3/3 cases pass"));
}

#[test]
fn corpus_bad_glob() {
    assert_eq!(run(&["corpus", "run", "--filter", "[oops"]).status.code(), Some(1));
}

#[test]
fn analyze_pencil_reports_multiple_fibers() {
    let pen = file(C23);
    let o = run(&["analyze-pencil", pen.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["degree"], 6);
    let mults: Vec<i64> = v["multiple_fibers"].as_array().unwrap().iter().map(|f| f["multiplicity"].as_i64().unwrap()).collect();
    assert_eq!(mults, vec![3, 2]);
    assert_eq!(v["okapq"]["overall"], "CertifiedProbabilistic");
}

#[test]
fn group_commands() {
    let o = run_stdin(&["group", "abelianize", "-"], "gens: a b\na^2\nb^3\n");
    assert_eq!(json(&o)["torsion"], serde_json::json!([6]));

    let o = run_stdin(&["group", "enumerate", "-"], "gens: a b\na^2\nb^3\n(a b)^3\n");
    assert_eq!(json(&o)["cosets"], 12);

    let o = run_stdin(&["group", "enumerate", "-", "--subgroup", "a"], "gens: a\na^6\n");
    assert_eq!(json(&o)["cosets"], 1);

    let o = run_stdin(&["group", "rs-kernel", "-", "--images", "3,2", "--modulus", "6"], "gens: a b\na^2\nb^3\n");
    assert_eq!(json(&o)["free_rank"], 2);

    let o = run_stdin(&["group", "rs-kernel", "-", "--images", "2,2", "--modulus", "4"], "gens: a b\na^2\nb^2\n");
    assert_eq!(o.status.code(), Some(1));

    let o = run(&["group", "kernel-rank", "2,3,5"]);
    assert_eq!(json(&o)["rank"], 30);
}

#[test]
fn orbifold_and_h1() {
    let v = json(&run(&["orbifold", "S(g=0; n+1=2; m=2,3)"]));
    assert_eq!(v["group"]["text"], "F1*Z2*Z3");
    assert_eq!(v["euler_char"], "-7/6");

    assert_eq!(json(&run(&["h1", "--degrees", "6,6"]))["h1"], "Z x Z6");
    let m = file("# two lines and a conic\n1 1 2\n");
    assert_eq!(json(&run(&["h1", "--matrix", m.path().to_str().unwrap()]))["h1"], "Z^2");
}
