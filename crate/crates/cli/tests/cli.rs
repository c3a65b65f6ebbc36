use std::process::{Command, Output};

use uqint::dump::{compute, DumpRequest, MatrixDump};
use uqint::report::{aggregate, CheckReport, Status};
use uqint::CycContext;

fn uqint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uqint")).args(args).output().unwrap()
}

fn run_report(args: &[&str]) -> (i32, Vec<CheckReport>) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let mut all = vec!["verify"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let out = uqint(&all);
    let text = std::fs::read_to_string(&path).unwrap();
    (out.status.code().unwrap(), serde_json::from_str(&text).unwrap())
}

#[test]
fn schroedinger_integrality_at_five() {
    let (code, reps) = run_report(&["--r", "5", "--genus", "1", "--suite", "schroedinger-integrality"]);
    assert_eq!(code, 0);
    let gens: Vec<&CheckReport> = reps.iter().filter(|r| r.check == "psi").collect();
    assert_eq!(gens.len(), 2);
    assert!(gens.iter().all(|r| r.params["entries"] == "25" && r.is_pass()));
}

#[test]
fn every_suite_at_genus_two() {
    let (code, reps) = run_report(&["--r", "3", "--genus", "2", "--suite", "all", "--workers", "2"]);
    assert_eq!(code, 0);
    let suites: std::collections::BTreeSet<&str> = reps.iter().map(|r| r.suite.as_str()).collect();
    assert_eq!(suites.len(), 12);
    assert_ne!(aggregate(&reps), Status::Fail);
    // the report is written sorted
    let mut sorted = reps.clone();
    uqint::report::sort_reports(&mut sorted);
    assert_eq!(sorted, reps);
}

#[test]
fn configuration_errors_exit_two() {
    for args in [
        &["verify", "--r", "4", "--suite", "qcomb"][..],
        &["verify", "--r", "3", "--suite", "nope"],
        &["verify", "--r", "3"],
        &["verify", "--r", "3", "--genus", "0", "--suite", "qcomb"],
        &["verify", "--r", "3", "--suite", "appendix", "--range", "Z=3"],
        &["verify", "--r", "3", "--dump", "psi:tau_alpha1:E1F"],
        &["verify", "--r", "3", "--dump", "psi:tau_gamma1:v"],
        &["verify", "--r", "3", "--suite", "qcomb", "--dump", "psi:tau_alpha1:v"],
        &["frobnicate"],
    ] {
        assert_eq!(uqint(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(uqint(&["--help"]).status.code(), Some(0));
}

#[test]
fn range_override_changes_the_run() {
    let (code, small) = run_report(&["--r", "3", "--suite", "appendix", "--range", "C=2"]);
    assert_eq!(code, 0);
    let (_, default) = run_report(&["--r", "3", "--suite", "appendix"]);
    assert_eq!(small.len(), default.len());
    assert_ne!(small, default);
}

#[test]
fn dumps_reload_to_fresh_matrices() {
    let dir = tempfile::tempdir().unwrap();
    for (arg, r, g) in [
        ("psi:tau_alpha1:v", 3u32, 1usize),
        ("psi:tau_beta1:vprime", 5, 1),
        ("heisenberg:beta1:v", 3, 1),
        ("heisenberg:alpha1 beta2:t", 3, 2),
        ("hkl:tau_alpha1:E1F", 3, 1),
        ("hkl:tau_beta1:E1primeF", 3, 1),
    ] {
        let path = dir.path().join("m.json");
        let out = uqint(&[
            "verify", "--r", &r.to_string(), "--genus", &g.to_string(), "--dump", arg, "--out",
            path.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{arg}: {}", String::from_utf8_lossy(&out.stderr));
        let d: MatrixDump = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let req: DumpRequest = arg.parse().unwrap();
        let (fresh, _) = compute(&req, CycContext::new(r).unwrap(), g).unwrap();
        assert_eq!(d.to_matrix().unwrap(), fresh, "{arg}");
        assert_eq!((d.r, d.genus, d.dim), (r, g, fresh.nrows()));
        assert!(d.entries.iter().all(|e| e.coeffs.len() == r as usize - 1));
        assert!(d.entries.windows(2).all(|w| (w[0].row, w[0].col) < (w[1].row, w[1].col)));
    }
}

#[test]
fn heisenberg_beta_dump_is_a_permutation() {
    let out = uqint(&["verify", "--r", "3", "--dump", "heisenberg:beta1:v"]);
    let d: MatrixDump = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(d.entries.len(), 3);
    for e in &d.entries {
        assert_eq!(e.row, (e.col + 1) % 3);
        assert_eq!((e.den.as_str(), e.coeffs.as_slice()), ("1", &["1".to_owned(), "0".to_owned()][..]));
    }
}
