//! Acceptance run: one line per criterion, non-zero exit if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::rewrite::Oracle;
use uqint::appendix::{appendix_checks, AppendixRanges};
use uqint::hkl::{self, Hkl};
use uqint::mcg::McgGenerator;
use uqint::report::Status;
use uqint::schroedinger;
use uqint::suites::HOPF_PAIRS;
use uqint::uqsl2::checks::{factorizability_checks, hopf_checks, integral_checks, ribbon_checks};
use uqint::uqsl2::SmallQuantumGroup;
use uqint::{CheckReport, CycContext};

fn ctx(r: u32) -> CycContext {
    CycContext::new(r).unwrap()
}

struct Outcome {
    reports: Vec<CheckReport>,
    extra_failures: Vec<String>,
}

impl From<Vec<CheckReport>> for Outcome {
    fn from(reports: Vec<CheckReport>) -> Self {
        Self { reports, extra_failures: Vec::new() }
    }
}

fn hopf_ribbon_integral() -> Outcome {
    let mut out = Vec::new();
    for r in [3, 5] {
        let u = SmallQuantumGroup::shared(ctx(r));
        out.extend(hopf_checks(&u, HOPF_PAIRS));
        out.extend(ribbon_checks(&u, true));
        out.extend(integral_checks(&u));
        out.extend(factorizability_checks(&u));
    }
    out.into()
}

fn triangularity() -> Outcome {
    let mut out = Vec::new();
    for r in [3, 5, 7] {
        out.extend(schroedinger::check_triangularity(ctx(r), 1));
    }
    for r in [3, 5] {
        out.extend(schroedinger::check_triangularity(ctx(r), 2));
    }
    out.into()
}

fn schroedinger_integrality() -> Outcome {
    let mut out = Vec::new();
    for (r, g) in [(3, 1), (5, 1), (7, 1), (11, 1), (3, 2), (5, 2)] {
        out.extend(schroedinger::check_integrality(ctx(r), g));
    }
    out.into()
}

fn hkl_integrality_and_equivariance() -> Outcome {
    let mut out = Vec::new();
    for (r, g) in [(3, 1), (3, 2), (5, 1)] {
        let h = Hkl::new(SmallQuantumGroup::shared(ctx(r)), g);
        let adjoint = h.adjoint_generators();
        for gen in McgGenerator::all(g) {
            out.push(hkl::check_integrality(&h, gen));
            out.push(hkl::check_normalized(&h, gen));
            out.push(hkl::check_equivariance(&h, gen, &adjoint));
        }
    }
    out.into()
}

fn mcg_relations() -> Outcome {
    let mut out = Vec::new();
    for r in [3, 5, 7] {
        for g in [1, 2] {
            out.extend(schroedinger::check_mcg_relations_psi(ctx(r), g));
            out.push(schroedinger::check_heisenberg_relations(ctx(r), g));
        }
    }
    for g in [1, 2] {
        out.extend(hkl::check_mcg_relations(&Hkl::new(SmallQuantumGroup::shared(ctx(3)), g)));
    }
    out.into()
}

fn appendix() -> Outcome {
    let mut out = Vec::new();
    for r in [3, 5, 7, 11, 13] {
        out.extend(appendix_checks(ctx(r), &AppendixRanges::for_r(r)));
        out.push(schroedinger::check_floor_inequalities(r));
    }
    out.into()
}

fn oracle_and_transitions() -> Outcome {
    let mut out = Vec::new();
    for r in [3, 5, 7] {
        for g in [1, 2] {
            out.push(schroedinger::check_transitions(ctx(r), g));
        }
    }
    let c = ctx(3);
    let u = SmallQuantumGroup::new(c);
    let o = Oracle::new(c);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut extra_failures = Vec::new();
    for _ in 0..500 {
        let (i, j) = (rng.gen_range(0..u.dim()), rng.gen_range(0..u.dim()));
        let (x, y) = (u.monomial(u.pbw(i)), u.monomial(u.pbw(j)));
        let lhs = o.lift_terms(u.mul(&x, &y).terms());
        let rhs = o.mul(&o.lift_terms(x.terms()), &o.lift_terms(y.terms()));
        if lhs != rhs {
            extra_failures.push(format!("PBW product disagrees with the rewrite oracle on {:?} * {:?}", u.pbw(i), u.pbw(j)));
        }
    }
    Outcome { reports: out, extra_failures }
}

fn main() -> ExitCode {
    type Criterion = (&'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 7] = [
        ("Hopf, ribbon, integral and factorizability axioms, r in {3,5}", 120, hopf_ribbon_integral),
        ("triangularity against closed forms in the t-basis, r in {3,5,7} (g=1), {3,5} (g=2)", 60, triangularity),
        ("psi and Heisenberg generators integral with unit determinant in v', r in {3,5,7,11} (g=1), {3,5} (g=2)", 300, schroedinger_integrality),
        ("HKL generators integral in E1'F and adjoint-equivariant, r=3 (g<=2), r=5 (g=1)", 600, hkl_integrality_and_equivariance),
        ("braid and commutation relations up to scalars, psi r in {3,5,7} and HKL r=3, g<=2", 120, mcg_relations),
        ("appendix identities, divisibility, Gauss sums and floor inequalities, r in {3,5,7,11,13}", 300, appendix),
        ("PBW product vs rewrite oracle (500 pairs, r=3); v, t, v' transitions, r in {3,5,7}, g<=2", 120, oracle_and_transitions),
    ];
    let mut all_ok = true;
    for (k, (title, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let fails: Vec<&CheckReport> = outcome.reports.iter().filter(|r| r.status == Status::Fail).collect();
        let warns = outcome.reports.iter().filter(|r| r.status == Status::Warn).count();
        let in_time = elapsed <= Duration::from_secs(*budget);
        let ok = fails.is_empty() && outcome.extra_failures.is_empty() && in_time;
        all_ok &= ok;
        println!(
            "criterion {}: {} - {} ({} checks, {} warn, {:.2}s of {}s)",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
            title,
            outcome.reports.len(),
            warns,
            elapsed.as_secs_f64(),
            budget
        );
        for f in fails.iter().take(5) {
            println!("    {f}");
        }
        for f in outcome.extra_failures.iter().take(5) {
            println!("    {f}");
        }
        if !in_time {
            println!("    over the time budget");
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
