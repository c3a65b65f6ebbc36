//! Named verification suites and their runner.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::appendix::{appendix_checks, AppendixRanges};
use crate::arith::CycContext;
use crate::hkl::{self, Hkl};
use crate::mcg::McgGenerator;
use crate::qcomb::qcomb_checks;
use crate::report::CheckReport;
use crate::schroedinger;
use crate::uqsl2::checks::{factorizability_checks, hopf_checks, integral_checks, ribbon_checks};
use crate::uqsl2::SmallQuantumGroup;

/// Random pairs sampled by the bialgebra and anti-multiplicativity checks.
pub const HOPF_PAIRS: usize = 200;

/// The largest `r` at which the hexagon and quasi-cocommutativity checks run.
pub const QUASI_TRIANGULAR_MAX_R: u32 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Suite {
    Qcomb,
    Hopf,
    Ribbon,
    Integral,
    Factorizability,
    SchroedingerTriangularity,
    SchroedingerIntegrality,
    HklIntegrality,
    HklEquivariance,
    McgRelations,
    Appendix,
    Grading,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown suite {0:?}")]
pub struct UnknownSuite(pub String);

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Qcomb,
        Suite::Hopf,
        Suite::Ribbon,
        Suite::Integral,
        Suite::Factorizability,
        Suite::SchroedingerTriangularity,
        Suite::SchroedingerIntegrality,
        Suite::HklIntegrality,
        Suite::HklEquivariance,
        Suite::McgRelations,
        Suite::Appendix,
        Suite::Grading,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Qcomb => "qcomb",
            Suite::Hopf => "hopf",
            Suite::Ribbon => "ribbon",
            Suite::Integral => "integral",
            Suite::Factorizability => "factorizability",
            Suite::SchroedingerTriangularity => "schroedinger-triangularity",
            Suite::SchroedingerIntegrality => "schroedinger-integrality",
            Suite::HklIntegrality => "hkl-integrality",
            Suite::HklEquivariance => "hkl-equivariance",
            Suite::McgRelations => "mcg-relations",
            Suite::Appendix => "appendix",
            Suite::Grading => "grading",
        }
    }

    /// Parses one name, `all` expanding to every suite.
    pub fn parse_many(s: &str) -> Result<Vec<Suite>, UnknownSuite> {
        if s == "all" {
            Ok(Suite::ALL.to_vec())
        } else {
            s.parse().map(|x| vec![x])
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| UnknownSuite(s.to_owned()))
    }
}

/// Parameters shared by every suite of one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub ctx: CycContext,
    pub genus: usize,
    pub ranges: AppendixRanges,
}

impl RunConfig {
    pub fn new(ctx: CycContext, genus: usize) -> Self {
        Self { ctx, genus, ranges: AppendixRanges::for_r(ctx.r()) }
    }
}

/// Runs one suite. The reports are in no particular order.
pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Vec<CheckReport> {
    let (ctx, g) = (cfg.ctx, cfg.genus);
    let algebra = || SmallQuantumGroup::shared(ctx);
    match suite {
        Suite::Qcomb => qcomb_checks(ctx),
        Suite::Hopf => hopf_checks(&algebra(), HOPF_PAIRS),
        Suite::Ribbon => ribbon_checks(&algebra(), ctx.r() <= QUASI_TRIANGULAR_MAX_R),
        Suite::Integral => integral_checks(&algebra()),
        Suite::Factorizability => factorizability_checks(&algebra()),
        Suite::SchroedingerTriangularity => schroedinger::check_triangularity(ctx, g),
        Suite::SchroedingerIntegrality => {
            let mut out = schroedinger::check_integrality(ctx, g);
            out.push(schroedinger::check_transitions(ctx, g));
            out
        }
        Suite::HklIntegrality => {
            let h = Hkl::new(algebra(), g);
            McgGenerator::all(g)
                .into_iter()
                .flat_map(|gen| [hkl::check_integrality(&h, gen), hkl::check_normalized(&h, gen)])
                .collect()
        }
        Suite::HklEquivariance => {
            let h = Hkl::new(algebra(), g);
            let adjoint = h.adjoint_generators();
            McgGenerator::all(g).into_iter().map(|gen| hkl::check_equivariance(&h, gen, &adjoint)).collect()
        }
        Suite::McgRelations => {
            let mut out = schroedinger::check_mcg_relations_psi(ctx, g);
            out.push(schroedinger::check_heisenberg_relations(ctx, g));
            out.extend(hkl::check_mcg_relations(&Hkl::new(algebra(), g)));
            out
        }
        Suite::Appendix => {
            let mut out = appendix_checks(ctx, &cfg.ranges);
            out.push(schroedinger::check_floor_inequalities(ctx.r()));
            out
        }
        Suite::Grading => {
            let h = Hkl::new(algebra(), g);
            vec![hkl::check_idempotent_grading(&h), hkl::check_phi_units(ctx, g), hkl::check_phi_lattice(&h)]
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!(Suite::parse_many("all").unwrap().len(), 12);
        assert!("hopff".parse::<Suite>().is_err());
    }

    #[test]
    fn every_suite_reports() {
        let cfg = RunConfig::new(CycContext::new(3).unwrap(), 1);
        for s in Suite::ALL {
            let reps = run_suite(s, &cfg);
            assert!(!reps.is_empty(), "{s}");
            assert!(reps.iter().all(|r| !r.is_fail() && r.validate().is_ok()), "{s}");
        }
    }
}
