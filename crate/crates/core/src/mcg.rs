//! Dehn twist generators of the mapping class group and their relations.
//!
//! Curves `α_j, β_j` (`1 <= j <= g`) and `γ_k` (`1 <= k < g`) form a chain:
//! `α_j` meets `β_j` once, `β_j` meets `γ_j` once and `γ_j` meets `β_{j+1}` once.
//! Every other pair is disjoint.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::linalg::SparseMatrix;
use crate::params;
use crate::report::{CheckReport, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Curve {
    Alpha(usize),
    Beta(usize),
    Gamma(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct McgGenerator {
    pub curve: Curve,
    pub inverse: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McgError {
    #[error("{0} is out of range for genus {1}")]
    OutOfRange(String, usize),
    #[error("cannot parse generator {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveRelation {
    /// Curves meeting once: `aba = bab`.
    Braid,
    /// Disjoint curves: `ab = ba`.
    Commute,
}

impl Curve {
    pub fn validate(self, g: usize) -> Result<(), McgError> {
        let ok = match self {
            Curve::Alpha(j) | Curve::Beta(j) => (1..=g).contains(&j),
            Curve::Gamma(k) => k >= 1 && k < g,
        };
        if ok {
            Ok(())
        } else {
            Err(McgError::OutOfRange(self.to_string(), g))
        }
    }

    /// All curves of the chain in genus `g`.
    pub fn all(g: usize) -> Vec<Curve> {
        let mut out = Vec::new();
        for j in 1..=g {
            out.push(Curve::Alpha(j));
            out.push(Curve::Beta(j));
        }
        out.extend((1..g).map(Curve::Gamma));
        out
    }

    /// Geometric relation between two distinct curves.
    pub fn relation(self, other: Curve) -> Option<CurveRelation> {
        use Curve::*;
        if self == other {
            return None;
        }
        let meets = |a: Curve, b: Curve| match (a, b) {
            (Alpha(i), Beta(j)) => i == j,
            (Beta(i), Gamma(k)) => k == i || k + 1 == i,
            _ => false,
        };
        Some(if meets(self, other) || meets(other, self) { CurveRelation::Braid } else { CurveRelation::Commute })
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Curve::Alpha(j) => write!(f, "alpha{j}"),
            Curve::Beta(j) => write!(f, "beta{j}"),
            Curve::Gamma(k) => write!(f, "gamma{k}"),
        }
    }
}

impl McgGenerator {
    pub fn twist(curve: Curve) -> Self {
        Self { curve, inverse: false }
    }

    pub fn inverse_twist(curve: Curve) -> Self {
        Self { curve, inverse: true }
    }

    pub fn validate(&self, g: usize) -> Result<(), McgError> {
        self.curve.validate(g)
    }

    /// Positive twists along every curve of genus `g`.
    pub fn all(g: usize) -> Vec<McgGenerator> {
        Curve::all(g).into_iter().map(Self::twist).collect()
    }
}

impl fmt::Display for McgGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau_{}", self.curve)?;
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

impl FromStr for Curve {
    type Err = McgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || McgError::Parse(s.to_owned());
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(err)?;
        let (name, idx) = s.split_at(split);
        let idx: usize = idx.parse().map_err(|_| err())?;
        match name {
            "alpha" | "a" => Ok(Curve::Alpha(idx)),
            "beta" | "b" => Ok(Curve::Beta(idx)),
            "gamma" | "c" => Ok(Curve::Gamma(idx)),
            _ => Err(err()),
        }
    }
}

/// Accepts `tau_alpha1`, `tau_gamma2^-1` and the short forms `alpha1`, `a1`.
impl FromStr for McgGenerator {
    type Err = McgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (body, inverse) = match s.strip_suffix("^-1") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let body = body.strip_prefix("tau_").unwrap_or(body);
        let curve = body.parse().map_err(|_| McgError::Parse(s.to_owned()))?;
        Ok(Self { curve, inverse })
    }
}

/// Checks every braid and commutation relation up to a global scalar, one report per pair.
pub fn check_relations(
    suite: &str,
    r: u32,
    g: usize,
    mut matrix: impl FnMut(Curve) -> SparseMatrix,
) -> Vec<CheckReport> {
    let curves = Curve::all(g);
    let mats: Vec<SparseMatrix> = curves.iter().map(|&c| matrix(c)).collect();
    let mut out = Vec::new();
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            let (a, b) = (&mats[i], &mats[j]);
            let rel = curves[i].relation(curves[j]).expect("distinct curves");
            let (lhs, rhs, name) = match rel {
                CurveRelation::Braid => (a.mul(b).mul(a), b.mul(a).mul(b), "braid"),
                CurveRelation::Commute => (a.mul(b), b.mul(a), "commute"),
            };
            let witness = match lhs.proportionality(&rhs) {
                Some(_) => None,
                None => {
                    let (row, col) = lhs.first_difference(&rhs).unwrap_or((0, 0));
                    Some(Witness::new(
                        vec![row as i64, col as i64],
                        format!("not proportional: {} vs {}", lhs.get(row, col), rhs.get(row, col)),
                    ))
                }
            };
            let pair = format!("{},{}", curves[i], curves[j]);
            out.push(CheckReport::from_witness(
                suite,
                name,
                params!["r" => r, "g" => g, "pair" => pair],
                witness,
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_table() {
        use Curve::*;
        assert_eq!(Alpha(1).relation(Beta(1)), Some(CurveRelation::Braid));
        assert_eq!(Beta(1).relation(Gamma(1)), Some(CurveRelation::Braid));
        assert_eq!(Gamma(1).relation(Beta(2)), Some(CurveRelation::Braid));
        assert_eq!(Alpha(1).relation(Alpha(2)), Some(CurveRelation::Commute));
        assert_eq!(Alpha(1).relation(Gamma(1)), Some(CurveRelation::Commute));
        assert_eq!(Beta(1).relation(Beta(2)), Some(CurveRelation::Commute));
        assert_eq!(Alpha(2).relation(Gamma(1)), Some(CurveRelation::Commute));
        assert_eq!(Alpha(1).relation(Alpha(1)), None);
    }

    #[test]
    fn validation() {
        assert!(Curve::Gamma(1).validate(1).is_err());
        assert!(Curve::Gamma(1).validate(2).is_ok());
        assert!(Curve::Alpha(3).validate(2).is_err());
        assert!(Curve::Beta(0).validate(2).is_err());
        assert_eq!(Curve::all(2).len(), 5);
    }

    #[test]
    fn parse_round_trip() {
        for g in McgGenerator::all(3) {
            for gen in [g, McgGenerator::inverse_twist(g.curve)] {
                assert_eq!(gen.to_string().parse::<McgGenerator>().unwrap(), gen);
            }
        }
        assert_eq!("b2".parse::<McgGenerator>().unwrap(), McgGenerator::twist(Curve::Beta(2)));
        assert!("tau_delta1".parse::<McgGenerator>().is_err());
        assert!("alpha".parse::<McgGenerator>().is_err());
    }
}
