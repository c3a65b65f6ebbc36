//! Exact matrix dumps: every entry as a denominator and its power-basis
//! coordinates `1, ζ, …, ζ^{r-2}`, rendered as decimal strings.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{CycContext, CycRat};
use crate::hkl::Hkl;
use crate::linalg::{BasisLabel, SparseMatrix};
use crate::mcg::McgGenerator;
use crate::schroedinger::{HeisenbergWord, Schroedinger};
use crate::uqsl2::SmallQuantumGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DumpError {
    #[error("expected REP:GEN:BASIS, got {0:?}")]
    Syntax(String),
    #[error("unknown representation {0:?}; expected psi, hkl or heisenberg")]
    Rep(String),
    #[error("unknown basis {0:?}")]
    Basis(String),
    #[error("basis {basis} is not available for {rep}")]
    Combination { rep: RepKind, basis: String },
    #[error("bad generator: {0}")]
    Generator(String),
    #[error("malformed dump: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RepKind {
    Psi,
    Hkl,
    Heisenberg,
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepKind::Psi => "psi",
            RepKind::Hkl => "hkl",
            RepKind::Heisenberg => "heisenberg",
        })
    }
}

/// `REP:GEN:BASIS`, e.g. `psi:tau_beta1:vprime` or `heisenberg:beta1:v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DumpRequest {
    pub rep: RepKind,
    pub generator: String,
    pub basis: BasisLabel,
}

impl FromStr for DumpRequest {
    type Err = DumpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [rep, generator, basis] = parts[..] else {
            return Err(DumpError::Syntax(s.to_owned()));
        };
        let rep = match rep {
            "psi" => RepKind::Psi,
            "hkl" => RepKind::Hkl,
            "heisenberg" => RepKind::Heisenberg,
            _ => return Err(DumpError::Rep(rep.to_owned())),
        };
        let basis = BasisLabel::parse(basis).ok_or_else(|| DumpError::Basis(basis.to_owned()))?;
        let u_side = matches!(basis, BasisLabel::E1F | BasisLabel::E1PrimeF);
        if u_side != (rep == RepKind::Hkl) {
            return Err(DumpError::Combination { rep, basis: basis.name().to_owned() });
        }
        Ok(Self { rep, generator: generator.to_owned(), basis })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DumpEntry {
    pub row: usize,
    pub col: usize,
    pub den: String,
    pub coeffs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDump {
    pub r: u32,
    pub genus: usize,
    pub rep: RepKind,
    pub basis: String,
    pub generator: String,
    /// Which representative of the projective class was written.
    pub note: String,
    pub dim: usize,
    /// Non-zero entries in row-major order.
    pub entries: Vec<DumpEntry>,
}

impl MatrixDump {
    pub fn from_matrix(req: &DumpRequest, r: u32, genus: usize, note: &str, m: &SparseMatrix) -> Self {
        let entries = m
            .entries_row_major()
            .into_iter()
            .map(|(row, col, x)| DumpEntry {
                row,
                col,
                den: x.denominator().to_string(),
                coeffs: x.numerator().coeffs().iter().map(|c| c.to_string()).collect(),
            })
            .collect();
        Self {
            r,
            genus,
            rep: req.rep,
            basis: req.basis.name().to_owned(),
            generator: req.generator.clone(),
            note: note.to_owned(),
            dim: m.nrows(),
            entries,
        }
    }

    pub fn to_matrix(&self) -> Result<SparseMatrix, DumpError> {
        let bad = |msg: String| DumpError::Malformed(msg);
        let ctx = CycContext::new(self.r).map_err(|e| bad(e.to_string()))?;
        let mut m = SparseMatrix::zeros(ctx, self.dim, self.dim);
        for e in &self.entries {
            if e.row >= self.dim || e.col >= self.dim {
                return Err(bad(format!("entry ({}, {}) outside dimension {}", e.row, e.col, self.dim)));
            }
            let parse = |s: &str| s.parse::<BigInt>().map_err(|_| bad(format!("not an integer: {s:?}")));
            let coeffs = e.coeffs.iter().map(|c| parse(c)).collect::<Result<Vec<_>, _>>()?;
            let num = ctx.from_coeffs(coeffs).map_err(|err| bad(err.to_string()))?;
            let x = CycRat::new(num, parse(&e.den)?).map_err(|err| bad(err.to_string()))?;
            m.set(e.row, e.col, x);
        }
        Ok(m)
    }
}

/// Computes the requested matrix and its normalization note.
pub fn compute(req: &DumpRequest, ctx: CycContext, genus: usize) -> Result<(SparseMatrix, &'static str), DumpError> {
    let gen_err = |e: &dyn fmt::Display| DumpError::Generator(e.to_string());
    match req.rep {
        RepKind::Psi => {
            let gen: McgGenerator = req.generator.parse().map_err(|e| gen_err(&e))?;
            let m = Schroedinger::new(ctx, genus).psi_matrix(gen, req.basis).map_err(|e| gen_err(&e))?;
            Ok((m.matrix, "projective class; representative with unit determinant (tau_beta carries 1/G_1)"))
        }
        RepKind::Heisenberg => {
            let word: HeisenbergWord = req.generator.parse().map_err(|e| gen_err(&e))?;
            let s = Schroedinger::new(ctx, genus);
            let m = s.heisenberg_matrix(&word).map_err(|e| gen_err(&e))?.matrix;
            let m = s.change_basis(&m, req.basis).map_err(|e| gen_err(&e))?;
            Ok((m, "exact linear action, not projective"))
        }
        RepKind::Hkl => {
            let gen: McgGenerator = req.generator.parse().map_err(|e| gen_err(&e))?;
            let hkl = Hkl::new(SmallQuantumGroup::shared(ctx), genus);
            let m = hkl.generator(gen, req.basis).map_err(|e| gen_err(&e))?;
            Ok((m.matrix, "projective class; tau_beta uses the rescaled integral lambda' = sqrt(r) lambda"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_requests() {
        let r: DumpRequest = "psi:tau_alpha1:v".parse().unwrap();
        assert_eq!(r.rep, RepKind::Psi);
        assert_eq!(r.basis, BasisLabel::V);
        assert!("psi:tau_alpha1:E1F".parse::<DumpRequest>().is_err());
        assert!("hkl:tau_alpha1:vprime".parse::<DumpRequest>().is_err());
        assert!("psi:tau_alpha1".parse::<DumpRequest>().is_err());
        assert!("foo:tau_alpha1:v".parse::<DumpRequest>().is_err());
        assert!("psi:tau_alpha1:w".parse::<DumpRequest>().is_err());
    }

    #[test]
    fn round_trip_and_examples() {
        let ctx = CycContext::new(3).unwrap();
        let req: DumpRequest = "psi:tau_alpha1:v".parse().unwrap();
        let (m, note) = compute(&req, ctx, 1).unwrap();
        for n in 0..3i64 {
            assert_eq!(m.get(n as usize, n as usize), CycRat::zeta_pow(ctx, 2 * (n + 1) * n));
        }
        let d = MatrixDump::from_matrix(&req, 3, 1, note, &m);
        assert_eq!(d.entries.len(), 3);
        assert!(d.entries.iter().all(|e| e.coeffs.len() == 2));
        assert_eq!(d.to_matrix().unwrap(), m);

        let req: DumpRequest = "heisenberg:beta1:v".parse().unwrap();
        let (m, _) = compute(&req, ctx, 1).unwrap();
        assert_eq!(m.nnz(), 3);
        assert!(m.entries().all(|(i, j, x)| x.is_one() && i == (j + 1) % 3));

        let req: DumpRequest = "hkl:tau_alpha1:E1F".parse().unwrap();
        let (m, note) = compute(&req, ctx, 1).unwrap();
        assert_eq!(m.nrows(), 27);
        let d = MatrixDump::from_matrix(&req, 3, 1, note, &m);
        let back: MatrixDump = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back.to_matrix().unwrap(), m);

        let req: DumpRequest = "psi:tau_gamma1:v".parse().unwrap();
        assert!(compute(&req, ctx, 1).is_err());
    }
}
