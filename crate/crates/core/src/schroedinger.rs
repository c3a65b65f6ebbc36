//! The Schrödinger representation `V_g = V^{⊗g}` of the Heisenberg group and
//! the projective mapping class group action on it.
//!
//! Index order: `v_{n_1} ⊗ … ⊗ v_{n_g}` sits at `Σ n_j r^{g-j}`, so the first
//! factor is the most significant digit, matching [`SparseMatrix::kron`].

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::appendix::{c_poly, d_poly, e_poly};
use crate::arith::{gauss_sum, reduce_at_zeta, CycContext, CycRat};
use crate::linalg::{is_unit_scalar, BasisLabel, RepMatrix, SparseMatrix};
use crate::mcg::{check_relations, Curve, McgError, McgGenerator};
use crate::params;
use crate::qcomb::{qbinom_at_zeta, qshifted_brace};
use crate::report::{CheckReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchroedingerError {
    #[error(transparent)]
    Mcg(#[from] McgError),
    #[error("Heisenberg generator {0} is out of range for genus {1}")]
    OutOfRange(String, usize),
    #[error("basis {0:?} does not live on V_g")]
    WrongBasis(BasisLabel),
    #[error("cannot parse Heisenberg word {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HeisenbergGen {
    Sigma,
    Alpha(usize),
    Beta(usize),
}

impl fmt::Display for HeisenbergGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeisenbergGen::Sigma => write!(f, "sigma"),
            HeisenbergGen::Alpha(j) => write!(f, "alpha{j}"),
            HeisenbergGen::Beta(j) => write!(f, "beta{j}"),
        }
    }
}

/// A free word in `σ^{±1}, α_j^{±1}, β_j^{±1}`, applied right to left like a matrix product.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HeisenbergWord(pub Vec<(HeisenbergGen, i32)>);

impl HeisenbergWord {
    pub fn single(gen: HeisenbergGen) -> Self {
        Self(vec![(gen, 1)])
    }
}

/// Letters separated by spaces or `*`, e.g. `alpha1 beta1 alpha1^-1 beta1^-1`.
/// A bare `alpha`/`beta` means factor 1.
impl FromStr for HeisenbergWord {
    type Err = SchroedingerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SchroedingerError::Parse(s.to_owned());
        let mut out = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            let (body, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.parse::<i32>().map_err(|_| err())?),
                None => (tok, 1),
            };
            let split = body.find(|c: char| c.is_ascii_digit()).unwrap_or(body.len());
            let (name, idx) = body.split_at(split);
            let idx: usize = if idx.is_empty() { 1 } else { idx.parse().map_err(|_| err())? };
            let gen = match name {
                "sigma" | "s" => HeisenbergGen::Sigma,
                "alpha" | "a" => HeisenbergGen::Alpha(idx),
                "beta" | "b" => HeisenbergGen::Beta(idx),
                _ => return Err(err()),
            };
            out.push((gen, exp));
        }
        Ok(Self(out))
    }
}

fn floor_half(n: i64) -> i64 {
    n.div_euclid(2)
}

fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `V_g` for a fixed `r` and genus.
#[derive(Debug, Clone, Copy)]
pub struct Schroedinger {
    ctx: CycContext,
    g: usize,
}

impl Schroedinger {
    pub fn new(ctx: CycContext, g: usize) -> Self {
        assert!(g >= 1, "genus must be positive");
        Self { ctx, g }
    }

    pub fn context(&self) -> CycContext {
        self.ctx
    }

    pub fn genus(&self) -> usize {
        self.g
    }

    fn r(&self) -> usize {
        self.ctx.r() as usize
    }

    pub fn dim(&self) -> usize {
        self.r().pow(self.g as u32)
    }

    pub fn digits(&self, mut idx: usize) -> Vec<usize> {
        let r = self.r();
        let mut out = vec![0; self.g];
        for slot in out.iter_mut().rev() {
            *slot = idx % r;
            idx /= r;
        }
        out
    }

    fn z(&self, e: i64) -> CycRat {
        CycRat::zeta_pow(self.ctx, e)
    }

    /// `kron(I, m, I)` with `m` acting on factors starting at `first` (0-based).
    fn embed(&self, m: &SparseMatrix, first: usize, width: usize) -> SparseMatrix {
        let r = self.r();
        let left = SparseMatrix::identity(self.ctx, r.pow(first as u32));
        let right = SparseMatrix::identity(self.ctx, r.pow((self.g - first - width) as u32));
        left.kron(m).kron(&right)
    }

    fn single(&self, f: impl Fn(usize, usize) -> CycRat) -> SparseMatrix {
        let r = self.r();
        SparseMatrix::from_fn(self.ctx, r, r, f)
    }

    fn pair(&self, f: impl Fn(usize, usize, usize, usize) -> CycRat) -> SparseMatrix {
        let r = self.r();
        SparseMatrix::from_fn(self.ctx, r * r, r * r, |i, j| f(i / r, i % r, j / r, j % r))
    }

    /// `1/G_1`.
    fn inv_g1(&self) -> CycRat {
        CycRat::from(gauss_sum(1, self.ctx)).inv().expect("Gauss sums are non-zero")
    }

    pub fn heisenberg_generator(&self, gen: HeisenbergGen) -> Result<SparseMatrix, SchroedingerError> {
        let check = |j: usize| {
            if (1..=self.g).contains(&j) {
                Ok(j - 1)
            } else {
                Err(SchroedingerError::OutOfRange(gen.to_string(), self.g))
            }
        };
        Ok(match gen {
            HeisenbergGen::Sigma => SparseMatrix::identity(self.ctx, self.dim()).scale(&-self.z(-2)),
            HeisenbergGen::Alpha(j) => {
                let m = self.single(|i, k| if i == k { self.z(4 * k as i64) } else { CycRat::zero(self.ctx) });
                self.embed(&m, check(j)?, 1)
            }
            HeisenbergGen::Beta(j) => {
                let r = self.r();
                let m = self.single(|i, k| if i == (k + 1) % r { CycRat::one(self.ctx) } else { CycRat::zero(self.ctx) });
                self.embed(&m, check(j)?, 1)
            }
        })
    }

    /// Product of the generator matrices of `w` in the `v`-basis.
    pub fn heisenberg_matrix(&self, w: &HeisenbergWord) -> Result<RepMatrix, SchroedingerError> {
        let mut acc = SparseMatrix::identity(self.ctx, self.dim());
        for (gen, e) in &w.0 {
            let m = self.heisenberg_generator(*gen)?;
            let m = if *e < 0 { m.inverse().expect("generators are invertible") } else { m };
            for _ in 0..e.unsigned_abs() {
                acc = acc.mul(&m);
            }
        }
        Ok(RepMatrix { basis: BasisLabel::V, matrix: acc, projective: false })
    }

    pub fn heisenberg_in(&self, gen: HeisenbergGen, basis: BasisLabel) -> Result<RepMatrix, SchroedingerError> {
        let m = self.heisenberg_generator(gen)?;
        Ok(RepMatrix { basis, matrix: self.change_basis(&m, basis)?, projective: false })
    }

    /// The unit-determinant representative of a positive twist in the `v`-basis.
    fn twist_v(&self, curve: Curve) -> Result<SparseMatrix, SchroedingerError> {
        curve.validate(self.g)?;
        let zero = CycRat::zero(self.ctx);
        Ok(match curve {
            Curve::Alpha(j) => {
                let m = self.single(|i, k| {
                    let n = k as i64;
                    if i == k { self.z(2 * (n + 1) * n) } else { zero.clone() }
                });
                self.embed(&m, j - 1, 1)
            }
            Curve::Beta(j) => {
                let inv_g1 = self.inv_g1();
                let m = self.single(|m, n| {
                    let d = m as i64 - n as i64;
                    &self.z(-2 * (d + 1) * d) * &inv_g1
                });
                self.embed(&m, j - 1, 1)
            }
            Curve::Gamma(k) => {
                let m = self.pair(|a1, a2, b1, b2| {
                    if (a1, a2) != (b1, b2) {
                        return zero.clone();
                    }
                    let d = b1 as i64 - b2 as i64;
                    self.z(2 * (d + 1) * d)
                });
                self.embed(&m, k - 1, 2)
            }
        })
    }

    /// `ψ_g(gen)` in the `v`-basis; inverse twists use the exact inverse.
    pub fn psi_v(&self, gen: McgGenerator) -> Result<SparseMatrix, SchroedingerError> {
        let m = self.twist_v(gen.curve)?;
        Ok(if gen.inverse { m.inverse().expect("twists are invertible") } else { m })
    }

    pub fn psi_matrix(&self, gen: McgGenerator, basis: BasisLabel) -> Result<RepMatrix, SchroedingerError> {
        let m = self.psi_v(gen)?;
        Ok(RepMatrix { basis, matrix: self.change_basis(&m, basis)?, projective: true })
    }

    /// `T_{B←v} m T_{v←B}`.
    pub fn change_basis(&self, m: &SparseMatrix, basis: BasisLabel) -> Result<SparseMatrix, SchroedingerError> {
        if basis == BasisLabel::V {
            return Ok(m.clone());
        }
        Ok(self.transition(BasisLabel::V, basis)?.mul(m).mul(&self.transition(basis, BasisLabel::V)?))
    }

    /// `t_n` in terms of `v_k` (columns) for one factor.
    fn t_in_v(&self) -> SparseMatrix {
        self.single(|k, n| {
            let (n, k) = (n as i64, k as i64);
            if k > n {
                return CycRat::zero(self.ctx);
            }
            let c = CycRat::from(qbinom_at_zeta(n, k, self.ctx)).scale_int(&sign(n - k).into());
            &c * &self.z((n - k) * (n - 1))
        })
    }

    /// `v_n` in terms of `t_k` (columns) for one factor.
    fn v_in_t(&self) -> SparseMatrix {
        self.single(|k, n| {
            let (n, k) = (n as i64, k as i64);
            if k > n {
                return CycRat::zero(self.ctx);
            }
            &CycRat::from(qbinom_at_zeta(n, k, self.ctx)) * &self.z(k * (n - k))
        })
    }

    fn tensor_power(&self, m: &SparseMatrix) -> SparseMatrix {
        (1..self.g).fold(m.clone(), |acc, _| acc.kron(m))
    }

    /// `h(ζ)^{±⌊Σn/2⌋}` on the diagonal.
    fn h_rescale(&self, sign: i64) -> SparseMatrix {
        let h = CycRat::from(self.ctx.h());
        let hinv = h.inv().expect("h(ζ) is non-zero");
        let base = if sign > 0 { h } else { hinv };
        let diag = (0..self.dim()).map(|i| {
            let s: usize = self.digits(i).iter().sum();
            base.pow(floor_half(s as i64)).expect("non-negative exponent")
        });
        SparseMatrix::diagonal(self.ctx, diag)
    }

    /// Coordinates in `to` of a vector with coordinates `x` in `from` are `T x`.
    pub fn transition(&self, from: BasisLabel, to: BasisLabel) -> Result<SparseMatrix, SchroedingerError> {
        use BasisLabel::*;
        for b in [from, to] {
            if !matches!(b, V | T | VPrime) {
                return Err(SchroedingerError::WrongBasis(b));
            }
        }
        Ok(match (from, to) {
            _ if from == to => SparseMatrix::identity(self.ctx, self.dim()),
            (T, V) => self.tensor_power(&self.t_in_v()),
            (V, T) => self.tensor_power(&self.v_in_t()),
            // v'_n = h^{-⌊|n|/2⌋} t_n
            (VPrime, T) => self.h_rescale(-1),
            (T, VPrime) => self.h_rescale(1),
            (VPrime, V) => self.transition(T, V)?.mul(&self.h_rescale(-1)),
            (V, VPrime) => self.h_rescale(1).mul(&self.transition(V, T)?),
            _ => unreachable!(),
        })
    }
}

/// Closed-form generator matrices in the `t`-basis, independent of the basis change.
pub mod closed_form {
    use super::*;

    fn at_zeta(ctx: CycContext, p: &crate::arith::LaurentPoly) -> CycRat {
        CycRat::from(reduce_at_zeta(p, ctx))
    }

    fn z(ctx: CycContext, e: i64) -> CycRat {
        CycRat::zeta_pow(ctx, e)
    }

    fn binom(ctx: CycContext, n: i64, k: i64) -> CycRat {
        CycRat::from(qbinom_at_zeta(n, k, ctx))
    }

    fn matrix(ctx: CycContext, dim: usize, mut col: impl FnMut(usize) -> Vec<(usize, CycRat)>) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(ctx, dim, dim);
        for j in 0..dim {
            for (i, x) in col(j) {
                if !x.is_zero() {
                    let cur = m.get(i, j);
                    m.set(i, j, &cur + &x);
                }
            }
        }
        m
    }

    /// `α t_n = ζ^{4n} Σ_{k<=2} ζ^{-k(k-2n+5)/2} {2;k} [n k] t_{n-k}`.
    pub fn alpha(ctx: CycContext) -> SparseMatrix {
        let r = ctx.r() as usize;
        matrix(ctx, r, |n| {
            let n = n as i64;
            (0..=2.min(n))
                .map(|k| {
                    let c = &at_zeta(ctx, &qshifted_brace(2, k)) * &binom(ctx, n, k);
                    ((n - k) as usize, &c * &z(ctx, 4 * n - k * (k - 2 * n + 5) / 2))
                })
                .collect()
        })
    }

    /// `β t_n = ζ^{2n} Σ_{k<=1} ζ^{-k(k+2n-1)} [1 k] t_{n+k}`, with `t_r = 0`.
    pub fn beta(ctx: CycContext) -> SparseMatrix {
        let r = ctx.r() as i64;
        matrix(ctx, r as usize, |n| {
            let n = n as i64;
            (0..=1)
                .filter(|k| n + k < r)
                .map(|k| ((n + k) as usize, &binom(ctx, 1, k) * &z(ctx, 2 * n - k * (k + 2 * n - 1))))
                .collect()
        })
    }

    /// `τ_α t_n = ζ^{2(n+1)n} Σ_k (-1)^k ζ^{k(2k-3n-3)} [n k] C_{4(n-k)+3,k}(ζ) t_{n-k}`.
    pub fn tau_alpha(ctx: CycContext) -> SparseMatrix {
        let r = ctx.r() as usize;
        matrix(ctx, r, |n| {
            let n = n as i64;
            (0..=n)
                .map(|k| {
                    let c = &binom(ctx, n, k) * &at_zeta(ctx, &c_poly(4 * (n - k) + 3, k));
                    let e = 2 * (n + 1) * n + k * (2 * k - 3 * n - 3);
                    ((n - k) as usize, (&c * &z(ctx, e)).scale_int(&sign(k).into()))
                })
                .collect()
        })
    }

    /// Coefficient of `t_{n+k}` in `τ_β t_n`, also for `k < 0` where it must vanish.
    pub fn tau_beta_coefficient(ctx: CycContext, n: i64, k: i64) -> CycRat {
        let r = ctx.r() as i64;
        let inv_g1 = CycRat::from(gauss_sum(1, ctx)).inv().expect("non-zero");
        let d = at_zeta(ctx, &d_poly(r - n - k - 1, n));
        let e = -(n + 3) * n - 2 * k * (k + 2 * n + 1);
        (&(&d * &z(ctx, e)) * &inv_g1).scale_int(&sign(n).into())
    }

    /// `τ_β t_n = (-1)^n ζ^{-(n+3)n}/G_1 Σ_{k<r-n} ζ^{-2k(k+2n+1)} D_{r-n-k-1,n}(ζ) t_{n+k}`.
    pub fn tau_beta(ctx: CycContext) -> SparseMatrix {
        let r = ctx.r() as i64;
        matrix(ctx, r as usize, |n| {
            let n = n as i64;
            (0..r - n).map(|k| ((n + k) as usize, tau_beta_coefficient(ctx, n, k))).collect()
        })
    }

    /// `τ_γ` on `t_{n1} ⊗ t_{n2}` for genus 2.
    pub fn tau_gamma(ctx: CycContext) -> SparseMatrix {
        let r = ctx.r() as usize;
        matrix(ctx, r * r, |j| {
            let (n1, n2) = ((j / r) as i64, (j % r) as i64);
            let mut out = Vec::new();
            for k1 in 0..=n1 {
                for k2 in 0..=n2 {
                    let d = n1 - k1 - n2 + k2;
                    let ev = at_zeta(ctx, &e_poly(4 * d + 3, -4 * d - 1, k1, k2));
                    let c = &(&binom(ctx, n1, k1) * &binom(ctx, n2, k2)) * &ev;
                    let e = 2 * (n1 - n2 + 1) * (n1 - n2) + 2 * (k1 - k2).pow(2) - k1 * (3 * n1 - 4 * n2 + 3)
                        + k2 * (4 * n1 - 3 * n2 + 1);
                    let row = (n1 - k1) as usize * r + (n2 - k2) as usize;
                    out.push((row, (&c * &z(ctx, e)).scale_int(&sign(k1 + k2).into())));
                }
            }
            out
        })
    }
}

const TRI: &str = "schroedinger-triangularity";
const INT: &str = "schroedinger-integrality";

fn compare(
    suite: &str,
    check: &str,
    params: &[(&str, String)],
    actual: &SparseMatrix,
    expected: &SparseMatrix,
    upper: bool,
) -> CheckReport {
    let tri_ok = if upper { actual.is_upper_triangular() } else { actual.is_lower_triangular() };
    let witness = if !tri_ok {
        let bad = actual.entries().find(|(i, j, _)| if upper { i > j } else { i < j }).expect("violating entry");
        Some(Witness::entry(bad.0, bad.1, format!("off-triangle entry {}", bad.2)))
    } else {
        actual.first_difference(expected).map(|(i, j)| {
            Witness::entry(i, j, format!("computed {} but closed form gives {}", actual.get(i, j), expected.get(i, j)))
        })
    };
    CheckReport::from_witness(suite, check, params, witness)
}

/// Triangularity with entrywise closed forms in the `t`-basis for every generator of genus `g`.
pub fn check_triangularity(ctx: CycContext, g: usize) -> Vec<CheckReport> {
    let s = Schroedinger::new(ctx, g);
    let r = ctx.r();
    let mut out = Vec::new();
    let t = BasisLabel::T;
    for j in 1..=g {
        let a = s.heisenberg_in(HeisenbergGen::Alpha(j), t).unwrap().matrix;
        let name = format!("alpha{j}");
        out.push(compare(TRI, "heisenberg", params!["r" => r, "g" => g, "gen" => name], &a, &s.embed(&closed_form::alpha(ctx), j - 1, 1), true));
        let b = s.heisenberg_in(HeisenbergGen::Beta(j), t).unwrap().matrix;
        let name = format!("beta{j}");
        out.push(compare(TRI, "heisenberg", params!["r" => r, "g" => g, "gen" => name], &b, &s.embed(&closed_form::beta(ctx), j - 1, 1), false));
    }
    for curve in Curve::all(g) {
        let m = s.psi_matrix(McgGenerator::twist(curve), t).unwrap().matrix;
        let (expected, upper) = match curve {
            Curve::Alpha(j) => (s.embed(&closed_form::tau_alpha(ctx), j - 1, 1), true),
            Curve::Beta(j) => (s.embed(&closed_form::tau_beta(ctx), j - 1, 1), false),
            Curve::Gamma(k) => (s.embed(&closed_form::tau_gamma(ctx), k - 1, 2), true),
        };
        let name = McgGenerator::twist(curve).to_string();
        out.push(compare(TRI, "psi", params!["r" => r, "g" => g, "gen" => name], &m, &expected, upper));
    }
    // Entries above the diagonal of τ_β vanish because D_{r-m-1,n}(ζ) = 0 for m < n.
    let ri = r as i64;
    let w = (0..ri).find_map(|n| {
        (-n..0).find_map(|k| {
            let c = closed_form::tau_beta_coefficient(ctx, n, k);
            (!c.is_zero()).then(|| Witness::new(vec![n, k], c.to_string()))
        })
    });
    out.push(CheckReport::from_witness(TRI, "tau-beta-upper-vanishing", params!["r" => r], w));
    out
}

/// Entrywise integrality, unit determinant and integral inverse in the `v'`-basis.
pub fn integrality_report(check: &str, params: &[(&str, String)], m: &SparseMatrix) -> CheckReport {
    if let Some((i, j, x)) = m.first_non_integral() {
        return CheckReport::fail(INT, check, params, Witness::entry(i, j, x));
    }
    let det = match m.determinant() {
        Ok(d) => d,
        Err(e) => return CheckReport::fail(INT, check, params, Witness::new(vec![], e.to_string())),
    };
    if !is_unit_scalar(&det) {
        return CheckReport::fail(INT, check, params, Witness::new(vec![], format!("determinant {det} is not a unit")));
    }
    let inv = m.inverse().expect("unit determinant");
    if let Some((i, j, x)) = inv.first_non_integral() {
        return CheckReport::fail(INT, check, params, Witness::entry(i, j, format!("inverse entry {x}")));
    }
    let mut rep = CheckReport::pass(INT, check, params);
    rep.params.insert("entries".into(), (m.nrows() * m.ncols()).to_string());
    rep
}

pub fn check_integrality(ctx: CycContext, g: usize) -> Vec<CheckReport> {
    let s = Schroedinger::new(ctx, g);
    let r = ctx.r();
    let vp = BasisLabel::VPrime;
    let mut out = Vec::new();
    for gen in McgGenerator::all(g) {
        let m = s.psi_matrix(gen, vp).unwrap().matrix;
        let name = gen.to_string();
        out.push(integrality_report("psi", params!["r" => r, "g" => g, "gen" => name], &m));
    }
    for j in 1..=g {
        for gen in [HeisenbergGen::Alpha(j), HeisenbergGen::Beta(j)] {
            let m = s.heisenberg_in(gen, vp).unwrap().matrix;
            let name = gen.to_string();
            out.push(integrality_report("heisenberg", params!["r" => r, "g" => g, "gen" => name], &m));
        }
    }
    out
}

/// `v → t → v` and `v → v' → v` round trips and consistency of the composite.
pub fn check_transitions(ctx: CycContext, g: usize) -> CheckReport {
    use BasisLabel::*;
    let s = Schroedinger::new(ctx, g);
    let tr = |a, b| s.transition(a, b).unwrap();
    let loops = [
        ("v-t-v", tr(T, V).mul(&tr(V, T))),
        ("t-v-t", tr(V, T).mul(&tr(T, V))),
        ("t-v'-t", tr(VPrime, T).mul(&tr(T, VPrime))),
        ("v-v'-v", tr(VPrime, V).mul(&tr(V, VPrime))),
        ("v-t-v'-v", tr(VPrime, V).mul(&tr(T, VPrime)).mul(&tr(V, T))),
    ];
    let w = loops.iter().find(|(_, m)| !m.is_identity()).map(|(name, m)| {
        let id = SparseMatrix::identity(ctx, s.dim());
        let (i, j) = m.first_difference(&id).unwrap_or((0, 0));
        Witness::entry(i, j, format!("{name}: {}", m.get(i, j)))
    });
    CheckReport::from_witness(INT, "transition-round-trip", params!["r" => ctx.r(), "g" => g], w)
}

/// The three floor inequalities that turn divisibility into integrality.
pub fn check_floor_inequalities(r: u32) -> CheckReport {
    let r = r as i64;
    let f = floor_half;
    let mut w = None;
    'scan: for n in 0..r {
        for k in 0..r {
            if k <= n && f(n) - f(n - k) > f(k + 1) {
                w = Some(Witness::new(vec![1, n, k], "first inequality"));
                break 'scan;
            }
            if 2 * (f(n + k) - f(n) + f(r - k)) < r - 1 {
                w = Some(Witness::new(vec![2, n, k], "second inequality"));
                break 'scan;
            }
        }
    }
    if w.is_none() {
        'scan3: for n1 in 0..r {
            for n2 in 0..r {
                for k1 in 0..=n1 {
                    for k2 in 0..=n2 {
                        if f(n1 + n2) - f(n1 + n2 - k1 - k2) > f(k1 + k2 + 1) {
                            w = Some(Witness::new(vec![3, n1, n2, k1, k2], "third inequality"));
                            break 'scan3;
                        }
                    }
                }
            }
        }
    }
    CheckReport::from_witness("appendix", "floor-inequalities", params!["r" => r], w)
}

/// Exact Heisenberg relations in the `v`-basis.
pub fn check_heisenberg_relations(ctx: CycContext, g: usize) -> CheckReport {
    let s = Schroedinger::new(ctx, g);
    let m = |gen| s.heisenberg_generator(gen).unwrap();
    let sigma = m(HeisenbergGen::Sigma);
    let sigma_m2 = sigma.inverse().unwrap().mul(&sigma.inverse().unwrap());
    let mut gens = Vec::new();
    for j in 1..=g {
        gens.push(HeisenbergGen::Alpha(j));
        gens.push(HeisenbergGen::Beta(j));
    }
    let mut w = None;
    for (i, &a) in gens.iter().enumerate() {
        let ma = m(a);
        if ma.mul(&sigma) != sigma.mul(&ma) {
            w = Some(Witness::new(vec![i as i64], format!("sigma does not commute with {a}")));
            break;
        }
        for &b in &gens[i + 1..] {
            let mb = m(b);
            let comm = ma.mul(&mb).mul(&ma.inverse().unwrap()).mul(&mb.inverse().unwrap());
            let expect = match (a, b) {
                (HeisenbergGen::Alpha(x), HeisenbergGen::Beta(y)) if x == y => sigma_m2.clone(),
                _ => SparseMatrix::identity(ctx, s.dim()),
            };
            if comm != expect {
                w = Some(Witness::new(vec![], format!("[{a}, {b}] is wrong")));
                break;
            }
        }
        if w.is_some() {
            break;
        }
    }
    CheckReport::from_witness("mcg-relations", "heisenberg", params!["r" => ctx.r(), "g" => g], w)
}

/// Braid and commutation relations of `ψ_g` up to scalars.
pub fn check_mcg_relations_psi(ctx: CycContext, g: usize) -> Vec<CheckReport> {
    let s = Schroedinger::new(ctx, g);
    let mut out = check_relations("mcg-relations", ctx.r(), g, |c| s.psi_v(McgGenerator::twist(c)).unwrap());
    for rep in &mut out {
        rep.params.insert("rep".into(), "psi".into());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(r: u32) -> CycContext {
        CycContext::new(r).unwrap()
    }

    #[test]
    fn heisenberg_examples() {
        let c = ctx(3);
        let s = Schroedinger::new(c, 1);
        let a = s.heisenberg_matrix(&"alpha".parse().unwrap()).unwrap().matrix;
        // ζ^{4n} at r = 3 is 1, ζ, ζ^2
        let expect = SparseMatrix::diagonal(c, (0..3).map(|n| CycRat::zeta_pow(c, n)));
        assert_eq!(a, expect);
        let b = s.heisenberg_matrix(&"beta".parse().unwrap()).unwrap().matrix;
        for n in 0..3 {
            assert!(b.get((n + 1) % 3, n).is_one());
        }
        let comm = s.heisenberg_matrix(&"alpha beta alpha^-1 beta^-1".parse().unwrap()).unwrap().matrix;
        assert_eq!(comm, SparseMatrix::identity(c, 3).scale(&CycRat::zeta_pow(c, 4)));
        assert!(s.heisenberg_generator(HeisenbergGen::Alpha(2)).is_err());
    }

    #[test]
    fn psi_examples() {
        let c = ctx(3);
        let s = Schroedinger::new(c, 1);
        let ta = s.psi_v(McgGenerator::twist(Curve::Alpha(1))).unwrap();
        for n in 0..3i64 {
            assert_eq!(ta.get(n as usize, n as usize), CycRat::zeta_pow(c, 2 * (n + 1) * n));
        }
        let tb = s.psi_v(McgGenerator::twist(Curve::Beta(1))).unwrap();
        let g1 = CycRat::from(gauss_sum(1, c));
        for m in 0..3i64 {
            for n in 0..3i64 {
                let d = m - n;
                assert_eq!(&tb.get(m as usize, n as usize) * &g1, CycRat::zeta_pow(c, -2 * (d + 1) * d));
            }
        }
        let s2 = Schroedinger::new(c, 2);
        let tg = s2.psi_v(McgGenerator::twist(Curve::Gamma(1))).unwrap();
        for i in 0..9 {
            let (n1, n2) = ((i / 3) as i64, (i % 3) as i64);
            assert_eq!(tg.get(i, i), CycRat::zeta_pow(c, 2 * (n1 - n2 + 1) * (n1 - n2)));
        }
        assert!(s.psi_v(McgGenerator::twist(Curve::Gamma(1))).is_err());
    }

    #[test]
    fn small_transitions() {
        let c = ctx(5);
        let s = Schroedinger::new(c, 1);
        let tv = s.transition(BasisLabel::T, BasisLabel::V).unwrap();
        // t_0 = v_0, t_1 = v_1 - v_0
        assert!(tv.get(0, 0).is_one());
        assert!(tv.get(1, 1).is_one());
        assert_eq!(tv.get(0, 1), CycRat::integer(c, -1));
        let vt = s.transition(BasisLabel::V, BasisLabel::T).unwrap();
        assert!(vt.get(0, 1).is_one() && vt.get(1, 1).is_one());
        assert!(s.transition(BasisLabel::E1F, BasisLabel::V).is_err());
        for r in [3, 5, 7] {
            for g in [1, 2] {
                assert!(check_transitions(ctx(r), g).is_pass());
            }
        }
    }

    #[test]
    fn triangularity_r3_r5() {
        for r in [3, 5] {
            for rep in check_triangularity(ctx(r), 1) {
                assert!(rep.is_pass(), "{rep}");
            }
        }
        for rep in check_triangularity(ctx(3), 2) {
            assert!(rep.is_pass(), "{rep}");
        }
    }

    #[test]
    fn alpha_band_structure() {
        let m = closed_form::alpha(ctx(5));
        for (i, j, _) in m.entries() {
            assert!(j >= i && j - i <= 2);
        }
    }

    #[test]
    fn integrality_small() {
        for rep in check_integrality(ctx(3), 1).into_iter().chain(check_integrality(ctx(5), 1)) {
            assert!(rep.is_pass(), "{rep}");
        }
    }

    #[test]
    fn floors() {
        for r in [3, 5, 7, 11, 13] {
            assert!(check_floor_inequalities(r).is_pass());
        }
    }

    #[test]
    fn relations_g1() {
        for r in [3, 5] {
            assert!(check_heisenberg_relations(ctx(r), 1).is_pass());
            for rep in check_mcg_relations_psi(ctx(r), 1) {
                assert!(rep.is_pass(), "{rep}");
            }
        }
    }

    #[test]
    fn word_parsing() {
        let w: HeisenbergWord = "a1 * b1^-1 sigma^2".parse().unwrap();
        assert_eq!(w.0, vec![(HeisenbergGen::Alpha(1), 1), (HeisenbergGen::Beta(1), -1), (HeisenbergGen::Sigma, 2)]);
        assert!("delta".parse::<HeisenbergWord>().is_err());
    }
}
