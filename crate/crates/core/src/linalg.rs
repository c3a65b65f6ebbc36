//! Sparse exact matrices over `Q(ζ)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{CycContext, CycRat};

/// A sparse vector: index -> non-zero coefficient.
pub type SparseVec = BTreeMap<usize, CycRat>;

/// Adds `c * v` into `acc`, dropping entries that cancel.
pub fn axpy(acc: &mut SparseVec, c: &CycRat, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (i, x) in v {
        add_entry(acc, *i, &(c * x));
    }
}

pub fn add_entry(acc: &mut SparseVec, i: usize, x: &CycRat) {
    if x.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match acc.entry(i) {
        Entry::Vacant(e) => {
            e.insert(x.clone());
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += x;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// A square or rectangular matrix stored column by column.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    ctx: CycContext,
    rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(ctx: CycContext, rows: usize, cols: usize) -> Self {
        Self { ctx, rows, cols: vec![SparseVec::new(); cols] }
    }

    pub fn identity(ctx: CycContext, n: usize) -> Self {
        Self::diagonal(ctx, (0..n).map(|_| CycRat::one(ctx)))
    }

    pub fn diagonal(ctx: CycContext, diag: impl IntoIterator<Item = CycRat>) -> Self {
        let cols: Vec<SparseVec> = diag
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                let mut c = SparseVec::new();
                add_entry(&mut c, i, &d);
                c
            })
            .collect();
        Self { ctx, rows: cols.len(), cols }
    }

    /// Builds a matrix from its columns (images of basis vectors).
    pub fn from_columns(ctx: CycContext, rows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.keys().all(|&i| i < rows)));
        Self { ctx, rows, cols }
    }

    pub fn from_fn(ctx: CycContext, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> CycRat) -> Self {
        let cols = (0..cols)
            .map(|j| {
                let mut c = SparseVec::new();
                for i in 0..rows {
                    add_entry(&mut c, i, &f(i, j));
                }
                c
            })
            .collect();
        Self { ctx, rows, cols }
    }

    pub fn context(&self) -> CycContext {
        self.ctx
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols.len()
    }

    pub fn get(&self, i: usize, j: usize) -> CycRat {
        self.cols[j].get(&i).cloned().unwrap_or_else(|| CycRat::zero(self.ctx))
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: CycRat) {
        if x.is_zero() {
            self.cols[j].remove(&i);
        } else {
            self.cols[j].insert(i, x);
        }
    }

    /// Non-zero entries as `(row, col, value)`, column-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &CycRat)> + '_ {
        self.cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, x)| (*i, j, x)))
    }

    /// Non-zero entries in row-major order.
    pub fn entries_row_major(&self) -> Vec<(usize, usize, CycRat)> {
        let mut v: Vec<_> = self.entries().map(|(i, j, x)| (i, j, x.clone())).collect();
        v.sort_by_key(|(i, j, _)| (*i, *j));
        v
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn mul_vec(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, x) in v {
            axpy(&mut out, x, &self.cols[*j]);
        }
        out
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), rhs.rows, "matrix product dimension mismatch");
        let cols = rhs.cols.iter().map(|c| self.mul_vec(c)).collect();
        SparseMatrix { ctx: self.ctx, rows: self.rows, cols }
    }

    pub fn scale(&self, c: &CycRat) -> SparseMatrix {
        if c.is_zero() {
            return Self::zeros(self.ctx, self.rows, self.ncols());
        }
        let cols = self.cols.iter().map(|col| col.iter().map(|(i, x)| (*i, x * c)).collect()).collect();
        SparseMatrix { ctx: self.ctx, rows: self.rows, cols }
    }

    pub fn sub(&self, rhs: &SparseMatrix) -> SparseMatrix {
        let mut out = self.clone();
        let minus = CycRat::integer(self.ctx, -1);
        for (j, c) in rhs.cols.iter().enumerate() {
            axpy(&mut out.cols[j], &minus, c);
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out = Self::zeros(self.ctx, self.ncols(), self.rows);
        for (i, j, x) in self.entries() {
            out.cols[i].insert(j, x.clone());
        }
        out
    }

    /// Kronecker product; index `(i, k)` maps to `i * rhs.dim + k`, so the left
    /// factor is the most significant digit.
    pub fn kron(&self, rhs: &SparseMatrix) -> SparseMatrix {
        let (rr, rc) = (rhs.rows, rhs.ncols());
        let mut cols = vec![SparseVec::new(); self.ncols() * rc];
        for (j, a) in self.cols.iter().enumerate() {
            for (l, b) in rhs.cols.iter().enumerate() {
                let col = &mut cols[j * rc + l];
                for (i, x) in a {
                    for (k, y) in b {
                        col.insert(i * rr + k, x * y);
                    }
                }
            }
        }
        SparseMatrix { ctx: self.ctx, rows: self.rows * rr, cols }
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && self.cols.iter().enumerate().all(|(j, c)| c.len() == 1 && c.get(&j).is_some_and(|x| x.is_one()))
    }

    /// No entry strictly below the diagonal.
    pub fn is_upper_triangular(&self) -> bool {
        self.entries().all(|(i, j, _)| i <= j)
    }

    /// No entry strictly above the diagonal.
    pub fn is_lower_triangular(&self) -> bool {
        self.entries().all(|(i, j, _)| i >= j)
    }

    /// First entry (column-major) that is not in `Z[ζ]`.
    pub fn first_non_integral(&self) -> Option<(usize, usize, &CycRat)> {
        self.entries().find(|(_, _, x)| !x.is_integral())
    }

    pub fn is_integral(&self) -> bool {
        self.first_non_integral().is_none()
    }

    /// If `self = c * other` for a non-zero scalar `c`, returns `c`.
    pub fn proportionality(&self, other: &SparseMatrix) -> Option<CycRat> {
        if self.rows != other.rows || self.ncols() != other.ncols() {
            return None;
        }
        let (i, j, a) = other.entries().next()?;
        let b = self.cols[j].get(&i)?;
        let c = b.checked_div(a).ok()?;
        (self == &other.scale(&c)).then_some(c)
    }

    /// First position where `self` and `other` differ, column-major.
    pub fn first_difference(&self, other: &SparseMatrix) -> Option<(usize, usize)> {
        for j in 0..self.ncols().max(other.ncols()) {
            let (a, b) = (self.cols.get(j), other.cols.get(j));
            if a != b {
                let empty = SparseVec::new();
                let (a, b) = (a.unwrap_or(&empty), b.unwrap_or(&empty));
                let i = a
                    .iter()
                    .find(|(i, x)| b.get(i) != Some(x))
                    .map(|(i, _)| *i)
                    .or_else(|| b.keys().find(|i| !a.contains_key(i)).copied())
                    .unwrap();
                return Some((i, j));
            }
        }
        None
    }

    /// Connected components of the undirected graph `i ~ j` whenever entry
    /// `(i, j)` is non-zero. Under a simultaneous permutation of rows and
    /// columns the matrix is block diagonal with these blocks.
    fn blocks(&self) -> Vec<Vec<usize>> {
        let n = self.rows;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (i, j, _) in self.entries() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
            }
        }
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let root = find(&mut parent, i);
            comps.entry(root).or_default().push(i);
        }
        comps.into_values().collect()
    }

    fn dense_block(&self, idx: &[usize]) -> Vec<Vec<CycRat>> {
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut m = vec![vec![CycRat::zero(self.ctx); idx.len()]; idx.len()];
        for (b, &j) in idx.iter().enumerate() {
            for (i, x) in &self.cols[j] {
                m[pos[i]][b] = x.clone();
            }
        }
        m
    }

    pub fn determinant(&self) -> Result<CycRat, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::DimensionMismatch(self.rows, self.ncols()));
        }
        let mut det = CycRat::one(self.ctx);
        for block in self.blocks() {
            det = &det * &dense_determinant(self.dense_block(&block), self.ctx);
            if det.is_zero() {
                break;
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Result<SparseMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::DimensionMismatch(self.rows, self.ncols()));
        }
        let mut out = Self::zeros(self.ctx, self.rows, self.rows);
        for block in self.blocks() {
            let inv = dense_inverse(self.dense_block(&block), self.ctx)?;
            for (b, &j) in block.iter().enumerate() {
                for (a, &i) in block.iter().enumerate() {
                    if !inv[a][b].is_zero() {
                        out.cols[j].insert(i, inv[a][b].clone());
                    }
                }
            }
        }
        Ok(out)
    }
}

fn dense_determinant(mut m: Vec<Vec<CycRat>>, ctx: CycContext) -> CycRat {
    let n = m.len();
    let mut det = CycRat::one(ctx);
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return CycRat::zero(ctx);
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det = &det * &pivot;
        let pinv = pivot.inv().expect("non-zero pivot");
        for i in (k + 1)..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] * &pinv;
            for j in (k + 1)..n {
                if !m[k][j].is_zero() {
                    let t = &f * &m[k][j];
                    m[i][j] -= &t;
                }
            }
            m[i][k] = CycRat::zero(ctx);
        }
    }
    det
}

fn dense_inverse(mut m: Vec<Vec<CycRat>>, ctx: CycContext) -> Result<Vec<Vec<CycRat>>, LinalgError> {
    let n = m.len();
    let mut inv: Vec<Vec<CycRat>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { CycRat::one(ctx) } else { CycRat::zero(ctx) }).collect()).collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero()).ok_or(LinalgError::Singular)?;
        m.swap(p, k);
        inv.swap(p, k);
        let pinv = m[k][k].inv().expect("non-zero pivot");
        for j in 0..n {
            if !m[k][j].is_zero() {
                m[k][j] = &m[k][j] * &pinv;
            }
            if !inv[k][j].is_zero() {
                inv[k][j] = &inv[k][j] * &pinv;
            }
        }
        for i in 0..n {
            if i == k || m[i][k].is_zero() {
                continue;
            }
            let f = m[i][k].clone();
            for j in 0..n {
                if !m[k][j].is_zero() {
                    let t = &f * &m[k][j];
                    m[i][j] -= &t;
                }
                if !inv[k][j].is_zero() {
                    let t = &f * &inv[k][j];
                    inv[i][j] -= &t;
                }
            }
        }
    }
    Ok(inv)
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} (r = {}):", self.rows, self.ncols(), self.ctx.r())?;
        for (i, j, x) in self.entries_row_major() {
            writeln!(f, "  [{i},{j}] = {x}")?;
        }
        Ok(())
    }
}

/// Which basis a representation matrix is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasisLabel {
    /// `v_n` of the Schrödinger representation.
    V,
    /// The triangular basis `t_n`.
    T,
    /// The integral basis `v'_n`.
    VPrime,
    /// PBW basis `E^l 1_m F^(n)` of `U_g`.
    E1F,
    /// The rescaled basis `E^l 1'_m F^(n)` of `U_g`.
    E1PrimeF,
}

impl BasisLabel {
    pub fn name(&self) -> &'static str {
        match self {
            BasisLabel::V => "v",
            BasisLabel::T => "t",
            BasisLabel::VPrime => "vprime",
            BasisLabel::E1F => "E1F",
            BasisLabel::E1PrimeF => "E1primeF",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "v" => BasisLabel::V,
            "t" => BasisLabel::T,
            "vprime" | "v'" => BasisLabel::VPrime,
            "E1F" => BasisLabel::E1F,
            "E1primeF" | "E1'F" => BasisLabel::E1PrimeF,
            _ => return None,
        })
    }
}

/// Matrix of a (possibly projective) representation in a named basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMatrix {
    pub basis: BasisLabel,
    pub matrix: SparseMatrix,
    /// `true` when only the class modulo `Q(ζ)^×` is meaningful.
    pub projective: bool,
}

impl RepMatrix {
    /// Equality modulo non-zero scalars for projective matrices, exact otherwise.
    pub fn same_class(&self, other: &RepMatrix) -> bool {
        if self.basis != other.basis {
            return false;
        }
        if self.projective || other.projective {
            self.matrix.proportionality(&other.matrix).is_some()
        } else {
            self.matrix == other.matrix
        }
    }
}

/// Whether the determinant is a unit of `Z[ζ]`.
pub fn is_unit_scalar(x: &CycRat) -> bool {
    x.to_integral().is_some_and(|n| n.is_unit())
}
