//! The adjoint action `x ▷ y = x_(1) y S(x_(2))` and its tensor powers.

use std::collections::HashMap;

use super::{Element, SmallQuantumGroup};
use crate::arith::CycRat;
use crate::linalg::{add_entry, SparseMatrix, SparseVec};

/// `x ▷ -` on `u^{⊗g}`, with `x` acting through `Δ^{(g)}(x)`.
pub struct AdjointAction<'a> {
    u: &'a SmallQuantumGroup,
    g: usize,
    /// Terms of `Δ^{(2g)}(x)` as factor digits with `S` already applied to the odd legs.
    legs: Vec<(Vec<usize>, Vec<SparseVec>, CycRat)>,
}

impl<'a> AdjointAction<'a> {
    pub fn new(u: &'a SmallQuantumGroup, x: &Element, g: usize) -> Self {
        assert_eq!(x.degree(), 1);
        let full = u.iterated_coproduct(x, 2 * g);
        let mut s_cache: HashMap<usize, SparseVec> = HashMap::new();
        let legs = full
            .terms()
            .iter()
            .map(|(k, c)| {
                let d = u.digits(*k, 2 * g);
                let left: Vec<usize> = (0..g).map(|j| d[2 * j]).collect();
                let right: Vec<SparseVec> = (0..g)
                    .map(|j| {
                        s_cache
                            .entry(d[2 * j + 1])
                            .or_insert_with(|| u.antipode(&u.monomial(u.pbw(d[2 * j + 1]))).into_terms())
                            .clone()
                    })
                    .collect();
                (left, right, c.clone())
            })
            .collect();
        Self { u, g, legs }
    }

    pub fn apply(&self, y: &Element) -> Element {
        assert_eq!(y.degree(), self.g);
        let mut out = SparseVec::new();
        for (k, c) in y.terms() {
            for (kk, v) in self.apply_basis(*k) {
                add_entry(&mut out, kk, &(c * &v));
            }
        }
        Element::from_terms(self.g, out)
    }

    /// Image of one basis tensor.
    pub fn apply_basis(&self, key: usize) -> SparseVec {
        let u = self.u;
        let y = u.digits(key, self.g);
        let mut out = SparseVec::new();
        for (left, right, c) in &self.legs {
            let mut partial: Vec<(usize, CycRat)> = vec![(0, c.clone())];
            for j in 0..self.g {
                let ly = u.mul_basis(left[j], y[j]);
                let mut factor = SparseVec::new();
                for (a, ca) in ly.iter() {
                    for (b, cb) in &right[j] {
                        for (p, cp) in u.mul_basis(*a, *b).iter() {
                            add_entry(&mut factor, *p, &(&(ca * cb) * cp));
                        }
                    }
                }
                if factor.is_empty() {
                    partial.clear();
                    break;
                }
                let mut next = Vec::with_capacity(partial.len() * factor.len());
                for (pk, pc) in &partial {
                    for (fk, fc) in &factor {
                        next.push((pk * u.dim() + fk, pc * fc));
                    }
                }
                partial = next;
            }
            for (k, v) in partial {
                add_entry(&mut out, k, &v);
            }
        }
        out
    }

    /// Matrix of the action on the PBW basis of `u^{⊗g}`.
    pub fn matrix(&self) -> SparseMatrix {
        let n = self.u.dim().pow(self.g as u32);
        let cols = (0..n).map(|k| self.apply_basis(k)).collect();
        SparseMatrix::from_columns(self.u.context(), n, cols)
    }
}
