//! Coproduct, counit and antipode.
//!
//! `Δ(E) = E⊗K + 1⊗E`, `Δ(F) = K^{-1}⊗F + F⊗1`, `Δ(1_n) = Σ_m 1_{n-m}⊗1_m`,
//! `S(E) = -E K^{-1}`, `S(F) = -K F`, `S(1_n) = 1_{-n}`, `ε(1_n) = δ_{n,0}`.

use std::sync::OnceLock;

use super::{Element, Pbw, SmallQuantumGroup};
use crate::arith::CycRat;
use crate::linalg::{add_entry, SparseVec};

#[derive(Default)]
pub(super) struct HopfTables {
    coproduct: OnceLock<Vec<SparseVec>>,
    antipode: OnceLock<Vec<SparseVec>>,
}

impl SmallQuantumGroup {
    fn coproduct_monomial(&self, p: Pbw) -> SparseVec {
        let r = self.r;
        let d = self.dim;
        // pairs (x1, x2) of monomial indices
        let mut y: Vec<((usize, usize), CycRat)> = Vec::new();
        for a in 0..r {
            for b in 0..r {
                y.push(((self.index(Pbw::new(0, a, 0)), self.index(Pbw::new(0, b, 0))), CycRat::one(self.ctx)));
            }
        }
        let collect = |v: SparseVec| -> Vec<((usize, usize), CycRat)> {
            v.into_iter().map(|(k, c)| ((k / d, k % d), c)).collect()
        };
        for k in 1..=p.f {
            let inv_k = self.bracket[k].inv().expect("[k] is a unit");
            let mut next = SparseVec::new();
            for ((x1, x2), c) in &y {
                // K^{-1} x1 ⊗ F x2
                let c1 = c * self.k_scalar(*x1, -1);
                let mut fx2 = SparseVec::new();
                self.left_f(*x2, &mut fx2, &c1);
                for (k2, v) in fx2 {
                    add_entry(&mut next, x1 * d + k2, &v);
                }
                // F x1 ⊗ x2
                let mut fx1 = SparseVec::new();
                self.left_f(*x1, &mut fx1, c);
                for (k1, v) in fx1 {
                    add_entry(&mut next, k1 * d + x2, &v);
                }
            }
            y = collect(next.into_iter().map(|(k, c)| (k, &c * &inv_k)).collect());
        }
        y.retain(|((x1, x2), _)| {
            (self.pbw(*x1).left_weight(r) + self.pbw(*x2).left_weight(r)) % r == p.m
        });
        for _ in 0..p.e {
            let mut next = SparseVec::new();
            for ((x1, x2), c) in &y {
                if let Some(e1) = self.left_e(*x1) {
                    add_entry(&mut next, e1 * d + x2, &(c * self.k_scalar(*x2, 1)));
                }
                if let Some(e2) = self.left_e(*x2) {
                    add_entry(&mut next, x1 * d + e2, c);
                }
            }
            y = collect(next);
        }
        let mut out = SparseVec::new();
        for ((x1, x2), c) in y {
            add_entry(&mut out, x1 * d + x2, &c);
        }
        out
    }

    fn coproduct_table(&self) -> &[SparseVec] {
        self.hopf.coproduct.get_or_init(|| self.basis().map(|p| self.coproduct_monomial(p)).collect())
    }

    fn antipode_table(&self) -> &[SparseVec] {
        self.hopf.antipode.get_or_init(|| {
            let r = self.r;
            let mut sf = SparseVec::new();
            let mut se = SparseVec::new();
            for p in 0..r as i64 {
                sf.insert(self.index(Pbw::new(0, p as usize, 1)), -self.zeta(-2 * p));
                se.insert(self.index(Pbw::new(1, p as usize, 0)), -self.zeta(2 * p));
            }
            let sf = Element::from_terms(1, sf);
            let se = Element::from_terms(1, se);
            let mut f_pows = vec![self.one()];
            let mut e_pows = vec![self.one()];
            for k in 1..r {
                f_pows.push(self.mul(&f_pows[k - 1], &sf));
                e_pows.push(self.mul(&e_pows[k - 1], &se));
            }
            self.basis()
                .map(|p| {
                    let left = f_pows[p.f].scale(&self.inv_factorial[p.f]);
                    let mid = self.mul(&left, &self.idem(-(p.m as i64)));
                    self.mul(&mid, &e_pows[p.e]).into_terms()
                })
                .collect()
        })
    }

    /// `Δ` on a degree-one element.
    pub fn coproduct(&self, x: &Element) -> Element {
        assert_eq!(x.degree(), 1);
        let table = self.coproduct_table();
        let mut out = SparseVec::new();
        for (k, c) in x.terms() {
            for (kk, v) in &table[*k] {
                add_entry(&mut out, *kk, &(c * v));
            }
        }
        Element::from_terms(2, out)
    }

    /// `Δ` applied to one tensor factor.
    pub fn coproduct_at(&self, x: &Element, position: usize) -> Element {
        let table = self.coproduct_table();
        self.map_factor(x, position, |i| Element::from_terms(2, table[i].clone()))
    }

    /// `Δ^{(g)}: u -> u^{⊗g}`.
    pub fn iterated_coproduct(&self, x: &Element, g: usize) -> Element {
        assert!(g >= 1);
        let mut y = x.clone();
        for _ in 1..g {
            y = self.coproduct_at(&y, 0);
        }
        y
    }

    /// `Δ^op = τ ∘ Δ`.
    pub fn coproduct_op(&self, x: &Element) -> Element {
        self.permute(&self.coproduct(x), &[1, 0])
    }

    pub fn counit(&self, x: &Element) -> CycRat {
        assert_eq!(x.degree(), 1);
        let key = self.index(Pbw::new(0, 0, 0));
        x.coeff(key).cloned().unwrap_or_else(|| CycRat::zero(self.ctx))
    }

    pub fn antipode(&self, x: &Element) -> Element {
        assert_eq!(x.degree(), 1);
        let table = self.antipode_table();
        let mut out = SparseVec::new();
        for (k, c) in x.terms() {
            for (kk, v) in &table[*k] {
                add_entry(&mut out, *kk, &(c * v));
            }
        }
        Element::from_terms(1, out)
    }

    /// `S` applied to one tensor factor.
    pub fn antipode_at(&self, x: &Element, position: usize) -> Element {
        let table = self.antipode_table();
        self.map_factor(x, position, |i| Element::from_terms(1, table[i].clone()))
    }

    /// Multiplication `u⊗u -> u`.
    pub fn multiply_legs(&self, x: &Element) -> Element {
        assert_eq!(x.degree(), 2);
        let d = self.dim;
        let mut out = SparseVec::new();
        for (k, c) in x.terms() {
            for (kk, v) in self.mul_basis(k / d, k % d).iter() {
                add_entry(&mut out, *kk, &(c * v));
            }
        }
        Element::from_terms(1, out)
    }

    /// `x ↦ ε(x) 1`.
    pub fn unit_counit(&self, x: &Element) -> Element {
        self.one().scale(&self.counit(x))
    }
}
