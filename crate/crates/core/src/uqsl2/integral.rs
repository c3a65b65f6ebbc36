//! Rescaled integral `λ' = √r λ` and cointegral `Λ' = Λ / √r`.
//!
//! `λ'(E^l F^(m) 1_n) = ζ^{-2n} δ_{l,r-1} δ_{m,r-1}` and
//! `Λ' = E^{r-1} F^(r-1) 1_0`, so `λ'(Λ') = 1` and the factorizability
//! identity reads `λ'(R'_j R''_i) R''_j R'_i = r Λ'`.

use super::{Element, Pbw, SmallQuantumGroup};
use crate::arith::{CycContext, CycRat};
use crate::linalg::{add_entry, SparseVec};
use crate::params;
use crate::report::{CheckReport, Witness};

impl SmallQuantumGroup {
    /// `λ'` on a basis monomial.
    pub fn lambda_basis(&self, idx: usize) -> CycRat {
        let p = self.pbw(idx);
        let top = self.r - 1;
        if p.e != top || p.f != top {
            return CycRat::zero(self.ctx);
        }
        // E^{r-1} 1_m F^(r-1) = E^{r-1} F^(r-1) 1_{m+1}
        self.zeta(-2 * (p.m as i64 + 1)).clone()
    }

    pub fn lambda(&self, x: &Element) -> CycRat {
        assert_eq!(x.degree(), 1);
        let mut acc = CycRat::zero(self.ctx);
        for (k, c) in x.terms() {
            let l = self.lambda_basis(*k);
            if !l.is_zero() {
                acc += &(c * &l);
            }
        }
        acc
    }

    /// `Λ'`.
    pub fn cointegral(&self) -> Element {
        let top = self.r - 1;
        self.monomial(self.e_f_idem(top, top, 0))
    }

    /// Contracts factor `position` of `x` against a functional on monomials.
    pub fn contract_factor(&self, x: &Element, position: usize, f: impl Fn(usize) -> CycRat) -> Element {
        let g = x.degree();
        assert!(g >= 2);
        let mut out = SparseVec::new();
        for (k, c) in x.terms() {
            let mut d = self.digits(*k, g);
            let v = f(d.remove(position));
            if !v.is_zero() {
                add_entry(&mut out, self.key(&d), &(c * &v));
            }
        }
        Element::from_terms(g - 1, out)
    }

    /// `λ'(R'_j R''_i) R''_j R'_i = (id ⊗ λ')(R_21 R)` for a given R.
    pub fn drinfeld_image(&self, r_matrix: &Element) -> Element {
        let flip = self.permute(r_matrix, &[1, 0]);
        let m = self.mul(&flip, r_matrix);
        self.contract_factor(&m, 1, |i| self.lambda_basis(i))
    }

    /// Compares `λ'(R'_j R''_i) R''_j R'_i` with `r Λ'` for the given R-matrix.
    pub fn drinfeld_check_with(&self, r_matrix: &Element) -> CheckReport {
        let lhs = self.drinfeld_image(r_matrix);
        let rhs = self.cointegral().scale(&CycRat::integer(self.ctx, self.r as i64));
        let witness = first_difference(self, &lhs, &rhs);
        CheckReport::from_witness("factorizability", "drinfeld-cointegral", params!["r" => self.r], witness)
    }
}

/// First monomial where two degree-one elements differ.
pub(crate) fn first_difference(u: &SmallQuantumGroup, a: &Element, b: &Element) -> Option<Witness> {
    let diff = a.sub(b);
    diff.terms().iter().next().map(|(k, c)| {
        let p: Pbw = u.pbw(*k % u.dim());
        Witness::new(vec![*k as i64, p.e as i64, p.m as i64, p.f as i64], format!("difference {c}"))
    })
}

/// Factorizability in the rescaled normalization, `λ'(R'_j R''_i) R''_j R'_i = r Λ'`.
pub fn drinfeld_check(ctx: CycContext) -> CheckReport {
    let u = SmallQuantumGroup::shared(ctx);
    u.drinfeld_check_with(u.r_matrix())
}
