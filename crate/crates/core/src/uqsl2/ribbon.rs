//! R-matrix, ribbon element and M-matrix.

use std::sync::OnceLock;

use super::{Element, Pbw, SmallQuantumGroup};
use crate::linalg::{add_entry, SparseVec};

#[derive(Default)]
pub(super) struct RibbonTables {
    r_matrix: OnceLock<Element>,
    theta: OnceLock<Element>,
    theta_inv: OnceLock<Element>,
    m_matrix: OnceLock<Element>,
    delta_theta: OnceLock<Element>,
    delta_theta_inv: OnceLock<Element>,
}

fn tri(n: i64) -> i64 {
    n * (n - 1) / 2
}

impl SmallQuantumGroup {
    /// `R = Σ_{m,n} ζ^{n(n-1)/2} K^{-m} E^n ⊗ 1_m F^(n)`.
    pub fn r_matrix(&self) -> &Element {
        self.ribbon.r_matrix.get_or_init(|| {
            let r = self.r as i64;
            let d = self.dim;
            let mut terms = SparseVec::new();
            for m in 0..r {
                for n in 0..r {
                    let right = self.index(Pbw::new(0, m as usize, n as usize));
                    // K^{-m} E^n = Σ_p ζ^{2mp} 1_p E^n = Σ_p ζ^{2mp} E^n 1_{p+n}
                    for p in 0..r {
                        let left = self.index(Pbw::new(n as usize, self.residue(p + n), 0));
                        let c = self.zeta(tri(n) + 2 * m * p);
                        add_entry(&mut terms, left * d + right, c);
                    }
                }
            }
            Element::from_terms(2, terms)
        })
    }

    /// The second displayed form `Σ_{m,n} ζ^{n(n-1)/2} 1_m E^n ⊗ K^{-m} F^(n)`,
    /// built through algebra products rather than the closed expansion.
    pub fn r_matrix_alt(&self) -> Element {
        let r = self.r as i64;
        let mut acc = Element::zero(2);
        for m in 0..r {
            for n in 0..r {
                let mut e_n = self.idem(m);
                let mut f_n = self.one();
                for _ in 0..n {
                    e_n = self.mul(&e_n, &self.gen_e());
                    f_n = self.mul(&f_n, &self.gen_f());
                }
                let f_n = self.mul(&self.k_pow(-m), &f_n.scale(&self.inv_factorial[n as usize]));
                acc = acc.add(&self.tensor(&e_n, &f_n).scale(self.zeta(tri(n))));
            }
        }
        acc
    }

    /// `R_21`.
    pub fn r_matrix_flip(&self) -> Element {
        self.permute(self.r_matrix(), &[1, 0])
    }

    /// `θ = Σ_{m,n} (-1)^m ζ^{-(m+3)m/2 - 2(m+n+1)n} E^m F^(m) 1_n`.
    pub fn ribbon(&self) -> &Element {
        self.ribbon.theta.get_or_init(|| self.ribbon_sum(false))
    }

    /// `θ^{-1} = Σ_{m,n} ζ^{(m+3)m/2 + 2(m+n+1)n} E^m F^(m) 1_n`.
    pub fn ribbon_inv(&self) -> &Element {
        self.ribbon.theta_inv.get_or_init(|| self.ribbon_sum(true))
    }

    fn ribbon_sum(&self, inverse: bool) -> Element {
        let r = self.r as i64;
        let mut terms = SparseVec::new();
        for m in 0..r {
            for n in 0..r {
                let e = (m + 3) * m / 2 + 2 * (m + n + 1) * n;
                let mut c = self.zeta(if inverse { e } else { -e }).clone();
                if !inverse && m % 2 == 1 {
                    c = -c;
                }
                let key = self.index(self.e_f_idem(m as usize, m as usize, n));
                add_entry(&mut terms, key, &c);
            }
        }
        Element::from_terms(1, terms)
    }

    /// `M = R_21 R = Σ R''_j R'_i ⊗ R'_j R''_i`.
    pub fn m_matrix(&self) -> &Element {
        self.ribbon.m_matrix.get_or_init(|| self.mul(&self.r_matrix_flip(), self.r_matrix()))
    }

    /// `Δ(θ)`.
    pub fn coproduct_ribbon(&self) -> &Element {
        self.ribbon.delta_theta.get_or_init(|| self.coproduct(self.ribbon()))
    }

    /// `Δ(θ^{-1})`.
    pub fn coproduct_ribbon_inv(&self) -> &Element {
        self.ribbon.delta_theta_inv.get_or_init(|| self.coproduct(self.ribbon_inv()))
    }
}
