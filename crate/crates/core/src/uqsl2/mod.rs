//! The small quantum group `u_ζ(sl2)` and its tensor powers.
//!
//! Elements are sparse combinations of PBW monomials `E^l 1_m F^(n)` with
//! `0 <= l, m, n < r`. A monomial has flat index `(l * r + m) * r + n`; a
//! pure tensor of `g` monomials has key `Σ_j idx_j * (r^3)^(g-1-j)`, so the
//! first factor is the most significant digit.
//!
//! Relations used for straightening (with `F = F^(1)`):
//! `1_n E = E 1_{n+1}`, `F 1_p = 1_{p+1} F`, `K 1_p = ζ^{-2p} 1_p` and
//! `F E^a 1_p = E^a F 1_p - Σ_{s<a} (ζ^{-2(p-s)} - ζ^{2(p-s)}) E^{a-1} 1_p`.

mod adjoint;
pub mod checks;
mod hopf;
mod integral;
mod ribbon;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::arith::{CycContext, CycRat};
use crate::linalg::{add_entry, axpy, SparseVec};
use crate::qcomb::qbracket_at_zeta;

/// `E^e 1_m F^(f)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pbw {
    pub e: usize,
    pub m: usize,
    pub f: usize,
}

impl Pbw {
    pub fn new(e: usize, m: usize, f: usize) -> Self {
        Self { e, m, f }
    }

    pub fn index(&self, r: usize) -> usize {
        debug_assert!(self.e < r && self.m < r && self.f < r);
        (self.e * r + self.m) * r + self.f
    }

    pub fn from_index(idx: usize, r: usize) -> Self {
        Self { e: idx / (r * r), m: (idx / r) % r, f: idx % r }
    }

    /// `p` with `E^e 1_m F^(f) = 1_p E^e F^(f)`.
    pub fn left_weight(&self, r: usize) -> usize {
        (self.m + r * r - self.e) % r
    }

    /// `p` with `E^e 1_m F^(f) = E^e F^(f) 1_p`.
    pub fn right_weight(&self, r: usize) -> usize {
        (self.m + r * r - self.f) % r
    }
}

/// A sparse element of `u^{⊗ degree}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    degree: usize,
    terms: SparseVec,
}

/// Elements of tensor degree two or more share the representation.
pub type TensorElement = Element;

impl Element {
    pub fn zero(degree: usize) -> Self {
        Self { degree, terms: SparseVec::new() }
    }

    pub fn from_terms(degree: usize, terms: SparseVec) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Self { degree, terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &SparseVec {
        &self.terms
    }

    pub fn into_terms(self) -> SparseVec {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, key: usize) -> Option<&CycRat> {
        self.terms.get(&key)
    }

    pub fn add_term(&mut self, key: usize, c: &CycRat) {
        add_entry(&mut self.terms, key, c);
    }

    pub fn add(&self, other: &Element) -> Element {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_entry(&mut out.terms, *k, c);
        }
        out
    }

    pub fn sub(&self, other: &Element) -> Element {
        assert_eq!(self.degree, other.degree);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            add_entry(&mut out.terms, *k, &-c);
        }
        out
    }

    pub fn scale(&self, c: &CycRat) -> Element {
        let mut terms = SparseVec::new();
        axpy(&mut terms, c, &self.terms);
        Element { degree: self.degree, terms }
    }

    /// Every coefficient lies in `Z[ζ]`.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integral())
    }
}

/// Structure tables of `u_ζ(sl2)` for one `r`.
pub struct SmallQuantumGroup {
    ctx: CycContext,
    r: usize,
    dim: usize,
    zeta: Vec<CycRat>,
    /// `1 / [n]_ζ!` for `0 <= n < r`.
    inv_factorial: Vec<CycRat>,
    /// `[n]_ζ` for `0 <= n <= r`.
    bracket: Vec<CycRat>,
    products: OnceLock<Vec<OnceLock<Arc<SparseVec>>>>,
    hopf: hopf::HopfTables,
    ribbon: ribbon::RibbonTables,
}

impl std::fmt::Debug for SmallQuantumGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SmallQuantumGroup(r = {})", self.r)
    }
}

impl SmallQuantumGroup {
    pub fn new(ctx: CycContext) -> Self {
        let r = ctx.order();
        let zeta = (0..r as i64).map(|e| CycRat::zeta_pow(ctx, e)).collect();
        let bracket: Vec<CycRat> = (0..=r as i64).map(|n| qbracket_at_zeta(n, ctx).into()).collect();
        let mut inv_factorial = Vec::with_capacity(r);
        let mut fact = CycRat::one(ctx);
        for n in 0..r {
            if n > 0 {
                fact = &fact * &bracket[n];
            }
            inv_factorial.push(fact.inv().expect("[n]! is a unit for n < r"));
        }
        Self {
            ctx,
            r,
            dim: r * r * r,
            zeta,
            inv_factorial,
            bracket,
            products: OnceLock::new(),
            hopf: Default::default(),
            ribbon: Default::default(),
        }
    }

    /// Process-wide shared instance for `ctx`, so lazily built tables are reused.
    pub fn shared(ctx: CycContext) -> Arc<Self> {
        static REGISTRY: OnceLock<Mutex<HashMap<u32, Arc<SmallQuantumGroup>>>> = OnceLock::new();
        let mut reg = REGISTRY.get_or_init(Default::default).lock().unwrap();
        reg.entry(ctx.r()).or_insert_with(|| Arc::new(Self::new(ctx))).clone()
    }

    pub fn context(&self) -> CycContext {
        self.ctx
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `r^3`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn zeta(&self, e: i64) -> &CycRat {
        &self.zeta[self.ctx.residue(e)]
    }

    pub fn bracket(&self, n: usize) -> &CycRat {
        &self.bracket[n]
    }

    pub fn inv_factorial(&self, n: usize) -> &CycRat {
        &self.inv_factorial[n]
    }

    pub fn residue(&self, e: i64) -> usize {
        self.ctx.residue(e)
    }

    pub fn index(&self, p: Pbw) -> usize {
        p.index(self.r)
    }

    pub fn pbw(&self, idx: usize) -> Pbw {
        Pbw::from_index(idx, self.r)
    }

    /// Tensor key from factor indices.
    pub fn key(&self, factors: &[usize]) -> usize {
        factors.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    /// Factor indices of a tensor key of the given degree.
    pub fn digits(&self, mut key: usize, degree: usize) -> Vec<usize> {
        let mut out = vec![0; degree];
        for slot in out.iter_mut().rev() {
            *slot = key % self.dim;
            key /= self.dim;
        }
        out
    }

    pub fn monomial(&self, p: Pbw) -> Element {
        let mut terms = SparseVec::new();
        terms.insert(self.index(p), CycRat::one(self.ctx));
        Element::from_terms(1, terms)
    }

    /// The unit `1 = Σ_p 1_p`.
    pub fn one(&self) -> Element {
        self.k_pow(0)
    }

    pub fn gen_e(&self) -> Element {
        let mut terms = SparseVec::new();
        for p in 0..self.r {
            terms.insert(self.index(Pbw::new(1, p, 0)), CycRat::one(self.ctx));
        }
        Element::from_terms(1, terms)
    }

    /// `F^(1)`.
    pub fn gen_f(&self) -> Element {
        let mut terms = SparseVec::new();
        for p in 0..self.r {
            terms.insert(self.index(Pbw::new(0, p, 1)), CycRat::one(self.ctx));
        }
        Element::from_terms(1, terms)
    }

    pub fn idem(&self, m: i64) -> Element {
        self.monomial(Pbw::new(0, self.residue(m), 0))
    }

    /// `K^j = Σ_p ζ^{-2jp} 1_p`.
    pub fn k_pow(&self, j: i64) -> Element {
        let mut terms = SparseVec::new();
        for p in 0..self.r {
            terms.insert(self.index(Pbw::new(0, p, 0)), self.zeta(-2 * j * p as i64).clone());
        }
        Element::from_terms(1, terms)
    }

    /// `E^l F^(n) 1_m` rewritten in the `E 1 F` normal form.
    pub fn e_f_idem(&self, l: usize, n: usize, m: i64) -> Pbw {
        Pbw::new(l, self.residue(m + n as i64), n)
    }

    /// Embeds a degree-one element as a pure tensor with units elsewhere.
    pub fn embed(&self, x: &Element, position: usize, degree: usize) -> Element {
        assert_eq!(x.degree, 1);
        let one = self.one();
        let mut out: Option<Element> = None;
        for j in 0..degree {
            let factor = if j == position { x } else { &one };
            out = Some(match out {
                None => factor.clone(),
                Some(acc) => self.tensor(&acc, factor),
            });
        }
        out.expect("degree >= 1")
    }

    /// `a ⊗ b`.
    pub fn tensor(&self, a: &Element, b: &Element) -> Element {
        let shift = self.dim.pow(b.degree as u32);
        let mut terms = SparseVec::new();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                terms.insert(ka * shift + kb, ca * cb);
            }
        }
        Element::from_terms(a.degree + b.degree, terms)
    }

    /// Left multiplication of a monomial by `E`.
    fn left_e(&self, idx: usize) -> Option<usize> {
        let p = self.pbw(idx);
        (p.e + 1 < self.r).then(|| self.index(Pbw::new(p.e + 1, p.m, p.f)))
    }

    /// Left multiplication of a monomial by `F^(1)`.
    fn left_f(&self, idx: usize, out: &mut SparseVec, c: &CycRat) {
        let p = self.pbw(idx);
        if p.f + 1 < self.r {
            let key = self.index(Pbw::new(p.e, (p.m + 1) % self.r, p.f + 1));
            add_entry(out, key, &(c * &self.bracket[p.f + 1]));
        }
        if p.e > 0 {
            let mut s = CycRat::zero(self.ctx);
            for t in 0..p.e as i64 {
                let w = p.m as i64 - t;
                s += self.zeta(-2 * w);
                s -= self.zeta(2 * w);
            }
            if !s.is_zero() {
                let key = self.index(Pbw::new(p.e - 1, p.m, p.f));
                add_entry(out, key, &-(c * &s));
            }
        }
    }

    /// `K^j x = ζ^{-2j·w} x` where `w` is the left weight of the monomial.
    pub fn k_scalar(&self, idx: usize, j: i64) -> &CycRat {
        let w = self.pbw(idx).left_weight(self.r) as i64;
        self.zeta(-2 * j * w)
    }

    fn apply_f(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (k, c) in v {
            self.left_f(*k, &mut out, c);
        }
        out
    }

    fn compute_product(&self, a: usize, b: usize) -> SparseVec {
        let pa = self.pbw(a);
        let pb = self.pbw(b);
        if pa.right_weight(self.r) != pb.left_weight(self.r) {
            return SparseVec::new();
        }
        let mut v = SparseVec::new();
        v.insert(b, CycRat::one(self.ctx));
        for _ in 0..pa.f {
            v = self.apply_f(&v);
        }
        let inv = &self.inv_factorial[pa.f];
        let mut out = SparseVec::new();
        for (k, c) in v {
            let p = self.pbw(k);
            if p.left_weight(self.r) != pa.m {
                continue;
            }
            let mut key = Some(k);
            for _ in 0..pa.e {
                key = key.and_then(|k| self.left_e(k));
            }
            if let Some(key) = key {
                add_entry(&mut out, key, &(&c * inv));
            }
        }
        out
    }

    /// Product of two basis monomials.
    pub fn mul_basis(&self, a: usize, b: usize) -> Arc<SparseVec> {
        let table = self.products.get_or_init(|| (0..self.dim * self.dim).map(|_| OnceLock::new()).collect());
        table[a * self.dim + b].get_or_init(|| Arc::new(self.compute_product(a, b))).clone()
    }

    /// Product in `u^{⊗g}`, computed factorwise.
    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        assert_eq!(a.degree, b.degree, "tensor degree mismatch");
        let g = a.degree;
        let mut out = SparseVec::new();
        let bd: Vec<(Vec<usize>, &CycRat)> = b.terms.iter().map(|(k, c)| (self.digits(*k, g), c)).collect();
        for (ka, ca) in &a.terms {
            let da = self.digits(*ka, g);
            let rw: Vec<usize> = da.iter().map(|&i| self.pbw(i).right_weight(self.r)).collect();
            for (db, cb) in &bd {
                if (0..g).any(|j| self.pbw(db[j]).left_weight(self.r) != rw[j]) {
                    continue;
                }
                let mut partial: Vec<(usize, CycRat)> = vec![(0, ca * *cb)];
                for j in 0..g {
                    let prod = self.mul_basis(da[j], db[j]);
                    if prod.is_empty() {
                        partial.clear();
                        break;
                    }
                    let mut next = Vec::with_capacity(partial.len() * prod.len());
                    for (k, c) in &partial {
                        for (i, x) in prod.iter() {
                            next.push((k * self.dim + i, c * x));
                        }
                    }
                    partial = next;
                }
                for (k, c) in partial {
                    add_entry(&mut out, k, &c);
                }
            }
        }
        Element::from_terms(g, out)
    }

    /// Applies a linear map of single factors to factor `position`.
    pub fn map_factor(&self, x: &Element, position: usize, f: impl Fn(usize) -> Element) -> Element {
        let g = x.degree;
        let mut cache: HashMap<usize, Element> = HashMap::new();
        let mut out = SparseVec::new();
        let mut out_degree = None;
        for (k, c) in &x.terms {
            let d = self.digits(*k, g);
            let img = cache.entry(d[position]).or_insert_with(|| f(d[position]));
            let dd = img.degree;
            out_degree = Some(g - 1 + dd);
            let tail_len = g - 1 - position;
            let head = self.key(&d[..position]);
            let tail = self.key(&d[position + 1..]);
            for (ik, ic) in &img.terms {
                let key = (head * self.dim.pow(dd as u32) + ik) * self.dim.pow(tail_len as u32) + tail;
                add_entry(&mut out, key, &(c * ic));
            }
        }
        Element::from_terms(out_degree.unwrap_or(g), out)
    }

    /// Permutes tensor factors: factor `j` of the input lands in slot `perm[j]`.
    pub fn permute(&self, x: &Element, perm: &[usize]) -> Element {
        let g = x.degree;
        assert_eq!(perm.len(), g);
        let mut out = SparseVec::new();
        for (k, c) in &x.terms {
            let d = self.digits(*k, g);
            let mut nd = vec![0; g];
            for j in 0..g {
                nd[perm[j]] = d[j];
            }
            out.insert(self.key(&nd), c.clone());
        }
        Element::from_terms(g, out)
    }

    /// Inserts a unit factor at slot `position` of the output.
    pub fn insert_unit(&self, x: &Element, position: usize) -> Element {
        let g = x.degree;
        let mut out = SparseVec::new();
        for (k, c) in &x.terms {
            let d = self.digits(*k, g);
            for p in 0..self.r {
                let mut nd = d.clone();
                nd.insert(position, self.index(Pbw::new(0, p, 0)));
                out.insert(self.key(&nd), c.clone());
            }
        }
        Element::from_terms(g + 1, out)
    }

    /// All basis monomials in index order.
    pub fn basis(&self) -> impl Iterator<Item = Pbw> + '_ {
        (0..self.dim).map(|i| self.pbw(i))
    }
}

pub use adjoint::AdjointAction;
pub use integral::drinfeld_check;
