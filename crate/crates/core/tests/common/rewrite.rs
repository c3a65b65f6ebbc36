//! Word-rewriting model of `u_ζ(sl2)` in the presentation
//! `K E = ζ^2 E K`, `F K = ζ^2 K F`, `E F - F E = K - K^{-1}`,
//! `E^r = F^r = 0`, `K^r = 1`, with normal words `E^a K^b F^c`.
//! Shares nothing with the PBW straightening beyond `Q(ζ)` arithmetic.

use std::collections::BTreeMap;

use uqint::uqsl2::Pbw;
use uqint::{CycContext, CycRat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Letter {
    E,
    F,
    K(usize),
}

/// Normal-ordered monomial `E^a K^b F^c`.
pub type Mono = (usize, usize, usize);
pub type Elem = BTreeMap<Mono, CycRat>;

pub struct Oracle {
    ctx: CycContext,
    r: usize,
}

impl Oracle {
    pub fn new(ctx: CycContext) -> Self {
        Self { ctx, r: ctx.r() as usize }
    }

    fn z(&self, e: i64) -> CycRat {
        CycRat::zeta_pow(self.ctx, e)
    }

    fn add(&self, out: &mut Elem, m: Mono, c: &CycRat) {
        let slot = out.entry(m).or_insert_with(|| CycRat::zero(self.ctx));
        *slot += c;
        if slot.is_zero() {
            out.remove(&m);
        }
    }

    /// One rewrite step at the first reducible position, or `None` for a normal word.
    fn step(&self, w: &[Letter]) -> Option<Vec<(Vec<Letter>, CycRat)>> {
        use Letter::*;
        let r = self.r;
        let splice = |i: usize, mid: &[Letter]| {
            let mut v = w[..i].to_vec();
            v.extend_from_slice(mid);
            v.extend_from_slice(&w[i + 2..]);
            v
        };
        for i in 0..w.len() {
            if let K(0) = w[i] {
                let mut v = w.to_vec();
                v.remove(i);
                return Some(vec![(v, CycRat::one(self.ctx))]);
            }
        }
        for i in 0..w.len().saturating_sub(1) {
            let one = CycRat::one(self.ctx);
            match (w[i], w[i + 1]) {
                (K(a), K(b)) => return Some(vec![(splice(i, &[K((a + b) % r)]), one)]),
                (K(a), E) => return Some(vec![(splice(i, &[E, K(a)]), self.z(2 * a as i64))]),
                (F, K(a)) => return Some(vec![(splice(i, &[K(a), F]), self.z(2 * a as i64))]),
                (F, E) => {
                    return Some(vec![
                        (splice(i, &[E, F]), one.clone()),
                        (splice(i, &[K(1)]), -one.clone()),
                        (splice(i, &[K(r - 1)]), one),
                    ])
                }
                _ => {}
            }
        }
        None
    }

    /// Normal form of `c · w`.
    fn normalize_into(&self, w: Vec<Letter>, c: CycRat, out: &mut Elem) {
        let mut work = vec![(w, c)];
        while let Some((w, c)) = work.pop() {
            match self.step(&w) {
                Some(next) => work.extend(next.into_iter().map(|(v, d)| (v, &c * &d))),
                None => {
                    let a = w.iter().filter(|l| **l == Letter::E).count();
                    let f = w.iter().filter(|l| **l == Letter::F).count();
                    let b = w.iter().find_map(|l| if let Letter::K(b) = l { Some(*b) } else { None }).unwrap_or(0);
                    if a < self.r && f < self.r {
                        self.add(out, (a, b, f), &c);
                    }
                }
            }
        }
    }

    fn word(&self, (a, b, c): Mono) -> Vec<Letter> {
        let mut w = vec![Letter::E; a];
        w.push(Letter::K(b));
        w.extend(std::iter::repeat_n(Letter::F, c));
        w
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let mut out = Elem::new();
        for (mx, cx) in x {
            for (my, cy) in y {
                let mut w = self.word(*mx);
                w.extend(self.word(*my));
                self.normalize_into(w, cx * cy, &mut out);
            }
        }
        out
    }

    /// `[n]_ζ = Σ_{s<n} ζ^{n-1-2s}`.
    fn bracket(&self, n: usize) -> CycRat {
        let mut acc = CycRat::zero(self.ctx);
        for s in 0..n {
            acc += &self.z(n as i64 - 1 - 2 * s as i64);
        }
        acc
    }

    /// `E^e 1_m F^f / [f]!` with `1_m = (1/r) Σ_j ζ^{2mj} K^j`.
    pub fn lift_pbw(&self, p: Pbw) -> Elem {
        let fact = (1..=p.f).fold(CycRat::one(self.ctx), |acc, i| &acc * &self.bracket(i));
        let scale = fact.scale_int(&(self.r as i64).into()).inv().expect("[f]! is non-zero for f < r");
        let mut out = Elem::new();
        for j in 0..self.r {
            self.add(&mut out, (p.e, j, p.f), &(&self.z(2 * (p.m * j) as i64) * &scale));
        }
        out
    }

    pub fn lift_terms<'a>(&self, terms: impl IntoIterator<Item = (&'a usize, &'a CycRat)>) -> Elem {
        let mut out = Elem::new();
        for (k, c) in terms {
            for (m, v) in self.lift_pbw(Pbw::from_index(*k, self.r)) {
                self.add(&mut out, m, &(c * &v));
            }
        }
        out
    }
}
