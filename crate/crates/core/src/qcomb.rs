//! Quantum integers, factorials and binomials as Laurent polynomials.
//!
//! Conventions: `{n;k} = 0` for `k < 0`, and the binomial vanishes whenever
//! `k < 0`, `l < 0` or `k < l`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith::{reduce_at_zeta, CycContext, CycInt, LaurentPoly};
use crate::params;
use crate::report::{CheckReport, Witness};

/// `{n}_q = q^n - q^-n`.
pub fn qbrace(n: i64) -> LaurentPoly {
    LaurentPoly::from_terms([(n, 1), (-n, -1)])
}

/// `{n;k}_q = Π_{j=1}^k {n-k+j}_q`.
pub fn qshifted_brace(n: i64, k: i64) -> LaurentPoly {
    if k < 0 {
        return LaurentPoly::zero();
    }
    (1..=k).map(|j| qbrace(n - k + j)).product()
}

/// `{k}_q! = {k;k}_q`.
pub fn qbrace_factorial(k: i64) -> LaurentPoly {
    qshifted_brace(k, k)
}

/// `[n]_q = {n}_q / {1}_q = q^{n-1} + q^{n-3} + … + q^{1-n}`.
pub fn qbracket(n: i64) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::zero();
    }
    let sign = if n > 0 { 1 } else { -1 };
    let m = n.abs();
    LaurentPoly::from_terms((0..m).map(|i| (m - 1 - 2 * i, sign)))
}

/// `[k]_q! = Π_{j=1}^k [j]_q`, with `[0]! = 1`; zero for negative `k`.
pub fn qbracket_factorial(k: i64) -> LaurentPoly {
    if k < 0 {
        return LaurentPoly::zero();
    }
    (1..=k).map(qbracket).product()
}

type BinomCache = RwLock<HashMap<(i64, i64), Arc<LaurentPoly>>>;

fn binom_cache() -> &'static BinomCache {
    static CACHE: OnceLock<BinomCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Gaussian binomial `[k choose l]_q`, computed as `{k;l}_q / {l}_q!`.
pub fn qbinom(k: i64, l: i64) -> Arc<LaurentPoly> {
    if k < 0 || l < 0 || k < l {
        static ZERO: OnceLock<Arc<LaurentPoly>> = OnceLock::new();
        return ZERO.get_or_init(|| Arc::new(LaurentPoly::zero())).clone();
    }
    let l = l.min(k - l);
    if let Some(p) = binom_cache().read().unwrap().get(&(k, l)) {
        return p.clone();
    }
    let num = qshifted_brace(k, l);
    let den = qbrace_factorial(l);
    let p = Arc::new(num.div_exact(&den).expect("q-binomial division is exact"));
    binom_cache().write().unwrap().insert((k, l), p.clone());
    p
}

/// `[k choose l]_ζ`.
pub fn qbinom_at_zeta(k: i64, l: i64, ctx: CycContext) -> CycInt {
    reduce_at_zeta(&qbinom(k, l), ctx)
}

/// `[n]_ζ`.
pub fn qbracket_at_zeta(n: i64, ctx: CycContext) -> CycInt {
    reduce_at_zeta(&qbracket(n), ctx)
}

/// `[k]_ζ!`.
pub fn qbracket_factorial_at_zeta(k: i64, ctx: CycContext) -> CycInt {
    (1..=k).fold(ctx.one(), |acc, j| &acc * &qbracket_at_zeta(j, ctx))
}

/// Ordinary binomial coefficient, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> num_bigint::BigInt {
    use num_bigint::BigInt;
    if n < 0 || k < 0 || k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn first_failure<I: IntoIterator<Item = Vec<i64>>>(
    cases: I,
    mut ok: impl FnMut(&[i64]) -> bool,
) -> Option<Witness> {
    cases.into_iter().find(|c| !ok(c)).map(|c| Witness::new(c, "identity fails"))
}

/// Pascal identities, `q ↦ q^{-1}` symmetries, unit brackets and binomial inversion at `ζ`.
pub fn qcomb_checks(ctx: CycContext) -> Vec<CheckReport> {
    const SUITE: &str = "qcomb";
    let r = ctx.r() as i64;
    let bound = 2 * r;
    let p = params!["r" => r, "bound" => bound];
    let pairs = || (1..=bound).flat_map(|n| (-1..=n + 1).map(move |k| vec![n, k]));
    let q = LaurentPoly::q_pow;
    let mut out = Vec::new();

    let w = first_failure(pairs(), |c| {
        let (n, k) = (c[0], c[1]);
        *qbinom(n, k) == &(&q(k) * &*qbinom(n - 1, k)) + &(&q(k - n) * &*qbinom(n - 1, k - 1))
    });
    out.push(CheckReport::from_witness(SUITE, "pascal", p, w));
    let w = first_failure(pairs(), |c| {
        let (n, k) = (c[0], c[1]);
        *qbinom(n, k) == &(&q(-k) * &*qbinom(n - 1, k)) + &(&q(n - k) * &*qbinom(n - 1, k - 1))
    });
    out.push(CheckReport::from_witness(SUITE, "pascal-inverse", p, w));

    let w = first_failure((-bound..=bound).map(|n| vec![n]), |c| {
        let n = c[0];
        let k = n.abs();
        let sign = if k % 2 == 0 { 1 } else { -1 };
        qbrace(n).invert_variable() == -qbrace(n)
            && qbracket(n).invert_variable() == qbracket(n)
            && qbrace_factorial(k).invert_variable() == qbrace_factorial(k).scale(&sign.into())
            && qbracket_factorial(k).invert_variable() == qbracket_factorial(k)
    });
    out.push(CheckReport::from_witness(SUITE, "inversion-symmetry", p, w));
    let w = first_failure(pairs(), |c| qbinom(c[0], c[1]).invert_variable() == *qbinom(c[0], c[1]));
    out.push(CheckReport::from_witness(SUITE, "binomial-symmetry", p, w));

    let w = first_failure((1..r).map(|n| vec![n]), |c| qbracket_at_zeta(c[0], ctx).is_unit());
    out.push(CheckReport::from_witness(SUITE, "bracket-units", params!["r" => r], w));
    let w = first_failure((0..r).flat_map(|m| (0..r - m).map(move |l| vec![m, l])), |c| {
        let (m, l) = (c[0], c[1]);
        let rhs = qbinom_at_zeta(l + m, l, ctx);
        qbinom_at_zeta(r - m - 1, l, ctx) == if l % 2 == 0 { rhs } else { -rhs }
    });
    out.push(CheckReport::from_witness(SUITE, "binomial-inversion-at-zeta", params!["r" => r], w));
    out
}
