//! Exact arithmetic tower: `Z[q, q^-1]`, `Z[ζ]` and `Q(ζ)`.

mod cyclotomic;
mod laurent;

pub use cyclotomic::{divide_exact_h_zeta, gauss_sum, reduce_at_zeta, CycContext, CycInt, CycRat};
pub use laurent::LaurentPoly;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("r = {0} is not an odd prime")]
    InvalidModulus(u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("negative exponent {0}")]
    NegativeExponent(i64),
    #[error("expected {expected} power-basis coordinates, got {got}")]
    CoordinateLength { expected: usize, got: usize },
}

/// Failure of an exact division by `h(q)^k = (1 - q)^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotDivisible {
    /// Number of factors `h(q)` successfully divided out before failure.
    pub stage: u32,
    /// `p(1)` for the partial quotient left at that stage (non-zero).
    pub remainder: BigInt,
}

/// `h(q) = 1 - q`.
pub fn h_poly() -> LaurentPoly {
    LaurentPoly::from_terms([(0, 1), (1, -1)])
}

/// Divides `p` by `(1 - q)^k` exactly, or reports where divisibility breaks.
pub fn divide_exact_h(p: &LaurentPoly, k: u32) -> Result<LaurentPoly, NotDivisible> {
    if p.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let base = p.min_exp().unwrap();
    let deg = (p.max_exp().unwrap() - base) as usize;
    // dense coefficients of q^-base * p, low degree first
    let mut dense = vec![BigInt::zero(); deg + 1];
    for (e, c) in p.terms() {
        dense[(e - base) as usize] = c.clone();
    }
    for stage in 0..k {
        let at_one: BigInt = dense.iter().sum();
        if !at_one.is_zero() {
            return Err(NotDivisible { stage, remainder: at_one });
        }
        // p(q) = (1 - q) s(q)  <=>  s_i = Σ_{j<=i} p_j
        let mut acc = BigInt::zero();
        let mut next = Vec::with_capacity(dense.len().saturating_sub(1));
        for c in &dense[..dense.len() - 1] {
            acc += c;
            next.push(acc.clone());
        }
        dense = next;
        if dense.is_empty() {
            // only happens when p was zero, excluded above
            return Err(NotDivisible { stage: stage + 1, remainder: BigInt::zero() });
        }
    }
    Ok(LaurentPoly::from_terms(dense.into_iter().enumerate().map(|(i, c)| (base + i as i64, c))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divide_h_examples() {
        let p = LaurentPoly::from_terms([(0, 1), (2, -1)]);
        assert_eq!(divide_exact_h(&p, 1).unwrap(), LaurentPoly::from_terms([(0, 1), (1, 1)]));
        let err = divide_exact_h(&p, 2).unwrap_err();
        assert_eq!(err.stage, 1);
        assert_eq!(err.remainder, BigInt::from(2));
        assert_eq!(divide_exact_h(&p, 0).unwrap(), p);
    }

    #[test]
    fn divide_h_negative_exponents() {
        // q^-3 (1-q)^2 (2 + q)
        let h = h_poly();
        let p = &(&h * &h) * &LaurentPoly::from_terms([(-3, 2), (-2, 1)]);
        assert_eq!(divide_exact_h(&p, 2).unwrap(), LaurentPoly::from_terms([(-3, 2), (-2, 1)]));
        assert!(divide_exact_h(&p, 3).is_err());
    }
}
