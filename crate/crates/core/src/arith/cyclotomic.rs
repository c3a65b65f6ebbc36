//! Cyclotomic integers `Z[ζ]` and cyclotomic rationals `Q(ζ)` for a primitive
//! `r`-th root of unity `ζ`, `r` an odd prime.
//!
//! Elements are stored in the power basis `1, ζ, …, ζ^{r-2}`, which is a
//! `Z`-basis of `Z[ζ]` because `1 + q + … + q^{r-1}` is the minimal
//! polynomial of `ζ`. Rationals carry one positive integer denominator.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::laurent::LaurentPoly;
use super::ArithError;

/// The modulus `r` (an odd prime) fixing `ζ = exp(2πi/r)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CycContext {
    r: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CycContext {
    pub fn new(r: u32) -> Result<Self, ArithError> {
        if r < 3 || !is_prime(r) {
            return Err(ArithError::InvalidModulus(r));
        }
        Ok(Self { r })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `r` as a `usize`, for indexing.
    pub fn order(&self) -> usize {
        self.r as usize
    }

    /// Reduces an exponent into `0..r`.
    pub fn residue(&self, e: i64) -> usize {
        e.rem_euclid(self.r as i64) as usize
    }

    pub fn zero(&self) -> CycInt {
        CycInt { ctx: *self, coeffs: vec![BigInt::zero(); self.order() - 1] }
    }

    pub fn one(&self) -> CycInt {
        self.int(1)
    }

    pub fn int(&self, c: impl Into<BigInt>) -> CycInt {
        let mut z = self.zero();
        z.coeffs[0] = c.into();
        z
    }

    /// `ζ^e` for any integer `e`.
    pub fn zeta_pow(&self, e: i64) -> CycInt {
        let mut full = vec![BigInt::zero(); self.order()];
        full[self.residue(e)] = BigInt::one();
        CycInt::from_full(*self, full)
    }

    /// `h(ζ) = 1 - ζ`.
    pub fn h(&self) -> CycInt {
        &self.one() - &self.zeta_pow(1)
    }

    /// The cyclotomic integer with the given power-basis coordinates.
    pub fn from_coeffs(&self, coeffs: Vec<BigInt>) -> Result<CycInt, ArithError> {
        if coeffs.len() != self.order() - 1 {
            return Err(ArithError::CoordinateLength { expected: self.order() - 1, got: coeffs.len() });
        }
        Ok(CycInt { ctx: *self, coeffs })
    }
}

/// An element of `Z[ζ]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    ctx: CycContext,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    /// Canonical form of `Σ full[i] ζ^i` for a vector of length `r`, using
    /// `ζ^{r-1} = -(1 + ζ + … + ζ^{r-2})`.
    fn from_full(ctx: CycContext, mut full: Vec<BigInt>) -> Self {
        debug_assert_eq!(full.len(), ctx.order());
        let top = full.pop().unwrap();
        if !top.is_zero() {
            for c in full.iter_mut() {
                *c -= &top;
            }
        }
        Self { ctx, coeffs: full }
    }

    pub fn context(&self) -> CycContext {
        self.ctx
    }

    /// Power-basis coordinates for `ζ^0 … ζ^{r-2}`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Returns the rational integer this element equals, if it lies in `Z`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// gcd of all coordinates (0 for the zero element).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self { ctx: self.ctx, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    fn div_integer_exact(&self, d: &BigInt) -> Self {
        Self { ctx: self.ctx, coeffs: self.coeffs.iter().map(|x| x / d).collect() }
    }

    /// The Galois automorphism `ζ -> ζ^k`, `k` prime to `r`.
    pub fn galois(&self, k: i64) -> Self {
        let r = self.ctx.order();
        let mut full = vec![BigInt::zero(); r];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                full[self.ctx.residue(i as i64 * k)] += c;
            }
        }
        Self::from_full(self.ctx, full)
    }

    /// Product of all non-trivial Galois conjugates. Multiplying by `self`
    /// gives the field norm.
    pub fn conjugate_product(&self) -> Self {
        let mut acc = self.ctx.one();
        for k in 2..self.ctx.r() as i64 {
            acc = &acc * &self.galois(k);
        }
        acc
    }

    /// Field norm `N(x) = Π_k σ_k(x)`, a rational integer.
    pub fn norm(&self) -> BigInt {
        let n = self * &self.conjugate_product();
        n.as_integer().cloned().expect("norm lies in Z")
    }

    /// `x` is a unit of `Z[ζ]` exactly when its inverse in `Q(ζ)` is integral.
    pub fn is_unit(&self) -> bool {
        match CycRat::from(self.clone()).inv() {
            Ok(inv) => inv.is_integral(),
            Err(_) => false,
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = self.ctx.one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, abs.is_one()) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{abs}*z")?,
                (i, true) => write!(f, "z^{i}")?,
                (i, false) => write!(f, "{abs}*z^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycInt[r={}]({})", self.ctx.r, self)
    }
}

impl Add<&CycInt> for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&CycInt> for CycInt {
    fn add_assign(&mut self, rhs: &CycInt) {
        assert_eq!(self.ctx, rhs.ctx, "mixed cyclotomic contexts");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl Sub<&CycInt> for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&CycInt> for CycInt {
    fn sub_assign(&mut self, rhs: &CycInt) {
        assert_eq!(self.ctx, rhs.ctx, "mixed cyclotomic contexts");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt { ctx: self.ctx, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        -&self
    }
}

impl Mul<&CycInt> for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        assert_eq!(self.ctx, rhs.ctx, "mixed cyclotomic contexts");
        let r = self.ctx.order();
        let mut full = vec![BigInt::zero(); r];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = if i + j >= r { i + j - r } else { i + j };
                full[k] += a * b;
            }
        }
        CycInt::from_full(self.ctx, full)
    }
}

impl MulAssign<&CycInt> for CycInt {
    fn mul_assign(&mut self, rhs: &CycInt) {
        *self = &*self * rhs;
    }
}

/// An element of `Q(ζ)`: a cyclotomic integer over a positive integer
/// denominator, kept in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycRat {
    num: CycInt,
    den: BigInt,
}

impl From<CycInt> for CycRat {
    fn from(num: CycInt) -> Self {
        Self { num, den: BigInt::one() }
    }
}

impl CycRat {
    pub fn new(num: CycInt, den: BigInt) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(mut num: CycInt, mut den: BigInt) -> Self {
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if den.is_one() {
            return Self { num, den };
        }
        if num.is_zero() {
            return Self { num, den: BigInt::one() };
        }
        let g = num.content().gcd(&den);
        if !g.is_one() {
            num = num.div_integer_exact(&g);
            den /= g;
        }
        Self { num, den }
    }

    pub fn zero(ctx: CycContext) -> Self {
        ctx.zero().into()
    }

    pub fn one(ctx: CycContext) -> Self {
        ctx.one().into()
    }

    pub fn zeta_pow(ctx: CycContext, e: i64) -> Self {
        ctx.zeta_pow(e).into()
    }

    pub fn integer(ctx: CycContext, c: impl Into<BigInt>) -> Self {
        ctx.int(c).into()
    }

    pub fn context(&self) -> CycContext {
        self.num.ctx
    }

    pub fn numerator(&self) -> &CycInt {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// Membership in `Z[ζ]`.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// The element as a cyclotomic integer, when integral.
    pub fn to_integral(&self) -> Option<&CycInt> {
        self.is_integral().then_some(&self.num)
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        Self::reduced(self.num.scale(c), self.den.clone())
    }

    /// Multiplicative inverse, via the product of Galois conjugates over the norm.
    pub fn inv(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let conj = self.num.conjugate_product();
        let norm = (&self.num * &conj).as_integer().cloned().expect("norm lies in Z");
        Ok(Self::reduced(conj.scale(&self.den), norm))
    }

    pub fn checked_div(&self, rhs: &CycRat) -> Result<Self, ArithError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, n: i64) -> Result<Self, ArithError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.context());
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }
}

impl fmt::Display for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycRat[r={}]({})", self.num.ctx.r, self)
    }
}

impl Add<&CycRat> for &CycRat {
    type Output = CycRat;
    fn add(self, rhs: &CycRat) -> CycRat {
        if self.den == rhs.den {
            if self.den.is_one() {
                return CycRat { num: &self.num + &rhs.num, den: BigInt::one() };
            }
            return CycRat::reduced(&self.num + &rhs.num, self.den.clone());
        }
        let num = &self.num.scale(&rhs.den) + &rhs.num.scale(&self.den);
        CycRat::reduced(num, &self.den * &rhs.den)
    }
}

impl AddAssign<&CycRat> for CycRat {
    fn add_assign(&mut self, rhs: &CycRat) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num += &rhs.num;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl Sub<&CycRat> for &CycRat {
    type Output = CycRat;
    fn sub(self, rhs: &CycRat) -> CycRat {
        self + &(-rhs)
    }
}

impl SubAssign<&CycRat> for CycRat {
    fn sub_assign(&mut self, rhs: &CycRat) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num -= &rhs.num;
        } else {
            *self = &*self - rhs;
        }
    }
}

impl Neg for &CycRat {
    type Output = CycRat;
    fn neg(self) -> CycRat {
        CycRat { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for CycRat {
    type Output = CycRat;
    fn neg(self) -> CycRat {
        CycRat { num: -self.num, den: self.den }
    }
}

impl Mul<&CycRat> for &CycRat {
    type Output = CycRat;
    fn mul(self, rhs: &CycRat) -> CycRat {
        let num = &self.num * &rhs.num;
        if self.den.is_one() && rhs.den.is_one() {
            return CycRat { num, den: BigInt::one() };
        }
        CycRat::reduced(num, &self.den * &rhs.den)
    }
}

impl MulAssign<&CycRat> for CycRat {
    fn mul_assign(&mut self, rhs: &CycRat) {
        *self = &*self * rhs;
    }
}

/// Evaluates `p` at `q = ζ`.
pub fn reduce_at_zeta(p: &LaurentPoly, ctx: CycContext) -> CycInt {
    let mut full = vec![BigInt::zero(); ctx.order()];
    for (e, c) in p.terms() {
        full[ctx.residue(e)] += c;
    }
    CycInt::from_full(ctx, full)
}

/// The Gauss sum `G_n = Σ_{l=0}^{r-1} ζ^{-2l(l-n)}`.
pub fn gauss_sum(n: i64, ctx: CycContext) -> CycInt {
    let r = ctx.r() as i64;
    let mut full = vec![BigInt::zero(); ctx.order()];
    for l in 0..r {
        full[ctx.residue(-2 * l * (l - n))] += 1;
    }
    CycInt::from_full(ctx, full)
}

/// `x / h(ζ)^k` in `Q(ζ)`. Whether the quotient is integral is a separate question.
pub fn divide_exact_h_zeta(x: &CycRat, k: i64) -> Result<CycRat, ArithError> {
    if k < 0 {
        return Err(ArithError::NegativeExponent(k));
    }
    let ctx = x.context();
    let hinv = CycRat::from(ctx.h()).inv()?;
    Ok(x * &hinv.pow(k)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(r: u32) -> CycContext {
        CycContext::new(r).unwrap()
    }

    fn ci(c: &CycContext, v: &[i64]) -> CycInt {
        c.from_coeffs(v.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
    }

    #[test]
    fn rejects_non_primes() {
        assert!(CycContext::new(4).is_err());
        assert!(CycContext::new(9).is_err());
        assert!(CycContext::new(2).is_err());
        assert!(CycContext::new(1).is_err());
        assert!(CycContext::new(13).is_ok());
    }

    #[test]
    fn reduce_examples() {
        let c3 = ctx(3);
        // q^2 -> -1 - ζ
        assert_eq!(reduce_at_zeta(&LaurentPoly::q_pow(2), c3), ci(&c3, &[-1, -1]));
        for r in [3, 5, 7, 11] {
            let c = ctx(r);
            let phi = LaurentPoly::from_terms((0..r as i64).map(|e| (e, 1)));
            assert!(reduce_at_zeta(&phi, c).is_zero());
        }
        let c5 = ctx(5);
        assert_eq!(reduce_at_zeta(&LaurentPoly::q_pow(-1), c5), ci(&c5, &[-1, -1, -1, -1]));
    }

    #[test]
    fn inverse_examples() {
        let c5 = ctx(5);
        assert!(CycRat::one(c5).inv().unwrap().is_one());
        let z = CycRat::zeta_pow(c5, 1);
        assert_eq!(z.inv().unwrap(), CycRat::zeta_pow(c5, 4));
        let c3 = ctx(3);
        let x: CycRat = c3.h().into();
        let expected = CycRat::new(ci(&c3, &[2, 1]), BigInt::from(3)).unwrap();
        assert_eq!(x.inv().unwrap(), expected);
        assert!(CycRat::zero(c3).inv().is_err());
    }

    #[test]
    fn integrality_and_units() {
        let c5 = ctx(5);
        let x: CycRat = (&c5.zeta_pow(1) + &c5.int(3)).into();
        assert!(x.is_integral());
        let y = CycRat::new(c5.one(), BigInt::from(5)).unwrap();
        assert!(!y.is_integral());
        assert!((-c5.zeta_pow(2)).is_unit());
        assert!(!c5.h().is_unit());
        let two = &c5.zeta_pow(1) + &c5.zeta_pow(-1);
        assert!(two.is_unit());
        assert!(!c5.zero().is_unit());
    }

    #[test]
    fn gauss_sum_examples() {
        let c3 = ctx(3);
        assert_eq!(gauss_sum(0, c3), ci(&c3, &[1, 2]));
        // 2 + ζ^2 = 2 - 1 - ζ
        assert_eq!(gauss_sum(1, c3), ci(&c3, &[1, -1]));
        for r in [3u32, 5, 7, 11] {
            let c = ctx(r);
            let g0 = gauss_sum(0, c);
            let k = (r as i64 + 1) / 2;
            for n in 0..r as i64 {
                assert_eq!(gauss_sum(n, c), &c.zeta_pow(k * n * n) * &g0);
            }
            let sign = if (r - 1) / 2 % 2 == 0 { 1 } else { -1 };
            assert_eq!(&g0 * &g0, c.int(sign * r as i64));
        }
    }

    #[test]
    fn h_divisions() {
        for r in [3u32, 5, 7, 11] {
            let c = ctx(r);
            let h: CycRat = c.h().into();
            assert!(divide_exact_h_zeta(&h, 1).unwrap().is_one());
            let rr = CycRat::integer(c, r);
            let u = divide_exact_h_zeta(&rr, r as i64 - 1).unwrap();
            assert!(u.is_integral() && u.numerator().is_unit());
            for n in 0..r as i64 {
                let g: CycRat = gauss_sum(n, c).into();
                let u = divide_exact_h_zeta(&g, (r as i64 - 1) / 2).unwrap();
                assert!(u.is_integral() && u.numerator().is_unit(), "r={r} n={n}");
            }
            assert!(divide_exact_h_zeta(&h, -1).is_err());
        }
    }

    #[test]
    fn norm_of_h_is_r() {
        for r in [3u32, 5, 7, 11, 13] {
            assert_eq!(ctx(r).h().norm(), BigInt::from(r));
        }
    }
}
