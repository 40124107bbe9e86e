//! Exact rational scalars and the small number-theoretic helpers the
//! expansions need (factorials, binomials, Bernoulli numbers).
//!
//! All coefficient arithmetic in this crate is arbitrary-precision and
//! exact; `Rational` is kept in reduced canonical form (positive
//! denominator, gcd 1) by the underlying representation.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

pub type Rational = BigRational;

/// `p/q` as a rational. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_zero() -> Rational {
    BigRational::zero()
}

pub fn rat_one() -> Rational {
    BigRational::one()
}

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Bernoulli numbers `B_0..=B_n` in the convention `B_1 = -1/2`,
/// computed from the recurrence `sum_{k<=n} C(n+1,k) B_k = 0` for `n >= 1`.
pub fn bernoulli_upto(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(rat_one());
    for m in 1..=n {
        // B_m = -1/(m+1) * sum_{k<m} C(m+1,k) B_k
        let mut sum = rat_zero();
        for (k, bk) in b.iter().enumerate() {
            sum += BigRational::from_integer(binomial(m + 1, k)) * bk;
        }
        b.push(-sum / BigRational::from_integer(BigInt::from(m as i64 + 1)));
    }
    b
}

/// `B_n` in the `B_1 = -1/2` convention.
pub fn bernoulli(n: usize) -> Rational {
    bernoulli_upto(n).pop().unwrap()
}

/// Canonical text form: `p` when the denominator is 1, else `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `p` or `p/q` (optional leading sign, no whitespace inside).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => {
            let p: BigInt = s.parse().ok()?;
            Some(BigRational::from_integer(p))
        }
    }
}

/// Signed term prefix used by the text formats: `+p/q` or `-p/q`.
pub fn format_signed(r: &Rational) -> String {
    if r.is_negative() {
        format!("-{}", format_rational(&-r.clone()))
    } else {
        format!("+{}", format_rational(r))
    }
}
