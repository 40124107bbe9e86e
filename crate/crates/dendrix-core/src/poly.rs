//! Dense univariate polynomials over the rationals.
//!
//! The integration and q-dilation carriers only ever need exact
//! polynomial arithmetic up to a truncation degree, so a plain
//! coefficient vector with no trailing zeros is the whole story.
//! `div_truncated` computes power-series quotients for the carriers
//! whose checks involve reciprocals (the divisor needs a nonzero
//! constant term).

use crate::error::{DendError, Result};
use crate::rational::{format_rational, parse_rational, rat_int, rat_one, Rational};
use num::Zero;

/// Polynomial as coefficient vector, `coeffs[k]` the coefficient of `x^k`;
/// invariant: no trailing zero (the zero polynomial is the empty vector).
#[derive(Clone, PartialEq, Debug, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(rat_one())
    }

    pub fn constant(c: Rational) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Poly {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = rat_one();
        Poly { coeffs: v }
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Poly {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            v.push(self.coeff(k) + other.coeff(k));
        }
        Poly::from_coeffs(v)
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|k| c * k).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::from_coeffs(v)
    }

    /// Antiderivative vanishing at 0: `∫₀ˣ`.
    pub fn integrate(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = Vec::with_capacity(self.coeffs.len() + 1);
        v.push(Rational::zero());
        for (k, c) in self.coeffs.iter().enumerate() {
            v.push(c / rat_int((k + 1) as i64));
        }
        Poly::from_coeffs(v)
    }

    pub fn derive(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat_int(k as i64))
            .collect();
        Poly::from_coeffs(v)
    }

    /// Drop all terms of degree > `max_deg`.
    pub fn truncate(&self, max_deg: usize) -> Poly {
        if self.coeffs.len() <= max_deg + 1 {
            return self.clone();
        }
        Poly::from_coeffs(self.coeffs[..=max_deg].to_vec())
    }

    /// `f(q·x)` for a rational dilation factor.
    pub fn dilate(&self, q: &Rational) -> Poly {
        let mut pw = rat_one();
        let v = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c * &pw;
                pw *= q;
                out
            })
            .collect();
        Poly::from_coeffs(v)
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Power-series quotient `self / divisor` modulo `x^{max_deg+1}`.
    /// Requires `divisor(0) ≠ 0`.
    pub fn div_truncated(&self, divisor: &Poly, max_deg: usize) -> Result<Poly> {
        let d0 = divisor.coeff(0);
        if d0.is_zero() {
            return Err(DendError::ZeroLeadingCoefficient(
                "series division needs divisor with nonzero constant term",
            ));
        }
        let mut q = vec![Rational::zero(); max_deg + 1];
        for k in 0..=max_deg {
            let mut acc = self.coeff(k);
            for j in 0..k {
                acc -= &q[j] * divisor.coeff(k - j);
            }
            q[k] = acc / &d0;
        }
        Ok(Poly::from_coeffs(q))
    }
}

// ---------------------------------------------------------------------------
// Text codec: `c0 + c1*x + c2*x^2`, zero coefficients omitted, `0` for zero.
// ---------------------------------------------------------------------------

pub fn format_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let cs = format_rational(c);
        parts.push(match k {
            0 => cs,
            1 => format!("{cs}*x"),
            _ => format!("{cs}*x^{k}"),
        });
    }
    parts.join(" + ")
}

pub fn parse_poly(s: &str) -> Result<Poly> {
    let s = s.trim();
    if s.is_empty() {
        return Err(DendError::ParseError("empty polynomial".into()));
    }
    if s == "0" {
        return Ok(Poly::zero());
    }
    let mut coeffs: Vec<(usize, Rational)> = Vec::new();
    // split on `+` with surrounding whitespace and leading `-` terms
    for raw in s.split(" + ") {
        for (neg, term) in split_minus(raw) {
            let term = term.trim();
            if term.is_empty() {
                return Err(DendError::ParseError(format!("empty term in `{s}`")));
            }
            let (cstr, deg) = match term.split_once('*') {
                None => {
                    if let Some(d) = parse_power(term) {
                        ("1", d)
                    } else {
                        (term, 0)
                    }
                }
                Some((c, xpart)) => {
                    let d = parse_power(xpart.trim()).ok_or_else(|| {
                        DendError::ParseError(format!("bad monomial `{term}`"))
                    })?;
                    (c.trim(), d)
                }
            };
            let mut c = parse_rational(cstr)
                .ok_or_else(|| DendError::ParseError(format!("bad coefficient `{cstr}`")))?;
            if neg {
                c = -c;
            }
            coeffs.push((deg, c));
        }
    }
    let max = coeffs.iter().map(|(d, _)| *d).max().unwrap_or(0);
    let mut v = vec![Rational::zero(); max + 1];
    for (d, c) in coeffs {
        v[d] += c;
    }
    Ok(Poly::from_coeffs(v))
}

// `x` → 1, `x^k` → k
fn parse_power(s: &str) -> Option<usize> {
    if s == "x" {
        return Some(1);
    }
    s.strip_prefix("x^").and_then(|d| d.parse().ok())
}

// break `a - b - c` into signed pieces; keeps a leading `-` attached to
// the first piece's coefficient (handled by parse_rational)
fn split_minus(s: &str) -> Vec<(bool, &str)> {
    let mut out = Vec::new();
    let mut start = 0usize;
    let mut neg = false;
    let bytes = s.as_bytes();
    for i in 0..bytes.len() {
        if bytes[i] == b'-'
            && i > start
            && i + 1 < bytes.len()
            && bytes[i - 1].is_ascii_whitespace()
            && bytes[i + 1].is_ascii_whitespace()
        {
            out.push((neg, &s[start..i]));
            neg = true;
            start = i + 1;
        }
    }
    out.push((neg, &s[start..]));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn ring_basics() {
        let p = parse_poly("1 + 2*x + 3*x^2").unwrap();
        let q = parse_poly("-1 + x").unwrap();
        assert_eq!(format_poly(&p.mul(&q)), "-1 + -1*x + -1*x^2 + 3*x^3");
        assert_eq!(p.add(&q).coeff(0), rat(0, 1));
        assert_eq!(p.sub(&p), Poly::zero());
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn calculus() {
        let p = parse_poly("2 + 6*x^2").unwrap();
        assert_eq!(format_poly(&p.integrate()), "2*x + 2*x^3");
        assert_eq!(format_poly(&p.integrate().derive()), "2 + 6*x^2");
        // integration-by-parts shape: (∫f)(∫g) picks up both cross terms
        let f = parse_poly("1 + x").unwrap();
        let fi = f.integrate();
        let lhs = fi.mul(&fi);
        let rhs = f.mul(&fi).integrate().scale(&rat(2, 1));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dilation_and_eval() {
        let p = parse_poly("1 + x + x^2").unwrap();
        let d = p.dilate(&rat(1, 2));
        assert_eq!(format_poly(&d), "1 + 1/2*x + 1/4*x^2");
        assert_eq!(p.eval(&rat(2, 1)), rat(7, 1));
    }

    #[test]
    fn series_division() {
        // 1/(1-x) = 1 + x + x^2 + ... truncated
        let one = Poly::one();
        let d = parse_poly("1 + -1*x").unwrap();
        let q = one.div_truncated(&d, 4).unwrap();
        assert_eq!(format_poly(&q), "1 + 1*x + 1*x^2 + 1*x^3 + 1*x^4");
        // exact quotient round-trips through mul when division is exact
        let a = parse_poly("1 + 3*x + 3*x^2 + x^3").unwrap();
        let b = parse_poly("1 + x").unwrap();
        let q2 = a.div_truncated(&b, 2).unwrap();
        assert_eq!(q2.mul(&b), a);
        assert!(one.div_truncated(&Poly::monomial(1), 3).is_err());
    }

    #[test]
    fn codec_round_trip() {
        for src in ["0", "5", "-1/2 + x", "1 + 2*x + 3*x^2", "x^3"] {
            let p = parse_poly(src).unwrap();
            let back = parse_poly(&format_poly(&p)).unwrap();
            assert_eq!(p, back);
        }
        assert_eq!(format_poly(&parse_poly("2 - x").unwrap()), "2 + -1*x");
        assert!(parse_poly("").is_err());
        assert!(parse_poly("1 + y").is_err());
    }
}
