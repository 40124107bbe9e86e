//! Formal power series in a central parameter λ with coefficients in a
//! dendriform algebra, truncated at a fixed order.
//!
//! All equation solving happens λ-adically: a series is a coefficient
//! vector `x₀ + x₁λ + … + x_Nλ^N`, binary operations combine series of
//! the same truncation order via Cauchy convolution over the algebra's
//! products, and anything of order > N is silently dropped. The
//! associative exponential, logarithm, and `★`-inverse are finite sums
//! at fixed truncation because their arguments are required to start at
//! order ≥ 1 (constant term zero for `exp`, constant term exactly the
//! unit for `log` and the inverse).
//!
//! Element-level helpers for the iterated one-sided words used throughout
//! the solver and expansion layers live here as free functions:
//! right-nested `≺` words, left-nested `≻` words, their pre-Lie analogues,
//! and the alternating word combination that collapses to the left-nested
//! pre-Lie word (the Dynkin-type identity, checked in the tests).

use crate::dendriform::{prelie_left, prelie_right, Dendriform};
use crate::error::{DendError, Result};
use crate::rational::{rat_int, rat_one, Rational};

/// Truncated λ-series over an algebra's element type. `coeffs.len()` is
/// always `order + 1`.
#[derive(Clone, PartialEq, Debug)]
pub struct Series<E> {
    order: usize,
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq> Series<E> {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &E {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn from_coeffs(coeffs: Vec<E>) -> Series<E> {
        assert!(!coeffs.is_empty(), "series needs at least the order-0 coefficient");
        Series { order: coeffs.len() - 1, coeffs }
    }
}

fn check_orders<E>(x: &Series<E>, y: &Series<E>) -> Result<()> {
    if x.order != y.order {
        return Err(DendError::OrderMismatch { left: x.order, right: y.order });
    }
    Ok(())
}

impl<E: Clone + PartialEq> Series<E> {
    /// Zero series at the given truncation order.
    pub fn zero<A: Dendriform<Elem = E>>(alg: &A, order: usize) -> Series<E> {
        Series { order, coeffs: vec![alg.zero(); order + 1] }
    }

    /// The series `1` (unit in order 0).
    pub fn one<A: Dendriform<Elem = E>>(alg: &A, order: usize) -> Series<E> {
        let mut s = Series::zero(alg, order);
        s.coeffs[0] = alg.unit();
        s
    }

    /// Constant series with the given order-0 coefficient.
    pub fn constant<A: Dendriform<Elem = E>>(alg: &A, order: usize, e: E) -> Series<E> {
        let mut s = Series::zero(alg, order);
        s.coeffs[0] = e;
        s
    }

    /// `e·λ^k`.
    pub fn monomial<A: Dendriform<Elem = E>>(
        alg: &A,
        order: usize,
        k: usize,
        e: E,
    ) -> Series<E> {
        let mut s = Series::zero(alg, order);
        if k <= order {
            s.coeffs[k] = e;
        }
        s
    }

    pub fn set_coeff(&mut self, k: usize, e: E) {
        self.coeffs[k] = e;
    }

    pub fn is_zero<A: Dendriform<Elem = E>>(&self, alg: &A) -> bool {
        self.coeffs.iter().all(|c| alg.is_zero(c))
    }

    pub fn add<A: Dendriform<Elem = E>>(&self, alg: &A, other: &Series<E>) -> Result<Series<E>> {
        check_orders(self, other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| alg.add(a, b))
            .collect();
        Ok(Series { order: self.order, coeffs })
    }

    pub fn neg<A: Dendriform<Elem = E>>(&self, alg: &A) -> Series<E> {
        Series {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| alg.neg(c)).collect(),
        }
    }

    pub fn sub<A: Dendriform<Elem = E>>(&self, alg: &A, other: &Series<E>) -> Result<Series<E>> {
        self.add(alg, &other.neg(alg))
    }

    pub fn scale<A: Dendriform<Elem = E>>(&self, alg: &A, c: &Rational) -> Series<E> {
        Series {
            order: self.order,
            coeffs: self.coeffs.iter().map(|k| alg.scale(c, k)).collect(),
        }
    }

    /// Multiply by λ^k: shift coefficients up, truncating at the order.
    pub fn shift<A: Dendriform<Elem = E>>(&self, alg: &A, k: usize) -> Series<E> {
        let mut coeffs = vec![alg.zero(); self.order + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k <= self.order {
                coeffs[i + k] = c.clone();
            }
        }
        Series { order: self.order, coeffs }
    }

    /// Truncate to a lower order.
    pub fn truncated(&self, new_order: usize) -> Series<E> {
        assert!(new_order <= self.order);
        Series { order: new_order, coeffs: self.coeffs[..=new_order].to_vec() }
    }

    fn convolve<A: Dendriform<Elem = E>>(
        &self,
        alg: &A,
        other: &Series<E>,
        op: impl Fn(&A, &E, &E) -> Result<E>,
    ) -> Result<Series<E>> {
        check_orders(self, other)?;
        let mut coeffs = Vec::with_capacity(self.order + 1);
        for n in 0..=self.order {
            let mut acc = alg.zero();
            for i in 0..=n {
                let term = op(alg, &self.coeffs[i], &other.coeffs[n - i])?;
                acc = alg.add(&acc, &term);
            }
            coeffs.push(acc);
        }
        Ok(Series { order: self.order, coeffs })
    }

    pub fn prec<A: Dendriform<Elem = E>>(&self, alg: &A, other: &Series<E>) -> Result<Series<E>> {
        self.convolve(alg, other, |a, x, y| a.prec(x, y))
    }

    pub fn succ<A: Dendriform<Elem = E>>(&self, alg: &A, other: &Series<E>) -> Result<Series<E>> {
        self.convolve(alg, other, |a, x, y| a.succ(x, y))
    }

    pub fn star<A: Dendriform<Elem = E>>(&self, alg: &A, other: &Series<E>) -> Result<Series<E>> {
        self.convolve(alg, other, |a, x, y| a.star(x, y))
    }

    /// `x ⊳ y = x ≻ y − y ≺ x`, lifted coefficient-wise.
    pub fn prelie<A: Dendriform<Elem = E>>(&self, alg: &A, other: &Series<E>) -> Result<Series<E>> {
        self.convolve(alg, other, |a, x, y| prelie_left(a, x, y))
    }

    /// Associative exponential `Σ x^{★n}/n!`; the constant term must vanish.
    pub fn exp_star<A: Dendriform<Elem = E>>(&self, alg: &A) -> Result<Series<E>> {
        if !alg.is_zero(&self.coeffs[0]) {
            return Err(DendError::BadConstantTerm(
                "exponential needs a series with zero constant term",
            ));
        }
        let mut acc = Series::one(alg, self.order);
        let mut term = Series::one(alg, self.order);
        for n in 1..=self.order {
            term = term.star(alg, self)?;
            term = term.scale(alg, &(rat_one() / rat_int(n as i64)));
            acc = acc.add(alg, &term)?;
        }
        Ok(acc)
    }

    /// Associative logarithm of `1 + u`; the constant term must be the unit.
    pub fn log_star<A: Dendriform<Elem = E>>(&self, alg: &A) -> Result<Series<E>> {
        if self.coeffs[0] != alg.unit() {
            return Err(DendError::BadConstantTerm(
                "logarithm needs a series with unit constant term",
            ));
        }
        let u = self.sub(alg, &Series::one(alg, self.order))?;
        let mut acc = Series::zero(alg, self.order);
        let mut pow = Series::one(alg, self.order);
        for n in 1..=self.order {
            pow = pow.star(alg, &u)?;
            let sign = if n % 2 == 1 { rat_one() } else { -rat_one() };
            acc = acc.add(alg, &pow.scale(alg, &(sign / rat_int(n as i64))))?;
        }
        Ok(acc)
    }

    /// `★`-inverse of `1 + u` by the geometric series `Σ (−u)^{★k}`;
    /// the constant term must be the unit.
    pub fn star_inverse<A: Dendriform<Elem = E>>(&self, alg: &A) -> Result<Series<E>> {
        if self.coeffs[0] != alg.unit() {
            return Err(DendError::BadConstantTerm(
                "inverse needs a series with unit constant term",
            ));
        }
        let neg_u = Series::one(alg, self.order).sub(alg, self)?;
        let mut acc = Series::one(alg, self.order);
        let mut pow = Series::one(alg, self.order);
        for _ in 1..=self.order {
            pow = pow.star(alg, &neg_u)?;
            acc = acc.add(alg, &pow)?;
        }
        Ok(acc)
    }
}

// ---------------------------------------------------------------------------
// Iterated one-sided words on single elements.
// ---------------------------------------------------------------------------

/// Right-nested `≺` word: `a ≺ (a ≺ (… ≺ a))`, n factors; `n = 0` gives
/// the unit.
pub fn word_prec<A: Dendriform>(alg: &A, a: &A::Elem, n: usize) -> Result<A::Elem> {
    let mut acc = alg.unit();
    for _ in 0..n {
        acc = alg.prec(a, &acc)?;
    }
    Ok(acc)
}

/// Left-nested `≻` word: `((a ≻ a) ≻ a) ≻ …`, n factors; `n = 0` gives
/// the unit.
pub fn word_succ<A: Dendriform>(alg: &A, a: &A::Elem, n: usize) -> Result<A::Elem> {
    let mut acc = alg.unit();
    for _ in 0..n {
        acc = alg.succ(&acc, a)?;
    }
    Ok(acc)
}

/// Left-nested `⊳` word: `((a ⊳ a) ⊳ a) ⊳ …`, n ≥ 1 factors.
pub fn prelie_word_left<A: Dendriform>(alg: &A, a: &A::Elem, n: usize) -> Result<A::Elem> {
    assert!(n >= 1);
    let mut acc = a.clone();
    for _ in 1..n {
        acc = prelie_left(alg, &acc, a)?;
    }
    Ok(acc)
}

/// Right-nested `⊲` word: `a ⊲ (a ⊲ (… ⊲ a))`, n ≥ 1 factors.
pub fn prelie_word_right<A: Dendriform>(alg: &A, a: &A::Elem, n: usize) -> Result<A::Elem> {
    assert!(n >= 1);
    let mut acc = a.clone();
    for _ in 1..n {
        acc = prelie_right(alg, a, &acc)?;
    }
    Ok(acc)
}

/// Right-nested `⊳` over a list: `v₁ ⊳ (v₂ ⊳ (… ⊳ v_n))`.
pub fn prelie_fold_right<A: Dendriform>(alg: &A, items: &[A::Elem]) -> Result<A::Elem> {
    assert!(!items.is_empty());
    let mut acc = items[items.len() - 1].clone();
    for v in items[..items.len() - 1].iter().rev() {
        acc = prelie_left(alg, v, &acc)?;
    }
    Ok(acc)
}

/// Alternating word combination
/// `Σ_{k=0}^{n−1} (−1)^k (n−k) · w^{(k)}_≺(x) ★ w^{(n−k)}_≻(x)`,
/// which equals the left-nested `⊳` word of the same length.
pub fn dynkin_word<A: Dendriform>(alg: &A, x: &A::Elem, n: usize) -> Result<A::Elem> {
    assert!(n >= 1);
    let mut acc = alg.zero();
    for k in 0..n {
        let left = word_prec(alg, x, k)?;
        let right = word_succ(alg, x, n - k)?;
        let prod = alg.star(&left, &right)?;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let c = rat_int(sign * (n as i64 - k as i64));
        acc = alg.add(&acc, &alg.scale(&c, &prod));
    }
    Ok(acc)
}
