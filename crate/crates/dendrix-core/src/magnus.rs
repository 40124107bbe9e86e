//! The pre-Lie Magnus expansion and the pre-Lie Fer expansion.
//!
//! Both expansions describe the logarithmic side of the word solution
//! `Y = 1 + λ a ≺ Y`: the Magnus series `Ω(λa)` satisfies
//! `exp★(Ω) = Y` (and `exp★(−Ω) = Y⁻¹`), while the Fer factors `U₀, U₁, …`
//! satisfy `Y = exp★(U₀) ★ exp★(U₁) ★ ⋯` with the lowest λ-order of `Uₙ`
//! doubling at each step.
//!
//! `Ω` admits two fixed-point recursions — one driven by the left pre-Lie
//! product `⊳`, one by the right pre-Lie product `⊲`:
//!
//! ```text
//! Ω = Σ_{m≥0}        B_m/m! · L_⊳[Ω]^{(m)}(λa)        (left form)
//! Ω = Σ_{m≥0} (−1)^m B_m/m! · R_⊲[Ω]^{(m)}(λa)        (right form)
//! ```
//!
//! where the `B_m` are Bernoulli numbers. The two produce the *same*
//! series: iterating `x ↦ x ⊲ Ω` is, sign for sign, iterating
//! `x ↦ −Ω ⊳ x`, so the `(−1)^m` factors cancel term by term. Both forms
//! are implemented as independent evaluation paths and cross-checked.

use crate::dendriform::Dendriform;
use crate::error::Result;
use crate::rational::{bernoulli_upto, factorial, rat, rat_int, Rational};
use crate::series::Series;
use num::Zero;

/// Which of the two fixed-point recursions evaluates `Ω`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MagnusForm {
    /// `Σ B_m/m! · L_⊳[Ω]^{(m)}(λa)`.
    Left,
    /// `Σ (−1)^m B_m/m! · R_⊲[Ω]^{(m)}(λa)`.
    Right,
}

impl MagnusForm {
    pub fn parse(s: &str) -> Option<MagnusForm> {
        match s {
            "left" => Some(MagnusForm::Left),
            "right" => Some(MagnusForm::Right),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MagnusForm::Left => "left",
            MagnusForm::Right => "right",
        }
    }
}

/// Truncated Magnus series together with the recursion that produced it.
#[derive(Clone, Debug)]
pub struct MagnusResult<E> {
    /// `Ω(λa)` with zero constant term; `exp★(omega)` solves
    /// `Y = 1 + λ a ≺ Y`.
    pub omega: Series<E>,
    pub form: MagnusForm,
}

/// Truncated Fer expansion: `factors[n]` is `Uₙ`, lowest λ-order `2ⁿ`.
#[derive(Clone, Debug)]
pub struct FerResult<E> {
    pub factors: Vec<Series<E>>,
}

/// One evaluation pass of the chosen recursion at the current iterate.
fn magnus_rhs<A: Dendriform>(
    alg: &A,
    omega: &Series<A::Elem>,
    seed: &Series<A::Elem>,
    form: MagnusForm,
    bernoulli: &[Rational],
) -> Result<Series<A::Elem>> {
    let order = seed.order();
    // m = 0 term: the seed λa itself (B₀ = 1).
    let mut acc = seed.clone();
    let mut iterate = seed.clone();
    // `Ω` has zero constant term, so the m-th operator iterate starts at
    // λ^{m+1}; beyond m = order − 1 everything truncates away.
    for m in 1..order.max(1) {
        iterate = match form {
            MagnusForm::Left => omega.prelie(alg, &iterate)?,
            MagnusForm::Right => {
                // x ⊲ Ω = x ≺ Ω − Ω ≻ x
                iterate.prec(alg, omega)?.sub(alg, &omega.succ(alg, &iterate)?)?
            }
        };
        let mut c = &bernoulli[m] / factorial(m);
        if form == MagnusForm::Right && m % 2 == 1 {
            c = -c;
        }
        if !c.is_zero() {
            acc = acc.add(alg, &iterate.scale(alg, &c))?;
        }
    }
    Ok(acc)
}

/// Magnus series of `λa` to the given truncation order, by fixed-point
/// iteration of the chosen recursion form. The λ-adic contraction makes
/// the coefficient at λⁿ exact after `n − 1` passes; one extra pass
/// certifies stabilization.
pub fn magnus_omega<A: Dendriform>(
    alg: &A,
    a: &A::Elem,
    order: usize,
    form: MagnusForm,
) -> Result<MagnusResult<A::Elem>> {
    let seed = Series::monomial(alg, order, 1, a.clone());
    let bernoulli = bernoulli_upto(order.max(1));
    let mut omega = seed.clone();
    for _ in 0..order {
        omega = magnus_rhs(alg, &omega, &seed, form, &bernoulli)?;
    }
    debug_assert_eq!(magnus_rhs(alg, &omega, &seed, form, &bernoulli)?, omega);
    Ok(MagnusResult { omega, form })
}

/// Number of Fer factors carried for a truncation order `n ≥ 1`:
/// `⌈log₂ n⌉ + 1`. Since the lowest order of `Uₙ` is `2ⁿ`, later factors
/// are exactly `exp★(0) = 1` at this truncation.
pub fn fer_factor_count(order: usize) -> usize {
    debug_assert!(order >= 1);
    order.next_power_of_two().trailing_zeros() as usize + 1
}

/// Fer factors `U₀ = λa` and
/// `U_{n+1} = Σ_{l>0} (−1)^l·l/(l+1)! · L_⊳[Uₙ]^{(l)}(Uₙ)`,
/// truncated at the given order; the ordered ★-product of their
/// exponentials is the solution of `Y = 1 + λ a ≺ Y`.
pub fn fer_factors<A: Dendriform>(
    alg: &A,
    a: &A::Elem,
    order: usize,
) -> Result<FerResult<A::Elem>> {
    let count = fer_factor_count(order);
    let mut factors = Vec::with_capacity(count);
    factors.push(Series::monomial(alg, order, 1, a.clone()));
    for n in 1..count {
        let prev = &factors[n - 1];
        // lowest order of the l-th summand is (l + 1)·2^{n−1}
        let base = 1usize << (n - 1);
        let mut next = Series::zero(alg, order);
        let mut iterate = prev.clone();
        let mut l = 1usize;
        while (l + 1) * base <= order {
            iterate = prev.prelie(alg, &iterate)?;
            let c = &(&rat_int(l as i64) / factorial(l + 1))
                * &rat(if l % 2 == 0 { 1 } else { -1 }, 1);
            next = next.add(alg, &iterate.scale(alg, &c))?;
            l += 1;
        }
        factors.push(next);
    }
    Ok(FerResult { factors })
}

impl<E: Clone + PartialEq> FerResult<E> {
    /// Ordered product `exp★(U₀) ★ exp★(U₁) ★ ⋯` of the factor
    /// exponentials.
    pub fn product<A: Dendriform<Elem = E>>(&self, alg: &A) -> Result<Series<E>> {
        let order = self.factors[0].order();
        let mut prod = Series::one(alg, order);
        for u in &self.factors {
            prod = prod.star(alg, &u.exp_star(alg)?)?;
        }
        Ok(prod)
    }

    /// Reversed product `⋯ ★ exp★(−U₁) ★ exp★(−U₀)`, the ★-inverse of
    /// [`product`](Self::product).
    pub fn inverse_product<A: Dendriform<Elem = E>>(&self, alg: &A) -> Result<Series<E>> {
        let order = self.factors[0].order();
        let mut prod = Series::one(alg, order);
        for u in self.factors.iter().rev() {
            prod = prod.star(alg, &u.neg(alg).exp_star(alg)?)?;
        }
        Ok(prod)
    }
}
