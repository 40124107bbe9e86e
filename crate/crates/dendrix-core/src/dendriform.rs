//! Dendriform algebras with an adjoined unit.
//!
//! A dendriform algebra splits an associative product into two
//! half-products `≺` and `≻` subject to
//!
//! ```text
//! (a ≺ b) ≺ c = a ≺ (b ★ c)
//! (a ≻ b) ≺ c = a ≻ (b ≺ c)
//! a ≻ (b ≻ c) = (a ★ b) ≻ c          with  a ★ b := a ≺ b + a ≻ b.
//! ```
//!
//! The unit `1` is adjoined with `a ≺ 1 = a = 1 ≻ a`, `1 ≺ a = 0 = a ≻ 1`
//! and `1 ★ 1 = 1`; the products `1 ≺ 1` and `1 ≻ 1` are left undefined
//! and every code path that would need them reports
//! [`DendError::UnitProductUndefined`] instead of guessing.
//!
//! [`Dendriform`] is the context-object interface the series calculus and
//! the solvers are generic over. Unit bookkeeping is implemented once, in
//! [`Augmented`], which wraps any unit-free [`BodyAlgebra`] (the free
//! algebra, or a Rota–Baxter model's derived products); square matrices
//! over a dendriform algebra get their own implementation since their unit
//! is the diagonal matrix of scalar units.

use crate::error::{DendError, Result};
use crate::rational::{rat_one, rat_zero, Rational};
use num::Zero;
use std::fmt::Debug;

/// A dendriform algebra with adjoined unit, presented as a context object:
/// elements are plain data, the algebra instance knows how to combine them.
pub trait Dendriform: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    /// The adjoined unit `1`.
    fn unit(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn scale(&self, c: &Rational, x: &Self::Elem) -> Self::Elem;

    /// Left half-product `x ≺ y`.
    fn prec(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    /// Right half-product `x ≻ y`.
    fn succ(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    /// Associative product `x ★ y = x ≺ y + x ≻ y`, total on the whole
    /// augmented algebra (`1 ★ 1 = 1`).
    fn star(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }
}

/// Left pre-Lie product `x ⊳ y := x ≻ y − y ≺ x`.
pub fn prelie_left<A: Dendriform>(alg: &A, x: &A::Elem, y: &A::Elem) -> Result<A::Elem> {
    Ok(alg.sub(&alg.succ(x, y)?, &alg.prec(y, x)?))
}

/// Right pre-Lie product `x ⊲ y := x ≺ y − y ≻ x`.
pub fn prelie_right<A: Dendriform>(alg: &A, x: &A::Elem, y: &A::Elem) -> Result<A::Elem> {
    Ok(alg.sub(&alg.prec(x, y)?, &alg.succ(y, x)?))
}

/// Lie bracket `[x, y] = x ★ y − y ★ x`.
pub fn lie_bracket<A: Dendriform>(alg: &A, x: &A::Elem, y: &A::Elem) -> Result<A::Elem> {
    Ok(alg.sub(&alg.star(x, y)?, &alg.star(y, x)?))
}

/// A unit-free dendriform algebra: total half-products on a carrier that
/// does not contain the unit. [`Augmented`] adjoins the unit generically.
pub trait BodyAlgebra: Clone + Send + Sync {
    type Body: Clone + PartialEq + Debug + Send + Sync;

    fn bzero(&self) -> Self::Body;
    fn bis_zero(&self, x: &Self::Body) -> bool;
    fn badd(&self, x: &Self::Body, y: &Self::Body) -> Self::Body;
    fn bneg(&self, x: &Self::Body) -> Self::Body;
    fn bscale(&self, c: &Rational, x: &Self::Body) -> Self::Body;
    fn bprec(&self, x: &Self::Body, y: &Self::Body) -> Self::Body;
    fn bsucc(&self, x: &Self::Body, y: &Self::Body) -> Self::Body;
}

/// Element of an augmented algebra: `unit_coeff · 1 + body`.
#[derive(Clone, PartialEq, Debug)]
pub struct Aug<B> {
    pub unit_coeff: Rational,
    pub body: B,
}

impl<B> Aug<B> {
    pub fn body(body: B) -> Self {
        Aug { unit_coeff: rat_zero(), body }
    }

    pub fn with_unit(unit_coeff: Rational, body: B) -> Self {
        Aug { unit_coeff, body }
    }

    pub fn has_unit_part(&self) -> bool {
        !self.unit_coeff.is_zero()
    }
}

/// Adjoins the unit to a [`BodyAlgebra`], implementing all unit rules in
/// one place. For `x = α·1 + x'` and `y = β·1 + y'`:
///
/// ```text
/// x ≺ y = x' ≺ y' + β·x'      (error if αβ ≠ 0: would need 1 ≺ 1)
/// x ≻ y = x' ≻ y' + α·y'      (error if αβ ≠ 0)
/// x ★ y = x' ★ y' + α·y' + β·x' + αβ·1
/// ```
#[derive(Clone, Debug)]
pub struct Augmented<B: BodyAlgebra>(pub B);

impl<B: BodyAlgebra> Augmented<B> {
    pub fn body_alg(&self) -> &B {
        &self.0
    }

    /// Lift a carrier element into the augmented algebra.
    pub fn lift(&self, body: B::Body) -> Aug<B::Body> {
        Aug::body(body)
    }
}

impl<B: BodyAlgebra> Dendriform for Augmented<B> {
    type Elem = Aug<B::Body>;

    fn zero(&self) -> Self::Elem {
        Aug::body(self.0.bzero())
    }

    fn unit(&self) -> Self::Elem {
        Aug::with_unit(rat_one(), self.0.bzero())
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        x.unit_coeff.is_zero() && self.0.bis_zero(&x.body)
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        Aug::with_unit(&x.unit_coeff + &y.unit_coeff, self.0.badd(&x.body, &y.body))
    }

    fn neg(&self, x: &Self::Elem) -> Self::Elem {
        Aug::with_unit(-x.unit_coeff.clone(), self.0.bneg(&x.body))
    }

    fn scale(&self, c: &Rational, x: &Self::Elem) -> Self::Elem {
        Aug::with_unit(c * &x.unit_coeff, self.0.bscale(c, &x.body))
    }

    fn prec(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        if x.has_unit_part() && y.has_unit_part() {
            return Err(DendError::UnitProductUndefined);
        }
        let mut body = self.0.bprec(&x.body, &y.body);
        if y.has_unit_part() {
            body = self.0.badd(&body, &self.0.bscale(&y.unit_coeff, &x.body));
        }
        Ok(Aug::body(body))
    }

    fn succ(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        if x.has_unit_part() && y.has_unit_part() {
            return Err(DendError::UnitProductUndefined);
        }
        let mut body = self.0.bsucc(&x.body, &y.body);
        if x.has_unit_part() {
            body = self.0.badd(&body, &self.0.bscale(&x.unit_coeff, &y.body));
        }
        Ok(Aug::body(body))
    }

    fn star(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        let mut body = self.0.badd(
            &self.0.bprec(&x.body, &y.body),
            &self.0.bsucc(&x.body, &y.body),
        );
        if x.has_unit_part() {
            body = self.0.badd(&body, &self.0.bscale(&x.unit_coeff, &y.body));
        }
        if y.has_unit_part() {
            body = self.0.badd(&body, &self.0.bscale(&y.unit_coeff, &x.body));
        }
        Ok(Aug::with_unit(&x.unit_coeff * &y.unit_coeff, body))
    }
}

/// The opposite dendriform algebra `(A, ⪯, ⪰)` with `x ⪯ y := y ≻ x` and
/// `x ⪰ y := y ≺ x`; used to reduce purely-left-handed equations to
/// purely-right-handed ones.
#[derive(Clone, Debug)]
pub struct Opposite<A: Dendriform>(pub A);

impl<A: Dendriform> Dendriform for Opposite<A> {
    type Elem = A::Elem;

    fn zero(&self) -> Self::Elem {
        self.0.zero()
    }
    fn unit(&self) -> Self::Elem {
        self.0.unit()
    }
    fn is_zero(&self, x: &Self::Elem) -> bool {
        self.0.is_zero(x)
    }
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.0.add(x, y)
    }
    fn neg(&self, x: &Self::Elem) -> Self::Elem {
        self.0.neg(x)
    }
    fn scale(&self, c: &Rational, x: &Self::Elem) -> Self::Elem {
        self.0.scale(c, x)
    }
    fn prec(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        self.0.succ(y, x)
    }
    fn succ(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        self.0.prec(y, x)
    }
    fn star(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        self.0.star(y, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free::FreeAlgebra;
    use crate::rational::rat;

    fn setup() -> (Augmented<FreeAlgebra>, Aug<crate::free::FreeElement>) {
        let alg = Augmented(FreeAlgebra::new(&["a"]));
        let a = alg.lift(alg.body_alg().generator(0));
        (alg, a)
    }

    #[test]
    fn unit_rules() {
        let (alg, a) = setup();
        let one = alg.unit();
        assert_eq!(alg.prec(&a, &one).unwrap(), a); // a ≺ 1 = a
        assert_eq!(alg.succ(&one, &a).unwrap(), a); // 1 ≻ a = a
        assert!(alg.is_zero(&alg.prec(&one, &a).unwrap())); // 1 ≺ a = 0
        assert!(alg.is_zero(&alg.succ(&a, &one).unwrap())); // a ≻ 1 = 0
        assert_eq!(alg.star(&one, &one).unwrap(), one); // 1 ★ 1 = 1
    }

    #[test]
    fn unit_products_are_undefined() {
        let (alg, a) = setup();
        let one = alg.unit();
        assert_eq!(alg.prec(&one, &one), Err(DendError::UnitProductUndefined));
        assert_eq!(alg.succ(&one, &one), Err(DendError::UnitProductUndefined));
        // mixed elements with unit parts on both sides are just as bad
        let mixed = alg.add(&one, &a);
        assert_eq!(alg.prec(&mixed, &one), Err(DendError::UnitProductUndefined));
        assert_eq!(alg.succ(&mixed, &mixed), Err(DendError::UnitProductUndefined));
        // ...but ★ stays total
        assert!(alg.star(&mixed, &mixed).is_ok());
    }

    #[test]
    fn prelie_on_unit_vanishes() {
        let (alg, a) = setup();
        let one = alg.unit();
        // 1 ⊳ a = 1 ≻ a − a ≺ 1 = a − a = 0
        assert!(alg.is_zero(&prelie_left(&alg, &one, &a).unwrap()));
        assert!(alg.is_zero(&prelie_right(&alg, &one, &a).unwrap()));
        assert!(alg.is_zero(&lie_bracket(&alg, &one, &a).unwrap()));
    }

    #[test]
    fn star_with_units_distributes() {
        let (alg, a) = setup();
        let one = alg.unit();
        let x = alg.add(&alg.scale(&rat(2, 1), &one), &a); // 2·1 + a
        let y = alg.add(&one, &alg.neg(&a)); // 1 − a
        // (2 + a)(1 − a) = 2 + a − 2a − a★a
        let got = alg.star(&x, &y).unwrap();
        let aa = alg.star(&a, &a).unwrap();
        let want = alg.sub(
            &alg.add(&alg.scale(&rat(2, 1), &one), &alg.neg(&a)),
            &aa,
        );
        assert_eq!(got, want);
    }

    #[test]
    fn opposite_swaps_half_products() {
        let (alg, a) = setup();
        let op = Opposite(alg.clone());
        let b = alg.lift(alg.body_alg().generator(0));
        let ab_op = op.prec(&a, &b).unwrap();
        let ba = alg.succ(&b, &a).unwrap();
        assert_eq!(ab_op, ba);
    }
}
