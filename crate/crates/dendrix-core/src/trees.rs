//! Planar rooted trees, Bernoulli vertex weights, and the tree-indexed
//! form of the logarithmic expansion.
//!
//! The expansion solved by `magnus_omega` can be re-indexed as a sum
//! over planar rooted trees: each vertex of fertility `f` contributes a
//! factor `B_f/f!` (Bernoulli numbers, `B₁ = −1/2`), and the tree maps
//! to an iterated left pre-Lie word via
//!
//! ```text
//! F[•](a) = a
//! F[∨(t₁,…,tₙ)](a) = F[t₁] ⊳ (F[t₂] ⊳ ( … (F[tₙ] ⊳ a) … ))
//! ```
//!
//! Since odd Bernoulli numbers beyond `B₁` vanish, only trees whose
//! every vertex has fertility 0, 1, or even survive; `enumerate_e1`
//! produces exactly that family in a canonical order (degree, then
//! lexicographic on the preorder fertility sequence), and
//! `butcher_omega` assembles the weighted sum. Agreement with the
//! recursively-computed expansion is checked in the tests and again by
//! the verification suites.
//!
//! Counting the restricted family gives the series `T(z)` with
//! `T(z) − z²T(z)³ = 1/(1−z)`; `poincare_counts` implements the
//! equivalent recursion and the tests close the loop against both the
//! enumerator and the functional equation.
//!
//! `prelie_equal` decides whether two formal ⊳-expressions in one
//! variable are equal as consequences of the dendriform axioms by
//! evaluating both in the free algebra on one generator and comparing —
//! a semantic decision procedure, sound and complete for identities of
//! this shape, with no term rewriting involved.

use crate::dendriform::{prelie_left, Augmented, Dendriform};
use crate::error::{DendError, Result};
use crate::free::FreeAlgebra;
use crate::rational::{bernoulli_upto, factorial, rat_one, Rational};
use crate::series::Series;
use num::Zero;

/// Planar rooted tree: a vertex with an ordered (possibly empty) list of
/// subtrees. Degree = number of vertices ≥ 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PlanarTree {
    children: Vec<PlanarTree>,
}

impl PlanarTree {
    /// Single vertex.
    pub fn leaf() -> PlanarTree {
        PlanarTree { children: Vec::new() }
    }

    /// Root grafted on top of the given ordered subtrees.
    pub fn node(children: Vec<PlanarTree>) -> PlanarTree {
        PlanarTree { children }
    }

    pub fn children(&self) -> &[PlanarTree] {
        &self.children
    }

    /// Fertility of the root vertex.
    pub fn fertility(&self) -> usize {
        self.children.len()
    }

    /// Total vertex count.
    pub fn degree(&self) -> usize {
        1 + self.children.iter().map(PlanarTree::degree).sum::<usize>()
    }

    /// Preorder fertility sequence; equal-degree trees compare
    /// lexicographically on this, which is the canonical order used by
    /// every enumeration and table here.
    pub fn encoding(&self) -> Vec<u32> {
        fn walk(t: &PlanarTree, out: &mut Vec<u32>) {
            out.push(t.children.len() as u32);
            for c in &t.children {
                walk(c, out);
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }

    /// True when every vertex has fertility 0, 1, or even — the support
    /// of the Bernoulli weight.
    pub fn is_restricted(&self) -> bool {
        let f = self.children.len();
        (f <= 1 || f % 2 == 0) && self.children.iter().all(PlanarTree::is_restricted)
    }

    /// Compact bracket encoding: `[]` for a single vertex,
    /// `[t₁t₂…]` for a vertex with subtrees.
    pub fn to_brackets(&self) -> String {
        let mut s = String::new();
        fn walk(t: &PlanarTree, out: &mut String) {
            out.push('[');
            for c in &t.children {
                walk(c, out);
            }
            out.push(']');
        }
        walk(self, &mut s);
        s
    }

    /// Parse the bracket encoding; whitespace between brackets is
    /// tolerated on input.
    pub fn from_brackets(s: &str) -> Result<PlanarTree> {
        let mut stack: Vec<Vec<PlanarTree>> = Vec::new();
        let mut done: Option<PlanarTree> = None;
        for ch in s.chars() {
            match ch {
                '[' => {
                    if done.is_some() {
                        return Err(DendError::ParseError(format!("trailing input in `{s}`")));
                    }
                    stack.push(Vec::new());
                }
                ']' => {
                    let children = stack
                        .pop()
                        .ok_or_else(|| DendError::ParseError(format!("unbalanced `]` in `{s}`")))?;
                    let t = PlanarTree::node(children);
                    match stack.last_mut() {
                        Some(parent) => parent.push(t),
                        None => done = Some(t),
                    }
                }
                c if c.is_whitespace() => {}
                c => {
                    return Err(DendError::ParseError(format!("unexpected `{c}` in tree `{s}`")))
                }
            }
        }
        match (done, stack.is_empty()) {
            (Some(t), true) => Ok(t),
            _ => Err(DendError::ParseError(format!("incomplete tree `{s}`"))),
        }
    }
}

impl PartialOrd for PlanarTree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PlanarTree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.degree(), self.encoding()).cmp(&(other.degree(), other.encoding()))
    }
}

/// All planar rooted trees with exactly `n` vertices whose vertices all
/// have fertility 0, 1, or even, in canonical order.
pub fn enumerate_e1(n: usize) -> Vec<PlanarTree> {
    enumerate_e1_with(n, false)
}

/// As [`enumerate_e1`], with the work at each degree split over root
/// fertilities in parallel when requested (output is identical).
pub fn enumerate_e1_with(n: usize, parallel: bool) -> Vec<PlanarTree> {
    enumerate_table(n, |f| f <= 1 || f % 2 == 0, parallel)
        .pop()
        .unwrap_or_default()
}

/// All planar rooted trees with exactly `n` vertices, no fertility
/// restriction, in canonical order.
pub fn enumerate_all(n: usize) -> Vec<PlanarTree> {
    enumerate_table(n, |_| true, false).pop().unwrap_or_default()
}

/// Trees of each degree `1..=n` whose vertex fertilities all satisfy
/// `allowed`; `out[d−1]` holds degree `d` in canonical order.
fn enumerate_table(
    n: usize,
    allowed: fn(usize) -> bool,
    parallel: bool,
) -> Vec<Vec<PlanarTree>> {
    let mut table: Vec<Vec<PlanarTree>> = Vec::with_capacity(n);
    for d in 1..=n {
        if d == 1 {
            table.push(vec![PlanarTree::leaf()]);
            continue;
        }
        let fertilities: Vec<usize> = (1..d).filter(|&k| allowed(k)).collect();
        let lower = &table;
        let mut trees = crate::parallel::flat_map_vec(fertilities, parallel, |k| {
            let mut out = Vec::new();
            for split in compositions(d - 1, k) {
                // odometer over the per-slot choices
                let choices: Vec<&[PlanarTree]> =
                    split.iter().map(|&di| lower[di - 1].as_slice()).collect();
                let mut idx = vec![0usize; k];
                loop {
                    out.push(PlanarTree::node(
                        idx.iter()
                            .zip(&choices)
                            .map(|(&i, c)| c[i].clone())
                            .collect(),
                    ));
                    let mut pos = k;
                    loop {
                        if pos == 0 {
                            break;
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < choices[pos].len() {
                            break;
                        }
                        idx[pos] = 0;
                        if pos == 0 {
                            pos = usize::MAX;
                            break;
                        }
                    }
                    if pos == usize::MAX {
                        break;
                    }
                }
            }
            out
        });
        trees.sort_by_cached_key(PlanarTree::encoding);
        table.push(trees);
    }
    table
}

/// Ordered lists of `parts ≥ 1` positive integers summing to `total`.
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    debug_assert!(parts >= 1);
    if parts == 1 {
        return if total >= 1 { vec![vec![total]] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Bernoulli vertex weight `∏_v B_{f(v)}/f(v)!`. Zero exactly when some
/// vertex has odd fertility greater than 1.
pub fn alpha(t: &PlanarTree) -> Rational {
    let enc = t.encoding();
    let max_f = enc.iter().copied().max().unwrap_or(0) as usize;
    let bern = bernoulli_upto(max_f);
    let mut acc = rat_one();
    for f in enc {
        let f = f as usize;
        let w = &bern[f] / factorial(f);
        if w.is_zero() {
            return Rational::zero();
        }
        acc *= w;
    }
    acc
}

/// The iterated pre-Lie word of a tree applied to `a`:
/// `F[•](a) = a`, `F[∨(t₁,…,tₙ)](a) = F[t₁]⊳(F[t₂]⊳(…(F[tₙ]⊳a)…))`.
pub fn tree_functional<A: Dendriform>(alg: &A, t: &PlanarTree, a: &A::Elem) -> Result<A::Elem> {
    let mut acc = a.clone();
    for child in t.children.iter().rev() {
        let sub = tree_functional(alg, child, a)?;
        acc = prelie_left(alg, &sub, &acc)?;
    }
    Ok(acc)
}

/// Tree-indexed form of the logarithm of the (0,1)-word solution:
/// `Σ_t α(t)·F[t](a)·λ^{deg t}` over the restricted family. Agrees with
/// `magnus_omega` at every truncation order.
pub fn butcher_omega<A: Dendriform>(
    alg: &A,
    a: &A::Elem,
    order: usize,
) -> Result<Series<A::Elem>> {
    let mut omega = Series::zero(alg, order);
    for d in 1..=order {
        let mut acc = alg.zero();
        for t in enumerate_e1(d) {
            let w = alpha(&t);
            debug_assert!(!w.is_zero());
            acc = alg.add(&acc, &alg.scale(&w, &tree_functional(alg, &t, a)?));
        }
        omega.set_coeff(d, acc);
    }
    Ok(omega)
}

/// `T₀..T_n` of the counting series: `T₀ = T₁ = 1` and
/// `T_m = 1 + Σ_{p+q+r=m−2} T_p T_q T_r`, equivalently
/// `T(z) − z²T(z)³ = 1/(1−z)`. `T_m` counts the restricted trees of
/// degree `m+1`.
pub fn poincare_counts(n: usize) -> Vec<u128> {
    let mut t = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let mut v: u128 = 1;
        if m >= 2 {
            for p in 0..=(m - 2) {
                for q in 0..=(m - 2 - p) {
                    let r = m - 2 - p - q;
                    v += t[p] * t[q] * t[r];
                }
            }
        }
        t.push(v);
    }
    t
}

// ---------------------------------------------------------------------------
// Formal ⊳-expressions in one variable and the semantic equality check.
// ---------------------------------------------------------------------------

/// A ⊳-monomial in a single variable: the variable itself, or a product
/// `u ⊳ v` of two smaller words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PreLieWord {
    Gen,
    Tri(Box<PreLieWord>, Box<PreLieWord>),
}

impl PreLieWord {
    pub fn gen() -> PreLieWord {
        PreLieWord::Gen
    }

    /// `self ⊳ rhs`.
    pub fn tri(self, rhs: PreLieWord) -> PreLieWord {
        PreLieWord::Tri(Box::new(self), Box::new(rhs))
    }

    /// The word `F[t]` of a tree (right-nested over the children).
    pub fn from_tree(t: &PlanarTree) -> PreLieWord {
        let mut acc = PreLieWord::Gen;
        for child in t.children().iter().rev() {
            acc = PreLieWord::from_tree(child).tri(acc);
        }
        acc
    }

    /// Number of variable occurrences.
    pub fn degree(&self) -> usize {
        match self {
            PreLieWord::Gen => 1,
            PreLieWord::Tri(u, v) => u.degree() + v.degree(),
        }
    }

    /// Substitute `a` for the variable, interpreting `⊳` as the left
    /// pre-Lie product of the algebra.
    pub fn eval<A: Dendriform>(&self, alg: &A, a: &A::Elem) -> Result<A::Elem> {
        match self {
            PreLieWord::Gen => Ok(a.clone()),
            PreLieWord::Tri(u, v) => prelie_left(alg, &u.eval(alg, a)?, &v.eval(alg, a)?),
        }
    }

    /// Display with the variable named `name`, fully parenthesized:
    /// `a`, `(a▷a)`, `((a▷a)▷a)`, …
    pub fn render(&self, name: &str) -> String {
        match self {
            PreLieWord::Gen => name.to_string(),
            PreLieWord::Tri(u, v) => format!("({}▷{})", u.render(name), v.render(name)),
        }
    }
}

/// Rational linear combination of ⊳-monomials in one variable.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct PreLieExpr {
    terms: Vec<(Rational, PreLieWord)>,
}

impl PreLieExpr {
    pub fn new(terms: Vec<(Rational, PreLieWord)>) -> PreLieExpr {
        PreLieExpr { terms }
    }

    pub fn terms(&self) -> &[(Rational, PreLieWord)] {
        &self.terms
    }

    pub fn eval<A: Dendriform>(&self, alg: &A, a: &A::Elem) -> Result<A::Elem> {
        let mut acc = alg.zero();
        for (c, w) in &self.terms {
            acc = alg.add(&acc, &alg.scale(c, &w.eval(alg, a)?));
        }
        Ok(acc)
    }
}

/// Decide whether two ⊳-expressions agree as consequences of the
/// dendriform axioms, by evaluating both on the generator of the free
/// algebra on one variable and comparing.
pub fn prelie_equal(e1: &PreLieExpr, e2: &PreLieExpr) -> Result<bool> {
    let alg = Augmented(FreeAlgebra::with_k_generators(1));
    let a = alg.lift(alg.body_alg().generator(0));
    Ok(e1.eval(&alg, &a)? == e2.eval(&alg, &a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dendriform::Aug;
    use crate::free::FreeElement;
    use crate::magnus::{magnus_omega, MagnusForm};
    use crate::poly::Poly;
    use crate::rational::{rat, rat_int};
    use crate::rb::{rb_algebra, PolyRiemann, RotaBaxter, SeqPartialSum};

    type Alg = Augmented<FreeAlgebra>;
    type Elem = Aug<FreeElement>;

    fn one_gen() -> (Alg, Elem) {
        let alg = Augmented(FreeAlgebra::with_k_generators(1));
        let a = alg.lift(alg.body_alg().generator(0));
        (alg, a)
    }

    fn ladder(n: usize) -> PlanarTree {
        let mut t = PlanarTree::leaf();
        for _ in 1..n {
            t = PlanarTree::node(vec![t]);
        }
        t
    }

    fn corolla(n: usize) -> PlanarTree {
        PlanarTree::node(vec![PlanarTree::leaf(); n])
    }

    #[test]
    fn restricted_counts_match_pinned_sequence() {
        let expect = [1, 1, 2, 4, 10, 26, 73, 211, 630, 1918];
        for (d, &n) in expect.iter().enumerate() {
            let trees = enumerate_e1(d + 1);
            assert_eq!(trees.len(), n, "degree {}", d + 1);
            assert!(trees.iter().all(|t| t.degree() == d + 1 && t.is_restricted()));
            // parallel split produces the identical list
            assert_eq!(enumerate_e1_with(d + 1, true), trees);
        }
    }

    #[test]
    fn canonical_order_and_brackets() {
        // degree 3: the 3-ladder precedes the 2-corolla
        let deg3 = enumerate_e1(3);
        assert_eq!(deg3, vec![ladder(3), corolla(2)]);
        assert_eq!(deg3[0].to_brackets(), "[[[]]]");
        assert_eq!(deg3[1].to_brackets(), "[[][]]");
        // encodings strictly increase within a degree
        for d in 1..=6 {
            let encs: Vec<_> = enumerate_e1(d).iter().map(PlanarTree::encoding).collect();
            assert!(encs.windows(2).all(|w| w[0] < w[1]));
        }
        for src in ["[]", "[[]]", "[[][]]", "[[[]][][]]"] {
            let t = PlanarTree::from_brackets(src).unwrap();
            assert_eq!(t.to_brackets(), src);
        }
        assert_eq!(
            PlanarTree::from_brackets(" [ [] [] ] ").unwrap(),
            corolla(2)
        );
        assert!(PlanarTree::from_brackets("[[]").is_err());
        assert!(PlanarTree::from_brackets("[]]").is_err());
        assert!(PlanarTree::from_brackets("[][]").is_err());
        assert!(PlanarTree::from_brackets("[x]").is_err());
    }

    #[test]
    fn unrestricted_counts_and_weight_kernel() {
        // planar rooted trees on n vertices: Catalan(n−1)
        let catalan = [1usize, 1, 2, 5, 14, 42, 132];
        for (d, &n) in catalan.iter().enumerate() {
            let all = enumerate_all(d + 1);
            assert_eq!(all.len(), n, "degree {}", d + 1);
            // α vanishes exactly off the restricted family
            for t in &all {
                assert_eq!(alpha(t).is_zero(), !t.is_restricted(), "{}", t.to_brackets());
            }
        }
    }

    #[test]
    fn weight_values() {
        assert_eq!(alpha(&PlanarTree::leaf()), rat_int(1));
        assert_eq!(alpha(&ladder(2)), rat(-1, 2));
        assert_eq!(alpha(&ladder(3)), rat(1, 4));
        assert_eq!(alpha(&corolla(2)), rat(1, 12));
        assert_eq!(alpha(&corolla(4)), rat(-1, 720)); // B₄/4!
        assert!(alpha(&corolla(3)).is_zero());
    }

    #[test]
    fn functionals_are_prelie_words() {
        let (alg, a) = one_gen();
        let pre = |x: &Elem, y: &Elem| prelie_left(&alg, x, y).unwrap();
        assert_eq!(tree_functional(&alg, &PlanarTree::leaf(), &a).unwrap(), a);
        assert_eq!(tree_functional(&alg, &ladder(2), &a).unwrap(), pre(&a, &a));
        assert_eq!(
            tree_functional(&alg, &corolla(2), &a).unwrap(),
            pre(&a, &pre(&a, &a))
        );
        // mixed shape: ∨(ladder₂, •) ↦ (a⊳a)⊳(a⊳a)
        let mixed = PlanarTree::node(vec![ladder(2), PlanarTree::leaf()]);
        assert_eq!(
            tree_functional(&alg, &mixed, &a).unwrap(),
            pre(&pre(&a, &a), &pre(&a, &a))
        );
        // words, grading, and the tree↦word translation agree
        for d in 1..=5 {
            for t in enumerate_e1(d) {
                let f = tree_functional(&alg, &t, &a).unwrap();
                assert!(alg.body_alg().is_homogeneous(&f.body, d));
                assert_eq!(PreLieWord::from_tree(&t).eval(&alg, &a).unwrap(), f);
                assert_eq!(PreLieWord::from_tree(&t).degree(), d);
            }
        }
    }

    #[test]
    fn tree_sum_matches_recursive_expansion_free() {
        let (alg, a) = one_gen();
        let butcher = butcher_omega(&alg, &a, 8).unwrap();
        let magnus = magnus_omega(&alg, &a, 8, MagnusForm::Left).unwrap().omega;
        assert_eq!(butcher, magnus);
    }

    #[test]
    fn tree_sum_matches_recursive_expansion_models() {
        macro_rules! check {
            ($model:expr, $seed:expr) => {
                let alg = rb_algebra($model);
                let mut rng = crate::rng::SplitMix64::new($seed);
                for _ in 0..3 {
                    let a = alg.lift(alg.body_alg().0.sample_carrier(&mut rng));
                    let b = butcher_omega(&alg, &a, 6).unwrap();
                    let m = magnus_omega(&alg, &a, 6, MagnusForm::Left).unwrap().omega;
                    assert_eq!(b, m);
                }
            };
        }
        check!(SeqPartialSum::new(6, rat_int(1)), 23);
        check!(PolyRiemann::new(1), 24);
    }

    #[test]
    fn counting_recursion_matches_enumeration_and_series() {
        let t = poincare_counts(12);
        assert_eq!(
            &t[..10],
            &[1, 1, 2, 4, 10, 26, 73, 211, 630, 1918],
            "recursion values"
        );
        // T_m counts restricted trees of degree m+1
        for m in 0..=9 {
            assert_eq!(t[m] as usize, enumerate_e1(m + 1).len());
        }
        // functional equation on the honest counting series: coefficients
        // from the enumerator itself, checked through order 12
        let counts: Vec<Rational> = (1..=13)
            .map(|d| rat_int(enumerate_e1_with(d, true).len() as i64))
            .collect();
        let mut tc = vec![Rational::zero(); 13];
        for m in 0..13 {
            tc[m] = counts[m].clone(); // T_m = #trees of degree m+1
        }
        let tpoly = Poly::from_coeffs(tc);
        let geom = Poly::from_coeffs(vec![rat_one(); 13]);
        let t3 = tpoly.mul(&tpoly).truncate(12).mul(&tpoly).truncate(12);
        let residual = tpoly.sub(&Poly::monomial(2).mul(&t3).truncate(12)).sub(&geom);
        assert!(residual.truncate(12).is_zero(), "T − z²T³ − 1/(1−z)");
        // W = zT: W − W³ = z/(1−z)
        let w = Poly::monomial(1).mul(&tpoly).truncate(12);
        let w3 = w.mul(&w).truncate(12).mul(&w).truncate(12);
        let zgeom = Poly::monomial(1).mul(&geom).truncate(12);
        assert!(w.sub(&w3).sub(&zgeom).truncate(12).is_zero(), "W − W³ − z/(1−z)");
    }

    fn g() -> PreLieWord {
        PreLieWord::gen()
    }

    #[test]
    fn prelie_equality_is_semantic() {
        // reflexivity and a strict inequality
        let xx = PreLieExpr::new(vec![(rat_one(), g().tri(g()))]);
        assert!(prelie_equal(&xx, &xx).unwrap());
        let xx2 = PreLieExpr::new(vec![(rat_int(2), g().tri(g()))]);
        assert!(!prelie_equal(&xx, &xx2).unwrap());

        // the left pre-Lie relation itself: associator symmetric in its
        // first two arguments, instantiated at x = y = a, z = a⊳a
        let z = g().tri(g());
        let lhs = PreLieExpr::new(vec![
            (rat_one(), g().tri(g()).tri(z.clone())),
            (rat_int(-1), g().tri(g().tri(z.clone()))),
        ]);
        let rhs = PreLieExpr::new(vec![
            (rat_one(), g().tri(g()).tri(z.clone())),
            (rat_int(-1), g().tri(g().tri(z))),
        ]);
        assert!(prelie_equal(&lhs, &rhs).unwrap());
    }

    #[test]
    fn order_four_reduction() {
        // four-term form
        let c1 = g().tri(g()).tri(g()).tri(g());
        let c2 = g().tri(g().tri(g())).tri(g());
        let c3 = g().tri(g().tri(g()).tri(g()));
        let c4 = g().tri(g()).tri(g().tri(g()));
        let four = PreLieExpr::new(vec![
            (rat(-1, 8), c1.clone()),
            (rat(-1, 24), c2),
            (rat(-1, 24), c3.clone()),
            (rat(-1, 24), c4),
        ]);
        let two = PreLieExpr::new(vec![(rat(-1, 6), c1), (rat(-1, 12), c3)]);
        assert!(prelie_equal(&four, &two).unwrap());

        // both reproduce the recursion's λ⁴ coefficient
        let (alg, a) = one_gen();
        let omega = magnus_omega(&alg, &a, 4, MagnusForm::Left).unwrap().omega;
        assert_eq!(&four.eval(&alg, &a).unwrap(), omega.coeff(4));
        assert_eq!(&two.eval(&alg, &a).unwrap(), omega.coeff(4));
    }

    #[test]
    fn order_five_eight_and_seven_term_forms() {
        // eight ⊳-monomials: the degree-5 tree sum with the degree-4
        // interior already reduced to two terms
        let u = g().tri(g()); // a▷a
        let lad3 = u.clone().tri(g()); // (a▷a)▷a
        let lad4 = lad3.clone().tri(g());
        let cor = g().tri(u.clone()); // a▷(a▷a)
        let mixed4 = g().tri(lad3.clone()); // a▷((a▷a)▷a)

        let w1 = lad4.clone().tri(g()); // ((((a▷a)▷a)▷a)▷a)
        let w2 = mixed4.clone().tri(g()); // (a▷((a▷a)▷a))▷a
        let w3 = g().tri(lad3.clone().tri(g())); // a▷(((a▷a)▷a)▷a)
        let w4 = g().tri(cor.clone().tri(g())); // a▷((a▷(a▷a))▷a)
        let w5 = lad3.clone().tri(u.clone()); // ((a▷a)▷a)▷(a▷a)
        let w6 = cor.clone().tri(u.clone()); // (a▷(a▷a))▷(a▷a)
        let w7 = u.clone().tri(u.clone().tri(g())); // (a▷a)▷((a▷a)▷a)
        let w8 = g().tri(g().tri(g().tri(u.clone()))); // a▷(a▷(a▷(a▷a)))

        let eight = PreLieExpr::new(vec![
            (rat(1, 12), w1.clone()),
            (rat(1, 24), w2.clone()),
            (rat(1, 48), w3.clone()),
            (rat(1, 144), w4.clone()),
            (rat(1, 48), w5),
            (rat(1, 144), w6.clone()),
            (rat(1, 48), w7.clone()),
            (rat(-1, 720), w8.clone()),
        ]);
        // seven: ((a▷a)▷a)▷(a▷a) rewritten through the pre-Lie relation
        let seven = PreLieExpr::new(vec![
            (rat(5, 48), w1),
            (rat(1, 48), w2),
            (rat(1, 24), w3),
            (rat(1, 144), w4),
            (rat(1, 144), w6),
            (rat(1, 48), w7),
            (rat(-1, 720), w8),
        ]);
        assert!(prelie_equal(&eight, &seven).unwrap());

        // and both equal the ten-tree degree-5 coefficient of the sum
        let (alg, a) = one_gen();
        assert_eq!(enumerate_e1(5).len(), 10);
        let omega = butcher_omega(&alg, &a, 5).unwrap();
        assert_eq!(&eight.eval(&alg, &a).unwrap(), omega.coeff(5));
        assert_eq!(&seven.eval(&alg, &a).unwrap(), omega.coeff(5));
        assert_eq!(g().render("a"), "a");
        assert_eq!(u.render("a"), "(a▷a)");
        assert_eq!(mixed4.render("a"), "(a▷((a▷a)▷a))");
    }
}
