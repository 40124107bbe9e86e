//! Deterministic pseudo-random sampling for tests and verification sweeps.
//!
//! A single fixed generator (splitmix64) keeps every randomized check
//! reproducible from a seed across platforms, with no dependency on a
//! external RNG crate whose stream might change between versions. Samplers
//! for the various carrier types live here so the sampling contracts stay
//! in one place: small polynomial degrees, single-digit coefficients,
//! low-degree free elements.

use crate::free::{FreeAlgebra, FreeElement, GenId, PBTree};
use crate::rational::{rat_int, Rational};

/// splitmix64: tiny, seedable, statistically solid for test-vector use.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n` (n > 0) by rejection-free modulo; bias is
    /// irrelevant at the tiny ranges used here.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// Small nonzero integer coefficient, |c| ≤ 9.
    pub fn small_nonzero(&mut self) -> Rational {
        let mut v = self.int_in(-9, 9);
        if v == 0 {
            v = 1;
        }
        rat_int(v)
    }

    /// Small integer coefficient, |c| ≤ 9 (zero allowed).
    pub fn small_int(&mut self) -> Rational {
        rat_int(self.int_in(-9, 9))
    }

    /// Random labeled planar binary tree of exactly `degree ≥ 1` vertices.
    pub fn tree(&mut self, alg: &FreeAlgebra, degree: usize) -> PBTree {
        debug_assert!(degree >= 1);
        let g = self.below(alg.num_generators() as u64) as GenId;
        if degree == 1 {
            return PBTree::gen(g);
        }
        // split remaining degree-1 vertices between the subtrees
        let left = self.below(degree as u64) as usize; // 0..=degree-1
        let right = degree - 1 - left;
        let l = if left == 0 { PBTree::Leaf } else { self.tree(alg, left) };
        let r = if right == 0 { PBTree::Leaf } else { self.tree(alg, right) };
        PBTree::node(g, l, r)
    }

    /// Random free element: up to `max_terms` terms of tree-degree
    /// `1..=max_degree`, small nonzero coefficients. May be zero when
    /// coefficients cancel; callers that need nonzero resample.
    pub fn free_element(
        &mut self,
        alg: &FreeAlgebra,
        max_terms: usize,
        max_degree: usize,
    ) -> FreeElement {
        let n = 1 + self.below(max_terms as u64) as usize;
        let mut terms = Vec::with_capacity(n);
        for _ in 0..n {
            let d = 1 + self.below(max_degree as u64) as usize;
            terms.push((self.tree(alg, d), self.small_nonzero()));
        }
        alg.element_from_terms(terms)
    }

    /// Degree-1 element on a single random generator: the cheapest
    /// nontrivial input, used where product sizes would otherwise explode.
    pub fn free_generator(&mut self, alg: &FreeAlgebra) -> FreeElement {
        let g = self.below(alg.num_generators() as u64) as GenId;
        alg.generator(g)
    }
}
