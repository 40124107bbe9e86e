//! Square matrices over a dendriform algebra.
//!
//! With both half-products extended entrywise through the usual
//! row-by-column sum,
//!
//! ```text
//! (X ≺ Y)_ij = Σ_k  X_ik ≺ Y_kj      (X ≻ Y)_ij = Σ_k  X_ik ≻ Y_kj
//! ```
//!
//! the axioms hold again, and the unit is the diagonal matrix of scalar
//! units (not a matrix of units: off-diagonal entries are zero, and the
//! unit rules recover `M ≺ I = M`, `I ≻ M = M`, `I ≺ M = 0 = M ≻ I`
//! entry by entry). This is the embedding target that turns one
//! higher-degree scalar equation into a first-order matrix equation: the
//! solver layer builds a companion matrix of equation coefficients and
//! reads the scalar solution back out of one entry.

use crate::dendriform::Dendriform;
use crate::error::Result;
use crate::series::Series;

/// Dense square matrix of algebra elements, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct SqMat<E> {
    n: usize,
    entries: Vec<E>,
}

impl<E: Clone> SqMat<E> {
    pub fn filled(n: usize, e: E) -> SqMat<E> {
        SqMat { n, entries: vec![e; n * n] }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> SqMat<E> {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must be square");
        SqMat { n, entries: rows.into_iter().flatten().collect() }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: E) {
        self.entries[i * self.n + j] = e;
    }
}

/// The algebra of `n×n` matrices over `base`.
#[derive(Clone, Debug)]
pub struct MatrixAlg<A: Dendriform> {
    pub base: A,
    pub n: usize,
}

impl<A: Dendriform> MatrixAlg<A> {
    pub fn new(base: A, n: usize) -> MatrixAlg<A> {
        assert!(n >= 1, "matrix dimension must be positive");
        MatrixAlg { base, n }
    }

    /// Diagonal matrix with a single element repeated.
    pub fn diagonal(&self, e: &A::Elem) -> SqMat<A::Elem> {
        let mut m = SqMat::filled(self.n, self.base.zero());
        for i in 0..self.n {
            m.set(i, i, e.clone());
        }
        m
    }

    fn combine(
        &self,
        x: &SqMat<A::Elem>,
        y: &SqMat<A::Elem>,
        op: impl Fn(&A, &A::Elem, &A::Elem) -> Result<A::Elem>,
    ) -> Result<SqMat<A::Elem>> {
        assert_eq!(x.n, self.n);
        assert_eq!(y.n, self.n);
        let mut out = SqMat::filled(self.n, self.base.zero());
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = self.base.zero();
                for k in 0..self.n {
                    let term = op(&self.base, x.get(i, k), y.get(k, j))?;
                    acc = self.base.add(&acc, &term);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }
}

impl<A: Dendriform> Dendriform for MatrixAlg<A> {
    type Elem = SqMat<A::Elem>;

    fn zero(&self) -> Self::Elem {
        SqMat::filled(self.n, self.base.zero())
    }

    fn unit(&self) -> Self::Elem {
        self.diagonal(&self.base.unit())
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        x.entries.iter().all(|e| self.base.is_zero(e))
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        assert_eq!(x.n, y.n);
        SqMat {
            n: x.n,
            entries: x
                .entries
                .iter()
                .zip(&y.entries)
                .map(|(a, b)| self.base.add(a, b))
                .collect(),
        }
    }

    fn neg(&self, x: &Self::Elem) -> Self::Elem {
        SqMat { n: x.n, entries: x.entries.iter().map(|e| self.base.neg(e)).collect() }
    }

    fn scale(&self, c: &crate::rational::Rational, x: &Self::Elem) -> Self::Elem {
        SqMat { n: x.n, entries: x.entries.iter().map(|e| self.base.scale(c, e)).collect() }
    }

    fn prec(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        self.combine(x, y, |b, u, v| b.prec(u, v))
    }

    fn succ(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        self.combine(x, y, |b, u, v| b.succ(u, v))
    }

    fn star(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        self.combine(x, y, |b, u, v| b.star(u, v))
    }
}

/// Extract one entry of a matrix-valued series as a scalar series.
pub fn series_entry<E: Clone + PartialEq>(s: &Series<SqMat<E>>, i: usize, j: usize) -> Series<E> {
    Series::from_coeffs(s.coeffs().iter().map(|m| m.get(i, j).clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dendriform::Augmented;
    use crate::error::DendError;
    use crate::free::FreeAlgebra;
    use crate::rng::SplitMix64;

    type Base = Augmented<FreeAlgebra>;

    fn setup() -> (MatrixAlg<Base>, SplitMix64) {
        let base = Augmented(FreeAlgebra::new(&["a", "b", "c"]));
        (MatrixAlg::new(base, 2), SplitMix64::new(23))
    }

    fn rand_mat(alg: &MatrixAlg<Base>, rng: &mut SplitMix64) -> SqMat<<Base as Dendriform>::Elem> {
        let f = alg.base.body_alg().clone();
        let mut m = alg.zero();
        for i in 0..alg.n {
            for j in 0..alg.n {
                m.set(i, j, alg.base.lift(rng.free_element(&f, 2, 2)));
            }
        }
        m
    }

    #[test]
    fn unit_rules_hold_for_matrices() {
        let (alg, mut rng) = setup();
        let one = alg.unit();
        let m = rand_mat(&alg, &mut rng);
        assert_eq!(alg.prec(&m, &one).unwrap(), m);
        assert_eq!(alg.succ(&one, &m).unwrap(), m);
        assert!(alg.is_zero(&alg.prec(&one, &m).unwrap()));
        assert!(alg.is_zero(&alg.succ(&m, &one).unwrap()));
        assert_eq!(alg.star(&one, &one).unwrap(), one);
        assert_eq!(
            alg.prec(&one, &one),
            Err(DendError::UnitProductUndefined)
        );
    }

    #[test]
    fn axioms_hold_for_matrices() {
        let (alg, mut rng) = setup();
        for _ in 0..10 {
            let x = rand_mat(&alg, &mut rng);
            let y = rand_mat(&alg, &mut rng);
            let z = rand_mat(&alg, &mut rng);
            let l1 = alg.prec(&alg.prec(&x, &y).unwrap(), &z).unwrap();
            let r1 = alg.prec(&x, &alg.star(&y, &z).unwrap()).unwrap();
            assert_eq!(l1, r1);
            let l2 = alg.prec(&alg.succ(&x, &y).unwrap(), &z).unwrap();
            let r2 = alg.succ(&x, &alg.prec(&y, &z).unwrap()).unwrap();
            assert_eq!(l2, r2);
            let l3 = alg.succ(&x, &alg.succ(&y, &z).unwrap()).unwrap();
            let r3 = alg.succ(&alg.star(&x, &y).unwrap(), &z).unwrap();
            assert_eq!(l3, r3);
        }
    }

    #[test]
    fn corner_embedding_is_a_morphism() {
        // elements placed at (0,0) with zeros elsewhere multiply like the base
        let (alg, mut rng) = setup();
        let f = alg.base.body_alg().clone();
        for _ in 0..10 {
            let x = alg.base.lift(rng.free_element(&f, 2, 2));
            let y = alg.base.lift(rng.free_element(&f, 2, 2));
            let mut mx = alg.zero();
            mx.set(0, 0, x.clone());
            let mut my = alg.zero();
            my.set(0, 0, y.clone());
            let p = alg.prec(&mx, &my).unwrap();
            assert_eq!(*p.get(0, 0), alg.base.prec(&x, &y).unwrap());
            assert!(alg.base.is_zero(p.get(0, 1)));
            assert!(alg.base.is_zero(p.get(1, 1)));
        }
    }

    #[test]
    fn one_by_one_matches_base() {
        let base = Augmented(FreeAlgebra::new(&["a"]));
        let alg = MatrixAlg::new(base.clone(), 1);
        let a = base.lift(base.body_alg().generator(0));
        let ma = SqMat::from_rows(vec![vec![a.clone()]]);
        let got = alg.star(&ma, &ma).unwrap();
        assert_eq!(*got.get(0, 0), base.star(&a, &a).unwrap());
    }

    #[test]
    fn series_entry_extracts() {
        let (alg, mut rng) = setup();
        let m = rand_mat(&alg, &mut rng);
        let s = Series::monomial(&alg, 3, 1, m.clone());
        let e = series_entry(&s, 0, 1);
        assert_eq!(e.coeff(1), m.get(0, 1));
        assert!(alg.base.is_zero(e.coeff(0)));
    }
}
