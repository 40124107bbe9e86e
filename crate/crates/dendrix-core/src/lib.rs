//! Exact computer algebra for dendriform algebras.
//!
//! The crate solves linear fixed-point equations in dendriform algebras
//! as truncated λ-series with rational coefficients, computes the
//! pre-Lie Magnus and Fer expansions and their planar-tree form, embeds
//! higher-degree equations into matrix dendriform algebras, and replays
//! every abstract identity inside concrete Rota–Baxter algebras as an
//! independent cross-check.
//!
//! Layering, bottom up:
//!
//! * [`rational`] — exact scalars, Bernoulli numbers, binomials.
//! * [`dendriform`] — the algebra interface, unit handling, opposite
//!   algebra; [`free`] — the free dendriform algebra on labeled planar
//!   binary trees; [`poly`] — dense rational polynomials for carriers.
//! * [`series`] — truncated λ-series: products, `exp`/`log`/inverse,
//!   iterated one-sided words.
//! * [`rb`] — Rota–Baxter models and their induced dendriform and
//!   tridendriform structures.
//! * [`matrix`] — square matrices over a dendriform algebra, the
//!   embedding target for higher-degree equations.
//! * [`solvers`] — closed-form series solutions of the fixed-point
//!   equations, degree (1,1) and arbitrary (m,0)/(0,n).
//! * [`magnus`] — pre-Lie Magnus and Fer expansions; [`trees`] — planar
//!   rooted trees, the tree-indexed expansion form, tree counting.
//! * [`apps`] — classical solved forms replayed in concrete carriers.
//! * [`verify`] — randomized verification sweeps with structured
//!   reports; [`parallel`] — the sweep driver, data-parallel when the
//!   `parallel` feature (default) is on.

pub mod dendriform;
pub mod error;
pub mod free;
pub mod magnus;
pub mod apps;
pub mod matrix;
pub mod parallel;
pub mod poly;
pub mod rational;
pub mod rb;
pub mod rng;
pub mod series;
pub mod solvers;
pub mod trees;
pub mod verify;
