//! Seeded verification sweeps with machine-readable reports.
//!
//! Every sweep re-derives an identity along two independent routes and
//! compares exactly; a trial records the first λ-order at which the
//! routes disagree (or a named identity that failed). Trials are
//! deterministic functions of their seed, so a sweep can run its trials
//! concurrently and still produce byte-identical reports: outcomes are
//! merged in seed order.

use crate::apps::{
    commutative_log_omega, ivp_correspondence, riccati_residual, time_ordered_exp,
    vogel_closed_form, vogel_dendriform,
};
use crate::dendriform::{prelie_left, prelie_right, Augmented, Dendriform};
use crate::error::{DendError, Result};
use crate::free::FreeAlgebra;
use crate::magnus::{fer_factors, magnus_omega, MagnusForm};
use crate::poly::Poly;
use crate::rational::{rat_int, rat_one, rat_zero};
use crate::rb::{rb_algebra, tri_dot, tri_left, tri_right, tri_star, RbModel, RotaBaxter};
use crate::rng::SplitMix64;
use crate::series::{dynkin_word, prelie_word_left, Series};
use crate::solvers::{rhs_general, solve_01, solve_10, solve_dynkin};
use crate::trees;
use num::Zero;
use serde::Serialize;

/// Monomorphize a body over every concrete model variant.
macro_rules! dispatch_model {
    ($model:expr, $inner:ident, $body:expr) => {
        match $model {
            RbModel::PolyRiemann($inner) => $body,
            RbModel::Seq($inner) => $body,
            RbModel::QSum($inner) => $body,
            RbModel::Tri($inner) => $body,
        }
    };
}

/// Which sweep to run.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckKind {
    Magnus,
    Fer,
    Dynkin,
    Axioms,
    Trees,
    Vogel,
    Riccati,
    Ivp,
}

impl CheckKind {
    pub fn parse(s: &str) -> Result<CheckKind> {
        Ok(match s {
            "magnus" => CheckKind::Magnus,
            "fer" => CheckKind::Fer,
            "dynkin" => CheckKind::Dynkin,
            "axioms" => CheckKind::Axioms,
            "trees" => CheckKind::Trees,
            "vogel" => CheckKind::Vogel,
            "riccati" => CheckKind::Riccati,
            "ivp" => CheckKind::Ivp,
            other => {
                return Err(DendError::ParseError(format!(
                    "unknown check `{other}` (expected vogel|riccati|ivp|magnus|fer|dynkin|axioms|trees)"
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            CheckKind::Magnus => "magnus",
            CheckKind::Fer => "fer",
            CheckKind::Dynkin => "dynkin",
            CheckKind::Axioms => "axioms",
            CheckKind::Trees => "trees",
            CheckKind::Vogel => "vogel",
            CheckKind::Riccati => "riccati",
            CheckKind::Ivp => "ivp",
        }
    }
}

/// Where the sweep's algebra comes from: the free algebra on `k`
/// generators, or a concrete Rota–Baxter model.
#[derive(Clone, Debug)]
pub enum ModelChoice {
    Free(usize),
    Model(RbModel),
}

impl ModelChoice {
    /// `free`, `free:3`, or any model string (`seq:L=8,theta=1`, ...).
    pub fn parse(s: &str) -> Result<ModelChoice> {
        let s = s.trim();
        if s == "free" {
            return Ok(ModelChoice::Free(1));
        }
        if let Some(k) = s.strip_prefix("free:") {
            let k: usize = k
                .parse()
                .map_err(|_| DendError::ParseError(format!("bad generator count `{k}`")))?;
            if k == 0 || k > 26 {
                return Err(DendError::ParseError(
                    "generator count must be between 1 and 26".into(),
                ));
            }
            return Ok(ModelChoice::Free(k));
        }
        Ok(ModelChoice::Model(RbModel::parse(s)?))
    }

    pub fn name(&self) -> String {
        match self {
            ModelChoice::Free(k) => format!("free:{k}"),
            ModelChoice::Model(m) => m.name(),
        }
    }
}

/// One seeded trial of a sweep.
#[derive(Clone, Debug, Serialize)]
pub struct TrialOutcome {
    pub seed: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failing_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl TrialOutcome {
    fn pass(seed: u64) -> TrialOutcome {
        TrialOutcome { seed, passed: true, first_failing_order: None, detail: None }
    }

    fn fail(seed: u64, order: Option<usize>, detail: impl Into<String>) -> TrialOutcome {
        TrialOutcome {
            seed,
            passed: false,
            first_failing_order: order,
            detail: Some(detail.into()),
        }
    }

    fn from_result(seed: u64, r: Result<Option<(usize, String)>>) -> TrialOutcome {
        match r {
            Ok(None) => TrialOutcome::pass(seed),
            Ok(Some((order, what))) => TrialOutcome::fail(seed, Some(order), what),
            Err(e) => TrialOutcome::fail(seed, None, e.to_string()),
        }
    }
}

/// Full sweep report, stable under `--parallel-trials`.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub model: String,
    pub order: usize,
    pub base_seed: u64,
    pub trials: Vec<TrialOutcome>,
    pub passed: bool,
}

impl CheckReport {
    fn assemble(
        kind: CheckKind,
        model: &ModelChoice,
        order: usize,
        base_seed: u64,
        trials: Vec<TrialOutcome>,
    ) -> CheckReport {
        let passed = trials.iter().all(|t| t.passed);
        CheckReport {
            check: kind.name().to_string(),
            model: model.name(),
            order,
            base_seed,
            trials,
            passed,
        }
    }
}

/// Run `trials` independent seeded trials, each a pure function of its
/// seed, optionally in parallel; results come back in seed order.
fn run_trials(
    base_seed: u64,
    trials: usize,
    parallel: bool,
    f: impl Fn(u64) -> TrialOutcome + Sync + Send,
) -> Vec<TrialOutcome> {
    let seeds: Vec<u64> = (0..trials as u64).map(|t| base_seed.wrapping_add(t)).collect();
    crate::parallel::map_vec(seeds, parallel, f)
}

/// Entry point used by the command line: dispatch a sweep.
pub fn run_check(
    kind: CheckKind,
    model: &ModelChoice,
    order: usize,
    seed: u64,
    trials: usize,
    parallel: bool,
) -> Result<CheckReport> {
    if order == 0 {
        return Err(DendError::ShapeError("order must be at least 1".into()));
    }
    match kind {
        CheckKind::Magnus => Ok(sampled_sweep(kind, model, order, seed, trials, parallel, MagnusTrial)),
        CheckKind::Fer => Ok(sampled_sweep(kind, model, order, seed, trials, parallel, FerTrial)),
        CheckKind::Dynkin => Ok(sampled_sweep(kind, model, order, seed, trials, parallel, DynkinTrial)),
        CheckKind::Axioms => Ok(axioms_check(model, order, seed, trials, parallel)),
        CheckKind::Trees => Ok(trees_check(model, order, seed)),
        CheckKind::Vogel => vogel_check(model, order, seed, trials, parallel),
        CheckKind::Riccati => riccati_check(model, order, seed, trials, parallel),
        CheckKind::Ivp => ivp_check(model, order, seed, trials, parallel),
    }
}

// ---------------------------------------------------------------------------
// Sweeps over a single sampled element, generic in the algebra.
// ---------------------------------------------------------------------------

fn sampled_sweep<F>(
    kind: CheckKind,
    model: &ModelChoice,
    order: usize,
    seed: u64,
    trials: usize,
    parallel: bool,
    trial: F,
) -> CheckReport
where
    F: SampledTrial + Sync + Send,
{
    let outcomes = match model {
        ModelChoice::Free(k) => {
            let alg = Augmented(FreeAlgebra::with_k_generators(*k));
            // Series coefficients at λⁿ reach tree degree n·d for inputs
            // of degree d, so the sampling degree shrinks as the order
            // grows to keep the sweep polynomial-sized.
            let max_degree = match order {
                0..=4 => 3,
                5 => 2,
                _ => 1,
            };
            run_trials(seed, trials, parallel, |s| {
                let mut rng = SplitMix64::new(s);
                let a = alg.lift(rng.free_element(alg.body_alg(), 4, max_degree));
                TrialOutcome::from_result(s, trial.run(&alg, &a, order))
            })
        }
        ModelChoice::Model(m) => dispatch_model!(m, inner, {
            let alg = rb_algebra(inner.clone());
            run_trials(seed, trials, parallel, |s| {
                let mut rng = SplitMix64::new(s);
                let a = alg.lift(inner.sample_carrier(&mut rng));
                TrialOutcome::from_result(s, trial.run(&alg, &a, order))
            })
        }),
    };
    CheckReport::assemble(kind, model, order, seed, outcomes)
}

/// A per-element identity check, polymorphic over the algebra; the
/// trait stands in for a generic closure (plain `Fn` can't be generic).
trait SampledTrial {
    fn run<A: Dendriform>(&self, alg: &A, a: &A::Elem, order: usize)
        -> Result<Option<(usize, String)>>;
}

#[derive(Clone, Copy)]
struct MagnusTrial;
#[derive(Clone, Copy)]
struct FerTrial;
#[derive(Clone, Copy)]
struct DynkinTrial;

/// First order where two series differ.
fn first_diff<E: Clone + PartialEq>(x: &Series<E>, y: &Series<E>) -> Option<usize> {
    (0..=x.order().min(y.order())).find(|&k| x.coeff(k) != y.coeff(k))
}

impl SampledTrial for MagnusTrial {
    fn run<A: Dendriform>(
        &self,
        alg: &A,
        a: &A::Elem,
        order: usize,
    ) -> Result<Option<(usize, String)>> {
        let left = magnus_omega(alg, a, order, MagnusForm::Left)?.omega;
        let right = magnus_omega(alg, a, order, MagnusForm::Right)?.omega;
        if let Some(k) = first_diff(&left, &right) {
            return Ok(Some((k, "left and right recursions disagree".into())));
        }
        let word = solve_01(alg, a, order)?;
        if let Some(k) = first_diff(&left.exp_star(alg)?, &word) {
            return Ok(Some((k, "exp★ of the expansion is not the word solution".into())));
        }
        let inv = solve_10(alg, &alg.neg(a), order)?;
        if let Some(k) = first_diff(&left.neg(alg).exp_star(alg)?, &inv) {
            return Ok(Some((k, "exp★ of the negated expansion is not the inverse".into())));
        }
        Ok(None)
    }
}

impl SampledTrial for FerTrial {
    fn run<A: Dendriform>(
        &self,
        alg: &A,
        a: &A::Elem,
        order: usize,
    ) -> Result<Option<(usize, String)>> {
        let factors = fer_factors(alg, a, order)?;
        let word = solve_01(alg, a, order)?;
        if let Some(k) = first_diff(&factors.product(alg)?, &word) {
            return Ok(Some((k, "factored product is not the word solution".into())));
        }
        let inv = solve_10(alg, &alg.neg(a), order)?;
        if let Some(k) = first_diff(&factors.inverse_product(alg)?, &inv) {
            return Ok(Some((k, "reversed negated product is not the inverse".into())));
        }
        Ok(None)
    }
}

impl SampledTrial for DynkinTrial {
    fn run<A: Dendriform>(
        &self,
        alg: &A,
        a: &A::Elem,
        order: usize,
    ) -> Result<Option<(usize, String)>> {
        for n in 1..=order {
            if dynkin_word(alg, a, n)? != prelie_word_left(alg, a, n)? {
                return Ok(Some((n, "alternating word is not the left pre-Lie word".into())));
            }
        }
        let x = solve_dynkin(alg, a, order)?;
        let rhs = rhs_general(
            alg,
            &x,
            &rat_zero(),
            a,
            &[vec![a.clone()]],
            &[vec![alg.neg(a)]],
        )?;
        if let Some(k) = first_diff(&x, &rhs) {
            return Ok(Some((k, "candidate fails X = a + λX⊳a".into())));
        }
        Ok(None)
    }
}

// ---------------------------------------------------------------------------
// Axiom sweeps: dendriform on sampled triples, plus the carrier-level
// operator identities for Rota–Baxter models.
// ---------------------------------------------------------------------------

fn dendriform_triple<A: Dendriform>(
    alg: &A,
    x: &A::Elem,
    y: &A::Elem,
    z: &A::Elem,
) -> Result<Option<String>> {
    let a1_l = alg.prec(&alg.prec(x, y)?, z)?;
    let a1_r = alg.prec(x, &alg.star(y, z)?)?;
    if a1_l != a1_r {
        return Ok(Some("(x≺y)≺z = x≺(y★z)".into()));
    }
    let a2_l = alg.prec(&alg.succ(x, y)?, z)?;
    let a2_r = alg.succ(x, &alg.prec(y, z)?)?;
    if a2_l != a2_r {
        return Ok(Some("(x≻y)≺z = x≻(y≺z)".into()));
    }
    let a3_l = alg.succ(x, &alg.succ(y, z)?)?;
    let a3_r = alg.succ(&alg.star(x, y)?, z)?;
    if a3_l != a3_r {
        return Ok(Some("x≻(y≻z) = (x★y)≻z".into()));
    }
    // unit rules
    let unit = alg.unit();
    if alg.prec(x, &unit)? != *x || alg.succ(&unit, x)? != *x {
        return Ok(Some("a≺1 = a = 1≻a".into()));
    }
    if !alg.is_zero(&alg.prec(&unit, x)?) || !alg.is_zero(&alg.succ(x, &unit)?) {
        return Ok(Some("1≺a = 0 = a≻1".into()));
    }
    // left pre-Lie: associator symmetric in the first two slots
    let assoc_l = |u: &A::Elem, v: &A::Elem, w: &A::Elem| -> Result<A::Elem> {
        Ok(alg.sub(
            &prelie_left(alg, &prelie_left(alg, u, v)?, w)?,
            &prelie_left(alg, u, &prelie_left(alg, v, w)?)?,
        ))
    };
    if assoc_l(x, y, z)? != assoc_l(y, x, z)? {
        return Ok(Some("left pre-Lie identity".into()));
    }
    // right pre-Lie: associator symmetric in the last two slots
    let assoc_r = |u: &A::Elem, v: &A::Elem, w: &A::Elem| -> Result<A::Elem> {
        Ok(alg.sub(
            &prelie_right(alg, &prelie_right(alg, u, v)?, w)?,
            &prelie_right(alg, u, &prelie_right(alg, v, w)?)?,
        ))
    };
    if assoc_r(x, y, z)? != assoc_r(x, z, y)? {
        return Ok(Some("right pre-Lie identity".into()));
    }
    Ok(None)
}

fn carrier_triple<M: RotaBaxter>(
    m: &M,
    x: &M::Carrier,
    y: &M::Carrier,
    z: &M::Carrier,
) -> Option<String> {
    let theta = m.weight();
    // tridendriform axioms for (<, >, •)
    let checks: [(&str, M::Carrier, M::Carrier); 7] = [
        (
            "(x<y)<z = x<(y★z)",
            tri_left(m, &tri_left(m, x, y), z),
            tri_left(m, x, &tri_star(m, y, z)),
        ),
        (
            "(x>y)<z = x>(y<z)",
            tri_left(m, &tri_right(m, x, y), z),
            tri_right(m, x, &tri_left(m, y, z)),
        ),
        (
            "(x★y)>z = x>(y>z)",
            tri_right(m, &tri_star(m, x, y), z),
            tri_right(m, x, &tri_right(m, y, z)),
        ),
        (
            "(x>y)•z = x>(y•z)",
            tri_dot(m, &tri_right(m, x, y), z),
            tri_right(m, x, &tri_dot(m, y, z)),
        ),
        (
            "(x<y)•z = x•(y>z)",
            tri_dot(m, &tri_left(m, x, y), z),
            tri_dot(m, x, &tri_right(m, y, z)),
        ),
        (
            "(x•y)<z = x•(y<z)",
            tri_left(m, &tri_dot(m, x, y), z),
            tri_dot(m, x, &tri_left(m, y, z)),
        ),
        (
            "(x•y)•z = x•(y•z)",
            tri_dot(m, &tri_dot(m, x, y), z),
            tri_dot(m, x, &tri_dot(m, y, z)),
        ),
    ];
    for (name, lhs, rhs) in checks {
        if lhs != rhs {
            return Some(format!("tridendriform {name}"));
        }
    }
    // operator relation for R and for R̃, exhibiting the preimage (image
    // closure under multiplication)
    let inner = |u: &M::Carrier, v: &M::Carrier, ru: &M::Carrier, rv: &M::Carrier| {
        m.cadd(
            &m.cadd(&m.cmul(ru, v), &m.cmul(u, rv)),
            &m.cscale(&theta, &m.cmul(u, v)),
        )
    };
    let (rx, ry) = (m.r_apply(x), m.r_apply(y));
    if m.cmul(&rx, &ry) != m.r_apply(&inner(x, y, &rx, &ry)) {
        return Some("operator relation for R".into());
    }
    let (tx, ty) = (m.r_tilde(x), m.r_tilde(y));
    if m.cmul(&tx, &ty) != m.r_tilde(&inner(x, y, &tx, &ty)) {
        return Some("operator relation for R̃".into());
    }
    // ★ → · homomorphisms
    let star = tri_star(m, x, y);
    if m.r_apply(&star) != m.cmul(&rx, &ry) {
        return Some("R(x★y) = R(x)R(y)".into());
    }
    if m.r_tilde(&star) != m.cneg(&m.cmul(&tx, &ty)) {
        return Some("R̃(x★y) = −R̃(x)R̃(y)".into());
    }
    if m.cscale(&theta, &star) != m.csub(&m.cmul(&tx, &ty), &m.cmul(&rx, &ry)) {
        return Some("θ(x★y) = R̃(x)R̃(y) − R(x)R(y)".into());
    }
    None
}

fn axioms_check(
    model: &ModelChoice,
    order: usize,
    seed: u64,
    trials: usize,
    parallel: bool,
) -> CheckReport {
    let outcomes = match model {
        ModelChoice::Free(k) => {
            let alg = Augmented(FreeAlgebra::with_k_generators(*k));
            run_trials(seed, trials, parallel, |s| {
                let mut rng = SplitMix64::new(s);
                let mut pick = || alg.lift(rng.free_element(alg.body_alg(), 3, 2));
                let (x, y, z) = (pick(), pick(), pick());
                match dendriform_triple(&alg, &x, &y, &z) {
                    Ok(None) => TrialOutcome::pass(s),
                    Ok(Some(which)) => TrialOutcome::fail(s, None, which),
                    Err(e) => TrialOutcome::fail(s, None, e.to_string()),
                }
            })
        }
        ModelChoice::Model(m) => dispatch_model!(m, inner, {
            let alg = rb_algebra(inner.clone());
            run_trials(seed, trials, parallel, |s| {
                let mut rng = SplitMix64::new(s);
                let (cx, cy, cz) = (
                    inner.sample_carrier(&mut rng),
                    inner.sample_carrier(&mut rng),
                    inner.sample_carrier(&mut rng),
                );
                if let Some(which) = carrier_triple(inner, &cx, &cy, &cz) {
                    return TrialOutcome::fail(s, None, which);
                }
                let (x, y, z) = (
                    alg.lift(cx.clone()),
                    alg.lift(cy.clone()),
                    alg.lift(cz.clone()),
                );
                match dendriform_triple(&alg, &x, &y, &z) {
                    Ok(None) => TrialOutcome::pass(s),
                    Ok(Some(which)) => TrialOutcome::fail(s, None, which),
                    Err(e) => TrialOutcome::fail(s, None, e.to_string()),
                }
            })
        }),
    };
    CheckReport::assemble(CheckKind::Axioms, model, order, seed, outcomes)
}

// ---------------------------------------------------------------------------
// Deterministic tree/counting sweep.
// ---------------------------------------------------------------------------

fn trees_check(model: &ModelChoice, order: usize, seed: u64) -> CheckReport {
    let mut failures: Vec<String> = Vec::new();

    // enumerator vs counting recursion
    let upto = order.clamp(1, 13);
    let t = trees::poincare_counts(upto.saturating_sub(1));
    for d in 1..=upto {
        let n = trees::enumerate_e1(d).len() as u128;
        if n != t[d - 1] {
            failures.push(format!("degree-{d} count {n} ≠ recursion value {}", t[d - 1]));
        }
    }

    // weight kernel, both directions, over all planar trees
    for d in 1..=order.clamp(1, 7) {
        for tree in trees::enumerate_all(d) {
            if trees::alpha(&tree).is_zero() == tree.is_restricted() {
                failures.push(format!("weight kernel at {}", tree.to_brackets()));
            }
        }
    }

    // functional equation of the counting series through order 12
    let n = 13usize;
    let counts: Vec<_> = (1..=n).map(|d| rat_int(trees::enumerate_e1(d).len() as i64)).collect();
    let tpoly = Poly::from_coeffs(counts);
    let geom = Poly::from_coeffs(vec![rat_one(); n]);
    let t3 = tpoly.mul(&tpoly).truncate(n - 1).mul(&tpoly).truncate(n - 1);
    if !tpoly
        .sub(&Poly::monomial(2).mul(&t3).truncate(n - 1))
        .sub(&geom)
        .truncate(n - 1)
        .is_zero()
    {
        failures.push("counting series fails T − z²T³ = 1/(1−z)".into());
    }
    let w = Poly::monomial(1).mul(&tpoly).truncate(n - 1);
    let w3 = w.mul(&w).truncate(n - 1).mul(&w).truncate(n - 1);
    if !w
        .sub(&w3)
        .sub(&Poly::monomial(1).mul(&geom).truncate(n - 1))
        .truncate(n - 1)
        .is_zero()
    {
        failures.push("counting series fails W − W³ = z/(1−z)".into());
    }

    // tree-sum form of the expansion against the recursion
    let tree_order = order.min(8);
    let alg = Augmented(FreeAlgebra::with_k_generators(1));
    let a = alg.lift(alg.body_alg().generator(0));
    match (
        trees::butcher_omega(&alg, &a, tree_order),
        magnus_omega(&alg, &a, tree_order, MagnusForm::Left),
    ) {
        (Ok(b), Ok(m)) => {
            if let Some(k) = first_diff(&b, &m.omega) {
                failures.push(format!("tree sum ≠ recursion at λ^{k}"));
            }
        }
        (b, m) => failures.push(format!("tree sum error: {:?} / {:?}", b.err(), m.err())),
    }

    let outcome = if failures.is_empty() {
        TrialOutcome::pass(seed)
    } else {
        TrialOutcome::fail(seed, None, failures.join("; "))
    };
    CheckReport::assemble(CheckKind::Trees, model, order, seed, vec![outcome])
}

// ---------------------------------------------------------------------------
// Model-specific sweeps.
// ---------------------------------------------------------------------------

fn require_model<'m>(model: &'m ModelChoice, check: &str) -> Result<&'m RbModel> {
    match model {
        ModelChoice::Model(m) => Ok(m),
        ModelChoice::Free(_) => Err(DendError::ShapeError(format!(
            "check `{check}` needs a Rota–Baxter model, not the free algebra"
        ))),
    }
}

fn vogel_check(
    model: &ModelChoice,
    order: usize,
    seed: u64,
    trials: usize,
    parallel: bool,
) -> Result<CheckReport> {
    let rb = require_model(model, "vogel")?;
    let outcomes = dispatch_model!(rb, inner, {
        let closed_applies = inner.is_commutative() && !inner.weight().is_zero();
        let alg = rb_algebra(inner.clone());
        run_trials(seed, trials, parallel, |s| {
            let mut rng = SplitMix64::new(s);
            let a = inner.sample_carrier(&mut rng);
            let b = inner.sample_carrier(&mut rng);
            let c = inner.sample_carrier(&mut rng);
            let work = || -> Result<Option<(usize, String)>> {
                let x = vogel_dendriform(inner, &a, &b, &c, order)?;
                let rhs = rhs_general(
                    &alg,
                    &x,
                    &rat_zero(),
                    &alg.lift(a.clone()),
                    &[vec![alg.lift(b.clone())]],
                    &[vec![alg.neg(&alg.lift(c.clone()))]],
                )?;
                if let Some(k) = first_diff(&x, &rhs) {
                    return Ok(Some((k, "solution fails its equation".into())));
                }
                if closed_applies {
                    let closed = vogel_closed_form(inner, &a, &b, &c, order)?;
                    if let Some(k) = first_diff(&x, &closed) {
                        return Ok(Some((k, "solver and closed form disagree".into())));
                    }
                    let omega = magnus_omega(&alg, &alg.lift(a.clone()), order, MagnusForm::Left)?;
                    let log_form = commutative_log_omega(inner, &a, order)?;
                    if let Some(k) = first_diff(&omega.omega, &log_form) {
                        return Ok(Some((k, "expansion is not −log(1−λθa)/θ".into())));
                    }
                }
                Ok(None)
            };
            TrialOutcome::from_result(s, work())
        })
    });
    Ok(CheckReport::assemble(CheckKind::Vogel, model, order, seed, outcomes))
}

fn riccati_check(
    model: &ModelChoice,
    order: usize,
    seed: u64,
    trials: usize,
    parallel: bool,
) -> Result<CheckReport> {
    let rb = require_model(model, "riccati")?;
    let scalar = match rb {
        RbModel::PolyRiemann(m) if m.czero().dim() == 1 => m.clone(),
        _ => {
            return Err(DendError::ShapeError(
                "check `riccati` runs over poly-riemann:n=1".into(),
            ))
        }
    };
    const X_BOUND: usize = 12;
    let outcomes = run_trials(seed, trials, parallel, move |s| {
        let mut rng = SplitMix64::new(s);
        let mut pick = || scalar.sample_carrier(&mut rng).get(0, 0).clone();
        let a = pick();
        let mut b = pick();
        if b.coeff(0).is_zero() {
            b = b.add(&Poly::one());
        }
        let c = pick();
        match riccati_residual(&a, &b, &c, order, X_BOUND) {
            Ok(report) => match report.first_failure() {
                None => TrialOutcome::pass(s),
                Some(k) => TrialOutcome::fail(
                    s,
                    Some(k),
                    format!("nonzero ODE residual (x-degree bound {})", report.x_bound),
                ),
            },
            Err(e) => TrialOutcome::fail(s, None, e.to_string()),
        }
    });
    Ok(CheckReport::assemble(CheckKind::Riccati, model, order, seed, outcomes))
}

fn ivp_check(
    model: &ModelChoice,
    order: usize,
    seed: u64,
    trials: usize,
    parallel: bool,
) -> Result<CheckReport> {
    let rb = require_model(model, "ivp")?;
    let mats = match rb {
        RbModel::PolyRiemann(m) => m.clone(),
        _ => {
            return Err(DendError::ShapeError(
                "check `ivp` runs over a poly-riemann model".into(),
            ))
        }
    };
    let outcomes = run_trials(seed, trials, parallel, move |s| {
        let mut rng = SplitMix64::new(s);
        let b = mats.sample_carrier(&mut rng);
        let c = mats.sample_carrier(&mut rng);
        let work = || -> Result<Option<(usize, String)>> {
            let report = ivp_correspondence(&mats, &b, &c, order)?;
            if let Some(k) = report.derivative_failure {
                return Ok(Some((k, "differentiation does not undo R".into())));
            }
            if let Some(k) = report.ode_failure {
                return Ok(Some((k, "Y = I + λR(X) fails the matrix ODE".into())));
            }
            let one_sided = ivp_correspondence(&mats, &b, &mats.czero(), order)?;
            let oracle = time_ordered_exp(&mats, &b, order);
            if let Some(k) = (0..=order).find(|&k| one_sided.y[k] != oracle[k]) {
                return Ok(Some((k, "one-sided case differs from iterated integrals".into())));
            }
            Ok(None)
        };
        TrialOutcome::from_result(s, work())
    });
    Ok(CheckReport::assemble(CheckKind::Ivp, model, order, seed, outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(kind: &str, model: &str, order: usize, trials: usize) -> CheckReport {
        run_check(
            CheckKind::parse(kind).unwrap(),
            &ModelChoice::parse(model).unwrap(),
            order,
            1,
            trials,
            false,
        )
        .unwrap()
    }

    #[test]
    fn all_sweeps_pass_on_small_instances() {
        for (kind, model, order, trials) in [
            ("magnus", "free:2", 5, 2),
            ("magnus", "seq:L=5,theta=1", 5, 2),
            ("fer", "qsum:q=1/2", 5, 2),
            ("dynkin", "free:1", 6, 2),
            ("dynkin", "tri:n=2", 6, 2),
            ("axioms", "free:3", 4, 5),
            ("axioms", "poly-riemann:n=2", 4, 5),
            ("axioms", "seq:L=4,theta=-1", 4, 5),
            ("vogel", "seq:L=5,theta=1/2", 5, 2),
            ("vogel", "tri:n=2", 4, 2),
            ("riccati", "poly-riemann:n=1", 4, 2),
            ("ivp", "poly-riemann:n=2", 4, 2),
            ("trees", "free:1", 6, 1),
        ] {
            let report = run(kind, model, order, trials);
            assert!(report.passed, "{kind} over {model}: {:?}", report.trials);
            assert_eq!(report.trials.len(), if kind == "trees" { 1 } else { trials });
        }
    }

    #[test]
    fn parallel_and_sequential_reports_match() {
        let kind = CheckKind::parse("magnus").unwrap();
        let model = ModelChoice::parse("seq:L=4,theta=1").unwrap();
        let seq = run_check(kind, &model, 4, 9, 4, false).unwrap();
        let par = run_check(kind, &model, 4, 9, 4, true).unwrap();
        assert_eq!(serde_json::to_string(&seq).unwrap(), serde_json::to_string(&par).unwrap());
    }

    #[test]
    fn model_choice_parsing() {
        assert_eq!(ModelChoice::parse("free").unwrap().name(), "free:1");
        assert_eq!(ModelChoice::parse("free:3").unwrap().name(), "free:3");
        assert_eq!(
            ModelChoice::parse("seq:L=4,theta=1/2").unwrap().name(),
            "seq:L=4,theta=1/2"
        );
        assert!(ModelChoice::parse("free:0").is_err());
        assert!(ModelChoice::parse("nope").is_err());
        assert!(CheckKind::parse("nope").is_err());
    }

    #[test]
    fn misapplied_checks_are_rejected() {
        let free = ModelChoice::parse("free:1").unwrap();
        for kind in ["vogel", "riccati", "ivp"] {
            let err = run_check(CheckKind::parse(kind).unwrap(), &free, 4, 1, 1, false)
                .unwrap_err();
            assert!(matches!(err, DendError::ShapeError(_)), "{kind}");
        }
        let seq = ModelChoice::parse("seq:L=4,theta=1").unwrap();
        assert!(run_check(CheckKind::Riccati, &seq, 4, 1, 1, false).is_err());
        assert!(run_check(CheckKind::Ivp, &seq, 4, 1, 1, false).is_err());
    }
}
