//! End-to-end identities connecting the series solvers to classical
//! operator calculus: a two-sided linear fixed-point equation with a
//! commutative closed form, the reduction of a second-order linear ODE
//! out of a degree-(2,0) equation, and the correspondence between the
//! (1,1) equation and a matrix initial-value problem.
//!
//! Everything here is a *verification bridge*: each function computes the
//! same object along two independent routes (dendriform solver vs.
//! exp/log closed form, solver-plus-integration vs. symbolic
//! differentiation, convolution recursion vs. time-ordered iteration)
//! and the callers compare. All series arithmetic runs in the unitized
//! carrier ring, never through floating point.

use crate::dendriform::{Aug, Dendriform};
use crate::error::{DendError, Result};
use crate::poly::Poly;
use crate::rational::{rat_one, rat_zero, Rational};
use crate::rb::{
    r_ext, r_tilde_ext, rb_algebra, ring_add, ring_scale, ring_series_exp, ring_series_log,
    ring_series_mul, ring_zero, Mat, PolyRiemann, RotaBaxter,
};
use crate::series::Series;
use crate::solvers::{solve_11, solve_m0};
use num::Zero;

// ---------------------------------------------------------------------------
// The two-sided equation X = a + λ R(X)·b + λ c·R̃(X) and its commutative
// closed form.
// ---------------------------------------------------------------------------

/// Solve `X = a + λR(X)b + λcR̃(X)` in any Rota–Baxter model via the
/// induced dendriform products: `R(X)b = X≻b` and `cR̃(X) = −c≺X`, so
/// the equation is the two-sided `(1,1)` case with left coefficient `−c`.
pub fn vogel_dendriform<M: RotaBaxter>(
    model: &M,
    a: &M::Carrier,
    b: &M::Carrier,
    c: &M::Carrier,
    order: usize,
) -> Result<Series<Aug<M::Carrier>>> {
    let alg = rb_algebra(model.clone());
    let h = alg.lift(a.clone());
    let bb = alg.lift(b.clone());
    let cc = alg.neg(&alg.lift(c.clone()));
    solve_11(&alg, &rat_zero(), &h, &bb, &cc, order)
}

/// Closed form of the same solution in a commutative model of nonzero
/// weight θ, assembled from exp/log series in the unitized carrier ring.
///
/// With `Λ_u := θ⁻¹·log(1 + λθu)` and `α := Λ_b − Λ_c`, set
/// `E := exp(R(Λ_c) + R̃(Λ_b))`, `C := exp(R(α))·R(aE)` and
/// `B := exp(−R̃(α))·R̃(aE)`. Then `R(X) = C` and `R̃(X) = B`, and since
/// `R + R̃ = −θ·id` the solution itself is `X = −(B + C)/θ`.
pub fn vogel_closed_form<M: RotaBaxter>(
    model: &M,
    a: &M::Carrier,
    b: &M::Carrier,
    c: &M::Carrier,
    order: usize,
) -> Result<Series<Aug<M::Carrier>>> {
    let theta = model.weight();
    if !model.is_commutative() || theta.is_zero() {
        return Err(DendError::NonCommutativeModel);
    }
    let m = model;
    let n = order + 1;

    let log_one_plus = |u: &M::Carrier| -> Result<Vec<Aug<M::Carrier>>> {
        // Λ_u = θ⁻¹ log(1 + λθu)
        let mut s = vec![ring_zero(m); n];
        s[0] = Aug::with_unit(rat_one(), m.czero());
        if n > 1 {
            s[1] = Aug::body(m.cscale(&theta, u));
        }
        let inv = rat_one() / theta.clone();
        Ok(series_scale(m, &inv, &ring_series_log(m, &s)?))
    };
    let lam_b = log_one_plus(b)?;
    let lam_c = log_one_plus(c)?;
    let alpha = series_sub(m, &lam_b, &lam_c);

    let e = ring_series_exp(
        m,
        &series_add(m, &series_map(m, &lam_c, r_ext), &series_map(m, &lam_b, r_tilde_ext)),
    )?;
    let a_e = {
        let mut s = vec![ring_zero(m); n];
        s[0] = Aug::body(a.clone());
        ring_series_mul(m, &s, &e)
    };

    let big_c = ring_series_mul(
        m,
        &ring_series_exp(m, &series_map(m, &alpha, r_ext))?,
        &series_map(m, &a_e, r_ext),
    );
    let big_b = ring_series_mul(
        m,
        &ring_series_exp(m, &series_neg(m, &series_map(m, &alpha, r_tilde_ext)))?,
        &series_map(m, &a_e, r_tilde_ext),
    );

    let minus_inv_theta = -(rat_one() / theta);
    let x = series_scale(m, &minus_inv_theta, &series_add(m, &big_b, &big_c));
    debug_assert!(x.iter().all(|t| !t.has_unit_part()));
    Ok(Series::from_coeffs(x))
}

/// Both routes for `X = a + λR(X)b + λcR̃(X)`; the pair is equal
/// coefficientwise in every commutative model of nonzero weight.
pub fn vogel_solve<M: RotaBaxter>(
    model: &M,
    a: &M::Carrier,
    b: &M::Carrier,
    c: &M::Carrier,
    order: usize,
) -> Result<(Series<Aug<M::Carrier>>, Series<Aug<M::Carrier>>)> {
    Ok((
        vogel_dendriform(model, a, b, c, order)?,
        vogel_closed_form(model, a, b, c, order)?,
    ))
}

/// Closed form of the expansion logarithm in a commutative model of
/// nonzero weight: `Ω′(λa) = −θ⁻¹·log(1 − λθa)`, i.e. coefficient
/// `θ^{n−1}aⁿ/n` at `λⁿ`.
pub fn commutative_log_omega<M: RotaBaxter>(
    model: &M,
    a: &M::Carrier,
    order: usize,
) -> Result<Series<Aug<M::Carrier>>> {
    let theta = model.weight();
    if !model.is_commutative() || theta.is_zero() {
        return Err(DendError::NonCommutativeModel);
    }
    let n = order + 1;
    let mut s = vec![ring_zero(model); n];
    s[0] = Aug::with_unit(rat_one(), model.czero());
    if n > 1 {
        s[1] = Aug::body(model.cscale(&-theta.clone(), a));
    }
    let minus_inv_theta = -(rat_one() / theta);
    Ok(Series::from_coeffs(series_scale(
        model,
        &minus_inv_theta,
        &ring_series_log(model, &s)?,
    )))
}

fn series_map<M: RotaBaxter>(
    m: &M,
    xs: &[Aug<M::Carrier>],
    f: fn(&M, &Aug<M::Carrier>) -> Aug<M::Carrier>,
) -> Vec<Aug<M::Carrier>> {
    xs.iter().map(|x| f(m, x)).collect()
}

fn series_add<M: RotaBaxter>(
    m: &M,
    xs: &[Aug<M::Carrier>],
    ys: &[Aug<M::Carrier>],
) -> Vec<Aug<M::Carrier>> {
    xs.iter().zip(ys).map(|(x, y)| ring_add(m, x, y)).collect()
}

fn series_neg<M: RotaBaxter>(m: &M, xs: &[Aug<M::Carrier>]) -> Vec<Aug<M::Carrier>> {
    series_scale(m, &-rat_one(), xs)
}

fn series_sub<M: RotaBaxter>(
    m: &M,
    xs: &[Aug<M::Carrier>],
    ys: &[Aug<M::Carrier>],
) -> Vec<Aug<M::Carrier>> {
    series_add(m, xs, &series_neg(m, ys))
}

fn series_scale<M: RotaBaxter>(
    m: &M,
    c: &Rational,
    xs: &[Aug<M::Carrier>],
) -> Vec<Aug<M::Carrier>> {
    xs.iter().map(|x| ring_scale(m, c, x)).collect()
}

// ---------------------------------------------------------------------------
// Second-order linear ODE out of the degree-(2,0) equation.
// ---------------------------------------------------------------------------

/// Outcome of the ODE reduction: the integrated solution `y = R(X)` as a
/// λ-series of polynomials and the left side of
///
/// ```text
/// b·ÿ − (ḃ + λbc)·ẏ − (λ(c/b)′ + λ²a)·b²·y
/// ```
///
/// with `(c/b)` computed as a truncated power-series quotient in `x` up
/// to degree `x_bound`. The residual is therefore meaningful (and
/// expected to vanish) through `x`-degree `x_bound − 1`, to which it is
/// truncated.
#[derive(Clone, Debug)]
pub struct RiccatiReport {
    pub y: Vec<Poly>,
    pub residual: Vec<Poly>,
    pub x_bound: usize,
}

impl RiccatiReport {
    /// First λ-order with a nonzero residual, if any.
    pub fn first_failure(&self) -> Option<usize> {
        self.residual.iter().position(|p| !p.is_zero())
    }
}

/// Solve `X = 1 + λ X≻c + λ²(X≻a)≻b` over the scalar
/// integration-operator model, set `y := R(X)` (with `R` fixing the
/// formal unit, so `y₀ = 1`), and substitute into the second-order ODE
/// above. `b` must have a nonzero constant term for the quotient.
pub fn riccati_residual(
    a: &Poly,
    b: &Poly,
    c: &Poly,
    order: usize,
    x_bound: usize,
) -> Result<RiccatiReport> {
    if b.coeff(0).is_zero() {
        return Err(DendError::ZeroLeadingCoefficient(
            "the λ² coefficient needs a nonzero constant term",
        ));
    }
    let model = PolyRiemann::new(1);
    let alg = rb_algebra(model);
    let scalar = |p: &Poly| -> Aug<Mat<Poly>> {
        let mut m = Mat::zero(1);
        m.set(0, 0, p.clone());
        Aug::body(m)
    };
    let rows = vec![vec![scalar(c)], vec![scalar(a), scalar(b)]];
    let x = solve_m0(&alg, &rat_one(), &alg.zero(), &rows, order)?;

    // y = R(X): formal unit ↦ 1, body ↦ entrywise integral
    let y: Vec<Poly> = x
        .coeffs()
        .iter()
        .map(|co| {
            let mut p = co.body.get(0, 0).integrate();
            if !co.unit_coeff.is_zero() {
                p = p.add(&Poly::constant(co.unit_coeff.clone()));
            }
            p
        })
        .collect();
    let yd: Vec<Poly> = y.iter().map(Poly::derive).collect();
    let ydd: Vec<Poly> = yd.iter().map(Poly::derive).collect();

    let bd = b.derive();
    let bc = b.mul(c);
    let b2 = b.mul(b);
    // (c/b)′ from the truncated quotient: trustworthy through degree
    // x_bound − 1 after differentiation
    let qd = c.div_truncated(b, x_bound)?.derive();

    let mut residual = Vec::with_capacity(order + 1);
    for n in 0..=order {
        let mut r = b.mul(&ydd[n]).sub(&bd.mul(&yd[n]));
        if n >= 1 {
            r = r.sub(&bc.mul(&yd[n - 1]));
            r = r.sub(&qd.mul(&b2).mul(&y[n - 1]));
        }
        if n >= 2 {
            r = r.sub(&a.mul(&b2).mul(&y[n - 2]));
        }
        residual.push(r.truncate(x_bound - 1));
    }
    Ok(RiccatiReport { y, residual, x_bound })
}

// ---------------------------------------------------------------------------
// Matrix initial-value problem through the (1,1) equation.
// ---------------------------------------------------------------------------

/// Outcome of the IVP correspondence: the solution coefficients
/// `Y = I + λR(X)` and the first λ-order (if any) at which either the
/// `∂∘R = id` check or the graded ODE `Ẏ = λ(YB − CY)` fails.
#[derive(Clone, Debug)]
pub struct IvpReport {
    pub x: Series<Aug<Mat<Poly>>>,
    pub y: Vec<Mat<Poly>>,
    pub derivative_failure: Option<usize>,
    pub ode_failure: Option<usize>,
}

impl IvpReport {
    pub fn passed(&self) -> bool {
        self.derivative_failure.is_none() && self.ode_failure.is_none()
    }
}

fn derive_mat(m: &Mat<Poly>) -> Mat<Poly> {
    m.map(|_, _, p| p.derive())
}

/// Solve `X = A + λX≻B − λC≺X` with `A = B − C` (the value of
/// `Y₀B − CY₀` at `Y₀ = I`) over the matrix integration model, then
/// check gradewise that `Y := I + λR(X)` satisfies `Ẏ = λ(YB − CY)` and
/// that differentiation undoes `R` on every coefficient.
pub fn ivp_correspondence(
    model: &PolyRiemann,
    b: &Mat<Poly>,
    c: &Mat<Poly>,
    order: usize,
) -> Result<IvpReport> {
    let n = model.czero().dim();
    if b.dim() != n || c.dim() != n {
        return Err(DendError::ShapeError(format!(
            "coefficient matrices are {}×{} and {}×{}, model wants {n}×{n}",
            b.dim(),
            b.dim(),
            c.dim(),
            c.dim()
        )));
    }
    let alg = rb_algebra(model.clone());
    let a = b.add(&c.neg());
    let x = solve_11(
        &alg,
        &rat_zero(),
        &alg.lift(a),
        &alg.lift(b.clone()),
        &alg.neg(&alg.lift(c.clone())),
        order,
    )?;

    // Y₀ = I, Y_{k+1} = R(X_k)
    let mut y = vec![Mat::identity(n)];
    for k in 0..order {
        debug_assert!(!x.coeff(k).has_unit_part());
        y.push(model.r_apply(&x.coeff(k).body));
    }

    let mut derivative_failure = None;
    for k in 0..=order {
        if derive_mat(&model.r_apply(&x.coeff(k).body)) != x.coeff(k).body {
            derivative_failure = Some(k);
            break;
        }
    }
    let mut ode_failure = None;
    for k in 1..=order {
        let rhs = y[k - 1].mul(b).add(&c.mul(&y[k - 1]).neg());
        if derive_mat(&y[k]) != rhs {
            ode_failure = Some(k);
            break;
        }
    }
    Ok(IvpReport { x, y, derivative_failure, ode_failure })
}

/// Iterated-integral oracle for the one-sided case: `T₀ = I`,
/// `T_k = R(T_{k−1}·B)`. With `C = 0` the IVP coefficients `Y_k` equal
/// `T_k` by construction of the convolution recursion — but this loop
/// never touches the solver, which is the point.
pub fn time_ordered_exp(model: &PolyRiemann, b: &Mat<Poly>, order: usize) -> Vec<Mat<Poly>> {
    let n = model.czero().dim();
    let mut out = vec![Mat::identity(n)];
    for k in 1..=order {
        out.push(model.r_apply(&out[k - 1].mul(b)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};
    use crate::rb::{QSummation, SeqPartialSum, TriangularSplit};
    use crate::rng::SplitMix64;
    use crate::solvers::rhs_general;

    #[test]
    fn vogel_routes_agree_in_commutative_models() {
        for (theta, seed) in [(rat_int(1), 101u64), (rat_int(-1), 102), (rat(1, 2), 103)] {
            let model = SeqPartialSum::new(6, theta);
            let mut rng = SplitMix64::new(seed);
            for _ in 0..3 {
                let a = model.sample_carrier(&mut rng);
                let b = model.sample_carrier(&mut rng);
                let c = model.sample_carrier(&mut rng);
                let (dend, closed) = vogel_solve(&model, &a, &b, &c, 6).unwrap();
                assert_eq!(dend, closed, "theta = {}", model.weight());
                assert_eq!(dend.coeff(0), &Aug::body(a));
            }
        }
        // a second commutative carrier, weight −1, no carrier unit needed
        let model = QSummation::new(rat(1, 2)).unwrap();
        let mut rng = SplitMix64::new(104);
        for _ in 0..3 {
            let a = model.sample_carrier(&mut rng);
            let b = model.sample_carrier(&mut rng);
            let c = model.sample_carrier(&mut rng);
            let (dend, closed) = vogel_solve(&model, &a, &b, &c, 5).unwrap();
            assert_eq!(dend, closed);
        }
    }

    #[test]
    fn vogel_zero_input_solves_to_zero() {
        let model = SeqPartialSum::new(5, rat_int(1));
        let mut rng = SplitMix64::new(7);
        let b = model.sample_carrier(&mut rng);
        let c = model.sample_carrier(&mut rng);
        let (dend, closed) = vogel_solve(&model, &model.czero(), &b, &c, 5).unwrap();
        let alg = rb_algebra(model);
        assert!(dend.is_zero(&alg));
        assert!(closed.is_zero(&alg));
    }

    #[test]
    fn vogel_dendriform_branch_satisfies_equation_in_any_model() {
        let model = TriangularSplit::new(3);
        let alg = rb_algebra(model.clone());
        let mut rng = SplitMix64::new(40);
        let a = model.sample_carrier(&mut rng);
        let b = model.sample_carrier(&mut rng);
        let c = model.sample_carrier(&mut rng);
        let x = vogel_dendriform(&model, &a, &b, &c, 5).unwrap();
        let rhs = rhs_general(
            &alg,
            &x,
            &rat_zero(),
            &alg.lift(a.clone()),
            &[vec![alg.lift(b.clone())]],
            &[vec![alg.neg(&alg.lift(c.clone()))]],
        )
        .unwrap();
        assert_eq!(x, rhs);
        // but the closed form refuses: noncommutative carrier
        assert_eq!(
            vogel_closed_form(&model, &a, &b, &c, 5).unwrap_err(),
            DendError::NonCommutativeModel
        );
        // ... and so does a commutative model of weight zero
        let flat = PolyRiemann::new(1);
        let p = flat.sample_carrier(&mut SplitMix64::new(3));
        assert_eq!(
            vogel_closed_form(&flat, &p, &p, &p, 4).unwrap_err(),
            DendError::NonCommutativeModel
        );
    }

    #[test]
    fn commutative_log_form_of_the_expansion() {
        use crate::magnus::{magnus_omega, MagnusForm};
        for theta in [rat_int(1), rat_int(-1), rat(1, 2)] {
            let model = SeqPartialSum::new(6, theta);
            let alg = rb_algebra(model.clone());
            let mut rng = SplitMix64::new(9);
            let a = model.sample_carrier(&mut rng);
            let omega = magnus_omega(&alg, &alg.lift(a.clone()), 6, MagnusForm::Left)
                .unwrap()
                .omega;
            assert_eq!(omega, commutative_log_omega(&model, &a, 6).unwrap());
        }
    }

    fn scalar_poly(model: &PolyRiemann, rng: &mut SplitMix64) -> Poly {
        model.sample_carrier(rng).get(0, 0).clone()
    }

    #[test]
    fn riccati_residual_vanishes_for_seeded_inputs() {
        let model = PolyRiemann::new(1);
        for seed in [1u64, 2, 3] {
            let mut rng = SplitMix64::new(seed);
            let a = scalar_poly(&model, &mut rng);
            let mut b = scalar_poly(&model, &mut rng);
            if b.coeff(0).is_zero() {
                b = b.add(&Poly::one());
            }
            let c = scalar_poly(&model, &mut rng);
            let report = riccati_residual(&a, &b, &c, 5, 12).unwrap();
            assert_eq!(report.first_failure(), None, "seed {seed}");
            assert_eq!(report.x_bound, 12);
            assert_eq!(report.y[0], Poly::one());
        }
    }

    #[test]
    fn riccati_plain_second_derivative_case() {
        // b = 1, c = 0: the ODE collapses to ÿ = λ²·a·y
        let mut rng = SplitMix64::new(77);
        let a = scalar_poly(&PolyRiemann::new(1), &mut rng);
        let report = riccati_residual(&a, &Poly::one(), &Poly::zero(), 4, 12).unwrap();
        assert_eq!(report.first_failure(), None);
        for n in 0..=4usize {
            let ydd = report.y[n].derive().derive();
            let rhs = if n >= 2 { a.mul(&report.y[n - 2]) } else { Poly::zero() };
            assert_eq!(ydd.truncate(11), rhs.truncate(11));
        }
    }

    #[test]
    fn riccati_requires_invertible_leading_coefficient() {
        let err = riccati_residual(&Poly::one(), &Poly::monomial(1), &Poly::one(), 3, 12)
            .unwrap_err();
        assert!(matches!(err, DendError::ZeroLeadingCoefficient(_)));
    }

    #[test]
    fn ivp_solution_satisfies_the_matrix_ode() {
        let model = PolyRiemann::new(2);
        for seed in [11u64, 12] {
            let mut rng = SplitMix64::new(seed);
            let b = model.sample_carrier(&mut rng);
            let c = model.sample_carrier(&mut rng);
            let report = ivp_correspondence(&model, &b, &c, 5).unwrap();
            assert!(report.passed(), "seed {seed}: {:?}", (report.derivative_failure, report.ode_failure));
            assert_eq!(report.y[0], Mat::identity(2));
        }
    }

    #[test]
    fn ivp_one_sided_case_is_the_iterated_integral() {
        let model = PolyRiemann::new(2);
        let mut rng = SplitMix64::new(21);
        let b = model.sample_carrier(&mut rng);
        let zero = model.czero();
        let report = ivp_correspondence(&model, &b, &zero, 6).unwrap();
        assert!(report.passed());
        assert_eq!(report.y, time_ordered_exp(&model, &b, 6));
    }

    #[test]
    fn ivp_nilpotent_constant_coefficient_exponentiates() {
        // B constant with B² = 0: Y = I + λxB on the nose
        let model = PolyRiemann::new(2);
        let mut b = model.czero();
        b.set(0, 1, Poly::one());
        let report = ivp_correspondence(&model, &b, &model.czero(), 3).unwrap();
        assert!(report.passed());
        let xb = b.map(|_, _, p| p.mul(&Poly::monomial(1)));
        assert_eq!(report.y[1], xb);
        assert!(report.y[2].is_zero_mat());
        assert!(report.y[3].is_zero_mat());
    }

    #[test]
    fn ivp_identical_scalar_coefficients_cancel() {
        let model = PolyRiemann::new(1);
        let mut rng = SplitMix64::new(5);
        let b = model.sample_carrier(&mut rng);
        let report = ivp_correspondence(&model, &b, &b, 4).unwrap();
        assert!(report.passed());
        let alg = rb_algebra(model.clone());
        assert!(report.x.is_zero(&alg));
        for k in 1..=4 {
            assert!(report.y[k].is_zero_mat());
        }
    }

    #[test]
    fn ivp_rejects_mismatched_shapes() {
        let model = PolyRiemann::new(2);
        let b = model.czero();
        let c = PolyRiemann::new(3).czero();
        assert!(matches!(
            ivp_correspondence(&model, &b, &c, 3).unwrap_err(),
            DendError::ShapeError(_)
        ));
    }
}
