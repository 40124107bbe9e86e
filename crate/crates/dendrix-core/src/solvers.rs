//! Closed-form series solutions of linear dendriform fixed-point equations.
//!
//! The general equation handled here, for an unknown λ-series `X`, is
//!
//! ```text
//! X = a₀₀ + Σ_{q=1}^{m} λ^q ((X ≻ b_q1) ≻ b_q2) ≻ … ≻ b_qq
//!         + Σ_{q=1}^{n} λ^q  c_q1 ≺ (c_q2 ≺ ( … ≺ (c_qq ≺ X)))
//! ```
//!
//! with unit-free coefficient elements `b_qj`, `c_qj` and a head
//! `a₀₀ = α·1 + h` split into its unit multiple and a unit-free part.
//! Supported shapes: pure right-handed `(m, 0)` for any `m ≥ 1`, pure
//! left-handed `(0, n)` (reduced to the former in the opposite algebra
//! with reversed coefficient rows), the two-sided degree `(1, 1)`, and
//! the pre-Lie equation `X = a₀₀ + λ X ⊳ b`, which is `(1, 1)` with
//! `c = −b`.
//!
//! Strategy: the elementary unit-head equations have word solutions
//! (coefficients are iterated one-sided products), arbitrary heads are
//! handled by a conjugation formula, and degree `(m, 0)` is embedded
//! into degree `(1, 0)` over the matrix algebra of a companion matrix,
//! the scalar solution reappearing as the corner entry of the matrix
//! solution. Every solver here is deterministic and closed-form;
//! [`fixed_point_solve`] provides the independent dumb path (iterate the
//! equation to λ-adic convergence) that the tests and the verification
//! sweeps compare against.

use crate::dendriform::{Dendriform, Opposite};
use crate::error::{DendError, Result};
use crate::matrix::{series_entry, MatrixAlg, SqMat};
use crate::rational::{rat_int, Rational};
use crate::series::Series;

/// Solve `X = RHS(X)` by iteration from the zero series. The map must be
/// a λ-adic contraction (every occurrence of `X` on the right sits under
/// at least one power of λ); coefficient `k` is then fixed after `k + 1`
/// passes. A final pass double-checks stabilization.
pub fn fixed_point_solve<A, F>(alg: &A, order: usize, rhs: F) -> Result<Series<A::Elem>>
where
    A: Dendriform,
    F: Fn(&Series<A::Elem>) -> Result<Series<A::Elem>>,
{
    let mut x = Series::zero(alg, order);
    for _ in 0..=order {
        x = rhs(&x)?;
    }
    if rhs(&x)? != x {
        return Err(DendError::VerificationFailure {
            order,
            check: "fixed-point iteration did not stabilize".into(),
        });
    }
    Ok(x)
}

/// `X = 1 + λ c ≺ X`; coefficients are the right-nested `≺` words of `c`.
pub fn solve_01<A: Dendriform>(alg: &A, c: &A::Elem, order: usize) -> Result<Series<A::Elem>> {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(alg.unit());
    for k in 1..=order {
        let next = alg.prec(c, &coeffs[k - 1])?;
        coeffs.push(next);
    }
    Ok(Series::from_coeffs(coeffs))
}

/// `X = 1 + λ X ≻ b`; coefficients are the left-nested `≻` words of `b`.
pub fn solve_10<A: Dendriform>(alg: &A, b: &A::Elem, order: usize) -> Result<Series<A::Elem>> {
    let mut coeffs = Vec::with_capacity(order + 1);
    coeffs.push(alg.unit());
    for k in 1..=order {
        let next = alg.succ(&coeffs[k - 1], b)?;
        coeffs.push(next);
    }
    Ok(Series::from_coeffs(coeffs))
}

fn head_series<A: Dendriform>(
    alg: &A,
    order: usize,
    alpha: &Rational,
    h: &A::Elem,
) -> Series<A::Elem> {
    let head = alg.add(&alg.scale(alpha, &alg.unit()), h);
    Series::constant(alg, order, head)
}

/// `X = α·1 + h + λ c ≺ X` via `X = α·Y + Y ★ (Y⁻¹ ≻ h)` with
/// `Y = solve_01(c)`.
pub fn solve_left_head<A: Dendriform>(
    alg: &A,
    alpha: &Rational,
    h: &A::Elem,
    c: &A::Elem,
    order: usize,
) -> Result<Series<A::Elem>> {
    let y = solve_01(alg, c, order)?;
    let mut x = y.scale(alg, alpha);
    if !alg.is_zero(h) {
        let y_inv = solve_10(alg, &alg.neg(c), order)?;
        let hs = Series::constant(alg, order, h.clone());
        let t = y.star(alg, &y_inv.succ(alg, &hs)?)?;
        x = x.add(alg, &t)?;
    }
    Ok(x)
}

/// `X = α·1 + h + λ X ≻ b` via `X = α·Z + (h ≺ Z⁻¹) ★ Z` with
/// `Z = solve_10(b)`.
pub fn solve_right_head<A: Dendriform>(
    alg: &A,
    alpha: &Rational,
    h: &A::Elem,
    b: &A::Elem,
    order: usize,
) -> Result<Series<A::Elem>> {
    let z = solve_10(alg, b, order)?;
    let mut x = z.scale(alg, alpha);
    if !alg.is_zero(h) {
        let z_inv = solve_01(alg, &alg.neg(b), order)?;
        let hs = Series::constant(alg, order, h.clone());
        let t = hs.prec(alg, &z_inv)?.star(alg, &z)?;
        x = x.add(alg, &t)?;
    }
    Ok(x)
}

/// Two-sided `X = α·1 + h + λ X ≻ b + λ c ≺ X` via
/// `X = α·(Y ★ Z) + Y ★ (Y⁻¹ ≻ h ≺ Z⁻¹) ★ Z` with `Y = solve_01(c)`,
/// `Z = solve_10(b)`.
pub fn solve_11<A: Dendriform>(
    alg: &A,
    alpha: &Rational,
    h: &A::Elem,
    b: &A::Elem,
    c: &A::Elem,
    order: usize,
) -> Result<Series<A::Elem>> {
    let y = solve_01(alg, c, order)?;
    let z = solve_10(alg, b, order)?;
    let mut x = y.star(alg, &z)?.scale(alg, alpha);
    if !alg.is_zero(h) {
        let y_inv = solve_10(alg, &alg.neg(c), order)?;
        let z_inv = solve_01(alg, &alg.neg(b), order)?;
        let hs = Series::constant(alg, order, h.clone());
        let mid = y_inv.succ(alg, &hs)?.prec(alg, &z_inv)?;
        let t = y.star(alg, &mid)?.star(alg, &z)?;
        x = x.add(alg, &t)?;
    }
    Ok(x)
}

/// Pre-Lie `X = α·1 + h + λ X ⊳ b`, i.e. degree `(1,1)` with `c = −b`;
/// the solution is the `Z`-conjugate `α·1 + Z⁻¹ ★ (Z ≻ h ≺ Z⁻¹) ★ Z`.
pub fn solve_prelie<A: Dendriform>(
    alg: &A,
    alpha: &Rational,
    h: &A::Elem,
    b: &A::Elem,
    order: usize,
) -> Result<Series<A::Elem>> {
    solve_11(alg, alpha, h, b, &alg.neg(b), order)
}

/// `X = a + λ X ⊳ a`: coefficients are the shifted left-nested pre-Lie
/// words, `X_k = ((a ⊳ a) ⊳ …) ⊳ a` with `k + 1` factors. Computed from
/// the grading derivation: with `Z = solve_10(a)`,
/// `X = λ⁻¹ · Z⁻¹ ★ (Σ_k k·Z_k λ^k)`.
pub fn solve_dynkin<A: Dendriform>(alg: &A, a: &A::Elem, order: usize) -> Result<Series<A::Elem>> {
    let inner = order + 1;
    let z = solve_10(alg, a, inner)?;
    let z_inv = solve_01(alg, &alg.neg(a), inner)?;
    let graded = Series::from_coeffs(
        z.coeffs()
            .iter()
            .enumerate()
            .map(|(k, ck)| alg.scale(&rat_int(k as i64), ck))
            .collect(),
    );
    let d = z_inv.star(alg, &graded)?;
    Ok(Series::from_coeffs(
        (0..=order).map(|k| d.coeff(k + 1).clone()).collect(),
    ))
}

// ---------------------------------------------------------------------------
// Conjugation actions.
// ---------------------------------------------------------------------------

/// `Θ_Z(x) = Z ≻ x ≺ Z⁻¹` (unambiguous by the middle axiom). `Z` must
/// have unit constant term.
pub fn theta_action<A: Dendriform>(
    alg: &A,
    z: &Series<A::Elem>,
    x: &Series<A::Elem>,
) -> Result<Series<A::Elem>> {
    let z_inv = z.star_inverse(alg)?;
    z.succ(alg, x)?.prec(alg, &z_inv)
}

/// `Ad_F(g) = F ★ g ★ F⁻¹`. `F` must have unit constant term.
pub fn ad_action<A: Dendriform>(
    alg: &A,
    f: &Series<A::Elem>,
    g: &Series<A::Elem>,
) -> Result<Series<A::Elem>> {
    let f_inv = f.star_inverse(alg)?;
    f.star(alg, g)?.star(alg, &f_inv)
}

// ---------------------------------------------------------------------------
// General equation: validation, right-hand side, matrix embedding.
// ---------------------------------------------------------------------------

/// Coefficient rows must be staircase-shaped: row `q` (1-based) holds
/// exactly `q` elements.
pub fn validate_rows<E>(side: &str, rows: &[Vec<E>]) -> Result<()> {
    for (i, row) in rows.iter().enumerate() {
        if row.len() != i + 1 {
            return Err(DendError::ShapeError(format!(
                "{side} coefficient row {} must have {} entries, got {}",
                i + 1,
                i + 1,
                row.len()
            )));
        }
    }
    Ok(())
}

/// Evaluate the right-hand side of the general equation at a candidate
/// series: `a₀₀ + Σ λ^q (≻-words of X with b-row q) + Σ λ^q (≺-words)`.
pub fn rhs_general<A: Dendriform>(
    alg: &A,
    x: &Series<A::Elem>,
    alpha: &Rational,
    h: &A::Elem,
    b_rows: &[Vec<A::Elem>],
    c_rows: &[Vec<A::Elem>],
) -> Result<Series<A::Elem>> {
    let order = x.order();
    let mut acc = head_series(alg, order, alpha, h);
    for (qi, row) in b_rows.iter().enumerate() {
        let mut w = x.clone();
        for b in row {
            w = w.succ(alg, &Series::constant(alg, order, b.clone()))?;
        }
        acc = acc.add(alg, &w.shift(alg, qi + 1))?;
    }
    for (qi, row) in c_rows.iter().enumerate() {
        let mut w = x.clone();
        for c in row.iter().rev() {
            w = Series::constant(alg, order, c.clone()).prec(alg, &w)?;
        }
        acc = acc.add(alg, &w.shift(alg, qi + 1))?;
    }
    Ok(acc)
}

/// Companion matrix of a pure right-handed equation. Component order:
/// index 0 is the unknown itself, then the partial words `(q, j)` for
/// `q = 2..m`, `j = 1..q−1`, lexicographically.
pub fn companion_matrix<A: Dendriform>(
    alg: &A,
    rows: &[Vec<A::Elem>],
) -> Result<SqMat<A::Elem>> {
    validate_rows("right", rows)?;
    let m = rows.len();
    if m == 0 {
        return Err(DendError::ShapeError("companion matrix needs at least one row".into()));
    }
    let dim = 1 + m * (m - 1) / 2;
    let idx = |q: usize, j: usize| 1 + (q - 1) * (q - 2) / 2 + (j - 1);
    let mut mat = SqMat::filled(dim, alg.zero());
    mat.set(0, 0, rows[0][0].clone());
    for q in 2..=m {
        let row = &rows[q - 1];
        mat.set(idx(q, q - 1), 0, row[q - 1].clone());
        mat.set(0, idx(q, 1), row[0].clone());
        for j in 2..q {
            mat.set(idx(q, j - 1), idx(q, j), row[j - 1].clone());
        }
    }
    Ok(mat)
}

/// Solve the degree-`(m, 0)` equation, returning the whole component
/// vector: entry 0 is the unknown `X`, entry `idx(q, j)` carries
/// `λ^j ((X ≻ b_q1) ≻ …) ≻ b_qj`.
pub fn solve_m0_components<A: Dendriform>(
    alg: &A,
    alpha: &Rational,
    h: &A::Elem,
    rows: &[Vec<A::Elem>],
    order: usize,
) -> Result<Vec<Series<A::Elem>>> {
    let cm = companion_matrix(alg, rows)?;
    let dim = cm.dim();
    let malg = MatrixAlg::new(alg.clone(), dim);
    let z = solve_10(&malg, &cm, order)?;
    let mut w = z.scale(&malg, alpha);
    if !alg.is_zero(h) {
        let z_inv = z.star_inverse(&malg)?;
        let dh = Series::constant(&malg, order, malg.diagonal(h));
        let t = dh.prec(&malg, &z_inv)?.star(&malg, &z)?;
        w = w.add(&malg, &t)?;
    }
    Ok((0..dim).map(|j| series_entry(&w, 0, j)).collect())
}

/// Degree-`(m, 0)`: `X = α·1 + h + Σ_q λ^q ((X ≻ b_q1) ≻ …) ≻ b_qq`.
pub fn solve_m0<A: Dendriform>(
    alg: &A,
    alpha: &Rational,
    h: &A::Elem,
    rows: &[Vec<A::Elem>],
    order: usize,
) -> Result<Series<A::Elem>> {
    Ok(solve_m0_components(alg, alpha, h, rows, order)?.remove(0))
}

/// Degree-`(0, n)`: `X = α·1 + h + Σ_q λ^q c_q1 ≺ (… ≺ (c_qq ≺ X))`.
/// Reduced to degree-`(n, 0)` in the opposite algebra; reading the
/// nested word backwards reverses each coefficient row.
pub fn solve_0n<A: Dendriform>(
    alg: &A,
    alpha: &Rational,
    h: &A::Elem,
    rows: &[Vec<A::Elem>],
    order: usize,
) -> Result<Series<A::Elem>> {
    validate_rows("left", rows)?;
    let op = Opposite(alg.clone());
    let reversed: Vec<Vec<A::Elem>> = rows
        .iter()
        .map(|r| r.iter().rev().cloned().collect())
        .collect();
    solve_m0(&op, alpha, h, &reversed, order)
}

/// Dispatch on the equation degree `(m, n) = (b_rows.len(), c_rows.len())`.
pub fn solve_general<A: Dendriform>(
    alg: &A,
    alpha: &Rational,
    h: &A::Elem,
    b_rows: &[Vec<A::Elem>],
    c_rows: &[Vec<A::Elem>],
    order: usize,
) -> Result<Series<A::Elem>> {
    validate_rows("right", b_rows)?;
    validate_rows("left", c_rows)?;
    match (b_rows.len(), c_rows.len()) {
        (0, 0) => Ok(head_series(alg, order, alpha, h)),
        (1, 1) => solve_11(alg, alpha, h, &b_rows[0][0], &c_rows[0][0], order),
        (_, 0) => solve_m0(alg, alpha, h, b_rows, order),
        (0, _) => solve_0n(alg, alpha, h, c_rows, order),
        (m, n) => Err(DendError::ShapeError(format!(
            "no solver for two-sided degree ({m}, {n}); supported: (m,0), (0,n), (1,1)"
        ))),
    }
}
