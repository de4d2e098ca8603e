//! Scalar bound ingredients: `g(x) = x² ∧ |x|³`, the Lyapunov-type functional
//! `β_v`, absolute moment sums `μ_p`, the Young-type inequality
//! `u <= 2k/3 + g(u)/(3k²)` and two pointwise lemmas used in the
//! concentration argument.

use std::cmp::Ordering;

use serde::Serialize;

use crate::dist::{DiscreteRv, System};
use crate::error::{Error, Result};
use crate::scalar::{powi, Scalar};

/// Largest `k` for which the Young-type inequality holds for all `u >= 0`.
pub const YOUNG_K_MAX: f64 = 8.0 / 9.0;

/// Tolerance on `LHS − RHS` for float inequality checks.
pub const INEQ_TOL: f64 = -1e-12;

/// `g(x) = min(x², |x|³)`.
pub fn g<T: Scalar>(x: &T) -> T {
    let a = x.abs_val();
    let sq = a.clone() * a.clone();
    if a.cmp_total(&T::one()) == Ordering::Greater {
        sq
    } else {
        sq * a
    }
}

/// `β_v = Σ_i E g(ξ_i / v)`.
pub fn beta_v<T: Scalar>(sys: &System<T>, v: &T) -> T {
    beta_v_weighted(sys.rvs().iter().map(|rv| (rv, 1)), v)
}

/// `β_v` over summands given with multiplicities.
pub fn beta_v_weighted<'a, T: Scalar>(
    rvs: impl IntoIterator<Item = (&'a DiscreteRv<T>, u64)>,
    v: &T,
) -> T {
    rvs.into_iter().fold(T::zero(), |acc, (rv, mult)| {
        let term = rv.expect(|x| g(&(x.clone() / v.clone())));
        acc + term * T::from_u64(mult)
    })
}

/// `μ_p = Σ_i E|ξ_i|^p` for real `p > 0` (float evaluation).
pub fn mu_p<T: Scalar>(sys: &System<T>, p: f64) -> Result<f64> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::InvalidInput(format!("p must be positive, got {p}")));
    }
    Ok(sys
        .rvs()
        .iter()
        .map(|rv| {
            rv.atoms()
                .iter()
                .map(|a| a.p.to_f64() * a.x.to_f64().abs().powf(p))
                .sum::<f64>()
        })
        .sum())
}

/// `μ_k` for integer `k`, exact in rational mode.
pub fn mu_int<T: Scalar>(sys: &System<T>, k: u32) -> T {
    sys.rvs()
        .iter()
        .fold(T::zero(), |acc, rv| acc + rv.abs_moment(k))
}

/// `v β^{1/3}`, the bound on `E|ξ_i|`. Only claimed for `β <= (8/9)³`.
pub fn mean_abs_bound(v: f64, beta: f64) -> Result<f64> {
    if v.is_nan() || v <= 0.0 {
        return Err(Error::InvalidInput(format!("v must be positive, got {v}")));
    }
    if beta.is_nan() || beta < 0.0 {
        return Err(Error::InvalidInput(format!("beta must be nonnegative, got {beta}")));
    }
    // Allow the rounding of (8/9)^3 itself.
    if beta > YOUNG_K_MAX.powi(3) * (1.0 + 4.0 * f64::EPSILON) {
        return Err(Error::Precondition(format!(
            "beta = {beta} exceeds (8/9)^3; the mean-absolute bound is not claimed there"
        )));
    }
    Ok(v * beta.cbrt())
}

/// Exact form of `E|X| <= v β^{1/3}`: compares `(E|X|)³ <= v³ β`.
pub fn mean_abs_bound_holds<T: Scalar>(rv: &DiscreteRv<T>, v: &T, beta: &T) -> bool {
    let lhs = powi(&rv.mean_abs(), 3);
    let rhs = powi(v, 3) * beta.clone();
    lhs.cmp_total(&rhs) != Ordering::Greater
}

/// One evaluation of `Δ(k, u) = 2k/3 + g(u)/(3k²) − u`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct YoungEval {
    pub k: f64,
    pub u: f64,
    pub delta: f64,
}

/// `Δ(k, u)` in any arithmetic.
pub fn young_delta_value<T: Scalar>(k: &T, u: &T) -> T {
    let three = T::from_u64(3);
    let two = T::from_u64(2);
    two * k.clone() / three.clone() + g(u) / (three * k.clone() * k.clone()) - u.clone()
}

pub fn young_delta(k: f64, u: f64) -> Result<YoungEval> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidInput(format!("k must be positive, got {k}")));
    }
    if !(u >= 0.0 && u.is_finite()) {
        return Err(Error::InvalidInput(format!("u must be nonnegative, got {u}")));
    }
    Ok(YoungEval {
        k,
        u,
        delta: young_delta_value(&k, &u),
    })
}

/// `k_u = g(u)^{1/3} ∧ 8/9`, the minimizing `k` for given `u`.
pub fn young_k_opt(u: f64) -> f64 {
    g(&u).cbrt().min(YOUNG_K_MAX)
}

/// Closed form of `min_{k ∈ (0, 8/9]} Δ(k, u)`.
pub fn young_delta_star(u: f64) -> Result<f64> {
    if !(u >= 0.0 && u.is_finite()) {
        return Err(Error::InvalidInput(format!("u must be nonnegative, got {u}")));
    }
    const C: f64 = 27.0 / 64.0;
    Ok(if u <= YOUNG_K_MAX {
        0.0
    } else if u <= 1.0 {
        let d = u - YOUNG_K_MAX;
        C * d * d * (u + 16.0 / 9.0)
    } else {
        let d = u - 32.0 / 27.0;
        C * d * d
    })
}

/// Result of scanning `Δ` over a `(k, u)` grid.
#[derive(Debug, Clone, Serialize)]
pub struct YoungScan {
    pub cells: usize,
    /// Smallest `Δ` found and where.
    pub min: YoungEval,
    /// Cells with `Δ < INEQ_TOL`.
    pub violations: Vec<YoungEval>,
}

/// Evaluates `Δ(k, u)` on the product grid.
pub fn young_scan(ks: &[f64], us: &[f64]) -> Result<YoungScan> {
    let mut min: Option<YoungEval> = None;
    let mut violations = Vec::new();
    for &k in ks {
        for &u in us {
            let e = young_delta(k, u)?;
            if e.delta < INEQ_TOL {
                violations.push(e);
            }
            if min.is_none_or(|m| e.delta < m.delta) {
                min = Some(e);
            }
        }
    }
    let min = min.ok_or_else(|| Error::InvalidInput("empty Young grid".into()))?;
    Ok(YoungScan {
        cells: ks.len() * us.len(),
        min,
        violations,
    })
}

/// Largest gap between the closed form `Δ_*(u)` and the minimum of `Δ(k, u)`
/// over `ks`, on the points `us`. Returns `(gap, u at which it occurs)`.
pub fn young_star_gap(ks: &[f64], us: &[f64]) -> Result<(f64, f64)> {
    let mut worst = (0.0f64, 0.0f64);
    for &u in us {
        let grid_min = ks
            .iter()
            .map(|&k| young_delta_value(&k, &u))
            .fold(f64::INFINITY, f64::min);
        let gap = (grid_min - young_delta_star(u)?).abs();
        if gap > worst.0 {
            worst = (gap, u);
        }
    }
    Ok(worst)
}

/// Default `u` grid: `[0, 10]` with step `10⁻³`.
pub fn default_u_grid() -> Vec<f64> {
    (0..=10_000).map(|i| i as f64 * 1e-3).collect()
}

/// Default `k` grid: a point near zero, `{j·10⁻³ : j = 1..888}` and `8/9`.
pub fn default_k_grid() -> Vec<f64> {
    let mut ks = vec![1e-9];
    ks.extend((1..=888).map(|j| j as f64 * 1e-3));
    ks.push(YOUNG_K_MAX);
    ks
}

/// Which pointwise inequality a violation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Lemma {
    /// `x(x ∧ d) >= x² − v³/(4d) g(x/v)` for `x >= 0`, `d ∈ (0, v/4]`.
    MinProduct,
    /// `|x| 1{x > w} <= (v²/w²)(v ∨ w) g(x/v)`.
    Exceedance,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LemmaViolation {
    pub lemma: Lemma,
    pub x: f64,
    pub v: f64,
    pub w: f64,
    pub d: f64,
    pub lhs: f64,
    pub rhs: f64,
}

/// Grid for [`check_pointwise_lemmas`]: `x` values and `(v, w, d)` cells.
#[derive(Debug, Clone)]
pub struct LemmaGrid {
    pub xs: Vec<f64>,
    pub cells: Vec<(f64, f64, f64)>,
}

impl Default for LemmaGrid {
    /// `x ∈ [−10, 10]` step `10⁻³`; `v, w ∈ {1/2, 1, 2}`, `d/v ∈ {1/4, 1/10, 1/100}`.
    fn default() -> Self {
        let xs = (-10_000..=10_000).map(|i| i as f64 * 1e-3).collect();
        let mut cells = Vec::with_capacity(27);
        for v in [0.5, 1.0, 2.0] {
            for w in [0.5, 1.0, 2.0] {
                for frac in [0.25, 0.1, 0.01] {
                    cells.push((v, w, v * frac));
                }
            }
        }
        Self { xs, cells }
    }
}

/// Both sides of the first lemma.
pub fn min_product_sides(x: f64, v: f64, d: f64) -> (f64, f64) {
    let lhs = x * x.min(d);
    let rhs = x * x - v * v * v / (4.0 * d) * g(&(x / v));
    (lhs, rhs)
}

/// Both sides of the second lemma.
pub fn exceedance_sides(x: f64, v: f64, w: f64) -> (f64, f64) {
    let k = v * v / (w * w) * v.max(w);
    let lhs = if x > w { x.abs() } else { 0.0 };
    (lhs, k * g(&(x / v)))
}

/// Evaluates both lemmas on every grid point and returns the violations.
pub fn check_pointwise_lemmas(grid: &LemmaGrid) -> Result<Vec<LemmaViolation>> {
    for &(v, w, d) in &grid.cells {
        if !(v > 0.0 && w > 0.0 && d > 0.0) {
            return Err(Error::InvalidInput(format!(
                "lemma grid cell (v={v}, w={w}, d={d}) must be positive"
            )));
        }
        if d > v / 4.0 {
            return Err(Error::Precondition(format!(
                "lemma grid cell has d = {d} > v/4 = {}",
                v / 4.0
            )));
        }
    }
    let mut out = Vec::new();
    for &(v, w, d) in &grid.cells {
        for &x in &grid.xs {
            if x >= 0.0 {
                let (lhs, rhs) = min_product_sides(x, v, d);
                if lhs - rhs < INEQ_TOL {
                    out.push(LemmaViolation {
                        lemma: Lemma::MinProduct,
                        x,
                        v,
                        w,
                        d,
                        lhs,
                        rhs,
                    });
                }
            }
            let (lhs, rhs) = exceedance_sides(x, v, w);
            if rhs - lhs < INEQ_TOL {
                out.push(LemmaViolation {
                    lemma: Lemma::Exceedance,
                    x,
                    v,
                    w,
                    d,
                    lhs,
                    rhs,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentStatus {
    Pass,
    Fail,
    /// `β_v > 0.5/v²`: the pointwise claim is not made there.
    OutsideMainCase,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeltaMomentReport {
    pub v: f64,
    pub beta: f64,
    pub delta: f64,
    /// `Σ_j E|ξ_j|(|ξ_j| ∧ δ)`.
    pub sum: f64,
    pub bound: f64,
    /// Exact rendering of the sum in rational mode.
    pub sum_exact: String,
    pub status: MomentStatus,
}

/// Checks `Σ_j E|ξ_j|(|ξ_j| ∧ δ) >= 1/2` with `δ = v³β_v/2`.
pub fn delta_moment_check<T: Scalar>(sys: &System<T>, v: &T) -> Result<DeltaMomentReport> {
    if v.cmp_total(&T::zero()) != Ordering::Greater {
        return Err(Error::InvalidInput("v must be positive".into()));
    }
    let two = T::from_u64(2);
    let half = T::one() / two.clone();
    let beta = beta_v(sys, v);
    let delta = powi(v, 3) * beta.clone() / two;
    let sum = sys.rvs().iter().fold(T::zero(), |acc, rv| {
        acc + rv.expect(|x| {
            let a = x.abs_val();
            a.clone() * T::min_of(a, delta.clone())
        })
    });
    let main_case = (beta.clone() * v.clone() * v.clone()).cmp_total(&half) != Ordering::Greater;
    let status = if !main_case {
        MomentStatus::OutsideMainCase
    } else if sum.cmp_total(&half) == Ordering::Less
        && (T::MODE == crate::scalar::Mode::Rational
            || (sum.to_f64() - 0.5) < INEQ_TOL)
    {
        MomentStatus::Fail
    } else {
        MomentStatus::Pass
    };
    Ok(DeltaMomentReport {
        v: v.to_f64(),
        beta: beta.to_f64(),
        delta: delta.to_f64(),
        sum: sum.to_f64(),
        bound: 0.5,
        sum_exact: sum.render(),
        status,
    })
}
