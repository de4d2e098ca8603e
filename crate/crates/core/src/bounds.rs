//! Bounds on `P(S > z) − P(S̄ > z)` and on the normal approximation error:
//! the five bounds `P₁ … P₅`, the concentration quantities `Q` and `Q*`,
//! the Bennett–Hoeffding exponential bound, the Bikelis-type sum, the
//! exponential nonuniform bound `A β_v e^{−λz}` and the composite bound.
//!
//! Constants that are only known to exist are supplied by the caller through
//! [`Constants`]; missing ones default to one and are flagged in the report.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::dist::{convolve, SubMeasure, System, TailTable, WinsorMode};
use crate::error::{Error, Result};
use crate::funcs::{beta_v, g, mu_p};
use crate::scalar::Scalar;

/// `min(1, (e/((z−y)y))^{(z−y)/y})` for `z > y`, and `1` otherwise.
pub fn bh_bound(z: f64, y: f64) -> Result<f64> {
    if !(y > 0.0 && y.is_finite()) {
        return Err(Error::InvalidInput(format!("y must be positive, got {y}")));
    }
    if !z.is_finite() {
        return Err(Error::InvalidInput(format!("z must be finite, got {z}")));
    }
    if z <= y {
        return Ok(1.0);
    }
    let t = z - y;
    let log = (t / y) * (1.0 - (t * y).ln());
    Ok(log.exp().min(1.0))
}

/// Laws of the partial sums restricted to `{max_j ξ_j <= y}`, for one `y`.
#[derive(Debug, Clone)]
pub struct RestrictedSums<T> {
    y: T,
    // leave_one_out[i]: law of Σ_{j≠i} ξ_j 1{ξ_j <= y} restricted to all j≠i being <= y
    leave_one_out: Vec<TailTable<T>>,
    full: TailTable<T>,
}

impl<T: Scalar> RestrictedSums<T> {
    pub fn new(sys: &System<T>, y: &T) -> Result<Self> {
        let restricted: Vec<SubMeasure<T>> =
            sys.rvs().iter().map(|rv| rv.law().restrict_le(y)).collect();
        let mut leave_one_out = Vec::with_capacity(restricted.len());
        for i in 0..restricted.len() {
            let others: Vec<&SubMeasure<T>> = restricted
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, m)| m)
                .collect();
            let law = if others.is_empty() {
                // n = 1: empty sum, unit mass at 0
                SubMeasure::unit()
            } else {
                convolve(&others)?
            };
            leave_one_out.push(law.tail_table());
        }
        let all: Vec<&SubMeasure<T>> = restricted.iter().collect();
        let full = convolve(&all)?.tail_table();
        Ok(Self {
            y: y.clone(),
            leave_one_out,
            full,
        })
    }

    pub fn y(&self) -> &T {
        &self.y
    }

    /// `Q(z, y) = max_i P(S − ξ_i > z − y, max_{j≠i} ξ_j <= y)`.
    pub fn q(&self, z: &T) -> T {
        let shifted = z.clone() - self.y.clone();
        self.leave_one_out
            .iter()
            .map(|t| t.tail(&shifted))
            .reduce(T::max_of)
            .unwrap_or_else(T::zero)
    }

    /// `P(S > z, max_j ξ_j <= y)`.
    pub fn restricted_tail(&self, z: &T) -> T {
        self.full.tail(z)
    }

    /// `Q*(z, y) = Q(z, y) ∨ P(S > z, max_j ξ_j <= y)`.
    pub fn qstar(&self, z: &T) -> T {
        T::max_of(self.q(z), self.restricted_tail(z))
    }
}

pub fn q_exact<T: Scalar>(sys: &System<T>, z: &T, y: &T) -> Result<T> {
    Ok(RestrictedSums::new(sys, y)?.q(z))
}

pub fn qstar_exact<T: Scalar>(sys: &System<T>, z: &T, y: &T) -> Result<T> {
    Ok(RestrictedSums::new(sys, y)?.qstar(z))
}

/// The three bounds that carry no unspecified constant.
#[derive(Debug, Clone, PartialEq)]
pub struct ExplicitBounds<T> {
    pub p1: T,
    pub p2: T,
    pub p3: T,
}

/// Assembles `P₁`, `P₂`, `P₃` from their ingredients:
/// `P(max ξ > w)`, `Σ P(ξ_i > w)`, `P(max ξ > y)`, `Q(z, y)` and `Q*(z, y)`.
pub fn explicit_bounds<T: Scalar>(
    max_tail_w: &T,
    sum_tails_w: &T,
    max_tail_y: &T,
    q: &T,
    qstar: &T,
) -> ExplicitBounds<T> {
    let two = T::from_u64(2);
    ExplicitBounds {
        p1: max_tail_w.clone(),
        p2: max_tail_y.clone() + q.clone() * sum_tails_w.clone(),
        p3: max_tail_y.clone() + two * qstar.clone() * max_tail_w.clone(),
    }
}

/// Caller-supplied values for the constants of the non-explicit bounds.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// Constant of `β_v e^{−λz}`.
    pub theorem: Option<f64>,
    /// `A_{p,c}` in `P₄`.
    pub p4: Option<f64>,
    /// `A_{p,w,c}` in `P₅`.
    pub p5: Option<f64>,
    /// Constant of the Bikelis-type sum.
    pub bikelis: Option<f64>,
}

impl Constants {
    fn resolve(value: Option<f64>, name: &str, warnings: &mut Vec<String>) -> f64 {
        value.unwrap_or_else(|| {
            let msg = format!("constant `{name}` not supplied; using 1");
            if !warnings.contains(&msg) {
                warnings.push(msg);
            }
            1.0
        })
    }
}

/// How `y` is chosen for `P₂` and `P₃`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum YChoice {
    /// Minimize over `{z/(1+p/2)} ∪ {z 2^{−j} : j = 1..12}`.
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundParams {
    pub v: f64,
    pub w: f64,
    pub lambda: f64,
    pub p: f64,
    pub c: f64,
    pub y: YChoice,
    pub mode: WinsorMode,
    pub constants: Constants,
}

impl Default for BoundParams {
    fn default() -> Self {
        Self {
            v: 1.0,
            w: 1.0,
            lambda: 0.5,
            p: 2.0,
            c: 1.0,
            y: YChoice::Auto,
            mode: WinsorMode::Winsorize,
            constants: Constants::default(),
        }
    }
}

impl BoundParams {
    pub fn validate(&self) -> Result<()> {
        let named = [
            ("v", self.v),
            ("w", self.w),
            ("lambda", self.lambda),
            ("p", self.p),
            ("c", self.c),
        ];
        for (name, value) in named {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidInput(format!("{name} must be positive, got {value}")));
            }
        }
        if let YChoice::Fixed(y) = self.y {
            if !(y > 0.0 && y.is_finite()) {
                return Err(Error::InvalidInput(format!("y must be positive, got {y}")));
            }
        }
        let c = &self.constants;
        for (name, value) in [
            ("theorem", c.theorem),
            ("p4", c.p4),
            ("p5", c.p5),
            ("bikelis", c.bikelis),
        ] {
            if let Some(a) = value {
                if !(a > 0.0 && a.is_finite()) {
                    return Err(Error::InvalidInput(format!(
                        "constant {name} must be positive, got {a}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// All bounds at one `z`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub z: f64,
    /// `P(S > z) − P(S̄ > z)`, when the exact law is within the convolution cap.
    pub delta_w: Option<f64>,
    /// Exact rendering of `delta_w` in rational mode.
    pub delta_w_exact: Option<String>,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    /// `None` when `z <= 0`.
    pub p4: Option<f64>,
    pub p5: Option<f64>,
    pub best: f64,
    /// `y` attaining `p2` and `p3`.
    pub y_p2: f64,
    pub y_p3: f64,
    pub theorem_bound: f64,
    pub corollary_bound: f64,
    pub bikelis_sum: f64,
    pub winsor_mode: WinsorMode,
    pub warnings: Vec<String>,
}

/// `Σ_i E(ξ_i²/(|z|+1)² ∧ |ξ_i|³/(|z|+1)³)`.
pub fn bikelis_sum<T: Scalar>(sys: &System<T>, z: &T) -> T {
    let scale = z.abs_val() + T::one();
    sys.rvs().iter().fold(T::zero(), |acc, rv| {
        acc + rv.expect(|x| {
            let r = x.abs_val() / scale.clone();
            let sq = r.clone() * r.clone();
            T::min_of(sq.clone(), sq * r)
        })
    })
}

/// `A β_v e^{−λz}`.
pub fn theorem_bound_value(constant: f64, beta: f64, lambda: f64, z: f64) -> f64 {
    constant * beta * (-lambda * z).exp()
}

/// Evaluates every bound for one system over many `z`, reusing the laws of
/// `S` and `S̄` and the restricted sums for each `y`.
pub struct BoundEngine<'a, T: Scalar> {
    sys: &'a System<T>,
    params: BoundParams,
    w: T,
    beta: f64,
    mu: f64,
    max_tail_w: T,
    sum_tails_w: T,
    sum: Option<TailTable<T>>,
    modified: Option<TailTable<T>>,
    restricted: Vec<RestrictedSums<T>>,
}

impl<'a, T: Scalar> BoundEngine<'a, T> {
    pub fn new(sys: &'a System<T>, params: &BoundParams) -> Result<Self> {
        params.validate()?;
        let w = to_scalar::<T>(params.w)?;
        let v = to_scalar::<T>(params.v)?;
        let beta = beta_v(sys, &v).to_f64();
        let mu = mu_p(sys, params.p)?;
        let (sum, modified) = match (sys.sum_law(), sys.modified_sum_law(params.mode, &w)) {
            (Ok(s), Ok(m)) => (Some(s.tail_table()), Some(m.tail_table())),
            (Err(Error::CapExceeded { .. }), _) | (_, Err(Error::CapExceeded { .. })) => {
                (None, None)
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        Ok(Self {
            max_tail_w: sys.max_tail(&w),
            sum_tails_w: sys.sum_of_tails(&w),
            sys,
            params: params.clone(),
            w,
            beta,
            mu,
            sum,
            modified,
            restricted: Vec::new(),
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Exact `Δ_w(z)`, if the laws are available.
    pub fn delta_w(&self, z: &T) -> Option<T> {
        match (&self.sum, &self.modified) {
            (Some(s), Some(m)) => Some(s.tail(z) - m.tail(z)),
            _ => None,
        }
    }

    fn restricted_for(&mut self, y: &T) -> Result<&RestrictedSums<T>> {
        let pos = match self.restricted.iter().position(|r| r.y() == y) {
            Some(i) => i,
            None => {
                self.restricted.push(RestrictedSums::new(self.sys, y)?);
                self.restricted.len() - 1
            }
        };
        Ok(&self.restricted[pos])
    }

    fn y_candidates(&self, z: &T) -> Result<Vec<T>> {
        match self.params.y {
            YChoice::Fixed(y) => Ok(vec![to_scalar(y)?]),
            YChoice::Auto => {
                if z.cmp_total(&T::zero()) != Ordering::Greater {
                    // (0, z) is empty; fall back to w so P₂, P₃ stay defined.
                    return Ok(vec![self.w.clone()]);
                }
                let p = to_scalar::<T>(self.params.p)?;
                let two = T::from_u64(2);
                let mut ys = vec![z.clone() / (T::one() + p / two.clone())];
                let mut y = z.clone();
                for _ in 0..12 {
                    y = y / two.clone();
                    ys.push(y.clone());
                }
                Ok(ys)
            }
        }
    }

    /// Report at one `z`.
    pub fn report(&mut self, z: &T) -> Result<BoundReport> {
        let mut warnings = Vec::new();
        let zf = z.to_f64();
        let mut best_p2: Option<(T, f64)> = None;
        let mut best_p3: Option<(T, f64)> = None;
        for y in self.y_candidates(z)? {
            let max_tail_y = self.sys.max_tail(&y);
            let max_tail_w = self.max_tail_w.clone();
            let sum_tails_w = self.sum_tails_w.clone();
            let r = self.restricted_for(&y)?;
            let b = explicit_bounds(&max_tail_w, &sum_tails_w, &max_tail_y, &r.q(z), &r.qstar(z));
            let yf = y.to_f64();
            if best_p2.as_ref().is_none_or(|(p, _)| b.p2.cmp_total(p) == Ordering::Less) {
                best_p2 = Some((b.p2, yf));
            }
            if best_p3.as_ref().is_none_or(|(p, _)| b.p3.cmp_total(p) == Ordering::Less) {
                best_p3 = Some((b.p3, yf));
            }
        }
        let (p2, y_p2) = best_p2.expect("at least one y");
        let (p3, y_p3) = best_p3.expect("at least one y");
        let p1 = self.max_tail_w.to_f64();
        let (p2, p3) = (p2.to_f64().min(1.0), p3.to_f64().min(1.0));

        let consts = &self.params.constants;
        let (p4, p5) = if zf > 0.0 {
            let a4 = Constants::resolve(consts.p4, "p4", &mut warnings);
            let a5 = Constants::resolve(consts.p5, "p5", &mut warnings);
            let decay = (self.params.c + zf).powf(-self.params.p);
            let p = to_scalar::<T>(self.params.p)?;
            let level = z.clone() / (T::one() + p / T::from_u64(2));
            let p4 = self.sys.max_tail(&level).to_f64() + a4 * decay * p1;
            let p5 = a5 * self.mu * decay;
            (Some(p4), Some(p5))
        } else {
            warnings.push("p4 and p5 are only defined for z > 0".into());
            (None, None)
        };
        let best = [Some(p1), Some(p2), Some(p3), p4, p5]
            .into_iter()
            .flatten()
            .fold(f64::INFINITY, f64::min);

        let a_theorem = Constants::resolve(consts.theorem, "theorem", &mut warnings);
        let theorem_bound = theorem_bound_value(a_theorem, self.beta, self.params.lambda, zf);
        let a_bik = Constants::resolve(consts.bikelis, "bikelis", &mut warnings);
        let delta = self.delta_w(z);
        if delta.is_none() {
            warnings.push("exact law exceeds the convolution cap; delta_w omitted".into());
        }
        Ok(BoundReport {
            z: zf,
            delta_w: delta.as_ref().map(|d| d.to_f64()),
            delta_w_exact: delta
                .as_ref()
                .filter(|_| T::MODE == crate::scalar::Mode::Rational)
                .map(|d| d.render()),
            p1,
            p2,
            p3,
            p4,
            p5,
            best,
            y_p2,
            y_p3,
            theorem_bound,
            corollary_bound: theorem_bound + best,
            bikelis_sum: a_bik * bikelis_sum(self.sys, z).to_f64(),
            winsor_mode: self.params.mode,
            warnings,
        })
    }
}

fn to_scalar<T: Scalar>(x: f64) -> Result<T> {
    T::from_f64(x).ok_or_else(|| Error::InvalidInput(format!("non-finite parameter {x}")))
}

/// All bounds at a single `z`.
pub fn p_bounds<T: Scalar>(sys: &System<T>, z: &T, params: &BoundParams) -> Result<BoundReport> {
    BoundEngine::new(sys, params)?.report(z)
}

/// Reports over a grid of `z`.
pub fn bound_table<T: Scalar>(
    sys: &System<T>,
    zs: &[T],
    params: &BoundParams,
) -> Result<Vec<BoundReport>> {
    let mut engine = BoundEngine::new(sys, params)?;
    zs.iter().map(|z| engine.report(z)).collect()
}

/// `A β_v e^{−λz}` for a system.
pub fn theorem_bound<T: Scalar>(sys: &System<T>, z: f64, params: &BoundParams) -> Result<f64> {
    params.validate()?;
    let beta = beta_v(sys, &to_scalar::<T>(params.v)?).to_f64();
    let a = params.constants.theorem.unwrap_or(1.0);
    Ok(theorem_bound_value(a, beta, params.lambda, z))
}

/// `A β_v e^{−λz} + (P₁ ∧ … ∧ P₅)`.
pub fn corollary_bound<T: Scalar>(sys: &System<T>, z: &T, params: &BoundParams) -> Result<f64> {
    Ok(p_bounds(sys, z, params)?.corollary_bound)
}

/// `g` applied atomwise to `ξ/(|z|+1)`; equals [`bikelis_sum`].
#[doc(hidden)]
pub fn bikelis_via_g<T: Scalar>(sys: &System<T>, z: &T) -> T {
    let scale = z.abs_val() + T::one();
    sys.rvs()
        .iter()
        .fold(T::zero(), |acc, rv| acc + rv.expect(|x| g(&(x.clone() / scale.clone()))))
}
