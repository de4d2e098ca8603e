//! Finite discrete distributions: construction, Winsorization/truncation,
//! convolution and tail probabilities.
//!
//! All tails use the strict event `{X > z}`; restrictions use `{X <= y}`.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default cap on intermediate atoms created by one convolution step.
pub const DEFAULT_CONVOLUTION_CAP: u128 = 10_000_000;

/// A point mass `p` at location `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom<T> {
    pub x: T,
    pub p: T,
}

/// An atomic measure with total mass at most one, atoms sorted by location.
#[derive(Debug, Clone, PartialEq)]
pub struct SubMeasure<T> {
    atoms: Vec<Atom<T>>,
}

impl<T: Scalar> SubMeasure<T> {
    /// Builds a measure from arbitrary `(x, p)` pairs: zero masses are dropped,
    /// locations sorted and coinciding locations merged.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (T, T)>) -> Result<Self> {
        let mut atoms = Vec::new();
        for (x, p) in pairs {
            match p.cmp_total(&T::zero()) {
                Ordering::Less => {
                    return Err(Error::InvalidInput(format!("negative mass {}", p.render())));
                }
                Ordering::Equal => continue,
                Ordering::Greater => atoms.push(Atom { x, p }),
            }
        }
        let scale = atoms.iter().map(|a| a.x.to_f64().abs()).fold(0.0, f64::max);
        let m = Self::merged(atoms, scale);
        if m.mass().cmp_total(&T::one()) == Ordering::Greater && !T::near(&m.mass(), &T::one()) {
            return Err(Error::InvalidInput(format!(
                "total mass {} exceeds one",
                m.mass().render()
            )));
        }
        Ok(m)
    }

    fn merged(mut atoms: Vec<Atom<T>>, scale: f64) -> Self {
        atoms.sort_by(|a, b| a.x.cmp_total(&b.x));
        let mut out: Vec<Atom<T>> = Vec::with_capacity(atoms.len());
        for atom in atoms {
            match out.last_mut() {
                Some(last) if T::same_location(&last.x, &atom.x, scale) => {
                    last.p = last.p.clone() + atom.p;
                }
                _ => out.push(atom),
            }
        }
        Self { atoms: out }
    }

    /// Unit mass at zero: the law of an empty sum.
    pub fn unit() -> Self {
        Self {
            atoms: vec![Atom {
                x: T::zero(),
                p: T::one(),
            }],
        }
    }

    /// The zero measure.
    pub fn empty() -> Self {
        Self { atoms: Vec::new() }
    }

    pub fn atoms(&self) -> &[Atom<T>] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn mass(&self) -> T {
        self.atoms
            .iter()
            .fold(T::zero(), |acc, a| acc + a.p.clone())
    }

    /// `m({x > z})`.
    pub fn tail(&self, z: &T) -> T {
        let start = self
            .atoms
            .partition_point(|a| a.x.cmp_total(z) != Ordering::Greater);
        self.atoms[start..]
            .iter()
            .fold(T::zero(), |acc, a| acc + a.p.clone())
    }

    /// `m({x <= y})`.
    pub fn mass_le(&self, y: &T) -> T {
        let end = self
            .atoms
            .partition_point(|a| a.x.cmp_total(y) != Ordering::Greater);
        self.atoms[..end]
            .iter()
            .fold(T::zero(), |acc, a| acc + a.p.clone())
    }

    /// `m({a <= x <= b})`.
    pub fn mass_between(&self, a: &T, b: &T) -> T {
        self.atoms
            .iter()
            .filter(|at| at.x.cmp_total(a) != Ordering::Less && at.x.cmp_total(b) != Ordering::Greater)
            .fold(T::zero(), |acc, at| acc + at.p.clone())
    }

    /// The measure restricted to `{x <= y}`.
    pub fn restrict_le(&self, y: &T) -> Self {
        let end = self
            .atoms
            .partition_point(|a| a.x.cmp_total(y) != Ordering::Greater);
        Self {
            atoms: self.atoms[..end].to_vec(),
        }
    }

    /// Image of the measure under `f`, merging coinciding images.
    pub fn map(&self, f: impl Fn(&T) -> T) -> Self {
        let scale = self.atoms.iter().map(|a| a.x.to_f64().abs()).fold(0.0, f64::max);
        Self::merged(
            self.atoms
                .iter()
                .map(|a| Atom {
                    x: f(&a.x),
                    p: a.p.clone(),
                })
                .collect(),
            scale,
        )
    }

    /// `∫ f dm`.
    pub fn expect(&self, f: impl Fn(&T) -> T) -> T {
        self.atoms
            .iter()
            .fold(T::zero(), |acc, a| acc + a.p.clone() * f(&a.x))
    }

    pub fn max_location(&self) -> Option<&T> {
        self.atoms.last().map(|a| &a.x)
    }

    pub fn min_location(&self) -> Option<&T> {
        self.atoms.first().map(|a| &a.x)
    }

    /// Suffix sums for repeated tail queries.
    pub fn tail_table(&self) -> TailTable<T> {
        TailTable::new(self)
    }
}

/// Precomputed tails of a measure for batches of `z` queries.
#[derive(Debug, Clone)]
pub struct TailTable<T> {
    xs: Vec<T>,
    // suffix[i] = mass of atoms i..
    suffix: Vec<T>,
}

impl<T: Scalar> TailTable<T> {
    pub fn new(m: &SubMeasure<T>) -> Self {
        let xs: Vec<T> = m.atoms.iter().map(|a| a.x.clone()).collect();
        let mut suffix = vec![T::zero(); xs.len() + 1];
        for i in (0..xs.len()).rev() {
            suffix[i] = suffix[i + 1].clone() + m.atoms[i].p.clone();
        }
        Self { xs, suffix }
    }

    pub fn tail(&self, z: &T) -> T {
        let start = self.xs.partition_point(|x| x.cmp_total(z) != Ordering::Greater);
        self.suffix[start].clone()
    }

    pub fn total(&self) -> T {
        self.suffix[0].clone()
    }
}

/// Exact law of the sum of independent measures (total mass multiplies).
pub fn convolve<T: Scalar>(measures: &[&SubMeasure<T>]) -> Result<SubMeasure<T>> {
    convolve_with_cap(measures, DEFAULT_CONVOLUTION_CAP)
}

pub fn convolve_with_cap<T: Scalar>(
    measures: &[&SubMeasure<T>],
    cap: u128,
) -> Result<SubMeasure<T>> {
    let Some((first, rest)) = measures.split_first() else {
        return Err(Error::InvalidInput("convolution of an empty list".into()));
    };
    let scale: f64 = measures
        .iter()
        .map(|m| m.atoms.iter().map(|a| a.x.to_f64().abs()).fold(0.0, f64::max))
        .sum();
    let mut acc = (*first).clone();
    for m in rest {
        let needed = acc.len() as u128 * m.len() as u128;
        if needed > cap {
            return Err(Error::CapExceeded { needed, cap });
        }
        let mut pairs = Vec::with_capacity(needed as usize);
        for a in &acc.atoms {
            for b in &m.atoms {
                pairs.push(Atom {
                    x: a.x.clone() + b.x.clone(),
                    p: a.p.clone() * b.p.clone(),
                });
            }
        }
        acc = SubMeasure::merged(pairs, scale);
    }
    Ok(acc)
}

/// A probability distribution with finitely many atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteRv<T> {
    law: SubMeasure<T>,
}

impl<T: Scalar> DiscreteRv<T> {
    /// Masses must sum to one (exactly, or within the float tolerance).
    pub fn new(pairs: impl IntoIterator<Item = (T, T)>) -> Result<Self> {
        let law = SubMeasure::from_pairs(pairs)?;
        if law.is_empty() {
            return Err(Error::InvalidInput("distribution has no atoms".into()));
        }
        if !T::near(&law.mass(), &T::one()) {
            return Err(Error::InvalidInput(format!(
                "masses sum to {} instead of 1",
                law.mass().render()
            )));
        }
        Ok(Self { law })
    }

    fn from_law(law: SubMeasure<T>) -> Self {
        Self { law }
    }

    pub fn law(&self) -> &SubMeasure<T> {
        &self.law
    }

    pub fn atoms(&self) -> &[Atom<T>] {
        self.law.atoms()
    }

    pub fn mean(&self) -> T {
        self.law.expect(|x| x.clone())
    }

    pub fn variance(&self) -> T {
        let m = self.mean();
        self.law.expect(|x| {
            let d = x.clone() - m.clone();
            d.clone() * d
        })
    }

    /// `E|X|`.
    pub fn mean_abs(&self) -> T {
        self.law.expect(|x| x.abs_val())
    }

    /// `E|X|^k` for integer `k`.
    pub fn abs_moment(&self, k: u32) -> T {
        self.law.expect(|x| crate::scalar::powi(&x.abs_val(), k))
    }

    pub fn expect(&self, f: impl Fn(&T) -> T) -> T {
        self.law.expect(f)
    }

    /// `P(X > z)`.
    pub fn tail(&self, z: &T) -> T {
        self.law.tail(z)
    }

    /// `P(X <= y)`.
    pub fn cdf(&self, y: &T) -> T {
        self.law.mass_le(y)
    }

    /// `X ∧ w`.
    pub fn winsorize(&self, w: &T) -> Result<Self> {
        check_level(w)?;
        Ok(Self::from_law(self.law.map(|x| T::min_of(x.clone(), w.clone()))))
    }

    /// `X·1{X <= w}`.
    pub fn truncate(&self, w: &T) -> Result<Self> {
        check_level(w)?;
        Ok(Self::from_law(self.law.map(|x| {
            if x.cmp_total(w) == Ordering::Greater {
                T::zero()
            } else {
                x.clone()
            }
        })))
    }

    fn affine(&self, shift: &T, scale: &T) -> Self {
        Self::from_law(
            self.law
                .map(|x| (x.clone() - shift.clone()) * scale.clone()),
        )
    }

    /// Rescales every atom location by `factor`.
    pub fn scaled(&self, factor: &T) -> Self {
        self.affine(&T::zero(), factor)
    }
}

fn check_level<T: Scalar>(w: &T) -> Result<()> {
    if w.cmp_total(&T::zero()) != Ordering::Greater {
        return Err(Error::InvalidInput(format!(
            "level w must be positive, got {}",
            w.render()
        )));
    }
    Ok(())
}

/// The two implemented constructions of the modified summands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WinsorMode {
    Winsorize,
    Truncate,
}

impl WinsorMode {
    pub const ALL: [WinsorMode; 2] = [WinsorMode::Winsorize, WinsorMode::Truncate];

    pub fn apply<T: Scalar>(self, rv: &DiscreteRv<T>, w: &T) -> Result<DiscreteRv<T>> {
        match self {
            WinsorMode::Winsorize => rv.winsorize(w),
            WinsorMode::Truncate => rv.truncate(w),
        }
    }

    pub fn apply_scalar<T: Scalar>(self, x: &T, w: &T) -> T {
        match self {
            WinsorMode::Winsorize => T::min_of(x.clone(), w.clone()),
            WinsorMode::Truncate => {
                if x.cmp_total(w) == Ordering::Greater {
                    T::zero()
                } else {
                    x.clone()
                }
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            WinsorMode::Winsorize => "winsorize",
            WinsorMode::Truncate => "truncate",
        }
    }
}

impl std::str::FromStr for WinsorMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "winsorize" => Ok(WinsorMode::Winsorize),
            "truncate" => Ok(WinsorMode::Truncate),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

/// Independent zero-mean summands with total variance one.
#[derive(Debug, Clone, PartialEq)]
pub struct System<T> {
    rvs: Vec<DiscreteRv<T>>,
}

impl<T: Scalar> System<T> {
    /// Validates the zero-mean and unit-total-variance invariants.
    pub fn new(rvs: Vec<DiscreteRv<T>>) -> Result<Self> {
        let total = Self::check_centered(&rvs)?;
        if !T::near(&total, &T::one()) {
            return Err(Error::Invariant(format!(
                "sum of variances is {} (must be 1)",
                total.render()
            )));
        }
        Ok(Self { rvs })
    }

    /// Zero-mean summands with total variance at most one. The tail-difference
    /// inequalities and the exponential bound only need this weaker condition.
    pub fn relaxed(rvs: Vec<DiscreteRv<T>>) -> Result<Self> {
        let total = Self::check_centered(&rvs)?;
        if total.cmp_total(&T::one()) == Ordering::Greater && !T::near(&total, &T::one()) {
            return Err(Error::Invariant(format!(
                "sum of variances is {} (must be at most 1)",
                total.render()
            )));
        }
        Ok(Self { rvs })
    }

    /// Checks every summand is centered; returns the total variance.
    fn check_centered(rvs: &[DiscreteRv<T>]) -> Result<T> {
        if rvs.is_empty() {
            return Err(Error::InvalidInput("system needs at least one summand".into()));
        }
        let mut total = T::zero();
        for (i, rv) in rvs.iter().enumerate() {
            let mean = rv.mean();
            let var = rv.variance();
            let centered = match T::MODE {
                crate::scalar::Mode::Rational => mean == T::zero(),
                crate::scalar::Mode::Float => {
                    mean.to_f64().abs() <= crate::scalar::FLOAT_NORM_TOL * var.to_f64().sqrt()
                        || mean.to_f64() == 0.0
                }
            };
            if !centered {
                return Err(Error::Invariant(format!(
                    "summand {i} has mean {} (must be 0)",
                    mean.render()
                )));
            }
            total = total + var;
        }
        Ok(total)
    }

    /// Total variance of the summands.
    pub fn total_variance(&self) -> T {
        self.rvs.iter().fold(T::zero(), |acc, rv| acc + rv.variance())
    }

    /// Builds a system from raw atom lists. With `standardize`, masses are
    /// normalized, each summand is centered and all are scaled by one common
    /// factor so that the variances sum to one.
    pub fn from_raw(raw: Vec<Vec<(T, T)>>, standardize: bool) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::InvalidInput("system needs at least one summand".into()));
        }
        if !standardize {
            let rvs = raw
                .into_iter()
                .map(DiscreteRv::new)
                .collect::<Result<Vec<_>>>()?;
            return Self::new(rvs);
        }
        let mut centered = Vec::with_capacity(raw.len());
        for atoms in raw {
            if atoms.is_empty() {
                return Err(Error::InvalidInput("empty atom list".into()));
            }
            if atoms
                .iter()
                .any(|(_, p)| p.cmp_total(&T::zero()) != Ordering::Greater)
            {
                return Err(Error::InvalidInput("masses must be positive".into()));
            }
            let total = atoms.iter().fold(T::zero(), |acc, (_, p)| acc + p.clone());
            let law = SubMeasure::from_pairs(
                atoms
                    .into_iter()
                    .map(|(x, p)| (x, p / total.clone())),
            )?;
            let rv = DiscreteRv::from_law(law);
            let mean = rv.mean();
            centered.push(rv.affine(&mean, &T::one()));
        }
        let total_var = centered
            .iter()
            .fold(T::zero(), |acc, rv| acc + rv.variance());
        if total_var == T::zero() {
            return Err(Error::Degenerate);
        }
        let sd = total_var.sqrt_val().ok_or_else(|| {
            Error::InvalidInput(format!(
                "total variance {} is not a rational square; standardize in float mode",
                total_var.render()
            ))
        })?;
        let factor = T::one() / sd;
        let rvs = centered.iter().map(|rv| rv.scaled(&factor)).collect();
        Self::new(rvs)
    }

    pub fn rvs(&self) -> &[DiscreteRv<T>] {
        &self.rvs
    }

    pub fn n(&self) -> usize {
        self.rvs.len()
    }

    /// Laws of all summands, in order.
    pub fn laws(&self) -> Vec<&SubMeasure<T>> {
        self.rvs.iter().map(|rv| rv.law()).collect()
    }

    /// Exact law of `S`.
    pub fn sum_law(&self) -> Result<SubMeasure<T>> {
        convolve(&self.laws())
    }

    /// Summands after Winsorization or truncation at level `w`.
    pub fn modified(&self, mode: WinsorMode, w: &T) -> Result<Vec<DiscreteRv<T>>> {
        self.rvs.iter().map(|rv| mode.apply(rv, w)).collect()
    }

    /// Exact law of the modified sum `S̄`.
    pub fn modified_sum_law(&self, mode: WinsorMode, w: &T) -> Result<SubMeasure<T>> {
        let rvs = self.modified(mode, w)?;
        let laws: Vec<_> = rvs.iter().map(|rv| rv.law()).collect();
        convolve(&laws)
    }

    /// `P(max_i ξ_i > y) = 1 − Π P(ξ_i <= y)`.
    pub fn max_tail(&self, y: &T) -> T {
        let all_below = self
            .rvs
            .iter()
            .fold(T::one(), |acc, rv| acc * rv.cdf(y));
        T::one() - all_below
    }

    /// `Σ_i P(ξ_i > w)`.
    pub fn sum_of_tails(&self, w: &T) -> T {
        self.rvs
            .iter()
            .fold(T::zero(), |acc, rv| acc + rv.tail(w))
    }

    /// Product of atom counts: the size of the unmerged joint support.
    pub fn joint_support_size(&self) -> u128 {
        self.rvs
            .iter()
            .fold(1u128, |acc, rv| acc.saturating_mul(rv.atoms().len() as u128))
    }

    /// Largest atom location over all summands.
    pub fn max_atom(&self) -> T {
        self.rvs
            .iter()
            .filter_map(|rv| rv.law().max_location().cloned())
            .reduce(T::max_of)
            .expect("nonempty system")
    }

    /// Converts every value to `f64`.
    pub fn to_float(&self) -> System<f64> {
        System {
            rvs: self
                .rvs
                .iter()
                .map(|rv| DiscreteRv {
                    law: SubMeasure {
                        atoms: rv
                            .atoms()
                            .iter()
                            .map(|a| Atom {
                                x: a.x.to_f64(),
                                p: a.p.to_f64(),
                            })
                            .collect(),
                    },
                })
                .collect(),
        }
    }
}
