//! Arithmetic backends for probability computations.
//!
//! Every exact computation in the crate is generic over [`Scalar`], which is
//! implemented for [`Exact`] (arbitrary-precision rationals) and `f64`.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational number used by the verification paths.
pub type Exact = BigRational;

/// Relative distance below which two float atoms are merged.
pub const FLOAT_MERGE_RTOL: f64 = 1e-15;

/// Tolerance for float-mode normalization checks.
pub const FLOAT_NORM_TOL: f64 = 1e-12;

/// Arithmetic mode of a distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Rational,
    Float,
}

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const MODE: Mode;

    /// Converts a finite float; exact for rationals (the binary value of `x`).
    fn from_f64(x: f64) -> Option<Self>;
    fn to_f64(&self) -> f64;
    fn abs_val(&self) -> Self;
    /// Total order; floats are compared with `total_cmp`.
    fn cmp_total(&self, other: &Self) -> Ordering;
    /// Whether two sorted neighbours `a <= b` denote the same atom location.
    /// `scale` is the magnitude of the quantities that produced them.
    fn same_location(a: &Self, b: &Self, scale: f64) -> bool;
    /// Whether `value` equals `target` up to the mode's normalization tolerance.
    fn near(value: &Self, target: &Self) -> bool;
    /// Square root if representable in this mode.
    fn sqrt_val(&self) -> Option<Self>;
    /// Human-readable rendering ("num/den" for rationals).
    fn render(&self) -> String;
    /// Converts an exact rational (rounds in float mode).
    fn from_exact(x: &Exact) -> Self;

    fn from_u64(n: u64) -> Self {
        Self::from_f64(n as f64).expect("integer is finite")
    }

    fn min_of(a: Self, b: Self) -> Self {
        if b.cmp_total(&a) == Ordering::Less {
            b
        } else {
            a
        }
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b.cmp_total(&a) == Ordering::Greater {
            b
        } else {
            a
        }
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn from_f64(x: f64) -> Option<Self> {
        x.is_finite().then_some(x)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs_val(&self) -> Self {
        f64::abs(*self)
    }

    fn cmp_total(&self, other: &Self) -> Ordering {
        self.total_cmp(other)
    }

    fn same_location(a: &Self, b: &Self, scale: f64) -> bool {
        (b - a).abs() <= FLOAT_MERGE_RTOL * scale.max(a.abs()).max(b.abs())
    }

    fn near(value: &Self, target: &Self) -> bool {
        (value - target).abs() <= FLOAT_NORM_TOL
    }

    fn sqrt_val(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }

    fn render(&self) -> String {
        format!("{self}")
    }

    fn from_exact(x: &Exact) -> Self {
        Scalar::to_f64(x)
    }
}

impl Scalar for Exact {
    const MODE: Mode = Mode::Rational;

    fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or_else(|| {
            // Very large numerators/denominators: scale down before dividing.
            let n = self.numer().to_f64().unwrap_or(f64::INFINITY);
            let d = self.denom().to_f64().unwrap_or(f64::INFINITY);
            n / d
        })
    }

    fn abs_val(&self) -> Self {
        Signed::abs(self)
    }

    fn cmp_total(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn same_location(a: &Self, b: &Self, _scale: f64) -> bool {
        a == b
    }

    fn near(value: &Self, target: &Self) -> bool {
        value == target
    }

    fn sqrt_val(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let n = self.numer();
        let d = self.denom();
        let rn = n.sqrt();
        let rd = d.sqrt();
        (&rn * &rn == *n && &rd * &rd == *d).then(|| BigRational::new(rn, rd))
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }

    fn from_exact(x: &Exact) -> Self {
        x.clone()
    }

    fn from_u64(n: u64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// Parses a decimal ("0.25", "-1e-3") or fraction ("1/4") string exactly.
pub fn parse_exact(s: &str) -> Result<Exact> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a decimal or fraction: {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: String = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(BigInt::from_str(&all).map_err(|_| bad())?);
    let shift = exp - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    let factor = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Ok(if neg { -value } else { value })
}

/// Integer power for any scalar.
pub fn powi<T: Scalar>(x: &T, n: u32) -> T {
    let mut acc = T::one();
    for _ in 0..n {
        acc = acc * x.clone();
    }
    acc
}

pub fn ratio(num: i64, den: i64) -> Exact {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn exact_from_usize(n: usize) -> Exact {
    BigRational::from_usize(n).expect("usize fits")
}
