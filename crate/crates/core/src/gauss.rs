//! Standard normal density, distribution function, Mills ratio and the Stein
//! function `f_z`.
//!
//! The error-function kernel is W. J. Cody's rational Chebyshev approximation,
//! evaluated in-module so every target produces the same bits.

#![allow(clippy::excessive_precision)]

use serde::Serialize;

use crate::error::{Error, Result};

const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
const SQRT_PI_OVER_2: f64 = 1.253_314_137_315_500_3;
const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;

/// Above this argument the Mills ratio is evaluated by continued fraction.
const MILLS_CF_THRESHOLD: f64 = 6.0;
const MILLS_CF_TERMS: u32 = 200;

// erf on |x| <= 0.46875
const A: [f64; 5] = [
    3.161_123_743_870_565_6,
    113.864_154_151_050_16,
    377.485_237_685_302,
    3_209.377_589_138_469_5,
    0.185_777_706_184_603_15,
];
const B: [f64; 4] = [
    23.601_290_952_344_122,
    244.024_637_934_444_17,
    1_282.616_526_077_372_3,
    2_844.236_833_439_170_6,
];
// erfcx on 0.46875 < x <= 4
const C: [f64; 9] = [
    0.564_188_496_988_670_1,
    8.883_149_794_388_376,
    66.119_190_637_141_63,
    298.635_138_197_400_1,
    881.952_221_241_769_1,
    1_712.047_612_634_070_6,
    2_051.078_377_826_071_5,
    1_230.339_354_797_997_2,
    2.153_115_354_744_038_5e-8,
];
const D: [f64; 8] = [
    15.744_926_110_709_835,
    117.693_950_891_312_5,
    537.181_101_862_009_9,
    1_621.389_574_566_690_2,
    3_290.799_235_733_459_7,
    4_362.619_090_143_247,
    3_439.367_674_143_721_6,
    1_230.339_354_803_749_4,
];
// erfcx on x > 4, in powers of 1/x²
const P: [f64; 6] = [
    0.305_326_634_961_232_36,
    0.360_344_899_949_804_45,
    0.125_781_726_111_229_26,
    0.016_083_785_148_742_275,
    6.587_491_615_298_378e-4,
    0.016_315_387_137_302_097,
];
const Q: [f64; 5] = [
    2.568_520_192_289_822,
    1.872_952_849_923_460_4,
    0.527_905_102_951_428_4,
    0.060_518_341_312_441_32,
    0.002_335_204_976_268_691_8,
];

const ERF_SMALL: f64 = 0.468_75;

fn erf_small(x: f64) -> f64 {
    let z = x * x;
    x * ((((A[4] * z + A[0]) * z + A[1]) * z + A[2]) * z + A[3])
        / ((((z + B[0]) * z + B[1]) * z + B[2]) * z + B[3])
}

/// `e^{x²} erfc(x)` for `x > 0.46875`.
fn erfcx_large(y: f64) -> f64 {
    if y <= 4.0 {
        let mut num = C[8] * y;
        for &c in &C[..7] {
            num = (num + c) * y;
        }
        num += C[7];
        let mut den = y;
        for &d in &D[..7] {
            den = (den + d) * y;
        }
        num / (den + D[7])
    } else {
        let z = 1.0 / (y * y);
        let mut num = P[5] * z;
        for &p in &P[..4] {
            num = (num + p) * z;
        }
        num = (num + P[4]) * z;
        let mut den = z;
        for &q in &Q[..4] {
            den = (den + q) * z;
        }
        den += Q[4];
        (FRAC_1_SQRT_PI - num / den) / y
    }
}

/// `e^{−s²/2}` with the square split to limit cancellation error.
fn exp_neg_half_square(s: f64) -> f64 {
    let s = s.abs();
    let head = (s * 16.0).trunc() / 16.0;
    let tail = s - head;
    (-0.5 * head * head).exp() * (-0.5 * tail * (s + head)).exp()
}

/// Scaled complementary error function `e^{x²} erfc(x)`.
pub fn erfcx(x: f64) -> f64 {
    let y = x.abs();
    let positive = if y <= ERF_SMALL {
        (y * y).exp() * (1.0 - erf_small(y))
    } else {
        erfcx_large(y)
    };
    if x >= 0.0 {
        positive
    } else {
        2.0 * (y * y).exp() - positive
    }
}

/// Complementary error function.
pub fn erfc(x: f64) -> f64 {
    let y = x.abs();
    let upper = if y <= ERF_SMALL {
        1.0 - erf_small(y)
    } else if y >= 26.6 {
        0.0
    } else {
        erfcx_large(y) * exp_neg_half_square(y * std::f64::consts::SQRT_2)
    };
    if x >= 0.0 {
        upper
    } else {
        2.0 - upper
    }
}

/// Standard normal density.
pub fn pdf(s: f64) -> f64 {
    FRAC_1_SQRT_2PI * exp_neg_half_square(s)
}

/// Upper tail `Φ(−s) = P(Z > s)`.
pub fn sf(s: f64) -> f64 {
    let x = s / std::f64::consts::SQRT_2;
    if x.abs() <= ERF_SMALL {
        0.5 * (1.0 - erf_small(x))
    } else if s > 0.0 {
        0.5 * erfcx_large(x) * exp_neg_half_square(s)
    } else {
        1.0 - 0.5 * erfcx_large(-x) * exp_neg_half_square(s)
    }
}

/// Distribution function `Φ(s)`.
pub fn cdf(s: f64) -> f64 {
    sf(-s)
}

/// Mills ratio `r(s) = Φ(−s)/φ(s)`.
pub fn mills(s: f64) -> f64 {
    if s > MILLS_CF_THRESHOLD {
        mills_continued_fraction(s)
    } else {
        SQRT_PI_OVER_2 * erfcx(s / std::f64::consts::SQRT_2)
    }
}

/// `r(s) = 1/(s + 1/(s + 2/(s + 3/(s + …))))`, evaluated backwards.
fn mills_continued_fraction(s: f64) -> f64 {
    let mut t = s;
    for k in (1..=MILLS_CF_TERMS).rev() {
        t = s + k as f64 / t;
    }
    1.0 / t
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussEval {
    pub s: f64,
    pub phi: f64,
    #[serde(rename = "Phi")]
    pub cdf: f64,
    pub mills: f64,
}

pub fn std_normal(s: f64) -> Result<GaussEval> {
    if !s.is_finite() {
        return Err(Error::InvalidInput(format!("argument must be finite, got {s}")));
    }
    Ok(GaussEval {
        s,
        phi: pdf(s),
        cdf: cdf(s),
        mills: mills(s),
    })
}

/// Stein function `f_z(s) = Φ(z) r(s) 1{s > z} + Φ(−z) r(−s) 1{s <= z}`.
///
/// Where a factor would overflow, `Φ(±z)/φ(s)` is rewritten through
/// `φ(z)/φ(s) = e^{(s²−z²)/2}`, which is at most one on those branches.
pub fn stein_f(z: f64, s: f64) -> Result<f64> {
    if !z.is_finite() || !s.is_finite() {
        return Err(Error::InvalidInput("arguments must be finite".into()));
    }
    let ratio_of_densities = || (0.5 * (s - z) * (s + z)).exp();
    Ok(if s > z {
        if s >= 0.0 {
            cdf(z) * mills(s)
        } else {
            // z < s < 0: Φ(z) = r(−z) φ(z)
            mills(-z) * sf(s) * ratio_of_densities()
        }
    } else if s <= 0.0 {
        sf(z) * mills(-s)
    } else {
        // 0 < s <= z: Φ(−z) = r(z) φ(z)
        mills(z) * cdf(s) * ratio_of_densities()
    })
}
