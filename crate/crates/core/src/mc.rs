//! Seeded Monte Carlo tails of `S` and `S̄` with Clopper–Pearson intervals.
//!
//! Samples are drawn in fixed blocks; block `b` uses ChaCha stream `b` under
//! the run seed, so the result does not depend on how blocks are spread over
//! threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{p_bounds, BoundParams};
use crate::dist::{System, WinsorMode};
use crate::error::{Error, Result};

pub const MIN_SAMPLES: u64 = 1_000;
/// Samples per RNG stream.
pub const BLOCK: u64 = 1 << 14;
/// Two-sided level of the reported intervals.
pub const CONFIDENCE: f64 = 0.99;

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// Independent summands of an explicit system.
    Discrete(System<f64>),
    /// `(E − 1)/√n` with `E` standard exponential.
    Exponential,
    /// Standardized Bernoulli(`p`), scaled by `1/√n`.
    TwoPoint { p: f64 },
    /// Standardized Pareto with `P(X > x) = x^{−α}` on `x >= 1`, `α > 2`.
    Pareto { alpha: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerSpec {
    pub family: Family,
    /// Number of summands; ignored for `Discrete`.
    pub n: usize,
}

impl SamplerSpec {
    pub fn discrete(sys: System<f64>) -> Self {
        let n = sys.n();
        Self {
            family: Family::Discrete(sys),
            n,
        }
    }

    pub fn summands(&self) -> usize {
        match &self.family {
            Family::Discrete(sys) => sys.n(),
            _ => self.n,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.summands() == 0 {
            return Err(Error::InvalidInput("sampler needs at least one summand".into()));
        }
        match self.family {
            Family::TwoPoint { p } if !(p > 0.0 && p < 1.0) => {
                Err(Error::InvalidInput(format!("two-point p must lie in (0, 1), got {p}")))
            }
            Family::Pareto { alpha } if !(alpha > 2.0 && alpha.is_finite()) => Err(Error::InvalidInput(
                format!("Pareto alpha must exceed 2 for finite variance, got {alpha}"),
            )),
            _ => Ok(()),
        }
    }

    /// `P(ξ_i > w)` for every summand.
    fn summand_tails(&self, w: f64) -> Vec<f64> {
        let n = self.summands();
        let root = (n as f64).sqrt();
        let t = w * root;
        let single = match &self.family {
            Family::Discrete(sys) => return sys.rvs().iter().map(|rv| rv.tail(&w)).collect(),
            Family::Exponential => {
                if t < -1.0 {
                    1.0
                } else {
                    (-(1.0 + t)).exp()
                }
            }
            Family::TwoPoint { p } => {
                let sd = (p * (1.0 - p)).sqrt();
                if (1.0 - p) / sd > t {
                    if -p / sd > t {
                        1.0
                    } else {
                        *p
                    }
                } else {
                    0.0
                }
            }
            Family::Pareto { alpha } => {
                let (mean, sd) = pareto_moments(*alpha);
                let x = mean + sd * t;
                if x <= 1.0 {
                    1.0
                } else {
                    x.powf(-alpha)
                }
            }
        };
        vec![single; n]
    }

    /// `P(max ξ_i > w)` in closed form.
    pub fn max_tail(&self, w: f64) -> f64 {
        1.0 - self.summand_tails(w).iter().map(|t| 1.0 - t).product::<f64>()
    }
}

fn pareto_moments(alpha: f64) -> (f64, f64) {
    let mean = alpha / (alpha - 1.0);
    let var = alpha / ((alpha - 1.0).powi(2) * (alpha - 2.0));
    (mean, var.sqrt())
}

/// Inverse-CDF tables so one uniform draws one summand.
struct Sampler {
    discrete: Vec<(Vec<f64>, Vec<f64>)>,
    family: Family,
    n: usize,
    scale: f64,
}

impl Sampler {
    fn new(spec: &SamplerSpec) -> Self {
        let discrete = match &spec.family {
            Family::Discrete(sys) => sys
                .rvs()
                .iter()
                .map(|rv| {
                    let mut acc = 0.0;
                    let cum = rv
                        .atoms()
                        .iter()
                        .map(|a| {
                            acc += a.p;
                            acc
                        })
                        .collect();
                    (cum, rv.atoms().iter().map(|a| a.x).collect())
                })
                .collect(),
            _ => Vec::new(),
        };
        let n = spec.summands();
        Self {
            discrete,
            family: spec.family.clone(),
            n,
            scale: 1.0 / (n as f64).sqrt(),
        }
    }

    fn draw(&self, i: usize, rng: &mut ChaCha8Rng) -> f64 {
        let u: f64 = rng.random();
        match &self.family {
            Family::Discrete(_) => {
                let (cum, xs) = &self.discrete[i];
                let k = cum.partition_point(|&c| c <= u).min(xs.len() - 1);
                xs[k]
            }
            Family::Exponential => (-(1.0 - u).ln() - 1.0) * self.scale,
            Family::TwoPoint { p } => {
                let sd = (p * (1.0 - p)).sqrt();
                let x = if u < *p { (1.0 - p) / sd } else { -p / sd };
                x * self.scale
            }
            Family::Pareto { alpha } => {
                let (mean, sd) = pareto_moments(*alpha);
                ((1.0 - u).powf(-1.0 / alpha) - mean) / sd * self.scale
            }
        }
    }
}

/// Which sum a tail estimate refers to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "w")]
pub enum TailMode {
    Raw,
    Winsorize(f64),
    Truncate(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailEstimate {
    pub z: f64,
    pub p_hat: f64,
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub count: u64,
    pub n_samples: u64,
    pub seed: u64,
}

/// Two-sided Clopper–Pearson interval for `k` successes in `n` trials.
pub fn clopper_pearson(k: u64, n: u64, confidence: f64) -> (f64, f64) {
    let alpha = 1.0 - confidence;
    let (kf, nf) = (k as f64, n as f64);
    let lo = if k == 0 {
        0.0
    } else {
        // P(Bin(n, p) >= k) = I_p(k, n − k + 1) = α/2
        invert_increasing(|p| statrs::function::beta::beta_reg(kf, nf - kf + 1.0, p), alpha / 2.0)
    };
    let hi = if k == n {
        1.0
    } else {
        // P(Bin(n, p) <= k) = 1 − I_p(k + 1, n − k) = α/2
        invert_increasing(
            |p| statrs::function::beta::beta_reg(kf + 1.0, nf - kf, p),
            1.0 - alpha / 2.0,
        )
    };
    (lo, hi)
}

fn invert_increasing(f: impl Fn(f64) -> f64, target: f64) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Exceedance counts from one pass over the samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailCounts {
    pub n_samples: u64,
    /// `#{S > z}` per grid point.
    pub raw: Vec<u64>,
    /// `#{S̄ > z}` per grid point.
    pub modified: Vec<u64>,
}

impl TailCounts {
    /// `#{S̄ <= z < S}`; exact because `S̄ <= S` on every path.
    pub fn delta(&self, j: usize) -> u64 {
        self.raw[j] - self.modified[j]
    }
}

fn count_above(sorted: &[f64], z: f64) -> u64 {
    (sorted.len() - sorted.partition_point(|&s| s <= z)) as u64
}

/// Counts for `S` and `S̄` (at level `w`) over `zs`, from one sample set.
pub fn mc_counts(
    spec: &SamplerSpec,
    zs: &[f64],
    n_samples: u64,
    seed: u64,
    mode: WinsorMode,
    w: f64,
    workers: Option<usize>,
) -> Result<TailCounts> {
    spec.validate()?;
    if n_samples < MIN_SAMPLES {
        return Err(Error::InvalidInput(format!(
            "need at least {MIN_SAMPLES} samples, got {n_samples}"
        )));
    }
    if !(w > 0.0 && w.is_finite()) {
        return Err(Error::InvalidInput(format!("w must be positive, got {w}")));
    }
    if zs.iter().any(|z| !z.is_finite()) {
        return Err(Error::InvalidInput("z grid must be finite".into()));
    }
    let sampler = Sampler::new(spec);
    let blocks = n_samples.div_ceil(BLOCK);
    let run_block = |b: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(b);
        let len = BLOCK.min(n_samples - b * BLOCK) as usize;
        let mut raw = Vec::with_capacity(len);
        let mut bar = Vec::with_capacity(len);
        for _ in 0..len {
            let (mut s, mut sbar) = (0.0, 0.0);
            for i in 0..sampler.n {
                let x = sampler.draw(i, &mut rng);
                s += x;
                sbar += mode.apply_scalar(&x, &w);
            }
            raw.push(s);
            bar.push(sbar);
        }
        raw.sort_by(f64::total_cmp);
        bar.sort_by(f64::total_cmp);
        let raw: Vec<u64> = zs.iter().map(|&z| count_above(&raw, z)).collect();
        let modified: Vec<u64> = zs.iter().map(|&z| count_above(&bar, z)).collect();
        (raw, modified)
    };
    let merge = |mut a: (Vec<u64>, Vec<u64>), b: (Vec<u64>, Vec<u64>)| {
        a.0.iter_mut().zip(&b.0).for_each(|(x, y)| *x += y);
        a.1.iter_mut().zip(&b.1).for_each(|(x, y)| *x += y);
        a
    };
    let zero = || (vec![0u64; zs.len()], vec![0u64; zs.len()]);
    let go = || (0..blocks).into_par_iter().map(run_block).reduce(zero, merge);
    let (raw, modified) = match workers {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?
            .install(go),
        None => go(),
    };
    Ok(TailCounts {
        n_samples,
        raw,
        modified,
    })
}

fn estimate(z: f64, count: u64, n_samples: u64, seed: u64) -> TailEstimate {
    let (ci_lo, ci_hi) = clopper_pearson(count, n_samples, CONFIDENCE);
    let p_hat = count as f64 / n_samples as f64;
    TailEstimate {
        z,
        p_hat,
        ci_lo: ci_lo.min(p_hat),
        ci_hi: ci_hi.max(p_hat),
        count,
        n_samples,
        seed,
    }
}

/// Tail estimates `P(S > z)` or `P(S̄ > z)` over the grid.
pub fn mc_tails(spec: &SamplerSpec, zs: &[f64], n_samples: u64, seed: u64, mode: TailMode) -> Result<Vec<TailEstimate>> {
    let (winsor, w) = match mode {
        TailMode::Raw => (WinsorMode::Winsorize, f64::MAX),
        TailMode::Winsorize(w) => (WinsorMode::Winsorize, w),
        TailMode::Truncate(w) => (WinsorMode::Truncate, w),
    };
    let counts = mc_counts(spec, zs, n_samples, seed, winsor, w, None)?;
    let pick = if mode == TailMode::Raw { &counts.raw } else { &counts.modified };
    Ok(zs
        .iter()
        .zip(pick)
        .map(|(&z, &k)| estimate(z, k, n_samples, seed))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McRow {
    pub z: f64,
    pub p_hat_raw: f64,
    pub p_hat_bar: f64,
    pub delta_hat: f64,
    /// Interval for `Δ_w(z)`.
    pub ci_lo: f64,
    pub ci_hi: f64,
    pub p1: f64,
    pub p2: Option<f64>,
    pub p3: Option<f64>,
    /// The bound the flag is tested against, after any corruption factor.
    pub bound: f64,
    pub flag: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McReport {
    pub seed: u64,
    pub n_samples: u64,
    pub w: f64,
    pub mode: WinsorMode,
    pub bound_scale: f64,
    pub rows: Vec<McRow>,
    pub flags: usize,
}

/// Flags `z` when the lower 99% limit of `Δ_w(z)` exceeds `P₁ ∧ P₂ ∧ P₃`
/// (multiplied by `bound_scale`, which is 1 outside self-tests). `P₂`, `P₃`
/// are included for explicit systems within the convolution cap.
pub fn mc_check_bounds(
    spec: &SamplerSpec,
    params: &BoundParams,
    zs: &[f64],
    n_samples: u64,
    seed: u64,
    bound_scale: f64,
) -> Result<McReport> {
    params.validate()?;
    if !(bound_scale > 0.0 && bound_scale.is_finite()) {
        return Err(Error::InvalidInput(format!("bound scale must be positive, got {bound_scale}")));
    }
    let counts = mc_counts(spec, zs, n_samples, seed, params.mode, params.w, None)?;
    let p1 = spec.max_tail(params.w);
    let explicit = |z: f64| -> Option<(f64, f64)> {
        let Family::Discrete(sys) = &spec.family else {
            return None;
        };
        p_bounds(sys, &z, params).ok().map(|r| (r.p2, r.p3))
    };
    let nf = n_samples as f64;
    let rows: Vec<McRow> = zs
        .iter()
        .enumerate()
        .map(|(j, &z)| {
            let d = counts.delta(j);
            let (lo, hi) = clopper_pearson(d, n_samples, CONFIDENCE);
            let p23 = explicit(z);
            let best = p23.map_or(p1, |(a, b)| p1.min(a).min(b));
            let bound = best * bound_scale;
            McRow {
                z,
                p_hat_raw: counts.raw[j] as f64 / nf,
                p_hat_bar: counts.modified[j] as f64 / nf,
                delta_hat: d as f64 / nf,
                ci_lo: lo,
                ci_hi: hi,
                p1,
                p2: p23.map(|p| p.0),
                p3: p23.map(|p| p.1),
                bound,
                flag: lo > bound,
            }
        })
        .collect();
    let flags = rows.iter().filter(|r| r.flag).count();
    Ok(McReport {
        seed,
        n_samples,
        w: params.w,
        mode: params.mode,
        bound_scale,
        rows,
        flags,
    })
}

pub fn mc_report_csv(report: &McReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "z", "p_hat_raw", "p_hat_bar", "delta_hat", "ci_lo", "ci_hi", "p1", "p2", "p3", "bound", "flag",
    ])
    .map_err(crate::io::csv_err)?;
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in &report.rows {
        w.write_record([
            r.z.to_string(),
            r.p_hat_raw.to_string(),
            r.p_hat_bar.to_string(),
            r.delta_hat.to_string(),
            r.ci_lo.to_string(),
            r.ci_hi.to_string(),
            r.p1.to_string(),
            opt(r.p2),
            opt(r.p3),
            r.bound.to_string(),
            u8::from(r.flag).to_string(),
        ])
        .map_err(crate::io::csv_err)?;
    }
    crate::io::finish_csv(w)
}
