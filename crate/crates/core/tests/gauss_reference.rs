//! Gaussian numerics against 60-digit mpmath values (see data/).

#[path = "data/gauss_reference.rs"]
#[allow(clippy::excessive_precision)]
mod reference;

use tailbound::gauss::{cdf, mills, pdf, sf, std_normal, stein_f};

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn cdf_matches_reference_on_minus8_to_8() {
    let worst = reference::CDF
        .iter()
        .map(|&(s, v)| rel(cdf(s), v))
        .fold(0.0, f64::max);
    println!("worst CDF relative error: {worst:e}");
    assert!(worst < 1e-14);
}

#[test]
fn mills_matches_reference_on_0_to_40() {
    let worst = reference::MILLS
        .iter()
        .map(|&(s, v)| rel(mills(s), v))
        .fold(0.0, f64::max);
    println!("worst Mills relative error: {worst:e}");
    assert!(worst < 1e-10);
}

#[test]
fn upper_tail_far_out() {
    for &(s, v) in reference::UPPER_TAIL {
        let e = rel(sf(s), v);
        assert!(e < 1e-10, "s={s}: {e:e}");
    }
}

#[test]
fn symmetry_and_identity() {
    for i in -800..=800 {
        let s = i as f64 * 0.01;
        assert!((cdf(s) + cdf(-s) - 1.0).abs() <= 1e-14, "s={s}");
        assert_eq!(pdf(s), pdf(-s));
        assert!(rel(mills(s) * pdf(s), cdf(-s)) < 1e-12, "s={s}");
    }
}

#[test]
fn mills_decreasing_and_s_times_r_increasing() {
    let mut prev = f64::INFINITY;
    for i in -800..=4000 {
        let s = i as f64 * 0.01;
        let r = std_normal(s).unwrap().mills;
        assert!(r < prev, "not decreasing at {s}");
        prev = r;
    }
    let mut prev = 0.0;
    for i in 100..=4000 {
        let s = i as f64 * 0.01;
        let sr = s * mills(s);
        assert!(sr < 1.0 && sr > prev, "s r(s) at {s} = {sr}");
        prev = sr;
    }
}

#[test]
fn stein_continuity_at_junction() {
    for z in [0.0, 1.0, 3.0, -1.5] {
        let left = stein_f(z, z).unwrap();
        let right = stein_f(z, z + z.abs().max(1.0) * 1e-15).unwrap();
        let right_formula = cdf(z) * mills(z);
        assert!(rel(left, right) < 1e-13, "z={z}");
        assert!(rel(left, right_formula) < 1e-13, "z={z}");
    }
}
