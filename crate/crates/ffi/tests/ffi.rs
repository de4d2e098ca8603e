use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use tailbound_ffi::*;

const COINS: &str = r#"{"rvs":[{"atoms":[{"x":"-1/2","p":"1/2"},{"x":"1/2","p":"1/2"}]},
{"atoms":[{"x":"-1/2","p":"1/2"},{"x":"1/2","p":"1/2"}]},
{"atoms":[{"x":"-1/2","p":"1/2"},{"x":"1/2","p":"1/2"}]},
{"atoms":[{"x":"-1/2","p":"1/2"},{"x":"1/2","p":"1/2"}]}]}"#;

fn system(json: &str) -> *mut TbSystem {
    let text = CString::new(json).unwrap();
    let mut sys = ptr::null_mut();
    let status = unsafe { tb_system_from_json(text.as_ptr(), &mut sys) };
    assert_eq!(status, TbStatus::TbOk);
    sys
}

fn last_error() -> String {
    let p = tb_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn four_coins_round_trip() {
    let sys = system(COINS);
    let mut n = 0usize;
    let mut exact = -1;
    let mut beta = 0.0;
    unsafe {
        assert_eq!(tb_system_len(sys, &mut n), TbStatus::TbOk);
        assert_eq!(tb_system_is_exact(sys, &mut exact), TbStatus::TbOk);
        assert_eq!(tb_beta_v(sys, 1.0, &mut beta), TbStatus::TbOk);
    }
    assert_eq!((n, exact, beta), (4, 1, 0.5));

    let mut mu = 0.0;
    unsafe { assert_eq!(tb_mu_p(sys, 2.0, &mut mu), TbStatus::TbOk) };
    assert!((mu - 1.0).abs() < 1e-15);

    let mut params = TbBoundParams {
        v: 0.0,
        w: 0.0,
        lambda: 0.0,
        p: 0.0,
        c: 0.0,
        y: 0.0,
        mode: 0,
    };
    let mut b = std::mem::MaybeUninit::<TbBounds>::uninit();
    unsafe {
        assert_eq!(tb_bound_params_default(&mut params), TbStatus::TbOk);
        params.w = 0.25;
        assert_eq!(tb_p_bounds(sys, 0.5, &params, b.as_mut_ptr()), TbStatus::TbOk);
    }
    let b = unsafe { b.assume_init() };
    // Every summand exceeds 1/4 with probability 1/2.
    assert_eq!(b.p1, 1.0 - 0.5f64.powi(4));
    assert!(b.delta_w >= 0.0 && b.delta_w <= b.p1.min(b.p2).min(b.p3));
    assert!(b.p4.is_finite() && b.p5.is_finite());
    unsafe { tb_system_free(sys) };
}

#[test]
fn errors_carry_codes_and_messages() {
    let mut sys = ptr::null_mut();
    let bad = CString::new(r#"{"rvs":[{"atoms":[{"x":1,"p":1}]}]}"#).unwrap();
    unsafe {
        assert_eq!(tb_system_from_json(bad.as_ptr(), &mut sys), TbStatus::TbInvariant);
    }
    assert!(sys.is_null());
    assert!(last_error().contains("mean"), "{}", last_error());

    let garbage = CString::new("{").unwrap();
    unsafe { assert_eq!(tb_system_from_json(garbage.as_ptr(), &mut sys), TbStatus::TbParse) };
    unsafe { assert_eq!(tb_system_from_json(ptr::null(), &mut sys), TbStatus::TbNullPointer) };

    let mut v = 0.0;
    unsafe {
        assert_eq!(tb_beta_v(ptr::null(), 1.0, &mut v), TbStatus::TbNullPointer);
        assert_eq!(tb_bh_bound(3.0, -1.0, &mut v), TbStatus::TbInvalidInput);
        assert_eq!(tb_young_delta(0.0, 1.0, &mut v), TbStatus::TbInvalidInput);
        assert_eq!(tb_stein_f(0.0, 0.0, ptr::null_mut()), TbStatus::TbNullPointer);
    }
    let sys = system(COINS);
    let params = TbBoundParams {
        v: 1.0,
        w: 1.0,
        lambda: 0.5,
        p: 2.0,
        c: 1.0,
        y: 0.0,
        mode: 7,
    };
    let mut b = std::mem::MaybeUninit::<TbBounds>::uninit();
    unsafe {
        assert_eq!(tb_p_bounds(sys, 1.0, &params, b.as_mut_ptr()), TbStatus::TbInvalidInput);
        tb_system_free(sys);
        tb_system_free(ptr::null_mut());
    }
}

#[test]
fn scalar_functions() {
    let mut g = TbGauss {
        phi: 0.0,
        cdf: 0.0,
        mills: 0.0,
    };
    let mut x = 0.0;
    unsafe {
        assert_eq!(tb_std_normal(0.0, &mut g), TbStatus::TbOk);
        assert_eq!(g.cdf, 0.5);
        assert_eq!(tb_young_delta(0.9, 1.215, &mut x), TbStatus::TbOk);
        assert!((x + 0.0075).abs() < 1e-9);
        assert_eq!(tb_bh_bound(6.0, 3.0, &mut x), TbStatus::TbOk);
        assert!((x - 0.302_031_314_273_227_25).abs() < 1e-15);
        assert_eq!(tb_stein_f(1.0, 1.0, &mut x), TbStatus::TbOk);
        assert!(x > 0.0);
    }
    let version = unsafe { CStr::from_ptr(tb_version()) }.to_str().unwrap();
    assert_eq!(version, env!("CARGO_PKG_VERSION"));
}

const C_PROGRAM: &str = r#"
#include <stdio.h>
#include "tailbound.h"

int main(void) {
    const char *json = "{\"rvs\":[{\"atoms\":[{\"x\":-1,\"p\":0.5},{\"x\":1,\"p\":0.5}]}]}";
    TbSystem *sys = NULL;
    if (tb_system_from_json(json, &sys) != TB_OK) {
        fprintf(stderr, "%s\n", tb_last_error());
        return 1;
    }
    double beta = 0.0;
    if (tb_beta_v(sys, 1.0, &beta) != TB_OK || beta != 1.0) return 2;
    TbBounds b;
    if (tb_p_bounds(sys, 0.0, NULL, &b) != TB_OK) return 3;
    tb_system_free(sys);
    if (tb_system_from_json("[", &sys) != TB_PARSE) return 4;
    printf("%.17g %.17g\n", beta, b.p1);
    return 0;
}
"#;

/// Compiles a C client against the generated header and the static library.
/// Skipped when no C compiler or static archive is present.
#[test]
fn c_client_links_against_staticlib() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().and_then(|d| d.parent()).unwrap().to_path_buf();
    let archive = profile_dir.join("libtailbound_ffi.a");
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if !archive.exists() || Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or {} missing", archive.display());
        return;
    }
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    let bin = dir.path().join("client");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let build = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&archive)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .output()
        .unwrap();
    assert!(build.status.success(), "{}", String::from_utf8_lossy(&build.stderr));
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "exit {:?}: {}", run.status.code(), String::from_utf8_lossy(&run.stderr));
    // A ±1 coin exceeds w = 1 with probability 0.
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "1 0");
}
