//! C ABI over `tailbound`.
//!
//! Every fallible function returns a [`TbStatus`] and writes its result
//! through an out-pointer. On failure the message is kept per thread and can
//! be read with [`tb_last_error`]. Systems are opaque [`TbSystem`] handles
//! released with [`tb_system_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use tailbound::bounds::{self, BoundParams, BoundReport, YChoice};
use tailbound::io::{parse_system, AnySystem};
use tailbound::{funcs, gauss, Error, Exact, Scalar, WinsorMode};

/// Result codes. `TB_OK` is zero; everything else is a failure.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TbStatus {
    TbOk = 0,
    TbInvalidInput = 1,
    TbInvariant = 2,
    TbDegenerate = 3,
    TbCapExceeded = 4,
    TbPrecondition = 5,
    TbParse = 6,
    TbIo = 7,
    TbNullPointer = 8,
    TbPanic = 9,
}

/// Opaque system handle.
pub struct TbSystem {
    inner: AnySystem,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TbBoundParams {
    pub v: f64,
    pub w: f64,
    pub lambda: f64,
    pub p: f64,
    pub c: f64,
    /// Fixed `y` for `P2`/`P3`; zero or negative selects it automatically.
    pub y: f64,
    /// 0 winsorize, 1 truncate.
    pub mode: i32,
}

/// Bound values at one `z`. Quantities that are not available are NaN.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TbBounds {
    pub z: f64,
    pub delta_w: f64,
    pub p1: f64,
    pub p2: f64,
    pub p3: f64,
    pub p4: f64,
    pub p5: f64,
    pub best: f64,
    pub theorem: f64,
    pub corollary: f64,
    pub bikelis: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TbGauss {
    pub phi: f64,
    pub cdf: f64,
    pub mills: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TbStatus {
    match e {
        Error::InvalidInput(_) => TbStatus::TbInvalidInput,
        Error::Invariant(_) => TbStatus::TbInvariant,
        Error::Degenerate => TbStatus::TbDegenerate,
        Error::CapExceeded { .. } => TbStatus::TbCapExceeded,
        Error::Precondition(_) => TbStatus::TbPrecondition,
        Error::Parse(_) => TbStatus::TbParse,
        Error::Io(_) => TbStatus::TbIo,
    }
}

enum Fail {
    Lib(Error),
    Null(&'static str),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> TbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TbStatus::TbOk,
        Ok(Err(Fail::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            TbStatus::TbNullPointer
        }
        Err(_) => {
            set_error("internal panic".into());
            TbStatus::TbPanic
        }
    }
}

fn out<'a, T>(ptr: *mut T, what: &'static str) -> Result<&'a mut T, Fail> {
    // SAFETY: callers pass either NULL or a valid, writable pointer.
    unsafe { ptr.as_mut() }.ok_or(Fail::Null(what))
}

fn handle<'a>(ptr: *const TbSystem) -> Result<&'a TbSystem, Fail> {
    // SAFETY: non-null handles come from `tb_system_from_json`.
    unsafe { ptr.as_ref() }.ok_or(Fail::Null("system"))
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn tb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a system from NUL-terminated JSON text.
///
/// # Safety
/// `json` must be NULL or a valid C string; `out_system` must be NULL or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn tb_system_from_json(json: *const c_char, out_system: *mut *mut TbSystem) -> TbStatus {
    guard(|| {
        let slot = out(out_system, "out_system")?;
        *slot = std::ptr::null_mut();
        if json.is_null() {
            return Err(Fail::Null("json"));
        }
        // SAFETY: checked non-null above; the caller guarantees termination.
        let text = unsafe { CStr::from_ptr(json) }
            .to_str()
            .map_err(|e| Error::Parse(format!("JSON is not UTF-8: {e}")))?;
        let inner = parse_system(text)?;
        *slot = Box::into_raw(Box::new(TbSystem { inner }));
        Ok(())
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `system` must be NULL or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn tb_system_free(system: *mut TbSystem) {
    if !system.is_null() {
        // SAFETY: the handle was created by Box::into_raw and is freed once.
        drop(unsafe { Box::from_raw(system) });
    }
}

/// Number of summands.
///
/// # Safety
/// Pointers must be NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn tb_system_len(system: *const TbSystem, out_len: *mut usize) -> TbStatus {
    guard(|| {
        let n = match &handle(system)?.inner {
            AnySystem::Rational(s) => s.n(),
            AnySystem::Float(s) => s.n(),
        };
        *out(out_len, "out_len")? = n;
        Ok(())
    })
}

/// 1 if the system uses exact rational arithmetic, 0 for floats.
///
/// # Safety
/// Pointers must be NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn tb_system_is_exact(system: *const TbSystem, out_exact: *mut i32) -> TbStatus {
    guard(|| {
        let exact = matches!(handle(system)?.inner, AnySystem::Rational(_));
        *out(out_exact, "out_exact")? = i32::from(exact);
        Ok(())
    })
}

fn exact_arg(x: f64, name: &str) -> Result<Exact, Error> {
    Exact::from_f64(x).ok_or_else(|| Error::InvalidInput(format!("{name} must be finite, got {x}")))
}

/// `β_v = Σ E g(ξ_i/v)`.
///
/// # Safety
/// Pointers must be NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn tb_beta_v(system: *const TbSystem, v: f64, out_beta: *mut f64) -> TbStatus {
    guard(|| {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::InvalidInput(format!("v must be positive, got {v}")).into());
        }
        let beta = match &handle(system)?.inner {
            AnySystem::Rational(s) => funcs::beta_v(s, &exact_arg(v, "v")?).to_f64(),
            AnySystem::Float(s) => funcs::beta_v(s, &v),
        };
        *out(out_beta, "out_beta")? = beta;
        Ok(())
    })
}

/// `μ_p = Σ E|ξ_i|^p`.
///
/// # Safety
/// Pointers must be NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn tb_mu_p(system: *const TbSystem, p: f64, out_mu: *mut f64) -> TbStatus {
    guard(|| {
        let mu = match &handle(system)?.inner {
            AnySystem::Rational(s) => funcs::mu_p(s, p)?,
            AnySystem::Float(s) => funcs::mu_p(s, p)?,
        };
        *out(out_mu, "out_mu")? = mu;
        Ok(())
    })
}

/// Defaults: `v = w = 1`, `λ = 1/2`, `p = 2`, `c = 1`, automatic `y`,
/// winsorization.
///
/// # Safety
/// `out_params` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn tb_bound_params_default(out_params: *mut TbBoundParams) -> TbStatus {
    guard(|| {
        let d = BoundParams::default();
        *out(out_params, "out_params")? = TbBoundParams {
            v: d.v,
            w: d.w,
            lambda: d.lambda,
            p: d.p,
            c: d.c,
            y: 0.0,
            mode: 0,
        };
        Ok(())
    })
}

fn params_from_c(p: &TbBoundParams) -> Result<BoundParams, Error> {
    let mode = match p.mode {
        0 => WinsorMode::Winsorize,
        1 => WinsorMode::Truncate,
        m => return Err(Error::InvalidInput(format!("mode must be 0 or 1, got {m}"))),
    };
    let params = BoundParams {
        v: p.v,
        w: p.w,
        lambda: p.lambda,
        p: p.p,
        c: p.c,
        y: if p.y > 0.0 { YChoice::Fixed(p.y) } else { YChoice::Auto },
        mode,
        ..BoundParams::default()
    };
    params.validate()?;
    Ok(params)
}

fn bounds_to_c(r: &BoundReport) -> TbBounds {
    TbBounds {
        z: r.z,
        delta_w: r.delta_w.unwrap_or(f64::NAN),
        p1: r.p1,
        p2: r.p2,
        p3: r.p3,
        p4: r.p4.unwrap_or(f64::NAN),
        p5: r.p5.unwrap_or(f64::NAN),
        best: r.best,
        theorem: r.theorem_bound,
        corollary: r.corollary_bound,
        bikelis: r.bikelis_sum,
    }
}

/// All bounds at `z`. Unsupplied constants are taken as 1. `params` may be
/// NULL for the defaults.
///
/// # Safety
/// Pointers must be NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn tb_p_bounds(
    system: *const TbSystem,
    z: f64,
    params: *const TbBoundParams,
    out_bounds: *mut TbBounds,
) -> TbStatus {
    guard(|| {
        // SAFETY: NULL or a valid pointer, per the contract.
        let params = match unsafe { params.as_ref() } {
            Some(p) => params_from_c(p)?,
            None => BoundParams::default(),
        };
        let report = match &handle(system)?.inner {
            AnySystem::Rational(s) => bounds::p_bounds(s, &exact_arg(z, "z")?, &params)?,
            AnySystem::Float(s) => {
                if !z.is_finite() {
                    return Err(Error::InvalidInput(format!("z must be finite, got {z}")).into());
                }
                bounds::p_bounds(s, &z, &params)?
            }
        };
        *out(out_bounds, "out_bounds")? = bounds_to_c(&report);
        Ok(())
    })
}

/// `(e/((z−y)y))^{(z−y)/y}` capped at 1, for `z > y > 0`.
///
/// # Safety
/// `out_value` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn tb_bh_bound(z: f64, y: f64, out_value: *mut f64) -> TbStatus {
    guard(|| {
        *out(out_value, "out_value")? = bounds::bh_bound(z, y)?;
        Ok(())
    })
}

/// Standard normal density, distribution function and Mills ratio at `s`.
///
/// # Safety
/// `out_gauss` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn tb_std_normal(s: f64, out_gauss: *mut TbGauss) -> TbStatus {
    guard(|| {
        let g = gauss::std_normal(s)?;
        *out(out_gauss, "out_gauss")? = TbGauss {
            phi: g.phi,
            cdf: g.cdf,
            mills: g.mills,
        };
        Ok(())
    })
}

/// Stein function `f_z(s)`.
///
/// # Safety
/// `out_value` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn tb_stein_f(z: f64, s: f64, out_value: *mut f64) -> TbStatus {
    guard(|| {
        *out(out_value, "out_value")? = gauss::stein_f(z, s)?;
        Ok(())
    })
}

/// `2k/3 + g(u)/(3k²) − u`.
///
/// # Safety
/// `out_value` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn tb_young_delta(k: f64, u: f64, out_value: *mut f64) -> TbStatus {
    guard(|| {
        *out(out_value, "out_value")? = funcs::young_delta(k, u)?.delta;
        Ok(())
    })
}
