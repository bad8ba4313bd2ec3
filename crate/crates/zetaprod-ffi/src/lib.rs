//! C ABI over the zetaprod library: an opaque cache handle, flat error
//! codes, and out-parameter results so any language with a C FFI can drive
//! the product evaluators and the identity registry.
//!
//! Conventions: every function returns a `ZP_*` status code and writes its
//! result through an out pointer; no Rust panic crosses the boundary (all
//! entry points run under `catch_unwind` and report `ZP_ERR_NUMERICAL`
//! instead). The committed `include/zetaprod.h` header mirrors these
//! declarations; a test checks the two stay in sync symbol by symbol.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use zetaprod::afunc::{self, AFuncError};
use zetaprod::prodcore::EvalMethod;
use zetaprod::quad::{self, QuadError};
use zetaprod::specfun::ZetaCache;
use zetaprod::verify::{self, VerifyError, REGISTRY_IDS};

pub const ZP_OK: i32 = 0;
pub const ZP_ERR_NULL: i32 = 1;
pub const ZP_ERR_DOMAIN: i32 = 2;
pub const ZP_ERR_NUMERICAL: i32 = 3;
pub const ZP_ERR_UNKNOWN_ID: i32 = 4;
pub const ZP_ERR_BUFFER: i32 = 5;
pub const ZP_ERR_INVALID_ENUM: i32 = 6;

/// Opaque zeta cache handle; create with `zp_cache_new`, release with
/// `zp_cache_free`.
pub struct ZpCache(ZetaCache);

/// Flat result of one identity check. `pass` is 1 or 0.
#[repr(C)]
pub struct ZpCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub tolerance: f64,
    pub elapsed_ms: f64,
    pub terms: u64,
    pub pass: i32,
}

fn afunc_error_code(e: &AFuncError) -> i32 {
    match e {
        AFuncError::YDomain(_)
        | AFuncError::ClosedDomain(_)
        | AFuncError::TruncationDepth { .. }
        | AFuncError::TermsDomain(_) => ZP_ERR_DOMAIN,
        AFuncError::Product(_) => ZP_ERR_DOMAIN,
        AFuncError::Quadrature(q) => quad_error_code(q),
        AFuncError::ExtrapolationUnstable { .. } | AFuncError::Extrapolation(_) => {
            ZP_ERR_NUMERICAL
        }
    }
}

fn quad_error_code(e: &QuadError) -> i32 {
    match e {
        QuadError::Interval { .. } | QuadError::RArgument(_) => ZP_ERR_DOMAIN,
        QuadError::NonConvergence { .. } => ZP_ERR_NUMERICAL,
    }
}

/// Allocate a zeta cache. `max_k` of 0 selects the default depth. Returns
/// null only if allocation or initialization fails.
#[no_mangle]
pub extern "C" fn zp_cache_new(max_k: u32) -> *mut ZpCache {
    let built = catch_unwind(|| {
        if max_k == 0 {
            ZetaCache::with_default_depth()
        } else {
            ZetaCache::new(max_k as usize)
        }
    });
    match built {
        Ok(cache) => Box::into_raw(Box::new(ZpCache(cache))),
        Err(_) => std::ptr::null_mut(),
    }
}

/// Release a cache created by `zp_cache_new`. Null is accepted and ignored.
///
/// # Safety
/// `cache` must be null or a pointer returned by `zp_cache_new` that has not
/// already been freed.
#[no_mangle]
pub unsafe extern "C" fn zp_cache_free(cache: *mut ZpCache) {
    if !cache.is_null() {
        drop(Box::from_raw(cache));
    }
}

/// Compute pi from the corrected product. `method`: 0 naive, 1 tail-
/// corrected, 2 extrapolated, 3 series.
///
/// # Safety
/// `cache` must be a live `zp_cache_new` handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zp_pi_from_product(
    cache: *const ZpCache,
    method: i32,
    terms: u64,
    out: *mut f64,
) -> i32 {
    if cache.is_null() || out.is_null() {
        return ZP_ERR_NULL;
    }
    let method = match method {
        0 => EvalMethod::Naive,
        1 => EvalMethod::TailCorrected,
        2 => EvalMethod::Extrapolated,
        3 => EvalMethod::Series,
        _ => return ZP_ERR_INVALID_ENUM,
    };
    let cache = &(*cache).0;
    let outcome = catch_unwind(AssertUnwindSafe(|| {
        afunc::pi_from_product(cache, method, terms)
    }));
    match outcome {
        Ok(Ok(v)) => {
            *out = v;
            ZP_OK
        }
        Ok(Err(e)) => afunc_error_code(&e),
        Err(_) => ZP_ERR_NUMERICAL,
    }
}

/// The scaled remainder integral R(y) = 2y ∫₀^{1/√y} t log sin(πt) dt.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zp_r_of_y(y: f64, out: *mut f64) -> i32 {
    if out.is_null() {
        return ZP_ERR_NULL;
    }
    match catch_unwind(|| quad::r_of_y(y)) {
        Ok(Ok(v)) => {
            *out = v;
            ZP_OK
        }
        Ok(Err(e)) => quad_error_code(&e),
        Err(_) => ZP_ERR_NUMERICAL,
    }
}

/// Truncated series for log A(y) with K = `k` terms.
///
/// # Safety
/// `cache` must be a live `zp_cache_new` handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zp_log_a_series(
    cache: *const ZpCache,
    y: f64,
    k: u32,
    out: *mut f64,
) -> i32 {
    if cache.is_null() || out.is_null() {
        return ZP_ERR_NULL;
    }
    let cache = &(*cache).0;
    match catch_unwind(AssertUnwindSafe(|| afunc::log_a_series(cache, y, k as usize))) {
        Ok(Ok(v)) => {
            *out = v.log_a;
            ZP_OK
        }
        Ok(Err(e)) => afunc_error_code(&e),
        Err(_) => ZP_ERR_NUMERICAL,
    }
}

/// Run one registry check by id (NUL-terminated UTF-8) at scale 1.
/// A check that records an internal numerical failure reports
/// `ZP_ERR_NUMERICAL`; a failing comparison is still `ZP_OK` with
/// `pass = 0`.
///
/// # Safety
/// `cache` must be a live handle; `id` a NUL-terminated string; `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn zp_verify_check(
    cache: *const ZpCache,
    id: *const c_char,
    out: *mut ZpCheck,
) -> i32 {
    if cache.is_null() || id.is_null() || out.is_null() {
        return ZP_ERR_NULL;
    }
    let Ok(id) = CStr::from_ptr(id).to_str() else {
        return ZP_ERR_UNKNOWN_ID;
    };
    let cache = &(*cache).0;
    match catch_unwind(AssertUnwindSafe(|| verify::run_check(cache, id))) {
        Ok(Ok(check)) => {
            if check.method.starts_with("failed:") {
                return ZP_ERR_NUMERICAL;
            }
            *out = ZpCheck {
                lhs: check.lhs,
                rhs: check.rhs,
                abs_err: check.abs_err,
                rel_err: check.rel_err,
                tolerance: check.tolerance,
                elapsed_ms: check.elapsed_ms,
                terms: check.terms,
                pass: check.pass as i32,
            };
            ZP_OK
        }
        Ok(Err(VerifyError::UnknownId(_))) => ZP_ERR_UNKNOWN_ID,
        Err(_) => ZP_ERR_NUMERICAL,
    }
}

/// Number of checks in the registry.
#[no_mangle]
pub extern "C" fn zp_registry_len() -> usize {
    REGISTRY_IDS.len()
}

/// Copy the NUL-terminated id at `index` into `buf` (capacity `cap` bytes).
///
/// # Safety
/// `buf` must point to at least `cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn zp_registry_id(index: usize, buf: *mut c_char, cap: usize) -> i32 {
    if buf.is_null() {
        return ZP_ERR_NULL;
    }
    let Some(id) = REGISTRY_IDS.get(index) else {
        return ZP_ERR_DOMAIN;
    };
    if cap < id.len() + 1 {
        return ZP_ERR_BUFFER;
    }
    std::ptr::copy_nonoverlapping(id.as_ptr(), buf.cast::<u8>(), id.len());
    *buf.add(id.len()) = 0;
    ZP_OK
}
