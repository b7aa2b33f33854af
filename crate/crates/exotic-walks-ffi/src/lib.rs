//! C ABI for the exotic-walks toolkit.
//!
//! Conventions:
//! - every fallible call returns an [`EwStatus`] and writes results through
//!   out-pointers;
//! - profiles and quasi-isometry configs are opaque handles created and
//!   released by the matching `_new`/`_free` pair;
//! - words travel as NUL-terminated strings over the letters `a b c d`
//!   (empty string = the tree root);
//! - a thread-local message with the details of the last failure is
//!   available via [`ew_last_error_message`].
//!
//! The header `include/exotic_walks.h` is regenerated by the build script.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use exotic_walks::budget::Budget;
use exotic_walks::diagnostics;
use exotic_walks::profiles::{self, NoCltSchedule, NoDriftSchedule, ProfileError};
use exotic_walks::qi::{self, QiConfig, QiError};
use exotic_walks::radial::{self, LambdaProfile, RadialError};
use exotic_walks::tameness::{self, TamenessError};
use exotic_walks::word::{WordAddress, WordError};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EwStatus {
    EwOk = 0,
    EwInvalidParameter = 1,
    EwBudgetExceeded = 2,
    EwCapacityExceeded = 3,
    EwInvariantViolation = 4,
    EwNullPointer = 5,
    EwBufferTooSmall = 6,
    EwInvalidUtf8 = 7,
    EwPanic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn fail(status: EwStatus, msg: impl Into<String>) -> EwStatus {
    set_error(msg);
    status
}

fn from_radial(e: RadialError) -> EwStatus {
    let status = match &e {
        RadialError::BudgetExceeded { .. } => EwStatus::EwBudgetExceeded,
        RadialError::InvalidParameter(_) => EwStatus::EwInvalidParameter,
    };
    fail(status, e.to_string())
}

fn from_profile(e: ProfileError) -> EwStatus {
    fail(EwStatus::EwInvalidParameter, e.to_string())
}

fn from_word(e: WordError) -> EwStatus {
    let status = match &e {
        WordError::CapacityExceeded { .. } => EwStatus::EwCapacityExceeded,
        WordError::InvalidAddress(_) => EwStatus::EwInvalidParameter,
    };
    fail(status, e.to_string())
}

fn from_qi(e: QiError) -> EwStatus {
    match e {
        QiError::InvalidParameter(_) | QiError::InvalidRelativeWord(_) => {
            fail(EwStatus::EwInvalidParameter, e.to_string())
        }
        QiError::BudgetExceeded { .. } => fail(EwStatus::EwBudgetExceeded, e.to_string()),
        QiError::Word(w) => from_word(w),
        QiError::Radial(r) => from_radial(r),
    }
}

fn from_tameness(e: TamenessError) -> EwStatus {
    match e {
        TamenessError::InvalidParameter(_) => fail(EwStatus::EwInvalidParameter, e.to_string()),
        TamenessError::SymmetryViolation(_) => fail(EwStatus::EwInvariantViolation, e.to_string()),
        TamenessError::Radial(r) => from_radial(r),
        TamenessError::Word(w) => from_word(w),
    }
}

/// Shields the C boundary from panics.
fn guarded(f: impl FnOnce() -> EwStatus) -> EwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(EwStatus::EwPanic, "internal panic"),
    }
}

/// Opaque handle to a λ-profile.
pub struct EwProfile {
    inner: LambdaProfile,
}

/// Opaque handle to a quasi-isometry configuration.
pub struct EwQiConfig {
    inner: QiConfig,
}

unsafe fn write_str(buf: *mut c_char, buf_len: usize, s: &str) -> EwStatus {
    if buf.is_null() {
        return fail(EwStatus::EwNullPointer, "output buffer is null");
    }
    let bytes = s.as_bytes();
    if buf_len < bytes.len() + 1 {
        return fail(
            EwStatus::EwBufferTooSmall,
            format!("need {} bytes, got {buf_len}", bytes.len() + 1),
        );
    }
    std::ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, bytes.len());
    *buf.add(bytes.len()) = 0;
    EwStatus::EwOk
}

unsafe fn read_word(word: *const c_char) -> Result<WordAddress, EwStatus> {
    if word.is_null() {
        return Err(fail(EwStatus::EwNullPointer, "word is null"));
    }
    let s = CStr::from_ptr(word)
        .to_str()
        .map_err(|_| fail(EwStatus::EwInvalidUtf8, "word is not valid UTF-8"))?;
    WordAddress::parse(s).map_err(from_word)
}

/// Copies the description of the most recent failure on this thread into
/// `buf` (NUL-terminated).
///
/// # Safety
/// `buf` must point to at least `buf_len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn ew_last_error_message(buf: *mut c_char, buf_len: usize) -> EwStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    write_str(buf, buf_len, &msg)
}

/// Library version as a NUL-terminated string.
///
/// # Safety
/// `buf` must point to at least `buf_len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn ew_version(buf: *mut c_char, buf_len: usize) -> EwStatus {
    write_str(buf, buf_len, env!("CARGO_PKG_VERSION"))
}

// ---------------------------------------------------------------------------
// Profiles
// ---------------------------------------------------------------------------

/// Constant profile λ_j ≡ lambda (1/4 is the simple random walk).
///
/// # Safety
/// `out` must be a valid pointer; the returned handle must be released with
/// [`ew_profile_free`].
#[no_mangle]
pub unsafe extern "C" fn ew_profile_new_const(lambda: f64, out: *mut *mut EwProfile) -> EwStatus {
    guarded(|| {
        if out.is_null() {
            return fail(EwStatus::EwNullPointer, "out is null");
        }
        match LambdaProfile::constant(lambda) {
            Ok(p) => {
                *out = Box::into_raw(Box::new(EwProfile { inner: p }));
                EwStatus::EwOk
            }
            Err(e) => from_radial(e),
        }
    })
}

/// Drift-oscillation profile with literal boundaries N_s = 2^(s²).
///
/// # Safety
/// As [`ew_profile_new_const`].
#[no_mangle]
pub unsafe extern "C" fn ew_profile_new_no_drift_literal(
    lambda: f64,
    out: *mut *mut EwProfile,
) -> EwStatus {
    guarded(|| {
        if out.is_null() {
            return fail(EwStatus::EwNullPointer, "out is null");
        }
        match NoDriftSchedule::literal(lambda) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(EwProfile { inner: profiles::no_drift_profile(s) }));
                EwStatus::EwOk
            }
            Err(e) => from_profile(e),
        }
    })
}

/// Drift-oscillation profile with scaled boundaries N_s = n0·base^s.
///
/// # Safety
/// As [`ew_profile_new_const`].
#[no_mangle]
pub unsafe extern "C" fn ew_profile_new_no_drift_scaled(
    lambda: f64,
    n0: u64,
    base: u64,
    out: *mut *mut EwProfile,
) -> EwStatus {
    guarded(|| {
        if out.is_null() {
            return fail(EwStatus::EwNullPointer, "out is null");
        }
        match NoDriftSchedule::scaled(lambda, n0, base) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(EwProfile { inner: profiles::no_drift_profile(s) }));
                EwStatus::EwOk
            }
            Err(e) => from_profile(e),
        }
    })
}

/// CLT-failure profile: λ inside the bands centered at N_s/2, 1/4 outside.
///
/// # Safety
/// As [`ew_profile_new_const`].
#[no_mangle]
pub unsafe extern "C" fn ew_profile_new_no_clt(
    lambda: f64,
    n1: u64,
    band_exponent: f64,
    out: *mut *mut EwProfile,
) -> EwStatus {
    guarded(|| {
        if out.is_null() {
            return fail(EwStatus::EwNullPointer, "out is null");
        }
        match NoCltSchedule::new(lambda, n1, band_exponent) {
            Ok(s) => {
                *out = Box::into_raw(Box::new(EwProfile { inner: profiles::no_clt_profile(s) }));
                EwStatus::EwOk
            }
            Err(e) => from_profile(e),
        }
    })
}

/// Releases a profile handle. Null is a no-op.
///
/// # Safety
/// `profile` must be null or a handle obtained from a profile constructor,
/// not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ew_profile_free(profile: *mut EwProfile) {
    if !profile.is_null() {
        drop(Box::from_raw(profile));
    }
}

/// λ_j of the profile (j ≥ 1).
///
/// # Safety
/// `profile` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ew_profile_lambda_at(
    profile: *const EwProfile,
    j: u64,
    out: *mut f64,
) -> EwStatus {
    guarded(|| {
        if profile.is_null() || out.is_null() {
            return fail(EwStatus::EwNullPointer, "profile or out is null");
        }
        if j == 0 {
            return fail(EwStatus::EwInvalidParameter, "lambda is defined for j >= 1");
        }
        *out = (*profile).inner.lambda_at(j);
        EwStatus::EwOk
    })
}

// ---------------------------------------------------------------------------
// Radial chain
// ---------------------------------------------------------------------------

/// E[X_n] for the profile's distance chain.
///
/// # Safety
/// `profile` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ew_expected_distance(
    profile: *const EwProfile,
    n: u64,
    out: *mut f64,
) -> EwStatus {
    guarded(|| {
        if profile.is_null() || out.is_null() {
            return fail(EwStatus::EwNullPointer, "profile or out is null");
        }
        match radial::expected_distance(n, &(*profile).inner, &Budget::from_env()) {
            Ok(v) => {
                *out = v;
                EwStatus::EwOk
            }
            Err(e) => from_radial(e),
        }
    })
}

/// Writes P[X_n = j] for j = 0..=n into `out[0..=n]`; `out_len` must be at
/// least n+1.
///
/// # Safety
/// `profile` must be a live handle; `out` must point to `out_len` doubles.
#[no_mangle]
pub unsafe extern "C" fn ew_distribution_masses(
    profile: *const EwProfile,
    n: u64,
    out: *mut f64,
    out_len: usize,
) -> EwStatus {
    guarded(|| {
        if profile.is_null() || out.is_null() {
            return fail(EwStatus::EwNullPointer, "profile or out is null");
        }
        if out_len < n as usize + 1 {
            return fail(
                EwStatus::EwBufferTooSmall,
                format!("need {} doubles, got {out_len}", n + 1),
            );
        }
        match radial::distribution_at(n, &(*profile).inner, &Budget::from_env()) {
            Ok(d) => {
                for j in 0..=n {
                    *out.add(j as usize) = d.mass(j);
                }
                EwStatus::EwOk
            }
            Err(e) => from_radial(e),
        }
    })
}

/// Residual of the expectation recurrence between times n−k and n.
///
/// # Safety
/// `profile` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ew_lemma33_residual(
    profile: *const EwProfile,
    n: u64,
    k: u64,
    out: *mut f64,
) -> EwStatus {
    guarded(|| {
        if profile.is_null() || out.is_null() {
            return fail(EwStatus::EwNullPointer, "profile or out is null");
        }
        match radial::lemma33_residual(n, k, &(*profile).inner, &Budget::from_env()) {
            Ok(v) => {
                *out = v;
                EwStatus::EwOk
            }
            Err(e) => from_radial(e),
        }
    })
}

/// Σ_{h=0}^{n_max} P[X_h = 0].
///
/// # Safety
/// `profile` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ew_return_mass_sum(
    profile: *const EwProfile,
    n_max: u64,
    out: *mut f64,
) -> EwStatus {
    guarded(|| {
        if profile.is_null() || out.is_null() {
            return fail(EwStatus::EwNullPointer, "profile or out is null");
        }
        match radial::return_mass_sum(n_max, &(*profile).inner, &Budget::from_env()) {
            Ok(v) => {
                *out = v;
                EwStatus::EwOk
            }
            Err(e) => from_radial(e),
        }
    })
}

/// Probability that the up-biased walk hits 0 by time n_max from `start`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ew_hitting_zero_probability(
    start: u64,
    up_prob: f64,
    n_max: u64,
    out: *mut f64,
) -> EwStatus {
    guarded(|| {
        if out.is_null() {
            return fail(EwStatus::EwNullPointer, "out is null");
        }
        match radial::hitting_zero_probability(start, up_prob, n_max) {
            Ok(v) => {
                *out = v;
                EwStatus::EwOk
            }
            Err(e) => from_radial(e),
        }
    })
}

/// Hoeffding bound e^{−2nδ²}.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ew_chernoff_bound(
    n: u64,
    mu: f64,
    delta: f64,
    out: *mut f64,
) -> EwStatus {
    guarded(|| {
        if out.is_null() {
            return fail(EwStatus::EwNullPointer, "out is null");
        }
        match tameness::chernoff_bound(n, mu, delta) {
            Ok(v) => {
                *out = v;
                EwStatus::EwOk
            }
            Err(e) => from_tameness(e),
        }
    })
}

/// KS distance and CLT window mass of the normalized law at time n.
///
/// # Safety
/// `profile` must be a live handle; the out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ew_clt_diagnostics(
    profile: *const EwProfile,
    n: u64,
    ell: f64,
    sigma: f64,
    z: f64,
    out_interval_mass: *mut f64,
    out_ks_distance: *mut f64,
) -> EwStatus {
    guarded(|| {
        if profile.is_null() || out_interval_mass.is_null() || out_ks_distance.is_null() {
            return fail(EwStatus::EwNullPointer, "profile or out is null");
        }
        match diagnostics::clt_diagnostics(&(*profile).inner, n, ell, sigma, z, &Budget::from_env())
        {
            Ok(d) => {
                *out_interval_mass = d.interval_mass;
                *out_ks_distance = d.ks_distance;
                EwStatus::EwOk
            }
            Err(diagnostics::DiagnosticsError::Radial(e)) => from_radial(e),
            Err(diagnostics::DiagnosticsError::Qi(e)) => from_qi(e),
            Err(e) => fail(EwStatus::EwInvalidParameter, e.to_string()),
        }
    })
}

// ---------------------------------------------------------------------------
// Quasi-isometry
// ---------------------------------------------------------------------------

/// Creates a quasi-isometry configuration (block depth C ≥ 4, base ≥ 2).
///
/// # Safety
/// `out` must be a valid pointer; release with [`ew_qi_config_free`].
#[no_mangle]
pub unsafe extern "C" fn ew_qi_config_new(
    c: u32,
    x_set_base: u64,
    out: *mut *mut EwQiConfig,
) -> EwStatus {
    guarded(|| {
        if out.is_null() {
            return fail(EwStatus::EwNullPointer, "out is null");
        }
        match QiConfig::new(c, x_set_base) {
            Ok(cfg) => {
                *out = Box::into_raw(Box::new(EwQiConfig { inner: cfg }));
                EwStatus::EwOk
            }
            Err(e) => from_qi(e),
        }
    })
}

/// Releases a configuration handle. Null is a no-op.
///
/// # Safety
/// `cfg` must be null or a handle from [`ew_qi_config_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ew_qi_config_free(cfg: *mut EwQiConfig) {
    if !cfg.is_null() {
        drop(Box::from_raw(cfg));
    }
}

/// D_X for block depth c, as an exact fraction.
///
/// # Safety
/// The out-pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ew_qi_dx(c: u32, out_num: *mut i64, out_den: *mut i64) -> EwStatus {
    guarded(|| {
        if out_num.is_null() || out_den.is_null() {
            return fail(EwStatus::EwNullPointer, "out is null");
        }
        match qi::d_x(c) {
            Ok(q) => {
                use num_traits::ToPrimitive;
                match (q.numer().to_i64(), q.denom().to_i64()) {
                    (Some(n), Some(d)) => {
                        *out_num = n;
                        *out_den = d;
                        EwStatus::EwOk
                    }
                    _ => fail(EwStatus::EwInvalidParameter, "D_X does not fit in i64"),
                }
            }
            Err(e) => from_qi(e),
        }
    })
}

/// Image of `word` under f, written into `out` as a NUL-terminated string.
///
/// # Safety
/// `cfg` must be a live handle; `word` a NUL-terminated string; `out` must
/// point to `out_len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn ew_qi_apply_f(
    cfg: *const EwQiConfig,
    word: *const c_char,
    out: *mut c_char,
    out_len: usize,
) -> EwStatus {
    guarded(|| {
        if cfg.is_null() {
            return fail(EwStatus::EwNullPointer, "cfg is null");
        }
        let w = match read_word(word) {
            Ok(w) => w,
            Err(status) => return status,
        };
        let image = qi::apply_f(&w, &(*cfg).inner);
        write_str(out, out_len, &image.to_string())
    })
}

/// Preimage of `word` under f.
///
/// # Safety
/// As [`ew_qi_apply_f`].
#[no_mangle]
pub unsafe extern "C" fn ew_qi_invert_f(
    cfg: *const EwQiConfig,
    word: *const c_char,
    out: *mut c_char,
    out_len: usize,
) -> EwStatus {
    guarded(|| {
        if cfg.is_null() {
            return fail(EwStatus::EwNullPointer, "cfg is null");
        }
        let w = match read_word(word) {
            Ok(w) => w,
            Err(status) => return status,
        };
        let pre = qi::invert_f(&w, &(*cfg).inner);
        write_str(out, out_len, &pre.to_string())
    })
}

/// Exact maximum distortion ratio over all pairs of the ball.
///
/// # Safety
/// `cfg` must be a live handle; `out_max_ratio` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ew_qi_verify_ball(
    cfg: *const EwQiConfig,
    ball_radius: u32,
    out_max_ratio: *mut f64,
) -> EwStatus {
    guarded(|| {
        if cfg.is_null() || out_max_ratio.is_null() {
            return fail(EwStatus::EwNullPointer, "cfg or out is null");
        }
        match qi::verify_qi_ball(ball_radius, &(*cfg).inner, &Budget::from_env()) {
            Ok(report) => {
                *out_max_ratio = report.max_ratio;
                EwStatus::EwOk
            }
            Err(e) => from_qi(e),
        }
    })
}

/// E[d(1, f(Z_n))] for the push-forward of the simple random walk.
///
/// # Safety
/// `cfg` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ew_pushforward_expected_distance(
    cfg: *const EwQiConfig,
    n: u64,
    out: *mut f64,
) -> EwStatus {
    guarded(|| {
        if cfg.is_null() || out.is_null() {
            return fail(EwStatus::EwNullPointer, "cfg or out is null");
        }
        match qi::pushforward_expected_distance(n, &(*cfg).inner, &Budget::from_env()) {
            Ok(v) => {
                *out = v;
                EwStatus::EwOk
            }
            Err(e) => from_qi(e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn last_error() -> String {
        let mut buf = vec![0u8; 256];
        unsafe { ew_last_error_message(buf.as_mut_ptr() as *mut c_char, buf.len()) };
        let cs = unsafe { CStr::from_ptr(buf.as_ptr() as *const c_char) };
        cs.to_string_lossy().into_owned()
    }

    #[test]
    fn profile_lifecycle_and_expectation() {
        unsafe {
            let mut p: *mut EwProfile = std::ptr::null_mut();
            assert_eq!(ew_profile_new_const(0.25, &mut p), EwStatus::EwOk);
            let mut e = 0.0f64;
            assert_eq!(ew_expected_distance(p, 2, &mut e), EwStatus::EwOk);
            assert!((e - 1.5).abs() < 1e-12);
            let mut lam = 0.0;
            assert_eq!(ew_profile_lambda_at(p, 5, &mut lam), EwStatus::EwOk);
            assert_eq!(lam, 0.25);
            ew_profile_free(p);
        }
    }

    #[test]
    fn invalid_parameters_are_reported() {
        unsafe {
            let mut p: *mut EwProfile = std::ptr::null_mut();
            assert_eq!(
                ew_profile_new_const(1.5, &mut p),
                EwStatus::EwInvalidParameter
            );
            assert!(last_error().contains("1.5"));
            assert_eq!(
                ew_profile_new_no_clt(0.05, 10, 5.0 / 6.0, &mut p),
                EwStatus::EwInvalidParameter
            );
        }
    }

    #[test]
    fn distribution_buffer_contract() {
        unsafe {
            let mut p: *mut EwProfile = std::ptr::null_mut();
            assert_eq!(ew_profile_new_const(0.25, &mut p), EwStatus::EwOk);
            let mut buf = vec![0.0f64; 3];
            assert_eq!(
                ew_distribution_masses(p, 2, buf.as_mut_ptr(), 2),
                EwStatus::EwBufferTooSmall
            );
            assert_eq!(
                ew_distribution_masses(p, 2, buf.as_mut_ptr(), 3),
                EwStatus::EwOk
            );
            assert!((buf[0] - 0.25).abs() < 1e-15);
            assert_eq!(buf[1], 0.0);
            assert!((buf[2] - 0.75).abs() < 1e-15);
            ew_profile_free(p);
        }
    }

    #[test]
    fn qi_round_trip_through_strings() {
        unsafe {
            let mut cfg: *mut EwQiConfig = std::ptr::null_mut();
            assert_eq!(ew_qi_config_new(4, 8, &mut cfg), EwStatus::EwOk);
            let word = std::ffi::CString::new("aaaacabb").unwrap();
            let mut out = vec![0u8; 64];
            assert_eq!(
                ew_qi_apply_f(cfg, word.as_ptr(), out.as_mut_ptr() as *mut c_char, out.len()),
                EwStatus::EwOk
            );
            let image = CStr::from_ptr(out.as_ptr() as *const c_char)
                .to_string_lossy()
                .into_owned();
            assert_eq!(image, "aaaabbbcabb");
            let img_c = std::ffi::CString::new(image).unwrap();
            assert_eq!(
                ew_qi_invert_f(cfg, img_c.as_ptr(), out.as_mut_ptr() as *mut c_char, out.len()),
                EwStatus::EwOk
            );
            assert_eq!(
                CStr::from_ptr(out.as_ptr() as *const c_char).to_string_lossy(),
                "aaaacabb"
            );
            ew_qi_config_free(cfg);
        }
    }

    #[test]
    fn dx_and_verify() {
        unsafe {
            let (mut num, mut den) = (0i64, 0i64);
            assert_eq!(ew_qi_dx(4, &mut num, &mut den), EwStatus::EwOk);
            assert_eq!((num, den), (68, 81));

            let mut cfg: *mut EwQiConfig = std::ptr::null_mut();
            assert_eq!(ew_qi_config_new(4, 8, &mut cfg), EwStatus::EwOk);
            let mut ratio = 0.0f64;
            assert_eq!(ew_qi_verify_ball(cfg, 8, &mut ratio), EwStatus::EwOk);
            assert!(ratio <= 4.0 && ratio > 1.0);
            ew_qi_config_free(cfg);
        }
    }

    #[test]
    fn hitting_and_chernoff_passthrough() {
        unsafe {
            let mut v = 0.0f64;
            assert_eq!(ew_hitting_zero_probability(1, 0.75, 4000, &mut v), EwStatus::EwOk);
            assert!((v - 1.0 / 3.0).abs() < 1e-3);
            assert_eq!(
                ew_hitting_zero_probability(1, 0.4, 10, &mut v),
                EwStatus::EwInvalidParameter
            );
            assert_eq!(ew_chernoff_bound(18, 0.5, 1.0 / 6.0, &mut v), EwStatus::EwOk);
            assert!((v - (-1.0f64).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn clt_passthrough() {
        unsafe {
            let mut p: *mut EwProfile = std::ptr::null_mut();
            assert_eq!(ew_profile_new_const(0.25, &mut p), EwStatus::EwOk);
            let (mut mass, mut ks) = (0.0f64, 0.0f64);
            assert_eq!(
                ew_clt_diagnostics(p, 400, 0.5, 0.75f64.sqrt(), 2.0, &mut mass, &mut ks),
                EwStatus::EwOk
            );
            assert!(mass > 0.9 && mass < 1.0);
            assert!(ks < 0.1);
            ew_profile_free(p);
        }
    }

    #[test]
    fn null_pointers_do_not_crash() {
        unsafe {
            let mut v = 0.0f64;
            assert_eq!(
                ew_expected_distance(std::ptr::null(), 5, &mut v),
                EwStatus::EwNullPointer
            );
            assert_eq!(
                ew_profile_new_const(0.25, std::ptr::null_mut()),
                EwStatus::EwNullPointer
            );
            ew_profile_free(std::ptr::null_mut());
        }
    }
}
