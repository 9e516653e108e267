//! C ABI over `ldiv`.
//!
//! Families cross the boundary as opaque `LdivFamily` handles created by the
//! constructors here and released with `ldiv_family_free`. Every fallible
//! function returns an `LdivStatus`; on failure a message is available from
//! `ldiv_last_error` until the next call on the same thread. Strings returned
//! to the caller are released with `ldiv_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ldiv::arith::Prime;
use ldiv::constructions::s_family;
use ldiv::family::{format_family, is_k_closed, is_weakly_k_closed, parse_family, SetFamily};
use ldiv::structure::structure_decompose;
use ldiv::Error;

/// Result codes shared by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LdivStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    /// An internal consistency check failed or a budget was exhausted.
    Internal = 4,
    /// A Rust panic was caught at the boundary.
    Panic = 5,
}

/// Opaque family handle.
pub struct LdivFamily {
    family: SetFamily,
}

/// Summary of the structure decomposition of a family over one prime.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LdivStructureSummary {
    /// `dim <F>_p`.
    pub d: usize,
    /// `dim <F ∪ F·F>_p - d`.
    pub h: usize,
    /// Number of coordinates in the residual part `B`.
    pub b_size: usize,
    /// `dim <F|_B>_p`; never more than `2h`.
    pub dim_fb: usize,
    /// Every certificate check passed.
    pub checks_pass: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> LdivStatus {
    match e {
        Error::Parse { .. } => LdivStatus::Parse,
        Error::Reduction(_)
        | Error::Structure(_)
        | Error::Budget { .. }
        | Error::SearchBudget { .. } => LdivStatus::Internal,
        _ => LdivStatus::InvalidArgument,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (LdivStatus, String)>) -> LdivStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LdivStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside ldiv");
            LdivStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (LdivStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (LdivStatus, String) {
    (LdivStatus::NullPointer, format!("{what} is null"))
}

unsafe fn family_ref<'a>(handle: *const LdivFamily) -> Result<&'a SetFamily, (LdivStatus, String)> {
    handle
        .as_ref()
        .map(|h| &h.family)
        .ok_or_else(|| null("family handle"))
}

fn into_handle(family: SetFamily) -> *mut LdivFamily {
    Box::into_raw(Box::new(LdivFamily { family }))
}

/// Message describing the last failure on this thread, or null. The pointer
/// stays valid until the next `ldiv_*` call on the same thread.
#[no_mangle]
pub extern "C" fn ldiv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds `S(n, l)`, the unions of the first `floor(n / l)` blocks of `l`
/// consecutive coordinates.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn ldiv_family_s(
    n: usize,
    l: usize,
    out: *mut *mut LdivFamily,
) -> LdivStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        if l == 0 {
            return Err((
                LdivStatus::InvalidArgument,
                "block size must be positive".into(),
            ));
        }
        *out = into_handle(s_family(n, l));
        Ok(())
    })
}

/// Parses a family file (`n=<int> mod=<int>` header, one 0/1 string per
/// member). The header modulus is written to `modulus_out` when it is not
/// null.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be valid for one
/// handle; `modulus_out` is null or valid for one `uint32_t`.
#[no_mangle]
pub unsafe extern "C" fn ldiv_family_parse(
    text: *const c_char,
    out: *mut *mut LdivFamily,
    modulus_out: *mut u32,
) -> LdivStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| (LdivStatus::InvalidArgument, "text is not UTF-8".to_string()))?;
        let file = parse_family(text).map_err(lib_err)?;
        if let Some(m) = modulus_out.as_mut() {
            *m = file.modulus;
        }
        *out = into_handle(file.family);
        Ok(())
    })
}

/// Renders the family in the canonical file format. Release the string with
/// `ldiv_string_free`.
///
/// # Safety
/// `family` must be a live handle; `out` must be valid for one pointer.
#[no_mangle]
pub unsafe extern "C" fn ldiv_family_format(
    family: *const LdivFamily,
    modulus: u32,
    out: *mut *mut c_char,
) -> LdivStatus {
    guard(|| {
        let f = family_ref(family)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        if modulus < 2 {
            return Err((
                LdivStatus::InvalidArgument,
                "modulus must be at least 2".into(),
            ));
        }
        let s = CString::new(format_family(f, modulus)).expect("family files contain no NUL");
        *out = s.into_raw();
        Ok(())
    })
}

/// Number of members, or 0 for a null handle.
///
/// # Safety
/// `family` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ldiv_family_len(family: *const LdivFamily) -> usize {
    family.as_ref().map_or(0, |h| h.family.len())
}

/// Ground-set size, or 0 for a null handle.
///
/// # Safety
/// `family` is null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ldiv_family_ground_size(family: *const LdivFamily) -> usize {
    family.as_ref().map_or(0, |h| h.family.ground_size())
}

/// `dim <F>_p` for a prime `p`.
///
/// # Safety
/// `family` must be a live handle; `out` must be valid for one `size_t`.
#[no_mangle]
pub unsafe extern "C" fn ldiv_family_dim_span(
    family: *const LdivFamily,
    p: u32,
    out: *mut usize,
) -> LdivStatus {
    guard(|| {
        let f = family_ref(family)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let prime = Prime::new(p).map_err(lib_err)?;
        *out = f.dim_span(prime).map_err(lib_err)?;
        Ok(())
    })
}

/// Whether every intersection of at most `k` members (repetition allowed)
/// has size divisible by `l`.
///
/// # Safety
/// `family` must be a live handle; `out` must be valid for one `bool`.
#[no_mangle]
pub unsafe extern "C" fn ldiv_family_is_k_closed(
    family: *const LdivFamily,
    k: u64,
    l: u32,
    out: *mut bool,
) -> LdivStatus {
    guard(|| {
        let f = family_ref(family)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = is_k_closed(f, k, l).map_err(lib_err)?.holds;
        Ok(())
    })
}

/// Whether every intersection of exactly `k` distinct members has size
/// divisible by `l`.
///
/// # Safety
/// `family` must be a live handle; `out` must be valid for one `bool`.
#[no_mangle]
pub unsafe extern "C" fn ldiv_family_is_weakly_k_closed(
    family: *const LdivFamily,
    k: u64,
    l: u32,
    out: *mut bool,
) -> LdivStatus {
    guard(|| {
        let f = family_ref(family)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = is_weakly_k_closed(f, k, l).map_err(lib_err)?.holds;
        Ok(())
    })
}

/// Structure decomposition over the prime `p`.
///
/// # Safety
/// `family` must be a live handle; `out` must be valid for one summary.
#[no_mangle]
pub unsafe extern "C" fn ldiv_structure_summary(
    family: *const LdivFamily,
    p: u32,
    out: *mut LdivStructureSummary,
) -> LdivStatus {
    guard(|| {
        let f = family_ref(family)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let prime = Prime::new(p).map_err(lib_err)?;
        let r = structure_decompose(f, prime).map_err(lib_err)?;
        *out = LdivStructureSummary {
            d: r.d,
            h: r.h,
            b_size: r.b.len(),
            dim_fb: r.dim_fb,
            checks_pass: r.all_checks(),
        };
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `family` is null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ldiv_family_free(family: *mut LdivFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` is null or a string from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ldiv_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
