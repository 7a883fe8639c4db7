//! C ABI for the covercount library.
//!
//! Conventions:
//! - Every fallible entry point returns a [`CcStatus`]; zero means success.
//! - Objects live behind opaque pointers created and destroyed here; never
//!   free them with anything but the matching `*_free` function.
//! - Numbers that can exceed 64 bits come back as decimal strings owned by
//!   this library; release them with [`cc_string_free`].
//! - After a non-zero status, [`cc_last_error_message`] returns a copy of
//!   the failure message for the current thread.
//! - Every entry point catches panics and converts them to a status, so no
//!   unwinding ever crosses the language boundary.

use covercount::{constant_field_cover, CoverInvariants, IsogenyClassLabel, LPolynomial};
use num_bigint::BigInt;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Result of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CcStatus {
    /// The call succeeded.
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// The input was well-formed but mathematically invalid;
    /// `cc_last_error_message` has the details.
    DomainError = 3,
    /// An internal invariant failed; the library state is still sound.
    Panic = 4,
}

/// Opaque handle to an L-polynomial.
pub struct CcLPolynomial {
    inner: LPolynomial,
}

/// Opaque handle to computed cover invariants.
pub struct CcCover {
    inner: CoverInvariants,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    let stored = CString::new(text).expect("NUL bytes were just stripped");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(stored));
}

fn guarded(f: impl FnOnce() -> CcStatus) -> CcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            CcStatus::Panic
        }
    }
}

/// Reads a caller-supplied C string, reporting null and encoding errors.
///
/// # Safety
/// `text` must be null or point to a NUL-terminated string.
unsafe fn read_str<'a>(text: *const c_char, what: &str) -> Result<&'a str, CcStatus> {
    if text.is_null() {
        set_error(format!("{what} pointer is null"));
        return Err(CcStatus::NullArgument);
    }
    unsafe { CStr::from_ptr(text) }.to_str().map_err(|_| {
        set_error(format!("{what} is not valid UTF-8"));
        CcStatus::InvalidUtf8
    })
}

/// Clears and validates an out-pointer slot.
///
/// # Safety
/// `out` must be null or point to writable memory for a `T`.
unsafe fn out_slot<'a, T>(out: *mut T, what: &str) -> Result<&'a mut T, CcStatus> {
    match unsafe { out.as_mut() } {
        Some(slot) => Ok(slot),
        None => {
            set_error(format!("{what} out-pointer is null"));
            Err(CcStatus::NullArgument)
        }
    }
}

fn string_out(slot: &mut *mut c_char, value: String) -> CcStatus {
    let owned = CString::new(value).expect("decimal strings contain no NUL");
    *slot = owned.into_raw();
    CcStatus::Ok
}

fn handle<'a, T>(pointer: *const T, what: &str) -> Result<&'a T, CcStatus> {
    if pointer.is_null() {
        set_error(format!("{what} handle is null"));
        return Err(CcStatus::NullArgument);
    }
    Ok(unsafe { &*pointer })
}

/// Library version as a static NUL-terminated string; do not free it.
#[no_mangle]
pub extern "C" fn cc_version() -> *const c_char {
    static VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\0");
    VERSION.as_ptr().cast()
}

/// Copy of the current thread's last error message, or null if no call
/// has failed yet. Free the copy with `cc_string_free`.
#[no_mangle]
pub extern "C" fn cc_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map(|text| text.clone().into_raw())
            .unwrap_or(std::ptr::null_mut())
    })
}

/// Releases a string returned by this library. Null is a no-op.
///
/// # Safety
/// `text` must be null or a pointer previously returned by a `covercount`
/// function that documents `cc_string_free` as its deallocator, and it must
/// not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cc_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(unsafe { CString::from_raw(text) });
    }
}

/// Parses an isogeny-class label (such as `4.2.d_i_o_x`) into an
/// L-polynomial handle. On success `*out` owns the new object; release it
/// with `cc_lpoly_free`.
///
/// # Safety
/// `label` must be null or NUL-terminated; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cc_lpoly_parse_label(
    label: *const c_char,
    out: *mut *mut CcLPolynomial,
) -> CcStatus {
    guarded(|| {
        let slot = match unsafe { out_slot(out, "lpoly") } {
            Ok(slot) => slot,
            Err(status) => return status,
        };
        *slot = std::ptr::null_mut();
        let text = match unsafe { read_str(label, "label") } {
            Ok(text) => text,
            Err(status) => return status,
        };
        match IsogenyClassLabel::parse(text).and_then(|parsed| parsed.lpolynomial()) {
            Ok(lpoly) => {
                *slot = Box::into_raw(Box::new(CcLPolynomial { inner: lpoly }));
                CcStatus::Ok
            }
            Err(error) => {
                set_error(error.to_string());
                CcStatus::DomainError
            }
        }
    })
}

/// Builds an L-polynomial over F_q from the full coefficient list
/// `a_0,a_1,...,a_2g` given as comma-separated decimal integers
/// (`a_0` must be 1). Release the handle with `cc_lpoly_free`.
///
/// # Safety
/// `coefficients` must be null or NUL-terminated; `out` must be null or
/// writable.
#[no_mangle]
pub unsafe extern "C" fn cc_lpoly_from_coefficients(
    q: u64,
    coefficients: *const c_char,
    out: *mut *mut CcLPolynomial,
) -> CcStatus {
    guarded(|| {
        let slot = match unsafe { out_slot(out, "lpoly") } {
            Ok(slot) => slot,
            Err(status) => return status,
        };
        *slot = std::ptr::null_mut();
        let text = match unsafe { read_str(coefficients, "coefficients") } {
            Ok(text) => text,
            Err(status) => return status,
        };
        let mut parsed = Vec::new();
        for piece in text.split(',') {
            match piece.trim().parse::<BigInt>() {
                Ok(value) => parsed.push(value),
                Err(_) => {
                    set_error(format!("not an integer: {piece:?}"));
                    return CcStatus::DomainError;
                }
            }
        }
        if parsed.len() < 3 || parsed.len() % 2 == 0 {
            set_error("expected an odd number of coefficients, at least 3");
            return CcStatus::DomainError;
        }
        let genus = (parsed.len() / 2) as u32;
        let field = match covercount::FieldSize::new(q) {
            Ok(field) => field,
            Err(error) => {
                set_error(error.to_string());
                return CcStatus::DomainError;
            }
        };
        match LPolynomial::new(field, genus, parsed) {
            Ok(lpoly) => {
                *slot = Box::into_raw(Box::new(CcLPolynomial { inner: lpoly }));
                CcStatus::Ok
            }
            Err(error) => {
                set_error(error.to_string());
                CcStatus::DomainError
            }
        }
    })
}

/// Releases an L-polynomial handle. Null is a no-op.
///
/// # Safety
/// `lpoly` must be null or a pointer from `cc_lpoly_parse_label` /
/// `cc_lpoly_from_coefficients`, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn cc_lpoly_free(lpoly: *mut CcLPolynomial) {
    if !lpoly.is_null() {
        drop(unsafe { Box::from_raw(lpoly) });
    }
}

/// Genus of the underlying curve.
///
/// # Safety
/// `lpoly` must be a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cc_lpoly_genus(lpoly: *const CcLPolynomial, out: *mut u32) -> CcStatus {
    guarded(|| {
        let slot = match unsafe { out_slot(out, "genus") } {
            Ok(slot) => slot,
            Err(status) => return status,
        };
        let lpoly = match handle(lpoly, "lpoly") {
            Ok(lpoly) => lpoly,
            Err(status) => return status,
        };
        *slot = lpoly.inner.genus();
        CcStatus::Ok
    })
}

/// Size of the base field F_q.
///
/// # Safety
/// `lpoly` must be a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cc_lpoly_field(lpoly: *const CcLPolynomial, out: *mut u64) -> CcStatus {
    guarded(|| {
        let slot = match unsafe { out_slot(out, "field") } {
            Ok(slot) => slot,
            Err(status) => return status,
        };
        let lpoly = match handle(lpoly, "lpoly") {
            Ok(lpoly) => lpoly,
            Err(status) => return status,
        };
        *slot = lpoly.inner.base_field().q();
        CcStatus::Ok
    })
}

/// Whether the polynomial passes the Weil checks (functional equation and
/// certified root location).
///
/// # Safety
/// `lpoly` must be a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cc_lpoly_weil_ok(lpoly: *const CcLPolynomial, out: *mut bool) -> CcStatus {
    guarded(|| {
        let slot = match unsafe { out_slot(out, "weil_ok") } {
            Ok(slot) => slot,
            Err(status) => return status,
        };
        let lpoly = match handle(lpoly, "lpoly") {
            Ok(lpoly) => lpoly,
            Err(status) => return status,
        };
        *slot = covercount::validate_weil(&lpoly.inner).weil_ok();
        CcStatus::Ok
    })
}

/// Class number L(1) as a decimal string; free it with `cc_string_free`.
///
/// # Safety
/// `lpoly` must be a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cc_lpoly_class_number(
    lpoly: *const CcLPolynomial,
    out: *mut *mut c_char,
) -> CcStatus {
    guarded(|| {
        let slot = match unsafe { out_slot(out, "class_number") } {
            Ok(slot) => slot,
            Err(status) => return status,
        };
        *slot = std::ptr::null_mut();
        let lpoly = match handle(lpoly, "lpoly") {
            Ok(lpoly) => lpoly,
            Err(status) => return status,
        };
        match lpoly.inner.class_number() {
            Ok(value) => string_out(slot, value.to_string()),
            Err(error) => {
                set_error(error.to_string());
                CcStatus::DomainError
            }
        }
    })
}

/// Number of rational points over the degree-`degree` extension, as a
/// decimal string; free it with `cc_string_free`. `degree` must be >= 1.
///
/// # Safety
/// `lpoly` must be a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cc_lpoly_point_count(
    lpoly: *const CcLPolynomial,
    degree: u32,
    out: *mut *mut c_char,
) -> CcStatus {
    guarded(|| {
        let slot = match unsafe { out_slot(out, "point_count") } {
            Ok(slot) => slot,
            Err(status) => return status,
        };
        *slot = std::ptr::null_mut();
        let lpoly = match handle(lpoly, "lpoly") {
            Ok(lpoly) => lpoly,
            Err(status) => return status,
        };
        if degree == 0 {
            set_error("degree must be at least 1");
            return CcStatus::DomainError;
        }
        let counts = lpoly.inner.point_counts(degree as usize);
        string_out(slot, counts.values()[degree as usize - 1].to_string())
    })
}

/// Computes the invariants of the largest everywhere-unramified abelian
/// cover in which every rational point splits completely. On success
/// `*out` owns the new object; release it with `cc_cover_free`.
///
/// # Safety
/// `lpoly` must be a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cc_cover_compute(
    lpoly: *const CcLPolynomial,
    out: *mut *mut CcCover,
) -> CcStatus {
    guarded(|| {
        let slot = match unsafe { out_slot(out, "cover") } {
            Ok(slot) => slot,
            Err(status) => return status,
        };
        *slot = std::ptr::null_mut();
        let lpoly = match handle(lpoly, "lpoly") {
            Ok(lpoly) => lpoly,
            Err(status) => return status,
        };
        match constant_field_cover(&lpoly.inner) {
            Ok(inner) => {
                *slot = Box::into_raw(Box::new(CcCover { inner }));
                CcStatus::Ok
            }
            Err(error) => {
                set_error(error.to_string());
                CcStatus::DomainError
            }
        }
    })
}

/// Releases a cover handle. Null is a no-op.
///
/// # Safety
/// `cover` must be null or a pointer from `cc_cover_compute`, not used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn cc_cover_free(cover: *mut CcCover) {
    if !cover.is_null() {
        drop(unsafe { Box::from_raw(cover) });
    }
}

fn cover_field(
    cover: *const CcCover,
    out: *mut *mut c_char,
    what: &str,
    pick: impl Fn(&CoverInvariants) -> &BigInt,
) -> CcStatus {
    guarded(|| {
        let slot = match unsafe { out_slot(out, what) } {
            Ok(slot) => slot,
            Err(status) => return status,
        };
        *slot = std::ptr::null_mut();
        let cover = match handle(cover, "cover") {
            Ok(cover) => cover,
            Err(status) => return status,
        };
        string_out(slot, pick(&cover.inner).to_string())
    })
}

/// Order of the Galois group of the cover, as a decimal string; free it
/// with `cc_string_free`.
///
/// # Safety
/// `cover` must be a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cc_cover_group_order(
    cover: *const CcCover,
    out: *mut *mut c_char,
) -> CcStatus {
    cover_field(cover, out, "group_order", |inner| &inner.quotient_order)
}

/// Genus of the covering curve, as a decimal string; free it with
/// `cc_string_free`.
///
/// # Safety
/// `cover` must be a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cc_cover_genus(cover: *const CcCover, out: *mut *mut c_char) -> CcStatus {
    cover_field(cover, out, "cover_genus", |inner| &inner.cover_genus)
}

/// Number of rational points on the covering curve, as a decimal string;
/// free it with `cc_string_free`.
///
/// # Safety
/// `cover` must be a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cc_cover_points(cover: *const CcCover, out: *mut *mut c_char) -> CcStatus {
    cover_field(cover, out, "cover_points", |inner| &inner.cover_points)
}

/// Recomputes the bundled record tables. Writes how many rows passed and
/// how many there are; the caller decides whether `passed == total` is
/// good enough.
///
/// # Safety
/// `passed` and `total` must each be null or writable.
#[no_mangle]
pub unsafe extern "C" fn cc_verify_tables(passed: *mut usize, total: *mut usize) -> CcStatus {
    guarded(|| {
        let passed = match unsafe { out_slot(passed, "passed") } {
            Ok(slot) => slot,
            Err(status) => return status,
        };
        let total = match unsafe { out_slot(total, "total") } {
            Ok(slot) => slot,
            Err(status) => return status,
        };
        match covercount::verify_paper_tables(covercount::bundled_verification_fixture()) {
            Ok(report) => {
                *passed = report.passed;
                *total = report.total;
                CcStatus::Ok
            }
            Err(error) => {
                set_error(error.to_string());
                CcStatus::DomainError
            }
        }
    })
}
