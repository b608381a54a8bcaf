//! C interface to `parstab`.
//!
//! Covers and orbifold structures are opaque handles built from the same
//! JSON documents the CLI reads and released with the matching `_free`
//! function. Every fallible call returns a [`ParstabStatus`]; on failure the
//! message is available from [`parstab_last_error`] on the same thread.
//! Strings returned through `out` parameters are owned by the caller and
//! must be released with [`parstab_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::c_char;
use parstab::doc::{BundleDocument, CoverDocument, OrbifoldDocument};
use parstab::{
    gr1_hypothesis_holds, rank_of_f, report, stability_verdict, Error, MonodromyCover, Namespace,
    OrbifoldStructure, Verdict,
};
use serde::de::DeserializeOwned;

/// Status codes; the first four match the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParstabStatus {
    Ok = 0,
    Invalid = 1,
    Parse = 2,
    CapExceeded = 3,
    NullPointer = 4,
    Internal = 5,
}

/// Opaque validated cover.
pub struct ParstabCover(MonodromyCover);

/// Opaque orbifold structure (marked points with orders).
pub struct ParstabOrbifold(OrbifoldStructure);

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParstabVerdict {
    /// True when pullback preserves stability (rank F = 1).
    pub preserved: bool,
    /// rank F.
    pub rank: usize,
    /// Degree over the base of the obstructing intermediate cover; 0 when preserved.
    pub witness_degree: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(ParstabStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::DegreeCapExceeded { .. } => ParstabStatus::CapExceeded,
            Error::SelfCheck(_) => ParstabStatus::Internal,
            _ => ParstabStatus::Invalid,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(ParstabStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, recording any error and converting panics to `Internal`.
fn guard<F: FnOnce() -> Result<(), Failure>>(body: F) -> ParstabStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ParstabStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            ParstabStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(ParstabStatus::Parse, format!("{what} is not UTF-8: {e}")))
}

fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure(ParstabStatus::Parse, format!("{what}: {e}")))
}

unsafe fn cover_ref<'a>(cover: *const ParstabCover) -> Result<&'a MonodromyCover, Failure> {
    cover.as_ref().map(|c| &c.0).ok_or_else(|| null("cover"))
}

unsafe fn orbifold_ref<'a>(o: *const ParstabOrbifold) -> Result<&'a OrbifoldStructure, Failure> {
    o.as_ref().map(|o| &o.0).ok_or_else(|| null("orbifold"))
}

unsafe fn write_string(out: *mut *mut c_char, value: &serde_json::Value) -> Result<(), Failure> {
    let text = serde_json::to_string(value).expect("reports serialize");
    let c = CString::new(text).map_err(|e| Failure(ParstabStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn parstab_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses and validates a cover document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn parstab_cover_from_json(
    json: *const c_char,
    out: *mut *mut ParstabCover,
) -> ParstabStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(json, "cover document")?;
        let doc: CoverDocument = parse_json(text, "cover document")?;
        let data = doc
            .to_cover_data()
            .map_err(|e| Failure(ParstabStatus::Parse, e.to_string()))?;
        let cover = MonodromyCover::new(data)?;
        *out = Box::into_raw(Box::new(ParstabCover(cover)));
        Ok(())
    })
}

/// # Safety
/// `cover` must be null or a handle from [`parstab_cover_from_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn parstab_cover_free(cover: *mut ParstabCover) {
    if !cover.is_null() {
        drop(Box::from_raw(cover));
    }
}

/// Degree of the cover, or 0 for a null handle.
///
/// # Safety
/// `cover` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn parstab_cover_degree(cover: *const ParstabCover) -> usize {
    cover.as_ref().map_or(0, |c| c.0.degree())
}

/// Genus of the covering curve.
///
/// # Safety
/// `cover` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn parstab_cover_genus(
    cover: *const ParstabCover,
    out: *mut usize,
) -> ParstabStatus {
    guard(|| {
        let cover = cover_ref(cover)?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = cover.genus_of_y()?;
        Ok(())
    })
}

/// Parses an orbifold document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn parstab_orbifold_from_json(
    json: *const c_char,
    out: *mut *mut ParstabOrbifold,
) -> ParstabStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(json, "orbifold document")?;
        let doc: OrbifoldDocument = parse_json(text, "orbifold document")?;
        *out = Box::into_raw(Box::new(ParstabOrbifold(doc.to_orbifold()?)));
        Ok(())
    })
}

/// An orbifold structure with no marked points.
#[no_mangle]
pub extern "C" fn parstab_orbifold_empty() -> *mut ParstabOrbifold {
    Box::into_raw(Box::new(ParstabOrbifold(OrbifoldStructure::empty())))
}

/// # Safety
/// `orbifold` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn parstab_orbifold_free(orbifold: *mut ParstabOrbifold) {
    if !orbifold.is_null() {
        drop(Box::from_raw(orbifold));
    }
}

/// rank F for the cover and orbifold structure.
///
/// # Safety
/// Handles must be live; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn parstab_rank_of_f(
    cover: *const ParstabCover,
    orbifold: *const ParstabOrbifold,
    max_degree: usize,
    out: *mut usize,
) -> ParstabStatus {
    guard(|| {
        let (c, o) = (cover_ref(cover)?, orbifold_ref(orbifold)?);
        if out.is_null() {
            return Err(null("out"));
        }
        *out = rank_of_f(c, o, max_degree)?;
        Ok(())
    })
}

/// # Safety
/// Handles must be live; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn parstab_stability_verdict(
    cover: *const ParstabCover,
    orbifold: *const ParstabOrbifold,
    max_degree: usize,
    out: *mut ParstabVerdict,
) -> ParstabStatus {
    guard(|| {
        let (c, o) = (cover_ref(cover)?, orbifold_ref(orbifold)?);
        if out.is_null() {
            return Err(null("out"));
        }
        let v = stability_verdict(c, o, max_degree)?;
        *out = ParstabVerdict {
            preserved: v.verdict == Verdict::Preserved,
            rank: v.rank,
            witness_degree: v.witness.map_or(0, |w| w.degree_over_x),
        };
        Ok(())
    })
}

/// Whether every marked order is coprime to the ramification indices above it.
///
/// # Safety
/// Handles must be live; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn parstab_gr1_hypothesis_holds(
    cover: *const ParstabCover,
    orbifold: *const ParstabOrbifold,
    out: *mut bool,
) -> ParstabStatus {
    guard(|| {
        let (c, o) = (cover_ref(cover)?, orbifold_ref(orbifold)?);
        if out.is_null() {
            return Err(null("out"));
        }
        *out = gr1_hypothesis_holds(c, o);
        Ok(())
    })
}

/// The `analyze` report as a JSON string.
///
/// # Safety
/// Handles must be live; `out` a valid pointer. Free the result with
/// [`parstab_string_free`].
#[no_mangle]
pub unsafe extern "C" fn parstab_analyze_json(
    cover: *const ParstabCover,
    orbifold: *const ParstabOrbifold,
    max_degree: usize,
    list_blocks: bool,
    out: *mut *mut c_char,
) -> ParstabStatus {
    guard(|| {
        let (c, o) = (cover_ref(cover)?, orbifold_ref(orbifold)?);
        if out.is_null() {
            return Err(null("out"));
        }
        write_string(out, &report::analyze_json(c, o, max_degree, list_blocks)?)
    })
}

/// The parabolic structure of the direct image as a JSON string.
///
/// # Safety
/// `cover` must be live; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn parstab_direct_image_json(
    cover: *const ParstabCover,
    out: *mut *mut c_char,
) -> ParstabStatus {
    guard(|| {
        let c = cover_ref(cover)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let profile = report::checked_direct_image(c)?;
        write_string(out, &report::direct_image_json(&profile))
    })
}

/// Pulls a bundle document back along the cover; the result is a JSON string.
///
/// # Safety
/// `cover` must be live, `bundle_json` nul-terminated, `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn parstab_pullback_json(
    cover: *const ParstabCover,
    bundle_json: *const c_char,
    out: *mut *mut c_char,
) -> ParstabStatus {
    guard(|| {
        let c = cover_ref(cover)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(bundle_json, "bundle document")?;
        let doc: BundleDocument = parse_json(text, "bundle document")?;
        let bundle = doc.to_bundle(Namespace::Base)?;
        let pulled = report::checked_pullback(c, &bundle)?;
        write_string(out, &report::pullback_json(c, &bundle, &pulled))
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn parstab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
