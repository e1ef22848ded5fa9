//! C ABI for `entcat`.
//!
//! Vectors cross the boundary as opaque `EntcatVector` handles owned by the
//! caller and released with `entcat_vector_free`. Every fallible function
//! returns an `EntcatStatus`; on failure `entcat_last_error` describes the
//! problem for the calling thread. Strings returned through out-pointers
//! are heap allocated and must be released with `entcat_string_free`.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use entcat::catalysis::{is_catalyst, min_catalyst_copies, mlocc_threshold};
use entcat::limits::{component_cap, set_component_cap};
use entcat::majorization::majorizes;
use entcat::probabilistic::{assisted_bounds, combined_pmax};
use entcat::rational::{format_fraction, parse_rational};
use entcat::report::{self, DEFAULT_PRECISION};
use entcat::search::{search_catalysts, trade_off, SearchConfig, SearchMode};
use entcat::{Error, SchmidtVector};

/// Opaque Schmidt coefficient vector.
pub struct EntcatVector {
    inner: SchmidtVector,
}

/// Status codes. Input and resource codes match the CLI exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntcatStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    ResourceLimit = 4,
    DimensionMismatch = 5,
    NoSearchNeeded = 6,
    InvalidArgument = 7,
    Panic = 8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> EntcatStatus {
    match err {
        Error::ResourceLimit { .. } => EntcatStatus::ResourceLimit,
        Error::DimensionMismatch { .. } => EntcatStatus::DimensionMismatch,
        Error::NoSearchNeeded => EntcatStatus::NoSearchNeeded,
        Error::InvalidArgument(_) | Error::IndexOutOfRange { .. } => EntcatStatus::InvalidArgument,
        Error::EmptyInput
        | Error::NonPositiveEntry(_)
        | Error::NotNormalized { .. }
        | Error::InvalidNumber(_) => EntcatStatus::InvalidInput,
    }
}

enum Failure {
    Null(&'static str),
    Utf8,
    Analysis(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Analysis(e)
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> EntcatStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            EntcatStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer passed for `{what}`"));
            EntcatStatus::NullPointer
        }
        Ok(Err(Failure::Utf8)) => {
            set_error("string argument is not valid UTF-8");
            EntcatStatus::InvalidInput
        }
        Ok(Err(Failure::Analysis(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic");
            EntcatStatus::Panic
        }
    }
}

unsafe fn vector<'a>(
    p: *const EntcatVector,
    what: &'static str,
) -> Result<&'a SchmidtVector, Failure> {
    p.as_ref().map(|v| &v.inner).ok_or(Failure::Null(what))
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8)
}

unsafe fn write<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s)
        .expect("generated text has no nul bytes")
        .into_raw()
}

fn boxed(v: SchmidtVector) -> *mut EntcatVector {
    Box::into_raw(Box::new(EntcatVector { inner: v }))
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn entcat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn entcat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub extern "C" fn entcat_component_cap() -> u64 {
    component_cap()
}

#[no_mangle]
pub extern "C" fn entcat_set_component_cap(cap: u64) {
    set_component_cap(cap);
}

/// Parses `"0.4,0.4,0.1,0.1"` or `"50/103,30/103,23/103"`. With
/// `normalize` the entries are rescaled by their sum instead of rejected.
#[no_mangle]
pub unsafe extern "C" fn entcat_vector_parse(
    input: *const c_char,
    normalize: bool,
    out: *mut *mut EntcatVector,
) -> EntcatStatus {
    guard(|| {
        let v = SchmidtVector::parse(text(input, "input")?, normalize)?;
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        write(out, boxed(v), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn entcat_vector_free(v: *mut EntcatVector) {
    if !v.is_null() {
        drop(Box::from_raw(v));
    }
}

/// Number of components, or 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn entcat_vector_len(v: *const EntcatVector) -> u64 {
    v.as_ref().map_or(0, |v| v.inner.len())
}

/// Canonical fraction text, or NULL for NULL.
#[no_mangle]
pub unsafe extern "C" fn entcat_vector_to_string(v: *const EntcatVector) -> *mut c_char {
    v.as_ref()
        .map_or(ptr::null_mut(), |v| c_string(v.inner.to_string()))
}

#[no_mangle]
pub unsafe extern "C" fn entcat_vector_tensor(
    a: *const EntcatVector,
    b: *const EntcatVector,
    out: *mut *mut EntcatVector,
) -> EntcatStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let t = vector(a, "a")?.tensor(vector(b, "b")?)?;
        write(out, boxed(t), "out")
    })
}

#[no_mangle]
pub unsafe extern "C" fn entcat_vector_power(
    a: *const EntcatVector,
    k: u32,
    out: *mut *mut EntcatVector,
) -> EntcatStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::Null("out"));
        }
        let t = vector(a, "a")?.power(k)?;
        write(out, boxed(t), "out")
    })
}

/// Sets `*feasible` to whether `x ≺ y`.
#[no_mangle]
pub unsafe extern "C" fn entcat_majorizes(
    x: *const EntcatVector,
    y: *const EntcatVector,
    feasible: *mut bool,
) -> EntcatStatus {
    guard(|| {
        let r = majorizes(vector(x, "x")?, vector(y, "y")?);
        write(feasible, r.feasible, "feasible")
    })
}

#[no_mangle]
pub unsafe extern "C" fn entcat_is_catalyst(
    cat: *const EntcatVector,
    psi: *const EntcatVector,
    phi: *const EntcatVector,
    copies: u32,
    result: *mut bool,
) -> EntcatStatus {
    guard(|| {
        let v = is_catalyst(
            vector(cat, "cat")?,
            vector(psi, "psi")?,
            vector(phi, "phi")?,
            copies,
        )?;
        write(result, v.is_catalyst, "result")
    })
}

/// Writes the fewest catalyst copies up to `max_copies`, or 0 if none.
#[no_mangle]
pub unsafe extern "C" fn entcat_min_catalyst_copies(
    cat: *const EntcatVector,
    psi: *const EntcatVector,
    phi: *const EntcatVector,
    max_copies: u32,
    copies: *mut u32,
) -> EntcatStatus {
    guard(|| {
        let m = min_catalyst_copies(
            vector(cat, "cat")?,
            vector(psi, "psi")?,
            vector(phi, "phi")?,
            max_copies,
        )?;
        write(copies, m.unwrap_or(0), "copies")
    })
}

/// Writes the multiple-copy threshold up to `max_k`, or 0 if none.
#[no_mangle]
pub unsafe extern "C" fn entcat_mlocc_threshold(
    psi: *const EntcatVector,
    phi: *const EntcatVector,
    max_k: u32,
    threshold: *mut u32,
) -> EntcatStatus {
    guard(|| {
        let s = mlocc_threshold(vector(psi, "psi")?, vector(phi, "phi")?, max_k)?;
        write(threshold, s.threshold.unwrap_or(0), "threshold")
    })
}

/// Exact `P_max(psi^⊗s ⊗ cat^⊗m → phi^⊗s ⊗ cat^⊗m)` as fraction text.
/// `cat` may be NULL, in which case `cat_copies` is ignored.
#[no_mangle]
pub unsafe extern "C" fn entcat_pmax(
    psi: *const EntcatVector,
    phi: *const EntcatVector,
    source_copies: u32,
    cat: *const EntcatVector,
    cat_copies: u32,
    fraction: *mut *mut c_char,
) -> EntcatStatus {
    guard(|| {
        let trivial = SchmidtVector::product_state();
        let (cat, m) = match cat.as_ref() {
            Some(c) => (&c.inner, cat_copies),
            None => (&trivial, 0),
        };
        if fraction.is_null() {
            return Err(Failure::Null("fraction"));
        }
        let r = combined_pmax(
            vector(psi, "psi")?,
            vector(phi, "phi")?,
            source_copies,
            cat,
            m,
        )?;
        write(fraction, c_string(format_fraction(&r.p_max)), "fraction")
    })
}

#[no_mangle]
pub unsafe extern "C" fn entcat_bounds(
    psi: *const EntcatVector,
    phi: *const EntcatVector,
    power: u32,
    lower: *mut *mut c_char,
    upper: *mut *mut c_char,
) -> EntcatStatus {
    guard(|| {
        if lower.is_null() || upper.is_null() {
            return Err(Failure::Null("lower/upper"));
        }
        let b = assisted_bounds(vector(psi, "psi")?, vector(phi, "phi")?, power)?;
        write(lower, c_string(format_fraction(&b.lower)), "lower")?;
        write(upper, c_string(format_fraction(&b.upper)), "upper")
    })
}

/// Trade-off table as the JSON payload used by the CLI.
#[no_mangle]
pub unsafe extern "C" fn entcat_tradeoff_json(
    psi: *const EntcatVector,
    phi: *const EntcatVector,
    cat: *const EntcatVector,
    max_source: u32,
    max_cat: u32,
    json: *mut *mut c_char,
) -> EntcatStatus {
    guard(|| {
        if json.is_null() {
            return Err(Failure::Null("json"));
        }
        let t = trade_off(
            vector(psi, "psi")?,
            vector(phi, "phi")?,
            vector(cat, "cat")?,
            max_source,
            max_cat,
        )?;
        write(json, c_string(report::tradeoff(&t).to_string()), "json")
    })
}

/// Grid catalyst search. `lambda` may be NULL for deterministic mode;
/// `max_hits` of 0 means unlimited. Writes `{"hits": [...], "counters": {...}}`.
#[no_mangle]
pub unsafe extern "C" fn entcat_search_json(
    psi: *const EntcatVector,
    phi: *const EntcatVector,
    dimension: usize,
    denominator: u64,
    copies: u32,
    lambda: *const c_char,
    max_hits: usize,
    json: *mut *mut c_char,
) -> EntcatStatus {
    guard(|| {
        if json.is_null() {
            return Err(Failure::Null("json"));
        }
        let mode = if lambda.is_null() {
            SearchMode::Deterministic
        } else {
            SearchMode::Lambda(parse_rational(text(lambda, "lambda")?)?)
        };
        let cfg = SearchConfig {
            dimension,
            denominator,
            max_candidates: if max_hits == 0 { usize::MAX } else { max_hits },
            mode,
            copies,
        };
        let out = search_catalysts(vector(psi, "psi")?, vector(phi, "phi")?, &cfg)?;
        let hits: Vec<_> = out
            .hits
            .iter()
            .map(|h| report::search_hit(h, DEFAULT_PRECISION))
            .collect();
        let payload =
            serde_json::json!({ "hits": hits, "counters": report::counters(&out.counters) });
        write(json, c_string(payload.to_string()), "json")
    })
}
