//! C ABI for the `lexpath` library.
//!
//! # Safety
//!
//! Handles are opaque pointers created by a `*_parse` / `*_find_*` call and
//! released with the matching `*_free`. Every function accepts null handles
//! and returns `LEXPATH_STATUS_NULL_POINTER` (or 0 for the accessor
//! functions) instead of dereferencing them. Strings passed in must be
//! NUL-terminated UTF-8. Strings returned through an out-pointer are owned by
//! the caller and freed with [`lexpath_string_free`]; strings returned
//! directly from a path handle are borrowed and live as long as the handle.
//!
//! After a failing call, [`lexpath_last_error`] describes the failure on the
//! calling thread.
#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lexpath::{Error, Network, PathResult, StateVector, WeightScheme};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexpathStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    NoPath = 3,
    CapExceeded = 4,
    LengthMismatch = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexpathScheme {
    Earliest = 0,
    Latest = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexpathXfcMethod {
    Paper = 0,
    Correct = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LexpathReliability {
    pub probability: f64,
    pub vectors_evaluated: u64,
    pub vectors_pruned: u64,
}

/// Opaque parsed network.
pub struct LexpathNetwork {
    inner: Network,
}

/// Opaque path result.
pub struct LexpathPath {
    inner: PathResult,
    vector: CString,
    weight: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: LexpathStatus, msg: impl Into<String>) -> LexpathStatus {
    set_error(msg);
    status
}

fn status_of(e: &Error) -> LexpathStatus {
    match e {
        Error::NoPath | Error::Disconnected => LexpathStatus::NoPath,
        Error::CapExceeded { .. } => LexpathStatus::CapExceeded,
        Error::LengthMismatch { .. } => LexpathStatus::LengthMismatch,
        _ => LexpathStatus::InvalidInput,
    }
}

fn from_error(e: Error) -> LexpathStatus {
    fail(status_of(&e), e.to_string())
}

fn guard(f: impl FnOnce() -> LexpathStatus) -> LexpathStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(LexpathStatus::Internal, "panic inside lexpath"))
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, LexpathStatus> {
    if s.is_null() {
        return Err(fail(LexpathStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(LexpathStatus::InvalidInput, "string argument is not UTF-8"))
}

/// Message for the most recent failure on this thread, or null. Borrowed
/// until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lexpath_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static version string of the library.
#[no_mangle]
pub extern "C" fn lexpath_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses edge-list text into a new network handle.
#[no_mangle]
pub unsafe extern "C" fn lexpath_network_parse(text: *const c_char, out: *mut *mut LexpathNetwork) -> LexpathStatus {
    guard(|| {
        if out.is_null() {
            return fail(LexpathStatus::NullPointer, "null out pointer");
        }
        *out = ptr::null_mut();
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match lexpath::parse_network(text) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(LexpathNetwork { inner }));
                LexpathStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn lexpath_network_free(net: *mut LexpathNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

#[no_mangle]
pub unsafe extern "C" fn lexpath_network_node_count(net: *const LexpathNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.inner.n())
}

#[no_mangle]
pub unsafe extern "C" fn lexpath_network_arc_count(net: *const LexpathNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.inner.m())
}

#[no_mangle]
pub unsafe extern "C" fn lexpath_network_source(net: *const LexpathNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.inner.source())
}

#[no_mangle]
pub unsafe extern "C" fn lexpath_network_sink(net: *const LexpathNetwork) -> usize {
    net.as_ref().map_or(0, |n| n.inner.sink())
}

/// Source-sink connectivity of the subgraph selected by `bits`, a string of
/// '0'/'1' with arc 1 first.
#[no_mangle]
pub unsafe extern "C" fn lexpath_is_st_connected(
    net: *const LexpathNetwork,
    bits: *const c_char,
    out: *mut bool,
) -> LexpathStatus {
    guard(|| {
        let (Some(net), false) = (net.as_ref(), out.is_null()) else {
            return fail(LexpathStatus::NullPointer, "null network or out pointer");
        };
        let bits = match read_str(bits) {
            Ok(b) => b,
            Err(s) => return s,
        };
        let x: StateVector = match bits.parse() {
            Ok(x) => x,
            Err(e) => return from_error(e),
        };
        match lexpath::is_st_connected(&net.inner, &x) {
            Ok(c) => {
                *out = c;
                LexpathStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Runs Dijkstra under `scheme`. Returns `LEXPATH_STATUS_NO_PATH` and leaves
/// `*out` null when source and sink are not connected.
#[no_mangle]
pub unsafe extern "C" fn lexpath_find_path(
    net: *const LexpathNetwork,
    scheme: LexpathScheme,
    out: *mut *mut LexpathPath,
) -> LexpathStatus {
    guard(|| {
        let (Some(net), false) = (net.as_ref(), out.is_null()) else {
            return fail(LexpathStatus::NullPointer, "null network or out pointer");
        };
        *out = ptr::null_mut();
        let m = net.inner.m();
        let scheme = match scheme {
            LexpathScheme::Earliest => WeightScheme::earliest(m),
            LexpathScheme::Latest => WeightScheme::latest(m),
        };
        let scheme = match scheme {
            Ok(s) => s,
            Err(_) => return fail(LexpathStatus::NoPath, "network has no arcs"),
        };
        match lexpath::binary_dijkstra(&net.inner, &scheme) {
            Ok(Some(inner)) => {
                let vector = CString::new(inner.vector.to_string()).unwrap();
                let weight = CString::new(inner.weight.to_decimal()).unwrap();
                *out = Box::into_raw(Box::new(LexpathPath { inner, vector, weight }));
                LexpathStatus::Ok
            }
            Ok(None) => fail(LexpathStatus::NoPath, "no source-sink path"),
            Err(e) => from_error(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn lexpath_path_free(path: *mut LexpathPath) {
    if !path.is_null() {
        drop(Box::from_raw(path));
    }
}

#[no_mangle]
pub unsafe extern "C" fn lexpath_path_node_count(path: *const LexpathPath) -> usize {
    path.as_ref().map_or(0, |p| p.inner.nodes.len())
}

/// Copies up to `len` node indices into `buf`; returns the number copied.
#[no_mangle]
pub unsafe extern "C" fn lexpath_path_nodes(path: *const LexpathPath, buf: *mut usize, len: usize) -> usize {
    let Some(p) = path.as_ref() else { return 0 };
    if buf.is_null() {
        return 0;
    }
    let n = p.inner.nodes.len().min(len);
    ptr::copy_nonoverlapping(p.inner.nodes.as_ptr(), buf, n);
    n
}

/// Copies up to `len` one-based arc indices into `buf`; returns the number copied.
#[no_mangle]
pub unsafe extern "C" fn lexpath_path_arcs(path: *const LexpathPath, buf: *mut usize, len: usize) -> usize {
    let Some(p) = path.as_ref() else { return 0 };
    if buf.is_null() {
        return 0;
    }
    let arcs = p.inner.arc_indices();
    let n = arcs.len().min(len);
    ptr::copy_nonoverlapping(arcs.as_ptr(), buf, n);
    n
}

/// Indicator vector as a '0'/'1' string, arc 1 first. Borrowed from `path`.
#[no_mangle]
pub unsafe extern "C" fn lexpath_path_vector(path: *const LexpathPath) -> *const c_char {
    path.as_ref().map_or(ptr::null(), |p| p.vector.as_ptr())
}

/// Exact path weight in decimal. Borrowed from `path`.
#[no_mangle]
pub unsafe extern "C" fn lexpath_path_weight_decimal(path: *const LexpathPath) -> *const c_char {
    path.as_ref().map_or(ptr::null(), |p| p.weight.as_ptr())
}

/// First-connected-vector search. On success `*out` holds a new string to be
/// released with [`lexpath_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lexpath_xfc(
    net: *const LexpathNetwork,
    method: LexpathXfcMethod,
    out: *mut *mut c_char,
) -> LexpathStatus {
    guard(|| {
        let (Some(net), false) = (net.as_ref(), out.is_null()) else {
            return fail(LexpathStatus::NullPointer, "null network or out pointer");
        };
        *out = ptr::null_mut();
        let found = match method {
            LexpathXfcMethod::Paper => lexpath::find_xfc_paper(&net.inner),
            LexpathXfcMethod::Correct => lexpath::find_xfc_correct(&net.inner),
        };
        match found {
            Ok(x) => {
                *out = CString::new(x.to_string()).unwrap().into_raw();
                LexpathStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Exact two-terminal reliability. `probs` holds one working probability per
/// arc; pass null to use the probabilities from the parsed file.
#[no_mangle]
pub unsafe extern "C" fn lexpath_reliability(
    net: *const LexpathNetwork,
    probs: *const f64,
    len: usize,
    prune: bool,
    force: bool,
    out: *mut LexpathReliability,
) -> LexpathStatus {
    guard(|| {
        let (Some(net), false) = (net.as_ref(), out.is_null()) else {
            return fail(LexpathStatus::NullPointer, "null network or out pointer");
        };
        let probs: &[f64] = if probs.is_null() {
            net.inner.probabilities()
        } else {
            std::slice::from_raw_parts(probs, len)
        };
        match lexpath::reliability_exact(&net.inner, probs, prune, force) {
            Ok(r) => {
                *out = LexpathReliability {
                    probability: r.probability,
                    vectors_evaluated: r.vectors_evaluated,
                    vectors_pruned: r.vectors_pruned,
                };
                LexpathStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn lexpath_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
