//! C ABI over `dq-core`.
//!
//! Every fallible call returns a [`DqStatus`] and writes its result through an
//! out-pointer. Handles are opaque and must be released with the matching
//! `*_free`. Strings returned to the caller are owned by it and released with
//! [`dq_string_free`]. The message for the last failure on the calling thread
//! is available from [`dq_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use dq_core::error::Error;
use dq_core::parse::{parse_observable, parse_series};
use dq_core::series::{set_default_order, SeriesScalar, SignValue};
use dq_core::star::PolyObservable;
use dq_core::states::GaussianState;
use dq_core::uncertainty::{Analysis, VerdictDoc};

/// Result codes shared by every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    Indeterminate = 4,
    ZeroDivision = 5,
    InvalidState = 6,
    InvalidArgument = 7,
    Internal = 8,
}

/// An element of the ordered series field.
pub struct DqSeries(SeriesScalar);

/// A Gaussian state.
pub struct DqState(GaussianState);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn record(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DqStatus {
    match e {
        Error::Syntax { .. } => DqStatus::Syntax,
        Error::IndeterminateAtTruncation { .. } => DqStatus::Indeterminate,
        Error::ZeroDivision => DqStatus::ZeroDivision,
        Error::InvalidState(_) => DqStatus::InvalidState,
        Error::Inconsistency(_) => DqStatus::Internal,
        _ => DqStatus::InvalidArgument,
    }
}

/// Runs `f`, turning errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (DqStatus, String)>) -> DqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DqStatus::Ok,
        Ok(Err((status, message))) => {
            record(message);
            status
        }
        Err(_) => {
            record("panic inside dq".into());
            DqStatus::Internal
        }
    }
}

fn lib(e: Error) -> (DqStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (DqStatus, String) {
    (DqStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (DqStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (DqStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("interior nul removed").into_raw()
}

unsafe fn write_out<T>(out: *mut *mut T, value: T) -> Result<(), (DqStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (DqStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = to_c(s);
    Ok(())
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Sets the relative working precision used by non-terminating quotients and
/// square roots. Values below one are rejected.
#[no_mangle]
pub extern "C" fn dq_set_default_order(order: i64) -> DqStatus {
    guard(|| {
        if order < 1 {
            return Err((DqStatus::InvalidArgument, format!("order {order} must be positive")));
        }
        set_default_order(order);
        Ok(())
    })
}

/// Parses a series literal such as `1/2*h - h^(3/2) + O(h^4)`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dq_series_parse(text: *const c_char, out: *mut *mut DqSeries) -> DqStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let s = parse_series(text).map_err(lib)?;
        write_out(out, DqSeries(s))
    })
}

/// Releases a series. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dq_series_free(s: *mut DqSeries) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

unsafe fn series_ref<'a>(s: *const DqSeries, what: &str) -> Result<&'a SeriesScalar, (DqStatus, String)> {
    s.as_ref().map(|s| &s.0).ok_or_else(|| null(what))
}

/// Canonical text of a series.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dq_series_to_string(s: *const DqSeries, out: *mut *mut c_char) -> DqStatus {
    guard(|| {
        let s = series_ref(s, "series")?;
        write_string(out, s.to_string())
    })
}

/// Which arithmetic operation [`dq_series_binary`] applies.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DqOp {
    Add = 0,
    Sub = 1,
    Mul = 2,
    Div = 3,
}

/// `out = a op b`.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dq_series_binary(
    op: DqOp,
    a: *const DqSeries,
    b: *const DqSeries,
    out: *mut *mut DqSeries,
) -> DqStatus {
    guard(|| {
        let (a, b) = (series_ref(a, "a")?, series_ref(b, "b")?);
        let r = match op {
            DqOp::Add => a.add(b),
            DqOp::Sub => a.sub(b),
            DqOp::Mul => a.mul(b),
            DqOp::Div => a.div(b).map_err(lib)?,
        };
        write_out(out, DqSeries(r))
    })
}

/// Writes -1, 0 or 1. Returns `Indeterminate` when every stored term
/// cancelled below the truncation order.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dq_series_sign(s: *const DqSeries, out: *mut i32) -> DqStatus {
    guard(|| {
        let s = series_ref(s, "series")?;
        let v = match s.sign() {
            SignValue::Negative => -1,
            SignValue::Zero => 0,
            SignValue::Positive => 1,
            SignValue::IndeterminateAtTruncation => {
                return Err((DqStatus::Indeterminate, format!("sign of {s} is indeterminate")));
            }
        };
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = v;
        Ok(())
    })
}

/// Builds a state from a name (`ground`, `ground(d)`, `squeezed(s)`,
/// `correlated(c)`) or, when `spec` starts with `{`, from state JSON.
///
/// # Safety
/// `spec` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dq_state_new(spec: *const c_char, out: *mut *mut DqState) -> DqStatus {
    guard(|| {
        let spec = read_str(spec, "spec")?;
        let state = if spec.trim_start().starts_with('{') {
            GaussianState::from_json(spec)
        } else {
            GaussianState::named(spec)
        }
        .map_err(lib)?;
        write_out(out, DqState(state))
    })
}

/// Releases a state. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn dq_state_free(s: *mut DqState) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Number of degrees of freedom of a state.
///
/// # Safety
/// `s` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dq_state_dim(s: *const DqState, out: *mut usize) -> DqStatus {
    guard(|| {
        let s = s.as_ref().ok_or_else(|| null("state"))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = s.0.d();
        Ok(())
    })
}

/// Expectation value of an observable, written as a series handle. Fails
/// with `InvalidArgument` when the observable is not real.
///
/// # Safety
/// `state` must be a live handle, `obs` a nul-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn dq_state_expectation(
    state: *const DqState,
    obs: *const c_char,
    out: *mut *mut DqSeries,
) -> DqStatus {
    guard(|| {
        let state = &state.as_ref().ok_or_else(|| null("state"))?.0;
        let f = parse_observable(read_str(obs, "observable")?, state.d()).map_err(lib)?;
        let v = state.real_expectation(&f).map_err(lib)?;
        write_out(out, DqSeries(v))
    })
}

/// Runs every uncertainty relation for `count` observables and writes a JSON
/// array of verdicts (`relation`, `lhs`, `rhs`, `status`, `intelligent`,
/// `witness`).
///
/// # Safety
/// `state` must be a live handle, `obs` must point to `count` nul-terminated
/// strings and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dq_check_json(
    state: *const DqState,
    obs: *const *const c_char,
    count: usize,
    out: *mut *mut c_char,
) -> DqStatus {
    guard(|| {
        let state = &state.as_ref().ok_or_else(|| null("state"))?.0;
        if count == 0 {
            return Err((DqStatus::InvalidArgument, "at least one observable is required".into()));
        }
        if obs.is_null() {
            return Err(null("observable array"));
        }
        let xs = (0..count)
            .map(|k| {
                let text = read_str(*obs.add(k), "observable")?;
                parse_observable(text, state.d()).map_err(lib)
            })
            .collect::<Result<Vec<PolyObservable>, _>>()?;
        let an = Analysis::new(state, &xs).map_err(lib)?;
        let mut verdicts = vec![an.rs().map_err(lib)?, an.hr()];
        if xs.len() >= 2 {
            let tr = an.trace().map_err(lib)?;
            verdicts.push(tr.general);
            verdicts.extend(tr.paired);
        }
        if xs.len() == 2 {
            verdicts.push(an.two_obs().map_err(lib)?);
        }
        let docs: Vec<VerdictDoc> = verdicts.iter().map(VerdictDoc::from).collect();
        let json = serde_json::to_string(&docs).map_err(|e| (DqStatus::Internal, e.to_string()))?;
        write_string(out, json)
    })
}
