//! C ABI for `derivid`.
//!
//! Operations are opaque handles. Functions return a [`DerividStatus`]; on
//! failure a message is available from [`derivid_last_error`] on the same
//! thread. Strings returned through `out` pointers are owned by the caller
//! and must be released with [`derivid_string_free`]. Polynomials cross the
//! boundary as literals (`"2*x^2 - 1/3"`) and reports as JSON.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use derivid::bounds::{bound_fd, bound_fg, bound_rc};
use derivid::catalog;
use derivid::engine::{kary_standard, standard, verify, Caps, Mode, Sampler, Side, Verdict};
use derivid::problem::load_problem;
use derivid::{parse_polynomial, DerivedOperation, Error, Polynomial};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerividStatus {
    Ok = 0,
    /// `derivid_verify` found a counterexample; the report is still written.
    Refuted = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    InvalidArgument = 4,
    ParseError = 5,
    ContextMismatch = 6,
    ArityMismatch = 7,
    UnknownName = 8,
    CapExceeded = 9,
    BudgetExceeded = 10,
    ProblemFile = 11,
    Internal = 12,
}

pub const DERIVID_SIDE_LEFT: u32 = 0;
pub const DERIVID_SIDE_RIGHT: u32 = 1;

pub const DERIVID_MODE_RANDOM: u32 = 0;
pub const DERIVID_MODE_EXHAUSTIVE: u32 = 1;
pub const DERIVID_MODE_CROSSCHECK: u32 = 2;

pub const DERIVID_THEOREM_FG: u32 = 0;
pub const DERIVID_THEOREM_FD: u32 = 1;
pub const DERIVID_THEOREM_RC: u32 = 2;

/// Random argument generation for `derivid_verify`.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct DerividSampler {
    pub seed: u64,
    pub trials: u64,
    /// Total degree bound of sampled polynomials.
    pub max_degree: u32,
    pub coeff_bound: u32,
    pub homogeneous: bool,
}

/// Evaluator limits; pass NULL for the defaults.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct DerividCaps {
    pub naive: usize,
    pub dp: usize,
    pub exhaustive_budget: u64,
}

/// Opaque operation handle.
pub struct DerividOperation {
    op: DerivedOperation,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(DerividStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) | Error::InvalidVariableName(_) | Error::UnknownVariable(_) => DerividStatus::ParseError,
            Error::ContextMismatch => DerividStatus::ContextMismatch,
            Error::ArityMismatch { .. } => DerividStatus::ArityMismatch,
            Error::UnknownDerivation(_) | Error::DuplicateDerivation(_) | Error::DuplicateVariable(_) => {
                DerividStatus::UnknownName
            }
            Error::CapExceeded { .. } => DerividStatus::CapExceeded,
            Error::BudgetExceeded { .. } => DerividStatus::BudgetExceeded,
            Error::Problem(_) => DerividStatus::ProblemFile,
            Error::InvalidOperation(_) | Error::InvalidArgument(_) => DerividStatus::InvalidArgument,
            Error::CrossCheckMismatch { .. } => DerividStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

fn fail(status: DerividStatus, msg: impl Into<String>) -> Failure {
    Failure(status, msg.into())
}

type FfiResult<T> = Result<T, Failure>;

/// Runs `f`, converting errors and panics into a status code.
fn guard<F>(f: F) -> DerividStatus
where
    F: FnOnce() -> FfiResult<DerividStatus>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => {
            set_error("");
            status
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            DerividStatus::Internal
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(fail(DerividStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(DerividStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn read_op<'a>(op: *const DerividOperation) -> FfiResult<&'a DerivedOperation> {
    op.as_ref()
        .map(|h| &h.op)
        .ok_or_else(|| fail(DerividStatus::NullPointer, "null operation handle"))
}

unsafe fn read_args(op: &DerivedOperation, args: *const *const c_char, nargs: usize) -> FfiResult<Vec<Polynomial>> {
    if nargs > 0 && args.is_null() {
        return Err(fail(DerividStatus::NullPointer, "null argument array"));
    }
    (0..nargs)
        .map(|i| {
            let s = read_str(*args.add(i))?;
            Ok(parse_polynomial(s, op.context())?)
        })
        .collect()
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> FfiResult<()> {
    if out.is_null() {
        return Err(fail(DerividStatus::NullPointer, "null output pointer"));
    }
    let c = CString::new(s).map_err(|_| fail(DerividStatus::Internal, "output contains a nul byte"))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_handle(out: *mut *mut DerividOperation, op: DerivedOperation) -> FfiResult<()> {
    if out.is_null() {
        return Err(fail(DerividStatus::NullPointer, "null output pointer"));
    }
    *out = Box::into_raw(Box::new(DerividOperation { op }));
    Ok(())
}

fn side_from(side: u32) -> FfiResult<Side> {
    match side {
        DERIVID_SIDE_LEFT => Ok(Side::Left),
        DERIVID_SIDE_RIGHT => Ok(Side::Right),
        _ => Err(fail(DerividStatus::InvalidArgument, format!("unknown side {side}"))),
    }
}

unsafe fn caps_from(caps: *const DerividCaps) -> Caps {
    match caps.as_ref() {
        Some(c) => Caps {
            naive: c.naive,
            dp: c.dp,
            exhaustive_budget: c.exhaustive_budget,
        },
        None => Caps::default(),
    }
}

/// Message for the last failed call on this thread (empty after a success).
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn derivid_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn derivid_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn derivid_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Default sampler: seed 0, 50 trials, degree 3, coefficients in [-5, 5].
#[no_mangle]
pub extern "C" fn derivid_sampler_default() -> DerividSampler {
    let s = Sampler::default();
    DerividSampler {
        seed: s.master_seed,
        trials: s.trials,
        max_degree: s.max_degree,
        coeff_bound: s.coeff_bound,
        homogeneous: s.homogeneous,
    }
}

/// Default caps: 8 / 22 / 10^7.
#[no_mangle]
pub extern "C" fn derivid_caps_default() -> DerividCaps {
    let c = Caps::default();
    DerividCaps {
        naive: c.naive,
        dp: c.dp,
        exhaustive_budget: c.exhaustive_budget,
    }
}

/// Build a catalog operation (`"novikov"`, `"poisson:2"`, `"rc:1"`, ...).
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn derivid_operation_from_catalog(
    name: *const c_char,
    out: *mut *mut DerividOperation,
) -> DerividStatus {
    guard(|| {
        let name = read_str(name)?;
        let entry = catalog::lookup(name)?;
        write_handle(out, entry.operation)?;
        Ok(DerividStatus::Ok)
    })
}

/// Build an operation from a JSON problem document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn derivid_operation_from_problem(
    json: *const c_char,
    out: *mut *mut DerividOperation,
) -> DerividStatus {
    guard(|| {
        let text = read_str(json)?;
        write_handle(out, load_problem(text)?)?;
        Ok(DerividStatus::Ok)
    })
}

/// The opposite operation `{a,b}^op = {b,a}` of a binary operation.
///
/// # Safety
/// `op` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn derivid_operation_opposite(
    op: *const DerividOperation,
    out: *mut *mut DerividOperation,
) -> DerividStatus {
    guard(|| {
        let op = read_op(op)?;
        write_handle(out, op.opposite()?)?;
        Ok(DerividStatus::Ok)
    })
}

/// Release a handle. NULL is ignored.
///
/// # Safety
/// `op` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn derivid_operation_free(op: *mut DerividOperation) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Arity of the operation, or 0 for a NULL handle.
///
/// # Safety
/// `op` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn derivid_operation_arity(op: *const DerividOperation) -> usize {
    op.as_ref().map_or(0, |h| h.op.arity())
}

/// JSON description: name, arity, variables, presentation and orders.
///
/// # Safety
/// `op` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn derivid_operation_describe(op: *const DerividOperation, out: *mut *mut c_char) -> DerividStatus {
    guard(|| {
        let op = read_op(op)?;
        let vars: Vec<_> = op
            .context()
            .variables()
            .iter()
            .map(|v| serde_json::json!({"name": v.name, "weight": v.weight}))
            .collect();
        let doc = serde_json::json!({
            "name": op.name(),
            "arity": op.arity(),
            "variables": vars,
            "operation": op.to_string(),
            "orders": op.orders(),
        });
        write_string(out, doc.to_string())?;
        Ok(DerividStatus::Ok)
    })
}

/// Apply the operation to `nargs` polynomial literals.
///
/// # Safety
/// `op` must be a live handle, `args` an array of `nargs` strings, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn derivid_apply(
    op: *const DerividOperation,
    args: *const *const c_char,
    nargs: usize,
    out: *mut *mut c_char,
) -> DerividStatus {
    guard(|| {
        let op = read_op(op)?;
        let args = read_args(op, args, nargs)?;
        write_string(out, op.apply(&args)?.to_string())?;
        Ok(DerividStatus::Ok)
    })
}

/// `s_{nargs,side}` of a binary operation at the given arguments. `caps` may be NULL.
///
/// # Safety
/// As for [`derivid_apply`]; `caps` must be NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn derivid_standard(
    op: *const DerividOperation,
    side: u32,
    args: *const *const c_char,
    nargs: usize,
    caps: *const DerividCaps,
    out: *mut *mut c_char,
) -> DerividStatus {
    guard(|| {
        let op = read_op(op)?;
        let side = side_from(side)?;
        let args = read_args(op, args, nargs)?;
        let value = standard(op, side, nargs, &args, &caps_from(caps))?;
        write_string(out, value.to_string())?;
        Ok(DerividStatus::Ok)
    })
}

/// k-ary standard polynomial with `degree` nested brackets; needs
/// `degree * (k-1) + 1` arguments.
///
/// # Safety
/// As for [`derivid_standard`].
#[no_mangle]
pub unsafe extern "C" fn derivid_kary_standard(
    op: *const DerividOperation,
    degree: usize,
    args: *const *const c_char,
    nargs: usize,
    caps: *const DerividCaps,
    out: *mut *mut c_char,
) -> DerividStatus {
    guard(|| {
        let op = read_op(op)?;
        let args = read_args(op, args, nargs)?;
        let value = kary_standard(op, degree, &args, &caps_from(caps))?;
        write_string(out, value.to_string())?;
        Ok(DerividStatus::Ok)
    })
}

/// Check `s_{degree,side} = 0` and write the JSON report. Returns
/// `Refuted` (with the report written) when a counterexample is found.
/// `sampler` and `caps` may be NULL for the defaults.
///
/// # Safety
/// `op` must be a live handle, `out` writable, the config pointers NULL or valid.
#[no_mangle]
pub unsafe extern "C" fn derivid_verify(
    op: *const DerividOperation,
    side: u32,
    degree: usize,
    mode: u32,
    sampler: *const DerividSampler,
    caps: *const DerividCaps,
    out_report: *mut *mut c_char,
) -> DerividStatus {
    guard(|| {
        let op = read_op(op)?;
        let side = side_from(side)?;
        let mode = match mode {
            DERIVID_MODE_RANDOM => Mode::Random,
            DERIVID_MODE_EXHAUSTIVE => Mode::Exhaustive,
            DERIVID_MODE_CROSSCHECK => Mode::CrossCheck,
            _ => return Err(fail(DerividStatus::InvalidArgument, format!("unknown mode {mode}"))),
        };
        let s = sampler.as_ref().copied().unwrap_or_else(|| derivid_sampler_default());
        let sampler = Sampler {
            master_seed: s.seed,
            max_degree: s.max_degree,
            coeff_bound: s.coeff_bound,
            trials: s.trials,
            homogeneous: s.homogeneous,
        };
        let report = verify(op, side, degree, mode, &sampler, &caps_from(caps))?;
        let json = serde_json::to_string(&report).map_err(|e| fail(DerividStatus::Internal, e.to_string()))?;
        write_string(out_report, json)?;
        Ok(if report.verdict == Verdict::Refuted {
            DerividStatus::Refuted
        } else {
            DerividStatus::Ok
        })
    })
}

/// Degree bound as JSON. `FG`: `(a, b) = (n, m)`; `FD`: `(dim g, m)`;
/// `RC`: `a = n`, `b` ignored.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn derivid_bound(theorem: u32, a: u64, b: u64, out: *mut *mut c_char) -> DerividStatus {
    guard(|| {
        let r = match theorem {
            DERIVID_THEOREM_FG => bound_fg(a, b)?,
            DERIVID_THEOREM_FD => bound_fd(a, b)?,
            DERIVID_THEOREM_RC => bound_rc(a)?,
            _ => return Err(fail(DerividStatus::InvalidArgument, format!("unknown theorem {theorem}"))),
        };
        let json = serde_json::to_string(&r).map_err(|e| fail(DerividStatus::Internal, e.to_string()))?;
        write_string(out, json)?;
        Ok(DerividStatus::Ok)
    })
}
