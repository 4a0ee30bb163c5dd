//! C interface to `isotypica`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `_free` function. Every fallible call returns
//! an [`IsotypicaStatus`]; on failure `isotypica_last_error` describes the
//! problem. Strings returned through out-parameters are freed with
//! `isotypica_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use isotypica::circuit::{transform_plan, Circuit, PlanMode, TransformOptions};
use isotypica::projector::{self, ProjectorPlan};
use isotypica::rep::{Partition, SemistandardTableau, Weight};
use isotypica::{text, uea, Error, Format, MetaPolynomial};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsotypicaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    FormatMismatch = 4,
    InvalidArgument = 5,
    BudgetExceeded = 6,
    Math = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsotypicaMode {
    FactorByFactor = 0,
    SinglePass = 1,
}

/// Format `(delta, d, k)` of a metapolynomial space.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsotypicaFormat {
    pub delta: u32,
    pub d: u32,
    pub k: u32,
}

impl From<IsotypicaFormat> for Format {
    fn from(f: IsotypicaFormat) -> Format {
        Format::new(f.delta, f.d, f.k as usize)
    }
}

impl From<Format> for IsotypicaFormat {
    fn from(f: Format) -> IsotypicaFormat {
        IsotypicaFormat {
            delta: f.delta,
            d: f.d,
            k: f.k as u32,
        }
    }
}

pub struct IsotypicaMeta(MetaPolynomial);

pub struct IsotypicaPlan(ProjectorPlan);

pub struct IsotypicaCircuit(Circuit);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(IsotypicaStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let status = match e {
            Error::Parse { .. } | Error::Json(_) => IsotypicaStatus::Parse,
            Error::FormatMismatch { .. } | Error::VariableCountMismatch { .. } | Error::Inhomogeneous(_) => {
                IsotypicaStatus::FormatMismatch
            }
            Error::BudgetExceeded(_) | Error::DimensionCap { .. } => IsotypicaStatus::BudgetExceeded,
            Error::IndexOutOfRange(_)
            | Error::InvalidWeight { .. }
            | Error::InvalidPartition(_)
            | Error::NotSemistandard(_)
            | Error::NotDominant(_)
            | Error::InvalidCircuit(_)
            | Error::HomogenizeDegree { .. } => IsotypicaStatus::InvalidArgument,
            _ => IsotypicaStatus::Math,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(IsotypicaStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> IsotypicaStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            IsotypicaStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            IsotypicaStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(IsotypicaStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = CString::new(s).expect("no interior nul").into_raw();
    Ok(())
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn isotypica_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn isotypica_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses text or JSON. `format` may be null when the text has a nonzero term.
///
/// # Safety
/// `text` must be a nul-terminated string; `format` null or valid; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn isotypica_meta_parse(
    text: *const c_char,
    format: *const IsotypicaFormat,
    out: *mut *mut IsotypicaMeta,
) -> IsotypicaStatus {
    guard(|| {
        let s = read_str(text, "text")?;
        let fmt = format.as_ref().map(|f| Format::from(*f));
        let m = text::parse_any(s, fmt)?;
        if let Some(f) = fmt {
            if m.format() != f {
                return Err(Error::FormatMismatch {
                    expected: f,
                    found: m.format(),
                }
                .into());
            }
        }
        put(out, IsotypicaMeta(m))
    })
}

/// # Safety
/// `m` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn isotypica_meta_free(m: *mut IsotypicaMeta) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isotypica_meta_to_string(
    m: *const IsotypicaMeta,
    out: *mut *mut c_char,
) -> IsotypicaStatus {
    guard(|| put_string(out, deref(m, "metapolynomial")?.0.to_string()))
}

/// # Safety
/// `m` valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isotypica_meta_to_json(
    m: *const IsotypicaMeta,
    out: *mut *mut c_char,
) -> IsotypicaStatus {
    guard(|| put_string(out, text::to_json(&deref(m, "metapolynomial")?.0)))
}

/// # Safety
/// `m` valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isotypica_meta_format(
    m: *const IsotypicaMeta,
    out: *mut IsotypicaFormat,
) -> IsotypicaStatus {
    guard(|| {
        let f = deref(m, "metapolynomial")?.0.format();
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = f.into();
        Ok(())
    })
}

/// # Safety
/// `m` valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isotypica_meta_is_zero(m: *const IsotypicaMeta, out: *mut bool) -> IsotypicaStatus {
    guard(|| {
        let z = deref(m, "metapolynomial")?.0.is_zero();
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = z;
        Ok(())
    })
}

/// # Safety
/// `a`, `b` valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isotypica_meta_equal(
    a: *const IsotypicaMeta,
    b: *const IsotypicaMeta,
    out: *mut bool,
) -> IsotypicaStatus {
    guard(|| {
        let eq = deref(a, "left operand")?.0 == deref(b, "right operand")?.0;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = eq;
        Ok(())
    })
}

/// Projector onto the weight space `coords[0..len]`.
///
/// # Safety
/// `coords` points to `len` values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isotypica_plan_weight(
    format: IsotypicaFormat,
    coords: *const i64,
    len: usize,
    out: *mut *mut IsotypicaPlan,
) -> IsotypicaStatus {
    guard(|| {
        let w = Weight::new(slice(coords, len, "coords")?.to_vec());
        put(out, IsotypicaPlan(projector::plan_weight(&w, format.into())?))
    })
}

/// Projector onto the isotypic component of the partition `parts[0..len]`.
///
/// # Safety
/// `parts` points to `len` values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isotypica_plan_isotypic(
    format: IsotypicaFormat,
    parts: *const i64,
    len: usize,
    out: *mut *mut IsotypicaPlan,
) -> IsotypicaStatus {
    guard(|| {
        let l = Partition::new(slice(parts, len, "parts")?.to_vec())?;
        put(out, IsotypicaPlan(projector::plan_isotypic(&l, format.into())?))
    })
}

/// Projector onto the highest weight vectors of type `parts[0..len]`.
///
/// # Safety
/// `parts` points to `len` values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isotypica_plan_hwv(
    format: IsotypicaFormat,
    parts: *const i64,
    len: usize,
    out: *mut *mut IsotypicaPlan,
) -> IsotypicaStatus {
    guard(|| {
        let l = Partition::new(slice(parts, len, "parts")?.to_vec())?;
        put(out, IsotypicaPlan(projector::plan_hwv(&l, format.into())?))
    })
}

/// Projector onto the component of a semistandard tableau given row by row:
/// row `r` has `row_lengths[r]` entries, all rows concatenated in `entries`.
///
/// # Safety
/// `row_lengths` points to `rows` values and `entries` to their sum; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn isotypica_plan_gz(
    format: IsotypicaFormat,
    entries: *const u32,
    row_lengths: *const usize,
    rows: usize,
    out: *mut *mut IsotypicaPlan,
) -> IsotypicaStatus {
    guard(|| {
        let lengths = slice(row_lengths, rows, "row_lengths")?;
        let total: usize = lengths.iter().sum();
        let flat = slice(entries, total, "entries")?;
        let mut table = Vec::with_capacity(rows);
        let mut at = 0;
        for &n in lengths {
            table.push(flat[at..at + n].to_vec());
            at += n;
        }
        let t = SemistandardTableau::new(table)?;
        put(out, IsotypicaPlan(projector::plan_gz(&t, format.into())?))
    })
}

/// # Safety
/// `p` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn isotypica_plan_free(p: *mut IsotypicaPlan) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isotypica_plan_factor_count(p: *const IsotypicaPlan, out: *mut usize) -> IsotypicaStatus {
    guard(|| {
        let n = deref(p, "plan")?.0.factors.len();
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = n;
        Ok(())
    })
}

/// # Safety
/// `p` valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isotypica_plan_to_json(p: *const IsotypicaPlan, out: *mut *mut c_char) -> IsotypicaStatus {
    guard(|| {
        let s = serde_json::to_string(&deref(p, "plan")?.0).map_err(Error::from)?;
        put_string(out, s)
    })
}

/// # Safety
/// `p`, `m` valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isotypica_apply_plan(
    p: *const IsotypicaPlan,
    m: *const IsotypicaMeta,
    out: *mut *mut IsotypicaMeta,
) -> IsotypicaStatus {
    guard(|| {
        let r = projector::apply_plan(&deref(p, "plan")?.0, &deref(m, "metapolynomial")?.0)?;
        put(out, IsotypicaMeta(r))
    })
}

/// `chi_lambda(C_p)` as a decimal string.
///
/// # Safety
/// `lambda` points to `len` values; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isotypica_central_character(
    lambda: *const i64,
    len: usize,
    p: usize,
    out: *mut *mut c_char,
) -> IsotypicaStatus {
    guard(|| {
        let c = uea::central_character(slice(lambda, len, "lambda")?, p)?;
        put_string(out, isotypica::scalar::format(&c))
    })
}

/// # Safety
/// `json` nul-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isotypica_circuit_from_json(
    json: *const c_char,
    out: *mut *mut IsotypicaCircuit,
) -> IsotypicaStatus {
    guard(|| put(out, IsotypicaCircuit(Circuit::from_json(read_str(json, "json")?)?)))
}

/// # Safety
/// `c` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn isotypica_circuit_free(c: *mut IsotypicaCircuit) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `c` valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isotypica_circuit_to_json(c: *const IsotypicaCircuit, out: *mut *mut c_char) -> IsotypicaStatus {
    guard(|| put_string(out, deref(c, "circuit")?.0.to_json()))
}

/// # Safety
/// `c` valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isotypica_circuit_size(c: *const IsotypicaCircuit, out: *mut usize) -> IsotypicaStatus {
    guard(|| {
        let n = deref(c, "circuit")?.0.size();
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = n;
        Ok(())
    })
}

/// Symbolic value of the circuit.
///
/// # Safety
/// `c` valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isotypica_circuit_eval(
    c: *const IsotypicaCircuit,
    out: *mut *mut IsotypicaMeta,
) -> IsotypicaStatus {
    guard(|| put(out, IsotypicaMeta(deref(c, "circuit")?.0.eval_symbolic()?)))
}

/// Circuit computing the plan's projection of the circuit's output.
/// `budget` bounds the normal form in single-pass mode and is ignored
/// otherwise.
///
/// # Safety
/// `c`, `p` valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn isotypica_transform(
    c: *const IsotypicaCircuit,
    p: *const IsotypicaPlan,
    mode: IsotypicaMode,
    budget: usize,
    out: *mut *mut IsotypicaCircuit,
) -> IsotypicaStatus {
    guard(|| {
        let plan = &deref(p, "plan")?.0;
        let circuit = deref(c, "circuit")?.0.clone();
        let circuit = match circuit.format() {
            Some(_) => circuit,
            None => circuit.with_format(Some(plan.format))?,
        };
        let mode = match mode {
            IsotypicaMode::FactorByFactor => PlanMode::FactorByFactor,
            IsotypicaMode::SinglePass => PlanMode::SinglePass { term_budget: budget },
        };
        let (r, _) = transform_plan(&circuit, plan, mode, &TransformOptions::default())?;
        put(out, IsotypicaCircuit(r))
    })
}
