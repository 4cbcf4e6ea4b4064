//! C ABI for kleenebook.
//!
//! Formulas, belief assignments and books are opaque handles created by a
//! `*_parse` / `*_from_json` function and released with the matching
//! `*_free`. Every fallible call returns a [`KbStatus`] and writes results
//! through out-pointers. On failure, [`kb_last_error`] describes the error
//! for the calling thread. Strings returned by the library are owned by the
//! caller and released with [`kb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kleenebook::betting::{AnyBook, Verdict};
use kleenebook::kleene::{self, Formula, TruthValue, World};
use kleenebook::probability::{check_belief_axioms, check_derived_properties, BeliefAssignment};
use kleenebook::synth::{stake_solver, synthesize_all};
use kleenebook::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Arity = 4,
    InvalidValue = 5,
    Input = 6,
    Precondition = 7,
    Unverified = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KbTruth {
    F = 0,
    N = 1,
    T = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KbVerdict {
    Neither = 0,
    WeakDutchBook = 1,
    DutchBook = 2,
}

/// A point of R². Classical payoffs use `u` and leave `v` at 0.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct KbPair {
    pub u: f64,
    pub v: f64,
}

/// Stakes `h, h', k, k'` with `h·x + h'·z = k·y + k'·w`, `h < k'`, `h' < k`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct KbStakes {
    pub h: f64,
    pub hp: f64,
    pub k: f64,
    pub kp: f64,
}

/// A parsed formula together with the arity it was parsed at.
pub struct KbFormula {
    formula: Formula,
    arity: usize,
}

pub struct KbBeliefs(BeliefAssignment);

pub struct KbBook(AnyBook);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(KbStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Syntax { .. } | Error::VarOutOfRange { .. } => KbStatus::Parse,
            Error::ArityMismatch { .. } | Error::ArityCap { .. } => KbStatus::Arity,
            Error::InvalidValue { .. } | Error::NonFinite(_) => KbStatus::InvalidValue,
            Error::Solver(_) | Error::Precondition(_) => KbStatus::Precondition,
            Error::Unverified(_) => KbStatus::Unverified,
            _ => KbStatus::Input,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> KbStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KbStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            KbStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(KbStatus::NullPointer, "null pointer argument".into())
}

unsafe fn utf8<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(KbStatus::InvalidUtf8, "string is not valid UTF-8".into()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn kb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `text` over `p1..p{arity}`.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kb_formula_parse(
    text: *const c_char,
    arity: usize,
    out: *mut *mut KbFormula,
) -> KbStatus {
    guard(|| {
        let t = utf8(text)?;
        kleene::check_arity(arity)?;
        let formula = kleene::parse(t, arity)?;
        write(out, Box::into_raw(Box::new(KbFormula { formula, arity })))
    })
}

/// # Safety
/// `f` must be null or a handle from [`kb_formula_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kb_formula_free(f: *mut KbFormula) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Canonical text of the formula; free with [`kb_string_free`].
///
/// # Safety
/// `f` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kb_formula_to_string(f: *const KbFormula, out: *mut *mut c_char) -> KbStatus {
    guard(|| {
        let f = handle(f)?;
        write(out, into_c_string(f.formula.to_string()))
    })
}

/// Value of the formula at `world`, a string over `T`, `N`, `F`.
///
/// # Safety
/// `f` must be a live handle, `world` a nul-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn kb_formula_eval(
    f: *const KbFormula,
    world: *const c_char,
    out: *mut KbTruth,
) -> KbStatus {
    guard(|| {
        let f = handle(f)?;
        let w = parse_world(utf8(world)?, f.arity)?;
        let v = match kleene::eval(&f.formula, &w)? {
            TruthValue::F => KbTruth::F,
            TruthValue::N => KbTruth::N,
            TruthValue::T => KbTruth::T,
        };
        write(out, v)
    })
}

fn parse_world(s: &str, arity: usize) -> Result<World, Failure> {
    let w: World = s.parse()?;
    if w.arity() != arity {
        return Err(Error::ArityMismatch { expected: arity, found: w.arity() }.into());
    }
    Ok(w)
}

fn same_arity(a: &KbFormula, b: &KbFormula) -> Result<usize, Failure> {
    if a.arity != b.arity {
        return Err(Error::ArityMismatch { expected: a.arity, found: b.arity }.into());
    }
    Ok(a.arity)
}

/// Whether `premise ⊨ conclusion` over all `3ⁿ` worlds.
///
/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kb_formula_entails(
    premise: *const KbFormula,
    conclusion: *const KbFormula,
    out: *mut bool,
) -> KbStatus {
    guard(|| {
        let (p, c) = (handle(premise)?, handle(conclusion)?);
        let n = same_arity(p, c)?;
        write(out, kleene::entails(std::slice::from_ref(&p.formula), &c.formula, n)?)
    })
}

/// # Safety
/// Both handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kb_formula_equivalent(
    a: *const KbFormula,
    b: *const KbFormula,
    out: *mut bool,
) -> KbStatus {
    guard(|| {
        let (a, b) = (handle(a)?, handle(b)?);
        let n = same_arity(a, b)?;
        write(out, kleene::equivalent(&a.formula, &b.formula, n)?)
    })
}

/// Reads a belief file: `{"arity": n, "beliefs": [{"formula": "...", "value": [x, y]}]}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kb_beliefs_from_json(json: *const c_char, out: *mut *mut KbBeliefs) -> KbStatus {
    guard(|| {
        let b = BeliefAssignment::from_json(utf8(json)?)?;
        kleene::check_arity(b.arity())?;
        write(out, Box::into_raw(Box::new(KbBeliefs(b))))
    })
}

/// # Safety
/// `b` must be null or a handle from [`kb_beliefs_from_json`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kb_beliefs_free(b: *mut KbBeliefs) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Checks the axioms and their derived consequences. Writes the number of
/// violations to `count` and, when `report` is not null, a JSON report.
///
/// # Safety
/// `b` must be a live handle; `count` writable; `report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn kb_beliefs_check(
    b: *const KbBeliefs,
    count: *mut usize,
    report: *mut *mut c_char,
) -> KbStatus {
    guard(|| {
        let b = &handle(b)?.0;
        let r = check_belief_axioms(b)?;
        let d = check_derived_properties(b)?;
        write(count, r.violations.len() + d.len())?;
        if !report.is_null() {
            let json =
                serde_json::json!({ "violations": r.violations, "derived": d, "unchecked": r.unchecked });
            report.write(into_c_string(json.to_string()));
        }
        Ok(())
    })
}

/// Builds and verifies a Dutch Book for every violation. Writes the number
/// of certificates to `count` and, when `report` is not null, the full JSON
/// report (certificates, unsynthesized violations, unchecked instances).
///
/// # Safety
/// `b` must be a live handle; `count` writable; `report` null or writable.
#[no_mangle]
pub unsafe extern "C" fn kb_beliefs_synthesize(
    b: *const KbBeliefs,
    count: *mut usize,
    report: *mut *mut c_char,
) -> KbStatus {
    guard(|| {
        let r = synthesize_all(&handle(b)?.0)?;
        write(count, r.certificates.len())?;
        if !report.is_null() {
            report.write(into_c_string(serde_json::to_string(&r).expect("report serializes")));
        }
        Ok(())
    })
}

/// Reads a book file (`"kind": "partial"` or `"classical"`).
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kb_book_from_json(json: *const c_char, out: *mut *mut KbBook) -> KbStatus {
    guard(|| {
        let b = AnyBook::from_json(utf8(json)?)?;
        kleene::check_arity(b.arity())?;
        write(out, Box::into_raw(Box::new(KbBook(b))))
    })
}

/// # Safety
/// `b` must be null or a handle from [`kb_book_from_json`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn kb_book_free(b: *mut KbBook) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Exhaustive detection over every world of the book's arity.
///
/// # Safety
/// `b` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kb_book_detect(b: *const KbBook, out: *mut KbVerdict) -> KbStatus {
    guard(|| {
        let v = match handle(b)?.0.detect()?.verdict {
            Verdict::Neither => KbVerdict::Neither,
            Verdict::WeakDutchBook => KbVerdict::WeakDutchBook,
            Verdict::DutchBook => KbVerdict::DutchBook,
        };
        write(out, v)
    })
}

/// Net payoff of the book at `world`.
///
/// # Safety
/// `b` must be a live handle, `world` a nul-terminated string and `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn kb_book_payoff(
    b: *const KbBook,
    world: *const c_char,
    out: *mut KbPair,
) -> KbStatus {
    guard(|| {
        let b = &handle(b)?.0;
        let w = parse_world(utf8(world)?, b.arity())?;
        let p = match b {
            AnyBook::Partial(b) => {
                let p = b.payoff(&w)?;
                KbPair { u: p.u, v: p.v }
            }
            AnyBook::Classical(b) => KbPair { u: b.payoff(&w)?, v: 0.0 },
        };
        write(out, p)
    })
}

/// Stakes for `(x, y), (z, w) ∈ T` with `x + z = y + w` and
/// `(y, x) ≠ (z, w)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kb_stake_solver(x: f64, y: f64, z: f64, w: f64, out: *mut KbStakes) -> KbStatus {
    guard(|| {
        let s = stake_solver(x, y, z, w)?;
        write(out, KbStakes { h: s.h, hp: s.hp, k: s.k, kp: s.kp })
    })
}
