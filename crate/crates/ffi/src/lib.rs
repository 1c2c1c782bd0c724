//! C interface to `acl-core`.
//!
//! Lattices and step functions cross the boundary as opaque handles that
//! the caller frees with the matching `*_free` function. Every fallible
//! function returns an [`AclStatus`]; on failure a message is available
//! from [`acl_last_error`] until the next call on the same thread. Strings
//! returned by the library are freed with [`acl_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use acl_core::calculus::{check_proof, prove, ProofTree, SearchOutcome, SystemConfig};
use acl_core::lattice::{lattice_from_spec, FiniteResiduatedLattice, LatticeError};
use acl_core::semantics::{countermodel_search, eval_formula, SamplerSpec, Valuation};
use acl_core::syntax::{parse_formula, parse_sequent, SystemId};
use acl_core::usc::StepFunction;

/// Result codes shared by every function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AclStatus {
    Ok = 0,
    /// No proof found, sequent invalid, or proof rejected.
    Negative = 1,
    /// Text failed to parse or an argument was out of range.
    ParseError = 2,
    /// A lattice failed validation.
    LatticeError = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    /// Two handles live over different lattices.
    LatticeMismatch = 6,
    /// A panic was caught at the boundary.
    Internal = 7,
}

/// A validated finite residuated lattice.
pub struct AclLattice {
    inner: Arc<FiniteResiduatedLattice>,
}

/// A step function over some lattice.
pub struct AclStep {
    inner: StepFunction,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let clean: String = message.chars().filter(|c| *c != '\0').collect();
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).unwrap_or_default());
}

struct Fail(AclStatus, String);

fn guard(f: impl FnOnce() -> Result<AclStatus, Fail>) -> AclStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, m))) => {
            set_error(&m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            AclStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(AclStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(AclStatus::InvalidUtf8, e.to_string()))
}

fn parse_fail(e: impl ToString) -> Fail {
    Fail(AclStatus::ParseError, e.to_string())
}

fn system(name: &str) -> Result<SystemId, Fail> {
    name.parse()
        .map_err(|e: String| Fail(AclStatus::ParseError, e))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', ""))
        .map(CString::into_raw)
        .unwrap_or(ptr::null_mut())
}

/// The message of the last failure on this thread, or an empty string.
/// The pointer stays valid until the next call into the library.
#[no_mangle]
pub extern "C" fn acl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Frees a string returned by the library.
///
/// # Safety
/// `s` must be null or a pointer returned by this library that has not
/// been freed.
#[no_mangle]
pub unsafe extern "C" fn acl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a lattice from `luk:n`, `godel:n`, `bool:k` or `file:PATH`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn acl_lattice_new(
    spec: *const c_char,
    out: *mut *mut AclLattice,
) -> AclStatus {
    guard(|| {
        if out.is_null() {
            return Err(Fail(AclStatus::NullPointer, "null output".into()));
        }
        let spec = text(spec)?;
        let l = lattice_from_spec(spec).map_err(|e| {
            let code = if matches!(e, LatticeError::UnknownSpecifier(_)) {
                AclStatus::ParseError
            } else {
                AclStatus::LatticeError
            };
            Fail(code, e.to_string())
        })?;
        *out = Box::into_raw(Box::new(AclLattice { inner: l }));
        Ok(AclStatus::Ok)
    })
}

/// # Safety
/// `l` must be null or a handle from [`acl_lattice_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn acl_lattice_free(l: *mut AclLattice) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// The number of elements, or 0 for a null handle.
///
/// # Safety
/// `l` must be null or a live lattice handle.
#[no_mangle]
pub unsafe extern "C" fn acl_lattice_size(l: *const AclLattice) -> usize {
    l.as_ref().map_or(0, |l| l.inner.size())
}

/// Parses a literal such as `step(1/2=0,1=1)` over `l`.
///
/// # Safety
/// `l` must be a live lattice handle, `literal` a NUL-terminated string and
/// `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn acl_step_parse(
    l: *const AclLattice,
    literal: *const c_char,
    out: *mut *mut AclStep,
) -> AclStatus {
    guard(|| {
        let l = l
            .as_ref()
            .ok_or(Fail(AclStatus::NullPointer, "null lattice".into()))?;
        if out.is_null() {
            return Err(Fail(AclStatus::NullPointer, "null output".into()));
        }
        let f = StepFunction::parse_literal(&l.inner, text(literal)?).map_err(parse_fail)?;
        *out = Box::into_raw(Box::new(AclStep { inner: f }));
        Ok(AclStatus::Ok)
    })
}

/// # Safety
/// `f` must be null or a step handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn acl_step_free(f: *mut AclStep) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// The literal form of `f`, to be freed with [`acl_string_free`]; null for
/// a null handle.
///
/// # Safety
/// `f` must be null or a live step handle.
#[no_mangle]
pub unsafe extern "C" fn acl_step_to_string(f: *const AclStep) -> *mut c_char {
    match f.as_ref() {
        Some(f) => to_c(f.inner.to_string()),
        None => ptr::null_mut(),
    }
}

/// Writes whether `f ≤ g` in the continuous order.
///
/// # Safety
/// `f` and `g` must be live step handles and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn acl_step_leq(
    f: *const AclStep,
    g: *const AclStep,
    out: *mut bool,
) -> AclStatus {
    guard(|| {
        let (f, g) = match (f.as_ref(), g.as_ref()) {
            (Some(f), Some(g)) => (f, g),
            _ => return Err(Fail(AclStatus::NullPointer, "null step".into())),
        };
        if out.is_null() {
            return Err(Fail(AclStatus::NullPointer, "null output".into()));
        }
        *out = f
            .inner
            .leq(&g.inner)
            .map_err(|e| Fail(AclStatus::LatticeMismatch, e.to_string()))?;
        Ok(AclStatus::Ok)
    })
}

/// Evaluates `formula` with `names[i]` bound to `values[i]`.
///
/// # Safety
/// `l` must be a live lattice handle; `names` and `values` must each point
/// to `count` valid entries (they may be null when `count` is 0); `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn acl_eval(
    l: *const AclLattice,
    formula: *const c_char,
    names: *const *const c_char,
    values: *const *const AclStep,
    count: usize,
    out: *mut *mut AclStep,
) -> AclStatus {
    guard(|| {
        let l = l
            .as_ref()
            .ok_or(Fail(AclStatus::NullPointer, "null lattice".into()))?;
        if out.is_null() || (count > 0 && (names.is_null() || values.is_null())) {
            return Err(Fail(AclStatus::NullPointer, "null argument".into()));
        }
        let f = parse_formula(text(formula)?, SystemId::Inljk).map_err(parse_fail)?;
        let mut v = Valuation::new(Arc::clone(&l.inner));
        for i in 0..count {
            let name = text(*names.add(i))?;
            let value = (*values.add(i))
                .as_ref()
                .ok_or(Fail(AclStatus::NullPointer, "null step".into()))?;
            v.bind(name, value.inner.clone())
                .map_err(|e| Fail(AclStatus::LatticeMismatch, e.to_string()))?;
        }
        let r = eval_formula(&f, &v).map_err(parse_fail)?;
        *out = Box::into_raw(Box::new(AclStep { inner: r }));
        Ok(AclStatus::Ok)
    })
}

/// Checks a sequent on `samples` random valuations with breakpoints on the
/// grid `k / 2^grid`. Returns `Ok` when no countermodel is found and
/// `Negative` otherwise; the countermodel, if any, is written to
/// `witness` (free with [`acl_string_free`]) when `witness` is not null.
///
/// # Safety
/// `l` must be a live lattice handle, the strings NUL-terminated, and
/// `witness` null or writable.
#[no_mangle]
pub unsafe extern "C" fn acl_sequent_valid(
    l: *const AclLattice,
    system_name: *const c_char,
    sequent: *const c_char,
    grid: u32,
    samples: usize,
    seed: u64,
    witness: *mut *mut c_char,
) -> AclStatus {
    guard(|| {
        let l = l
            .as_ref()
            .ok_or(Fail(AclStatus::NullPointer, "null lattice".into()))?;
        let s = parse_sequent(text(sequent)?, system(text(system_name)?)?).map_err(parse_fail)?;
        let spec = SamplerSpec::random(grid, samples, seed);
        let hit = countermodel_search(&s, &l.inner, &spec).map_err(parse_fail)?;
        if !witness.is_null() {
            *witness = hit
                .as_ref()
                .map_or(ptr::null_mut(), |v| to_c(v.to_string()));
        }
        Ok(if hit.is_none() {
            AclStatus::Ok
        } else {
            AclStatus::Negative
        })
    })
}

/// Searches for a cut-free (or, with `allow_cut`, any) proof within
/// `max_depth`. On success the proof text is written to `proof` (free with
/// [`acl_string_free`]) when `proof` is not null.
///
/// # Safety
/// The strings must be NUL-terminated and `proof` null or writable.
#[no_mangle]
pub unsafe extern "C" fn acl_prove(
    system_name: *const c_char,
    sequent: *const c_char,
    max_depth: usize,
    n_max: u32,
    allow_cut: bool,
    proof: *mut *mut c_char,
) -> AclStatus {
    guard(|| {
        let sys = system(text(system_name)?)?;
        let s = parse_sequent(text(sequent)?, sys).map_err(parse_fail)?;
        let cfg = SystemConfig::new(sys).with_cut(allow_cut).with_n_max(n_max);
        match prove(&s, &cfg, max_depth) {
            SearchOutcome::Found { proof: tree, .. } => {
                if !proof.is_null() {
                    *proof = to_c(tree.to_string());
                }
                Ok(AclStatus::Ok)
            }
            SearchOutcome::NotFound { reason, .. } => {
                if !proof.is_null() {
                    *proof = ptr::null_mut();
                }
                set_error(&reason.to_string());
                Ok(AclStatus::Negative)
            }
        }
    })
}

/// Checks a proof written as an s-expression. Returns `Negative` with the
/// reason in [`acl_last_error`] when a step does not follow.
///
/// # Safety
/// The strings must be NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn acl_check_proof(
    system_name: *const c_char,
    proof: *const c_char,
    n_max: u32,
    allow_cut: bool,
) -> AclStatus {
    guard(|| {
        let sys = system(text(system_name)?)?;
        let tree = ProofTree::parse(text(proof)?, sys).map_err(parse_fail)?;
        let cfg = SystemConfig::new(sys).with_cut(allow_cut).with_n_max(n_max);
        match check_proof(&tree, &cfg) {
            Ok(()) => Ok(AclStatus::Ok),
            Err(e) => Err(Fail(AclStatus::Negative, e.to_string())),
        }
    })
}
