//! C ABI for sbo-kit: opaque operator handles, status codes, and UTF-8
//! string outputs that the caller frees with `sbo_string_free`.
//!
//! Every entry point catches panics and reports them as a status; the most
//! recent error message is retrievable per thread via `sbo_last_error`.

use libc::c_char;
use sbo_kit::algebra::{OperatorSignature, Q};
use sbo_kit::operators::{branson_operator, juhl_symbol, sbo_differential, FormOperator};
use sbo_kit::render::{
    json_const_op, json_form_operator, latex_const_op, latex_document, latex_form_operator,
    plain_const_op, plain_form_operator,
};
use sbo_kit::residue::{vanish_classify, VanishVerdict};
use sbo_kit::suites::{run_suite, SuiteConfig};
use sbo_kit::weyl::ConstCoeffOp;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::str::FromStr;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SboStatus {
    /// Success.
    Ok = 0,
    /// A parameter was out of range or otherwise malformed.
    InvalidArgument = 1,
    /// The requested verification ran and at least one case failed.
    VerifyFailed = 2,
    /// An internal invariant was violated (a bug); details via sbo_last_error.
    Panic = 3,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg).unwrap_or_else(|_| CString::new("invalid error text").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

/// The most recent error message on this thread, or NULL when the last call
/// succeeded. The pointer stays valid until the next failing call on the same
/// thread; do not free it.
#[no_mangle]
pub extern "C" fn sbo_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// ABI version; bumped on breaking changes to this header.
#[no_mangle]
pub extern "C" fn sbo_abi_version() -> u32 {
    1
}

/// Opaque operator handle: either a scalar symbol or a matrix operator.
pub struct SboOperator {
    inner: OperatorKind,
}

enum OperatorKind {
    Scalar(ConstCoeffOp),
    Form(FormOperator),
}

fn guard<F: FnOnce() -> Result<SboStatus, String>>(f: F) -> SboStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(msg)) => {
            set_error(msg);
            SboStatus::InvalidArgument
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".to_string());
            set_error(msg);
            SboStatus::Panic
        }
    }
}

fn write_handle(out: *mut *mut SboOperator, op: OperatorKind) -> Result<SboStatus, String> {
    if out.is_null() {
        return Err("output pointer is NULL".into());
    }
    let boxed = Box::new(SboOperator { inner: op });
    unsafe { *out = Box::into_raw(boxed) };
    Ok(SboStatus::Ok)
}

/// Build the scalar Juhl symbol of order l on R^n (symbolic lambda).
///
/// # Safety
/// `out` must be a valid pointer to an operator-handle slot.
#[no_mangle]
pub unsafe extern "C" fn sbo_juhl_new(n: u32, l: i64, out: *mut *mut SboOperator) -> SboStatus {
    guard(|| {
        if n < 1 || l < 0 {
            return Err(format!("invalid Juhl parameters n={} l={}", n, l));
        }
        write_handle(out, OperatorKind::Scalar(juhl_symbol(n as usize, l)))
    })
}

/// Build the Branson operator on i-forms over R^n with order parameter l.
///
/// # Safety
/// `out` must be a valid pointer to an operator-handle slot.
#[no_mangle]
pub unsafe extern "C" fn sbo_branson_new(
    n: u32,
    i: u32,
    l: u32,
    out: *mut *mut SboOperator,
) -> SboStatus {
    guard(|| {
        if n < 1 || i > n {
            return Err(format!("invalid Branson parameters n={} i={}", n, i));
        }
        write_handle(out, OperatorKind::Form(branson_operator(n as usize, i, l)))
    })
}

/// Build the matrix symmetry breaking operator C^{i,j} of order l
/// (symbolic lambda).
///
/// # Safety
/// `out` must be a valid pointer to an operator-handle slot.
#[no_mangle]
pub unsafe extern "C" fn sbo_operator_new(
    n: u32,
    i: u32,
    j: u32,
    kappa: u8,
    l: i64,
    out: *mut *mut SboOperator,
) -> SboStatus {
    guard(|| {
        let sig = OperatorSignature { n, i, j, kappa };
        if !sig.is_valid() || l < 0 {
            return Err(format!(
                "invalid signature n={} i={} j={} kappa={} l={}",
                n, i, j, kappa, l
            ));
        }
        write_handle(out, OperatorKind::Form(sbo_differential(&sig, l)))
    })
}

/// Release an operator handle. NULL is allowed.
///
/// # Safety
/// `op` must have been produced by one of the constructors and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sbo_operator_free(op: *mut SboOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Rendering formats for `sbo_operator_render`.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SboFormat {
    Plain = 0,
    Latex = 1,
    Json = 2,
}

fn to_c_string(s: String, out: *mut *mut c_char) -> Result<SboStatus, String> {
    if out.is_null() {
        return Err("output pointer is NULL".into());
    }
    let c = CString::new(s).map_err(|_| "rendered text contains NUL".to_string())?;
    unsafe { *out = c.into_raw() };
    Ok(SboStatus::Ok)
}

/// Render an operator; the returned string is freed with `sbo_string_free`.
///
/// # Safety
/// `op` must be a live handle and `out` a valid string slot.
#[no_mangle]
pub unsafe extern "C" fn sbo_operator_render(
    op: *const SboOperator,
    format: SboFormat,
    out: *mut *mut c_char,
) -> SboStatus {
    guard(|| {
        if op.is_null() {
            return Err("operator handle is NULL".into());
        }
        let handle = &*op;
        let text = match (&handle.inner, format) {
            (OperatorKind::Scalar(s), SboFormat::Plain) => plain_const_op(s),
            (OperatorKind::Scalar(s), SboFormat::Latex) => latex_document(&latex_const_op(s)),
            (OperatorKind::Scalar(s), SboFormat::Json) => {
                serde_json::to_string_pretty(&json_const_op(s)).unwrap()
            }
            (OperatorKind::Form(f), SboFormat::Plain) => plain_form_operator(f),
            (OperatorKind::Form(f), SboFormat::Latex) => latex_document(&latex_form_operator(f)),
            (OperatorKind::Form(f), SboFormat::Json) => {
                serde_json::to_string_pretty(&json_form_operator(f)).unwrap()
            }
        };
        to_c_string(text, out)
    })
}

/// True (1) when every entry of the operator is zero.
///
/// # Safety
/// `op` must be a live handle and `out` a valid slot.
#[no_mangle]
pub unsafe extern "C" fn sbo_operator_is_zero(op: *const SboOperator, out: *mut i32) -> SboStatus {
    guard(|| {
        if op.is_null() || out.is_null() {
            return Err("NULL pointer".into());
        }
        let z = match &(*op).inner {
            OperatorKind::Scalar(s) => s.is_zero(),
            OperatorKind::Form(f) => f.is_zero(),
        };
        *out = i32::from(z);
        Ok(SboStatus::Ok)
    })
}

/// Suite configuration mirrored over the ABI; zero fields fall back to the
/// library defaults.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct SboSuiteConfig {
    pub n_min: u32,
    pub n_max: u32,
    pub l_max: i64,
    pub m_max: u32,
    pub k_max: u32,
    pub grid: i64,
    pub tol: f64,
}

impl SboSuiteConfig {
    fn to_config(self) -> SuiteConfig {
        let d = SuiteConfig::default();
        SuiteConfig {
            n_min: if self.n_min == 0 { d.n_min } else { self.n_min },
            n_max: if self.n_max == 0 { d.n_max } else { self.n_max },
            l_max: if self.l_max == 0 { d.l_max } else { self.l_max },
            m_max: if self.m_max == 0 { d.m_max } else { self.m_max },
            k_max: if self.k_max == 0 { d.k_max } else { self.k_max },
            grid: if self.grid == 0 { d.grid } else { self.grid },
            tol: if self.tol == 0.0 { d.tol } else { self.tol },
            mode: d.mode,
        }
    }
}

/// Run a named verification suite ("weyl", "gegenbauer", "juhl-form",
/// "knapp-stein", "components", "prop-gc", "main-theorem", "vanish",
/// "numeric" or "all"). Writes the JSON report when `json_out` is non-NULL
/// and returns Ok when every case passed, VerifyFailed otherwise.
///
/// # Safety
/// `suite` must be a NUL-terminated string; `config` may be NULL for
/// defaults; `json_out` may be NULL when the report is not wanted.
#[no_mangle]
pub unsafe extern "C" fn sbo_verify(
    suite: *const c_char,
    config: *const SboSuiteConfig,
    json_out: *mut *mut c_char,
) -> SboStatus {
    guard(|| {
        if suite.is_null() {
            return Err("suite name is NULL".into());
        }
        let name = CStr::from_ptr(suite)
            .to_str()
            .map_err(|_| "suite name is not UTF-8".to_string())?;
        let cfg = if config.is_null() {
            SuiteConfig::default()
        } else {
            (*config).to_config()
        };
        let report = run_suite(name, &cfg)?;
        if !json_out.is_null() {
            to_c_string(report.to_json(), json_out)?;
        }
        Ok(if report.all_pass() {
            SboStatus::Ok
        } else {
            SboStatus::VerifyFailed
        })
    })
}

/// Classify vanishing of the normalized operator family at rational
/// (lambda, nu) given as "p/q" literals. Writes 1/0 into `vanishes` and the
/// matched branch description into `branch_out` when non-NULL.
///
/// # Safety
/// `lambda` and `nu` must be NUL-terminated strings; `vanishes` must be a
/// valid slot; `branch_out` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn sbo_vanish(
    lambda: *const c_char,
    nu: *const c_char,
    n: u32,
    i: u32,
    j: u32,
    kappa: u8,
    vanishes: *mut i32,
    branch_out: *mut *mut c_char,
) -> SboStatus {
    guard(|| {
        if lambda.is_null() || nu.is_null() || vanishes.is_null() {
            return Err("NULL pointer".into());
        }
        let parse = |p: *const c_char| -> Result<Q, String> {
            let s = CStr::from_ptr(p)
                .to_str()
                .map_err(|_| "rational literal is not UTF-8".to_string())?;
            parse_rational(s)
        };
        let lam = parse(lambda)?;
        let nuv = parse(nu)?;
        let sig = OperatorSignature { n, i, j, kappa };
        if !sig.is_valid() {
            return Err(format!(
                "invalid signature n={} i={} j={} kappa={}",
                n, i, j, kappa
            ));
        }
        let (v, verdict) = vanish_classify(&lam, &nuv, kappa, &sig);
        *vanishes = i32::from(v);
        if !branch_out.is_null() {
            let branch = match verdict {
                VanishVerdict::OffParity => "off-parity",
                VanishVerdict::Lattice => {
                    if kappa == 0 {
                        "L_even"
                    } else {
                        "L_odd"
                    }
                }
                VanishVerdict::LatticePunctured => {
                    if kappa == 0 {
                        "L_even minus {nu=0}"
                    } else {
                        "L_odd minus {nu=0}"
                    }
                }
                VanishVerdict::IsolatedPoint => {
                    if j == i {
                        "point (i,i)"
                    } else {
                        "point (n-i,n-i)"
                    }
                }
                VanishVerdict::Nonzero => "none",
            };
            to_c_string(branch.to_string(), branch_out)?;
        }
        Ok(SboStatus::Ok)
    })
}

fn parse_rational(s: &str) -> Result<Q, String> {
    use num_bigint::BigInt;
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| format!("bad rational '{}'", s))?;
        let q = BigInt::from_str(q.trim()).map_err(|_| format!("bad rational '{}'", s))?;
        if q == BigInt::from(0) {
            return Err("zero denominator".into());
        }
        Ok(Q::new(p, q))
    } else {
        let p = BigInt::from_str(s).map_err(|_| format!("bad rational '{}'", s))?;
        Ok(Q::from_integer(p))
    }
}

/// Free a string returned by this library. NULL is allowed.
///
/// # Safety
/// `s` must have been produced by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sbo_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
