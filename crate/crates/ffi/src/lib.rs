//! C ABI over the jetcalc engine.
//!
//! Expressions and operators cross the boundary as opaque handles. Every
//! fallible call returns a `JcStatus`; on failure `jc_last_error` holds a
//! message for the calling thread. Strings returned by the library are owned
//! by the caller and must be released with `jc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use jetcalc::complexify::{block_inverse, check_blocks, prolong_block, BaseChange, CMatrix};
use jetcalc::euler_darboux::{
    catalog, ed_map, theta, theta_prime, CatalogItem, EdError, EquationModel,
};
use jetcalc::expr_io::{
    expr_to_json, from_json, op_to_json, parse_expr, parse_op, print_expr, print_op, Value,
};
use jetcalc::jet::{jacobi_bracket, op_apply, CDiffOp, Chart, DiffExpr, JetError, Limits};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// Order or degree limit exceeded.
    Limit = 4,
    /// Chart mismatch, unknown catalog name, wrong kind of object.
    Invalid = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JcChart {
    /// Coordinates `x, y`.
    Elliptic = 0,
    /// Coordinates `xi, eta`.
    Hyperbolic = 1,
    /// Coordinates `X, Y`.
    Intermediate = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JcMap {
    Canonical = 0,
    Ed = 1,
    EdLiteral = 2,
    G = 3,
}

impl From<JcChart> for Chart {
    fn from(c: JcChart) -> Self {
        match c {
            JcChart::Elliptic => Chart::Elliptic,
            JcChart::Hyperbolic => Chart::Hyperbolic,
            JcChart::Intermediate => Chart::Intermediate,
        }
    }
}

impl From<Chart> for JcChart {
    fn from(c: Chart) -> Self {
        match c {
            Chart::Elliptic => JcChart::Elliptic,
            Chart::Hyperbolic => JcChart::Hyperbolic,
            Chart::Intermediate => JcChart::Intermediate,
        }
    }
}

/// Opaque generating section (affine in the jets).
pub struct JcExpr(DiffExpr);

/// Opaque C-differential operator.
pub struct JcOp(CDiffOp);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

struct Failure(JcStatus, String);

impl From<JetError> for Failure {
    fn from(e: JetError) -> Self {
        EdError::Jet(e).into()
    }
}

impl From<EdError> for Failure {
    fn from(e: EdError) -> Self {
        let status = if e.is_limit() {
            JcStatus::Limit
        } else if matches!(e, EdError::Parse(_)) {
            JcStatus::Parse
        } else {
            JcStatus::Invalid
        };
        Failure(status, e.to_string())
    }
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> JcStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => JcStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            JcStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(JcStatus::NullPointer, "null pointer argument".into())
}

unsafe fn text<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(JcStatus::InvalidUtf8, "argument is not UTF-8".into()))
}

unsafe fn expr<'a>(p: *const JcExpr) -> Result<&'a DiffExpr, Failure> {
    p.as_ref().map(|h| &h.0).ok_or_else(null)
}

unsafe fn op<'a>(p: *const JcOp) -> Result<&'a CDiffOp, Failure> {
    p.as_ref().map(|h| &h.0).ok_or_else(null)
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    *out = CString::new(s)
        .expect("rendered text has no nul")
        .into_raw();
    Ok(())
}

fn parse_failure(e: jetcalc::expr_io::ParseError, src: &str) -> Failure {
    Failure(JcStatus::Parse, e.render(src))
}

fn base_change(m: JcMap) -> BaseChange {
    match m {
        JcMap::Canonical => BaseChange::canonical_wirtinger(),
        JcMap::Ed => BaseChange::euler_darboux(),
        JcMap::EdLiteral => BaseChange::euler_darboux_literal(),
        JcMap::G => BaseChange::g_transform(),
    }
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn jc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn jc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or come from this library.
#[no_mangle]
pub unsafe extern "C" fn jc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `e` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn jc_expr_free(e: *mut JcExpr) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// # Safety
/// `o` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn jc_op_free(o: *mut JcOp) {
    if !o.is_null() {
        drop(Box::from_raw(o));
    }
}

/// Parses a section such as `"-1*u[1,0] + u[0,1]"` in the given chart.
///
/// # Safety
/// `src` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jc_expr_parse(
    src: *const c_char,
    chart: JcChart,
    out: *mut *mut JcExpr,
) -> JcStatus {
    guard(|| {
        let s = text(src)?;
        let e = parse_expr(s, chart.into()).map_err(|e| parse_failure(e, s))?;
        put(out, JcExpr(e))
    })
}

/// # Safety
/// `src` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jc_op_parse(
    src: *const c_char,
    chart: JcChart,
    out: *mut *mut JcOp,
) -> JcStatus {
    guard(|| {
        let s = text(src)?;
        let o = parse_op(s, chart.into()).map_err(|e| parse_failure(e, s))?;
        put(out, JcOp(o))
    })
}

/// Canonical text form.
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jc_expr_print(e: *const JcExpr, out: *mut *mut c_char) -> JcStatus {
    guard(|| put_string(out, print_expr(expr(e)?)))
}

/// # Safety
/// `o` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jc_op_print(o: *const JcOp, out: *mut *mut c_char) -> JcStatus {
    guard(|| put_string(out, print_op(op(o)?)))
}

/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jc_expr_to_json(e: *const JcExpr, out: *mut *mut c_char) -> JcStatus {
    guard(|| put_string(out, expr_to_json(expr(e)?)))
}

/// # Safety
/// `o` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jc_op_to_json(o: *const JcOp, out: *mut *mut c_char) -> JcStatus {
    guard(|| put_string(out, op_to_json(op(o)?)))
}

/// Reads a JSON document holding an expression.
///
/// # Safety
/// `src` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jc_expr_from_json(src: *const c_char, out: *mut *mut JcExpr) -> JcStatus {
    guard(|| {
        let s = text(src)?;
        match from_json(s).map_err(|e| parse_failure(e, s))? {
            Value::Expr(e) => put(out, JcExpr(e)),
            Value::Op(_) => Err(Failure(
                JcStatus::Invalid,
                "document holds an operator".into(),
            )),
        }
    })
}

/// # Safety
/// `src` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jc_op_from_json(src: *const c_char, out: *mut *mut JcOp) -> JcStatus {
    guard(|| {
        let s = text(src)?;
        match from_json(s).map_err(|e| parse_failure(e, s))? {
            Value::Op(o) => put(out, JcOp(o)),
            Value::Expr(_) => Err(Failure(
                JcStatus::Invalid,
                "document holds an expression".into(),
            )),
        }
    })
}

/// Chart of an expression; `Elliptic` for a null handle.
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn jc_expr_chart(e: *const JcExpr) -> JcChart {
    e.as_ref().map_or(JcChart::Elliptic, |h| h.0.chart().into())
}

/// # Safety
/// `a` and `b` must be live handles.
#[no_mangle]
pub unsafe extern "C" fn jc_expr_equal(a: *const JcExpr, b: *const JcExpr) -> bool {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => a.0 == b.0,
        _ => false,
    }
}

/// Catalog section by name, including `classical(c1,c2,c3,c4)`.
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jc_catalog_expr(name: *const c_char, out: *mut *mut JcExpr) -> JcStatus {
    guard(|| match catalog(text(name)?)? {
        CatalogItem::Expr(e) => put(out, JcExpr(e)),
        CatalogItem::Op(_) => Err(Failure(
            JcStatus::Invalid,
            "catalog entry is an operator".into(),
        )),
    })
}

/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jc_catalog_op(name: *const c_char, out: *mut *mut JcOp) -> JcStatus {
    guard(|| match catalog(text(name)?)? {
        CatalogItem::Op(o) => put(out, JcOp(o)),
        CatalogItem::Expr(_) => Err(Failure(
            JcStatus::Invalid,
            "catalog entry is a section".into(),
        )),
    })
}

fn model(chart: JcChart) -> EquationModel {
    EquationModel::for_chart(chart.into(), Limits::default())
}

/// Symmetry test on the equation of `eq`. Writes the verdict and, when
/// `residual` is non-null, the restricted residual.
///
/// # Safety
/// `phi` must be a live handle; `verdict` must be writable; `residual` may be null.
#[no_mangle]
pub unsafe extern "C" fn jc_is_symmetry(
    eq: JcChart,
    phi: *const JcExpr,
    verdict: *mut bool,
    residual: *mut *mut JcExpr,
) -> JcStatus {
    guard(|| {
        if verdict.is_null() {
            return Err(null());
        }
        let rep = model(eq).is_symmetry(expr(phi)?)?;
        *verdict = rep.verdict;
        if !residual.is_null() {
            put(residual, JcExpr(rep.residual))?;
        }
        Ok(())
    })
}

/// Restriction of a section to the internal coordinates of `eq`.
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jc_restrict(
    eq: JcChart,
    e: *const JcExpr,
    out: *mut *mut JcExpr,
) -> JcStatus {
    guard(|| {
        let r = model(eq).restrict(expr(e)?)?;
        put(out, JcExpr(r))
    })
}

/// Hyperbolic section to elliptic section.
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jc_theta(
    e: *const JcExpr,
    literal: bool,
    out: *mut *mut JcExpr,
) -> JcStatus {
    guard(|| put(out, JcExpr(theta(&ed_map(literal), expr(e)?)?)))
}

/// Elliptic section to hyperbolic section.
///
/// # Safety
/// `e` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jc_theta_prime(
    e: *const JcExpr,
    literal: bool,
    out: *mut *mut JcExpr,
) -> JcStatus {
    guard(|| put(out, JcExpr(theta_prime(&ed_map(literal), expr(e)?)?)))
}

/// Jacobi bracket of two sections of the same chart (unrestricted).
///
/// # Safety
/// `a`, `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jc_bracket(
    a: *const JcExpr,
    b: *const JcExpr,
    out: *mut *mut JcExpr,
) -> JcStatus {
    guard(|| put(out, JcExpr(jacobi_bracket(expr(a)?, expr(b)?)?)))
}

/// Applies an operator to a section.
///
/// # Safety
/// `o`, `e` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jc_op_apply(
    o: *const JcOp,
    e: *const JcExpr,
    out: *mut *mut JcExpr,
) -> JcStatus {
    guard(|| put(out, JcExpr(op_apply(op(o)?, expr(e)?)?)))
}

fn matrix_json(m: &CMatrix) -> serde_json::Value {
    m.rows()
        .map(|row| row.iter().map(|z| z.to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .into()
}

/// Prolongation block of order `k`, its inverse and the block identity checks
/// for orders `0..=k`, as a JSON document.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn jc_blocks_json(map: JcMap, k: u32, out: *mut *mut c_char) -> JcStatus {
    guard(|| {
        Limits::default().check_order(k)?;
        let bc = base_change(map);
        let checks = check_blocks(&bc, k);
        let doc = serde_json::json!({
            "k": k,
            "P": matrix_json(&prolong_block(&bc, k).entries),
            "Q": matrix_json(&block_inverse(&bc, k).entries),
            "checks": checks,
            "all_pass": checks.iter().all(|c| c.all_pass()),
        });
        put_string(
            out,
            serde_json::to_string_pretty(&doc).expect("plain document"),
        )
    })
}
