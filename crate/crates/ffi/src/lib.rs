//! C ABI over `liegraph`.
//!
//! Handles are opaque and owned by the caller once returned; release them with
//! the matching `*_free`. Every fallible call returns an [`LgStatus`] and, on
//! failure, leaves a message readable through [`lg_last_error`] on the same
//! thread. Strings returned through `char **` are released with [`lg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use liegraph::descent::{
    compute_fixed_form, is_indecomposable, rational_form_count, real_form_count, DescentDatum, FormCount, FormMode,
    FormPresentation,
};
use liegraph::lie::{build_algebra_with_budget, GradedAlgebra};
use liegraph::{Error, Graph};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Validation = 4,
    Budget = 5,
    Internal = 6,
}

pub struct LgGraph {
    graph: Graph,
}

pub struct LgAlgebra {
    algebra: GradedAlgebra,
}

pub struct LgForm {
    form: FormPresentation,
    text: String,
    indecomposable: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LgStatus {
    match e {
        Error::SelfLoop { .. }
        | Error::MalformedLine { .. }
        | Error::EmptyGraph
        | Error::UnknownVertex(_)
        | Error::DuplicateVertex(_)
        | Error::InvalidDocument(_) => LgStatus::Parse,
        Error::SizeBound { .. } | Error::BudgetExceeded { .. } => LgStatus::Budget,
        Error::Internal(_) => LgStatus::Internal,
        _ => LgStatus::Validation,
    }
}

fn fail(status: LgStatus, message: &str) -> LgStatus {
    set_error(message);
    status
}

fn lib(e: Error) -> LgStatus {
    fail(status_of(&e), &e.to_string())
}

fn guard(body: impl FnOnce() -> Result<(), LgStatus>) -> LgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => LgStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(LgStatus::Internal, "panic inside liegraph"),
    }
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, LgStatus> {
    if p.is_null() {
        return Err(fail(LgStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(p).to_str().map_err(|_| fail(LgStatus::InvalidUtf8, "string argument is not UTF-8"))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, LgStatus> {
    p.as_ref().ok_or_else(|| fail(LgStatus::NullPointer, "null handle"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), LgStatus> {
    if out.is_null() {
        return Err(fail(LgStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), LgStatus> {
    let c = CString::new(s).map_err(|_| fail(LgStatus::Internal, "output contains a NUL byte"))?;
    write_out(out, c.into_raw())
}

/// Message of the last failed call on this thread; empty if none. Valid until
/// the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an edge list (`u v` per line, `vertex u` for isolated vertices, `#` comments).
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn lg_graph_parse(text: *const c_char, out: *mut *mut LgGraph) -> LgStatus {
    guard(|| {
        let graph = Graph::parse(str_arg(text)?).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(LgGraph { graph })))
    })
}

/// # Safety
/// `g` must be null or a handle from [`lg_graph_parse`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lg_graph_free(g: *mut LgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex, edge, coherent-component and connected-component counts.
///
/// # Safety
/// `g` must be a live handle; output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn lg_graph_counts(
    g: *const LgGraph,
    vertices: *mut usize,
    edges: *mut usize,
    coherent: *mut usize,
    connected: *mut usize,
) -> LgStatus {
    guard(|| {
        let g = &handle(g)?.graph;
        write_out(vertices, g.vertex_count())?;
        write_out(edges, g.edge_count())?;
        write_out(coherent, g.coherent_components().len())?;
        write_out(connected, g.connected_components().len())
    })
}

/// Number of real forms of the complex algebra, one per involution class.
///
/// # Safety
/// `g` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn lg_graph_real_form_count(g: *const LgGraph, bound: usize, out: *mut usize) -> LgStatus {
    guard(|| write_out(out, real_form_count(&handle(g)?.graph, bound).map_err(lib)?))
}

/// Writes `true` when there are infinitely many rational forms, `false` when exactly one.
///
/// # Safety
/// `g` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn lg_graph_rational_forms_infinite(g: *const LgGraph, bound: usize, out: *mut bool) -> LgStatus {
    guard(|| {
        let count = rational_form_count(&handle(g)?.graph, bound).map_err(lib)?;
        write_out(out, count == FormCount::Infinite)
    })
}

/// Builds the class-`class_` nilpotent Lie algebra; `budget` caps the free
/// Lie algebra dimension per degree.
///
/// # Safety
/// `g` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn lg_algebra_build(
    g: *const LgGraph,
    class_: usize,
    budget: usize,
    out: *mut *mut LgAlgebra,
) -> LgStatus {
    guard(|| {
        let algebra = build_algebra_with_budget(&handle(g)?.graph, class_, budget).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(LgAlgebra { algebra })))
    })
}

/// # Safety
/// `a` must be null or a handle from [`lg_algebra_build`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lg_algebra_free(a: *mut LgAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn lg_algebra_dim(a: *const LgAlgebra, out: *mut usize) -> LgStatus {
    guard(|| write_out(out, handle(a)?.algebra.dim()))
}

/// Dimension of degree `degree` (1-based); zero above the class.
///
/// # Safety
/// `a` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn lg_algebra_graded_dim(a: *const LgAlgebra, degree: usize, out: *mut usize) -> LgStatus {
    guard(|| {
        let dims = handle(a)?.algebra.graded_dimensions();
        write_out(out, degree.checked_sub(1).and_then(|i| dims.get(i).copied()).unwrap_or(0))
    })
}

/// Basis and structure constants as JSON.
///
/// # Safety
/// `a` must be a live handle and `out` valid; free the result with [`lg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lg_algebra_to_json(a: *const LgAlgebra, out: *mut *mut c_char) -> LgStatus {
    guard(|| {
        let doc = handle(a)?.algebra.to_doc();
        let s = serde_json::to_string(&doc).map_err(|e| fail(LgStatus::Internal, &e.to_string()))?;
        write_string(out, s)
    })
}

/// Rational form for radicands `radicands[0..k]` whose sign flips act by the
/// quotient permutations `images[0..k]` (1-based cycle notation). `k = 0`
/// gives the standard form. `paper_basis` selects orbit-sum names and needs `k = 1`.
///
/// # Safety
/// `a` must be a live handle; `radicands` and `images` must point to `k`
/// entries (either may be null when `k = 0`); `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn lg_form_compute(
    a: *const LgAlgebra,
    radicands: *const i64,
    images: *const *const c_char,
    k: usize,
    paper_basis: bool,
    out: *mut *mut LgForm,
) -> LgStatus {
    guard(|| {
        let algebra = &handle(a)?.algebra;
        let datum = if k == 0 {
            DescentDatum::trivial()
        } else {
            if radicands.is_null() || images.is_null() {
                return Err(fail(LgStatus::NullPointer, "null radicand or image array"));
            }
            let d = std::slice::from_raw_parts(radicands, k);
            let imgs = std::slice::from_raw_parts(images, k)
                .iter()
                .map(|&p| str_arg(p))
                .collect::<Result<Vec<_>, _>>()?;
            DescentDatum::parse(&algebra.graph().quotient_graph(), d, &imgs).map_err(lib)?
        };
        if paper_basis && k != 1 {
            return Err(fail(LgStatus::Validation, "paper-basis mode needs exactly one radicand"));
        }
        let mode = if paper_basis { FormMode::PaperBasis } else { FormMode::Echelon };
        let form = compute_fixed_form(algebra, &datum, mode).map_err(lib)?;
        let indecomposable = is_indecomposable(algebra.graph(), &datum).map_err(lib)?;
        let text = form.render_text(algebra);
        write_out(out, Box::into_raw(Box::new(LgForm { form, text, indecomposable })))
    })
}

/// # Safety
/// `f` must be null or a handle from [`lg_form_compute`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn lg_form_free(f: *mut LgForm) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// # Safety
/// `f` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn lg_form_dim(f: *const LgForm, out: *mut usize) -> LgStatus {
    guard(|| write_out(out, handle(f)?.form.dim()))
}

/// # Safety
/// `f` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn lg_form_is_indecomposable(f: *const LgForm, out: *mut bool) -> LgStatus {
    guard(|| write_out(out, handle(f)?.indecomposable))
}

/// Whether every radicand is positive, so the form is also a form of the real algebra.
///
/// # Safety
/// `f` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn lg_form_is_real(f: *const LgForm, out: *mut bool) -> LgStatus {
    guard(|| write_out(out, handle(f)?.form.is_real()))
}

/// Basis and bracket table as aligned text.
///
/// # Safety
/// `f` must be a live handle and `out` valid; free the result with [`lg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lg_form_to_text(f: *const LgForm, out: *mut *mut c_char) -> LgStatus {
    guard(|| write_string(out, handle(f)?.text.clone()))
}

/// # Safety
/// `f` must be a live handle and `out` valid; free the result with [`lg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn lg_form_to_json(f: *const LgForm, out: *mut *mut c_char) -> LgStatus {
    guard(|| {
        let s = serde_json::to_string(&handle(f)?.form.to_doc()).map_err(|e| fail(LgStatus::Internal, &e.to_string()))?;
        write_string(out, s)
    })
}
