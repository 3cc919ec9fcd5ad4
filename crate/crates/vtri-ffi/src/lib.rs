//! C ABI surface for the vtri toolkit.
//!
//! Objects cross the boundary as opaque handles (`vtri_scalar`,
//! `vtri_scene`). Every fallible call returns a `vtri_status` code; the
//! message for the most recent failure on the calling thread is available
//! through [`vtri_last_error`]. Strings returned through out-parameters
//! are owned by the caller and must be released with [`vtri_string_free`].
//!
//! The matching header lives in `include/vtri.h`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::{c_char, c_int};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use vtri::pipeline::{v_triangulate, verify_v_triangulation};
use vtri::scalar::{parse_scalar, FieldElement, Valuation};
use vtri::scene::{parse_scene, print_scene, scene_of_complex, Scene};
use vtri::Error;

/// Status codes returned by every fallible entry point.
pub const VTRI_OK: c_int = 0;
/// A mathematical precondition or verification check failed.
pub const VTRI_ERR_CHECK: c_int = 1;
/// The input text could not be parsed or resolved.
pub const VTRI_ERR_PARSE: c_int = 2;
/// A configured resource budget was exhausted.
pub const VTRI_ERR_RESOURCE: c_int = 3;
/// A null pointer or non-UTF-8 string was passed in.
pub const VTRI_ERR_ARGUMENT: c_int = 4;
/// The library panicked; the handle state is unchanged.
pub const VTRI_ERR_PANIC: c_int = 5;

/// Opaque handle to an exact scalar in the ordered field Q(epsilon).
pub struct VtriScalar(FieldElement);

/// Opaque handle to a parsed scene document.
pub struct VtriScene(Scene);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let cleaned: String = message.chars().filter(|c| *c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(cleaned).unwrap_or_default();
    });
}

fn status_of(e: &Error) -> c_int {
    match e {
        Error::ParseError { .. }
        | Error::UnresolvedReference(_)
        | Error::NonRationalFamily(_) => VTRI_ERR_PARSE,
        Error::ResourceLimit { .. } | Error::SearchExhausted { .. } => VTRI_ERR_RESOURCE,
        _ => VTRI_ERR_CHECK,
    }
}

fn fail(e: &Error) -> c_int {
    set_error(&e.to_string());
    status_of(e)
}

/// Runs `body` with panics converted to `VTRI_ERR_PANIC`.
fn guarded(body: impl FnOnce() -> c_int) -> c_int {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic");
            VTRI_ERR_PANIC
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, c_int> {
    if ptr.is_null() {
        set_error("null string argument");
        return Err(VTRI_ERR_ARGUMENT);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        VTRI_ERR_ARGUMENT
    })
}

unsafe fn write_out<T>(out: *mut T, value: T) -> c_int {
    if out.is_null() {
        set_error("null out-parameter");
        return VTRI_ERR_ARGUMENT;
    }
    *out = value;
    VTRI_OK
}

fn owned_string(s: String) -> *mut c_char {
    let cleaned: String = s.chars().filter(|c| *c != '\0').collect();
    CString::new(cleaned).unwrap_or_default().into_raw()
}

unsafe fn scalar_ref<'a>(p: *const VtriScalar) -> Result<&'a FieldElement, c_int> {
    if p.is_null() {
        set_error("null scalar handle");
        return Err(VTRI_ERR_ARGUMENT);
    }
    Ok(&(*p).0)
}

unsafe fn scene_ref<'a>(p: *const VtriScene) -> Result<&'a Scene, c_int> {
    if p.is_null() {
        set_error("null scene handle");
        return Err(VTRI_ERR_ARGUMENT);
    }
    Ok(&(*p).0)
}

/// Returns the error message from the most recent failing call on this
/// thread. The pointer stays valid until the next failing call.
#[no_mangle]
pub extern "C" fn vtri_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned through an out-parameter.
#[no_mangle]
pub unsafe extern "C" fn vtri_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a scalar literal such as `(1 + 2*e)/(1 - e)`.
#[no_mangle]
pub unsafe extern "C" fn vtri_scalar_parse(
    text: *const c_char,
    out: *mut *mut VtriScalar,
) -> c_int {
    guarded(|| {
        let text = match read_str(text) {
            Ok(t) => t,
            Err(code) => return code,
        };
        match parse_scalar(text) {
            Ok(x) => write_out(out, Box::into_raw(Box::new(VtriScalar(x)))),
            Err(e) => fail(&e),
        }
    })
}

/// Builds the rational scalar `num/den`.
#[no_mangle]
pub unsafe extern "C" fn vtri_scalar_from_ratio(
    num: i64,
    den: i64,
    out: *mut *mut VtriScalar,
) -> c_int {
    guarded(|| {
        if den == 0 {
            return fail(&Error::DivisionByZero);
        }
        write_out(out, Box::into_raw(Box::new(VtriScalar(
            FieldElement::from_ratio(num, den),
        ))))
    })
}

/// Builds the positive infinitesimal generator epsilon.
#[no_mangle]
pub unsafe extern "C" fn vtri_scalar_epsilon(out: *mut *mut VtriScalar) -> c_int {
    guarded(|| write_out(out, Box::into_raw(Box::new(VtriScalar(FieldElement::epsilon())))))
}

#[no_mangle]
pub unsafe extern "C" fn vtri_scalar_free(s: *mut VtriScalar) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

unsafe fn binop(
    a: *const VtriScalar,
    b: *const VtriScalar,
    out: *mut *mut VtriScalar,
    op: impl FnOnce(&FieldElement, &FieldElement) -> Result<FieldElement, Error>,
) -> c_int {
    guarded(AssertUnwindSafe(|| {
        let (a, b) = match (scalar_ref(a), scalar_ref(b)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(c), _) | (_, Err(c)) => return c,
        };
        match op(a, b) {
            Ok(x) => write_out(out, Box::into_raw(Box::new(VtriScalar(x)))),
            Err(e) => fail(&e),
        }
    }))
}

#[no_mangle]
pub unsafe extern "C" fn vtri_scalar_add(
    a: *const VtriScalar,
    b: *const VtriScalar,
    out: *mut *mut VtriScalar,
) -> c_int {
    binop(a, b, out, |a, b| Ok(a.add(b)))
}

#[no_mangle]
pub unsafe extern "C" fn vtri_scalar_sub(
    a: *const VtriScalar,
    b: *const VtriScalar,
    out: *mut *mut VtriScalar,
) -> c_int {
    binop(a, b, out, |a, b| Ok(a.sub(b)))
}

#[no_mangle]
pub unsafe extern "C" fn vtri_scalar_mul(
    a: *const VtriScalar,
    b: *const VtriScalar,
    out: *mut *mut VtriScalar,
) -> c_int {
    binop(a, b, out, |a, b| Ok(a.mul(b)))
}

#[no_mangle]
pub unsafe extern "C" fn vtri_scalar_div(
    a: *const VtriScalar,
    b: *const VtriScalar,
    out: *mut *mut VtriScalar,
) -> c_int {
    binop(a, b, out, |a, b| a.div(b))
}

#[no_mangle]
pub unsafe extern "C" fn vtri_scalar_neg(
    a: *const VtriScalar,
    out: *mut *mut VtriScalar,
) -> c_int {
    guarded(AssertUnwindSafe(|| match scalar_ref(a) {
        Ok(a) => write_out(out, Box::into_raw(Box::new(VtriScalar(a.neg())))),
        Err(c) => c,
    }))
}

#[no_mangle]
pub unsafe extern "C" fn vtri_scalar_inv(
    a: *const VtriScalar,
    out: *mut *mut VtriScalar,
) -> c_int {
    guarded(AssertUnwindSafe(|| {
        let a = match scalar_ref(a) {
            Ok(a) => a,
            Err(c) => return c,
        };
        match FieldElement::from_int(1).div(a) {
            Ok(x) => write_out(out, Box::into_raw(Box::new(VtriScalar(x)))),
            Err(e) => fail(&e),
        }
    }))
}

/// Compares two scalars in the field order: -1, 0, or 1.
#[no_mangle]
pub unsafe extern "C" fn vtri_scalar_cmp(
    a: *const VtriScalar,
    b: *const VtriScalar,
    out: *mut c_int,
) -> c_int {
    guarded(AssertUnwindSafe(|| {
        let (a, b) = match (scalar_ref(a), scalar_ref(b)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(c), _) | (_, Err(c)) => return c,
        };
        write_out(out, a.cmp(b) as c_int)
    }))
}

/// Writes the epsilon-adic valuation. `*finite` is 0 exactly when the
/// scalar is zero (valuation plus infinity), in which case `*val` is 0.
#[no_mangle]
pub unsafe extern "C" fn vtri_scalar_valuation(
    a: *const VtriScalar,
    val: *mut i64,
    finite: *mut c_int,
) -> c_int {
    guarded(AssertUnwindSafe(|| {
        let a = match scalar_ref(a) {
            Ok(a) => a,
            Err(c) => return c,
        };
        let (v, f) = match a.valuation() {
            Valuation::Finite(v) => (v, 1),
            Valuation::Infinity => (0, 0),
        };
        if val.is_null() || finite.is_null() {
            set_error("null out-parameter");
            return VTRI_ERR_ARGUMENT;
        }
        *val = v;
        *finite = f;
        VTRI_OK
    }))
}

/// Writes the standard part as a rational literal. Fails with
/// `VTRI_ERR_CHECK` when the scalar is infinite.
#[no_mangle]
pub unsafe extern "C" fn vtri_scalar_standard_part(
    a: *const VtriScalar,
    out: *mut *mut c_char,
) -> c_int {
    guarded(AssertUnwindSafe(|| {
        let a = match scalar_ref(a) {
            Ok(a) => a,
            Err(c) => return c,
        };
        match a.standard_part() {
            Ok(q) => write_out(out, owned_string(q.to_string())),
            Err(e) => fail(&e),
        }
    }))
}

/// Writes the canonical text form, which round-trips through
/// `vtri_scalar_parse`.
#[no_mangle]
pub unsafe extern "C" fn vtri_scalar_to_string(
    a: *const VtriScalar,
    out: *mut *mut c_char,
) -> c_int {
    guarded(AssertUnwindSafe(|| match scalar_ref(a) {
        Ok(a) => write_out(out, owned_string(a.to_string())),
        Err(c) => c,
    }))
}

/// Parses a scene document (the same line-oriented format the `vtri`
/// command-line tool reads).
#[no_mangle]
pub unsafe extern "C" fn vtri_scene_parse(
    text: *const c_char,
    out: *mut *mut VtriScene,
) -> c_int {
    guarded(|| {
        let text = match read_str(text) {
            Ok(t) => t,
            Err(code) => return code,
        };
        match parse_scene(text) {
            Ok(scene) => write_out(out, Box::into_raw(Box::new(VtriScene(scene)))),
            Err(e) => fail(&e),
        }
    })
}

#[no_mangle]
pub unsafe extern "C" fn vtri_scene_free(s: *mut VtriScene) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Validates every complex declared in the scene and writes a one-line
/// summary per complex.
#[no_mangle]
pub unsafe extern "C" fn vtri_scene_validate(
    scene: *const VtriScene,
    report: *mut *mut c_char,
) -> c_int {
    guarded(AssertUnwindSafe(|| {
        let scene = match scene_ref(scene) {
            Ok(s) => s,
            Err(c) => return c,
        };
        let mut lines = String::new();
        for (name, _) in &scene.complexes {
            match scene.build_complex(name) {
                Ok(k) => lines.push_str(&format!(
                    "complex {name}: valid, {} simplexes, dim {}\n",
                    k.simplexes().len(),
                    k.dim()
                )),
                Err(e) => return fail(&e),
            }
        }
        write_out(report, owned_string(lines))
    }))
}

/// V-triangulates the first complex in the scene compatibly with every
/// declared subset, runs the independent verifier, and writes the
/// verification report followed by the triangulated complex as a scene
/// document.
#[no_mangle]
pub unsafe extern "C" fn vtri_scene_triangulate(
    scene: *const VtriScene,
    report: *mut *mut c_char,
) -> c_int {
    guarded(AssertUnwindSafe(|| {
        let scene = match scene_ref(scene) {
            Ok(s) => s,
            Err(c) => return c,
        };
        let name = match scene.complexes.first() {
            Some((name, _)) => name.clone(),
            None => {
                return fail(&Error::UnresolvedReference(
                    "scene declares no complex".into(),
                ))
            }
        };
        let k = match scene.build_complex(&name) {
            Ok(k) => k,
            Err(e) => return fail(&e),
        };
        let subsets = match scene.all_subsets() {
            Ok(s) => s,
            Err(e) => return fail(&e),
        };
        let t = match v_triangulate(&k, &subsets) {
            Ok(t) => t,
            Err(e) => return fail(&e),
        };
        let checks = verify_v_triangulation(&k.carrier(), &subsets, &t);
        let mut lines = checks.to_string();
        lines.push_str(&print_scene(&scene_of_complex("t", t.complex().base())));
        let code = write_out(report, owned_string(lines));
        if code != VTRI_OK {
            return code;
        }
        if checks.all_passed() {
            VTRI_OK
        } else {
            set_error("verification failed");
            VTRI_ERR_CHECK
        }
    }))
}
