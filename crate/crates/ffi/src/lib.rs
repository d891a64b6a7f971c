//! C ABI for `hivering`.
//!
//! Every fallible function returns an [`HrStatus`]; on failure a message is
//! available from [`hr_last_error`] until the next failing call on the same
//! thread. Results too rich for plain out-parameters come back as opaque
//! handles, each with its own `_free` function, or as JSON strings released
//! with [`hr_string_free`]. Weights are passed as `n` contiguous `int64_t`
//! values; a null pointer is accepted only when `n` is 0.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use hivering::excavation::{assemble_top, excavate, fill, octahedron_step, verify_star, HivePair};
use hivering::hive::{enumerate_hives, BoundarySpec, Hive};
use hivering::ring::{pieri_expand, product_expand, structure_constant, RingElement};
use hivering::{Error, Weight};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HrStatus {
    Ok = 0,
    NullPointer = 1,
    MalformedInput = 2,
    Domain = 3,
    Internal = 4,
}

/// The hives with one boundary, in enumeration order.
pub struct HrHiveSet {
    hives: Vec<Hive>,
}

/// A finite integer combination of basis weights, terms in descending order.
pub struct HrRingElement {
    n: usize,
    terms: Vec<(Vec<i64>, i64)>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HrStatus {
    match e {
        Error::Malformed(_) | Error::NotDominant(_) | Error::LengthMismatch(_) | Error::Json(_) => {
            HrStatus::MalformedInput
        }
        _ => HrStatus::Domain,
    }
}

struct Failure(HrStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(HrStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HrStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            HrStatus::Internal
        }
    }
}

unsafe fn weight(ptr: *const i64, n: usize, what: &str) -> Result<Weight, Failure> {
    if n == 0 {
        return Ok(Weight::zero(0));
    }
    if ptr.is_null() {
        return Err(null(what));
    }
    let entries = std::slice::from_raw_parts(ptr, n).to_vec();
    Weight::new(entries).map_err(|e| Failure(status_of(&e), format!("{what}: {e}")))
}

unsafe fn write<T>(out: *mut T, v: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn c_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| Failure(HrStatus::MalformedInput, format!("{what} is not UTF-8")))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no nul bytes").into_raw()
}

/// Message of the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn hr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or a string obtained from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn hr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// `max(a + c, b + d) - e`.
#[no_mangle]
pub extern "C" fn hr_octahedron_step(e: i64, a: i64, b: i64, c: i64, d: i64) -> i64 {
    octahedron_step(e, a, b, c, d)
}

/// Number of hives with boundary `(lambda, mu, nu)`, each of length `n`.
///
/// # Safety
/// Each weight pointer must reference `n` readable values; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn hr_lr_coefficient(
    lambda: *const i64,
    mu: *const i64,
    nu: *const i64,
    n: usize,
    out: *mut u64,
) -> HrStatus {
    guard(|| {
        let (l, m, v) = (weight(lambda, n, "lambda")?, weight(mu, n, "mu")?, weight(nu, n, "nu")?);
        write(out, structure_constant(&l, &m, &v)?, "out")
    })
}

fn ring_handle(n: usize, e: &RingElement) -> *mut HrRingElement {
    let terms = e.terms().map(|(w, c)| (w.entries().to_vec(), c)).collect();
    Box::into_raw(Box::new(HrRingElement { n, terms }))
}

/// Product of two basis elements, as a new handle in `*out`.
///
/// # Safety
/// Weight pointers must reference `n` readable values; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn hr_product_expand(
    lambda: *const i64,
    mu: *const i64,
    n: usize,
    out: *mut *mut HrRingElement,
) -> HrStatus {
    guard(|| {
        let (l, m) = (weight(lambda, n, "lambda")?, weight(mu, n, "mu")?);
        let e = product_expand(&l, &m)?;
        write(out, ring_handle(n, &e), "out")
    })
}

/// Product with the `i`-th fundamental weight by the Pieri formula.
///
/// # Safety
/// `lambda` must reference `n` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hr_pieri_expand(
    lambda: *const i64,
    n: usize,
    i: usize,
    out: *mut *mut HrRingElement,
) -> HrStatus {
    guard(|| {
        let l = weight(lambda, n, "lambda")?;
        let e = pieri_expand(&l, i)?;
        write(out, ring_handle(n, &e), "out")
    })
}

/// Number of terms; 0 for a null handle.
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hr_ring_element_len(e: *const HrRingElement) -> usize {
    e.as_ref().map_or(0, |e| e.terms.len())
}

/// Length of the weights in the element.
///
/// # Safety
/// `e` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hr_ring_element_size(e: *const HrRingElement) -> usize {
    e.as_ref().map_or(0, |e| e.n)
}

/// Copies term `index` into `weight_out` (room for the element's size) and
/// `coeff_out`.
///
/// # Safety
/// `e` must be a live handle, `weight_out` must have room for
/// [`hr_ring_element_size`] values and `coeff_out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hr_ring_element_term(
    e: *const HrRingElement,
    index: usize,
    weight_out: *mut i64,
    coeff_out: *mut i64,
) -> HrStatus {
    guard(|| {
        let e = e.as_ref().ok_or_else(|| null("element"))?;
        let (w, c) = e
            .terms
            .get(index)
            .ok_or_else(|| Failure(HrStatus::Domain, format!("term {index} out of range")))?;
        if e.n > 0 {
            if weight_out.is_null() {
                return Err(null("weight_out"));
            }
            std::ptr::copy_nonoverlapping(w.as_ptr(), weight_out, e.n);
        }
        write(coeff_out, *c, "coeff_out")
    })
}

/// The element as JSON `[{"weight": [...], "coeff": c}, ...]`; free with
/// [`hr_string_free`].
///
/// # Safety
/// `e` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hr_ring_element_to_json(e: *const HrRingElement, out: *mut *mut c_char) -> HrStatus {
    guard(|| {
        let e = e.as_ref().ok_or_else(|| null("element"))?;
        let list: Vec<_> = e.terms.iter().map(|(w, c)| serde_json::json!({ "weight": w, "coeff": c })).collect();
        write(out, c_string(serde_json::Value::from(list).to_string()), "out")
    })
}

/// # Safety
/// `e` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn hr_ring_element_free(e: *mut HrRingElement) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// All hives with boundary `(lambda, mu, nu)` and lower-left label 0.
///
/// # Safety
/// Weight pointers must reference `n` readable values; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn hr_hive_set_enumerate(
    lambda: *const i64,
    mu: *const i64,
    nu: *const i64,
    n: usize,
    out: *mut *mut HrHiveSet,
) -> HrStatus {
    guard(|| {
        let (l, m, v) = (weight(lambda, n, "lambda")?, weight(mu, n, "mu")?, weight(nu, n, "nu")?);
        let hives = enumerate_hives(&BoundarySpec::new(l, m, v))?;
        write(out, Box::into_raw(Box::new(HrHiveSet { hives })), "out")
    })
}

/// Number of hives; 0 for a null handle.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hr_hive_set_len(set: *const HrHiveSet) -> usize {
    set.as_ref().map_or(0, |s| s.hives.len())
}

/// Copies the labels of hive `index`, row by row from the apex and each row
/// left to right, into `labels_out`, which has room for `capacity` values.
/// `*written` receives the number of labels, `(n+1)(n+2)/2`.
///
/// # Safety
/// `set` must be a live handle, `labels_out` must have room for `capacity`
/// values and `written` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hr_hive_set_labels(
    set: *const HrHiveSet,
    index: usize,
    labels_out: *mut i64,
    capacity: usize,
    written: *mut usize,
) -> HrStatus {
    guard(|| {
        let set = set.as_ref().ok_or_else(|| null("set"))?;
        let h = set
            .hives
            .get(index)
            .ok_or_else(|| Failure(HrStatus::Domain, format!("hive {index} out of range")))?;
        let labels = h.labels();
        if capacity < labels.len() {
            return Err(Failure(
                HrStatus::MalformedInput,
                format!("buffer holds {capacity} labels, need {}", labels.len()),
            ));
        }
        if labels_out.is_null() {
            return Err(null("labels_out"));
        }
        std::ptr::copy_nonoverlapping(labels.as_ptr(), labels_out, labels.len());
        write(written, labels.len(), "written")
    })
}

/// Hive `index` as JSON `{"n": n, "rows": [...]}`; free with
/// [`hr_string_free`].
///
/// # Safety
/// `set` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hr_hive_set_to_json(set: *const HrHiveSet, index: usize, out: *mut *mut c_char) -> HrStatus {
    guard(|| {
        let set = set.as_ref().ok_or_else(|| null("set"))?;
        let h = set
            .hives
            .get(index)
            .ok_or_else(|| Failure(HrStatus::Domain, format!("hive {index} out of range")))?;
        write(out, c_string(serde_json::to_string(h).map_err(Error::from)?), "out")
    })
}

/// # Safety
/// `set` must be null or a live handle; it is invalid afterwards.
#[no_mangle]
pub unsafe extern "C" fn hr_hive_set_free(set: *mut HrHiveSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Excavates the top pair given as two hive JSON documents (or, when
/// `inverse` is set, fills the bottom pair) and returns the resulting pair
/// as JSON `{"left", "right", "shared"}`.
///
/// # Safety
/// `left_json` and `right_json` must be nul-terminated strings; `out` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn hr_excavate_json(
    left_json: *const c_char,
    right_json: *const c_char,
    inverse: bool,
    out: *mut *mut c_char,
) -> HrStatus {
    guard(|| {
        let left: Hive = serde_json::from_str(c_str(left_json, "left_json")?).map_err(Error::from)?;
        let right: Hive = serde_json::from_str(c_str(right_json, "right_json")?).map_err(Error::from)?;
        let pair = if inverse {
            let shared = Weight::new(left.south_differences())?;
            fill(&HivePair { left, right, shared })?
        } else {
            excavate(&assemble_top(&left, &right)?)?
        };
        write(out, c_string(serde_json::to_string(&pair).map_err(Error::from)?), "out")
    })
}

/// Both sides of the associativity identity for `(lambda, mu, nu, pi)` and
/// whether excavation maps one side bijectively onto the other.
///
/// # Safety
/// Weight pointers must reference `n` readable values; the out-parameters
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn hr_verify_assoc(
    lambda: *const i64,
    mu: *const i64,
    nu: *const i64,
    pi: *const i64,
    n: usize,
    lhs: *mut u64,
    rhs: *mut u64,
    bijection_ok: *mut bool,
) -> HrStatus {
    guard(|| {
        let l = weight(lambda, n, "lambda")?;
        let m = weight(mu, n, "mu")?;
        let v = weight(nu, n, "nu")?;
        let p = weight(pi, n, "pi")?;
        let r = verify_star(&l, &m, &v, &p)?;
        write(lhs, r.lhs, "lhs")?;
        write(rhs, r.rhs, "rhs")?;
        write(bijection_ok, r.bijection_ok, "bijection_ok")
    })
}
