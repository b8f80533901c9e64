//! C ABI over `kmss`.
//!
//! Every function returns a [`KmssStatus`]; on failure the message is
//! available from [`kmss_last_error_message`] on the same thread. Matrices
//! live behind the opaque [`KmssGcm`] handle. Strings handed out must be
//! released with [`kmss_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kmss::gcm::{self, GeneralizedCartanMatrix, TypeKind};
use kmss::geometry::{self, ConeVerdict, TitsConeQuery};
use kmss::linalg::q;
use kmss::weylrep::{self, WeylWord};
use kmss::Error;

/// Result code of every call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KmssStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidMatrix = 2,
    NotIrreducible = 3,
    NotSymmetrizable = 4,
    IndexOutOfRange = 5,
    Overflow = 6,
    InvalidArgument = 7,
    DomainError = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KmssType {
    Spherical = 0,
    Affine = 1,
    Indefinite = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KmssCone {
    InCone = 0,
    InNegativeCone = 1,
    Undetermined = 2,
}

/// Opaque generalized Cartan matrix.
pub struct KmssGcm {
    inner: GeneralizedCartanMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> KmssStatus {
    match e {
        Error::NotSquare
        | Error::Empty
        | Error::DiagonalNotTwo(_)
        | Error::PositiveOffDiagonal(..)
        | Error::AsymmetricZero(..) => KmssStatus::InvalidMatrix,
        Error::NotIrreducible => KmssStatus::NotIrreducible,
        Error::NotSymmetrizable => KmssStatus::NotSymmetrizable,
        Error::IndexOutOfRange { .. } => KmssStatus::IndexOutOfRange,
        Error::Overflow => KmssStatus::Overflow,
        Error::Parse(_) | Error::DimensionMismatch { .. } => KmssStatus::InvalidArgument,
        _ => KmssStatus::DomainError,
    }
}

/// Runs `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (KmssStatus, String)>) -> KmssStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KmssStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            KmssStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (KmssStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(what: &str) -> (KmssStatus, String) {
    (KmssStatus::NullPointer, format!("{what} is null"))
}

unsafe fn gcm_ref<'a>(h: *const KmssGcm) -> Result<&'a GeneralizedCartanMatrix, (KmssStatus, String)> {
    h.as_ref().map(|g| &g.inner).ok_or_else(|| null_err("matrix handle"))
}

fn into_c_string(s: String, out: *mut *mut c_char) -> Result<(), (KmssStatus, String)> {
    let c = CString::new(s).map_err(|e| (KmssStatus::Panic, e.to_string()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message of the last failed call on this thread, or null. Owned by the
/// library; valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn kmss_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn kmss_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Validates a row-major `n x n` matrix and returns a handle in `*out`.
///
/// # Safety
/// `entries` must point to `n * n` readable values and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kmss_gcm_new(entries: *const i64, n: usize, out: *mut *mut KmssGcm) -> KmssStatus {
    guard(|| {
        if entries.is_null() {
            return Err(null_err("entries"));
        }
        if out.is_null() {
            return Err(null_err("out"));
        }
        let flat = std::slice::from_raw_parts(entries, n * n);
        let rows: Vec<Vec<i64>> = flat.chunks(n.max(1)).map(<[i64]>::to_vec).collect();
        let inner = gcm::validate_gcm(&rows).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(KmssGcm { inner }));
        Ok(())
    })
}

/// Parses a JSON matrix (bare array or `{"A": ...}`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kmss_gcm_from_json(json: *const c_char, out: *mut *mut KmssGcm) -> KmssStatus {
    guard(|| {
        if json.is_null() {
            return Err(null_err("json"));
        }
        if out.is_null() {
            return Err(null_err("out"));
        }
        let text = CStr::from_ptr(json).to_str().map_err(|e| (KmssStatus::InvalidArgument, e.to_string()))?;
        let inner = GeneralizedCartanMatrix::from_json(text).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(KmssGcm { inner }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `gcm` must come from `kmss_gcm_new` / `kmss_gcm_from_json` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn kmss_gcm_free(gcm: *mut KmssGcm) {
    if !gcm.is_null() {
        drop(Box::from_raw(gcm));
    }
}

/// Number of rows, or 0 for a null handle.
///
/// # Safety
/// `gcm` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn kmss_gcm_size(gcm: *const KmssGcm) -> usize {
    gcm.as_ref().map_or(0, |g| g.inner.n())
}

/// # Safety
/// `gcm` must be a live handle; output pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn kmss_gcm_classify(
    gcm: *const KmssGcm,
    out_type: *mut KmssType,
    out_rank: *mut usize,
    out_corank: *mut usize,
) -> KmssStatus {
    guard(|| {
        let a = gcm_ref(gcm)?;
        if out_type.is_null() || out_rank.is_null() || out_corank.is_null() {
            return Err(null_err("output pointer"));
        }
        let c = gcm::classify(a).map_err(lib_err)?;
        *out_type = match c.kind {
            TypeKind::Spherical => KmssType::Spherical,
            TypeKind::Affine => KmssType::Affine,
            TypeKind::Indefinite => KmssType::Indefinite,
        };
        *out_rank = c.rank;
        *out_corank = c.corank;
        Ok(())
    })
}

/// # Safety
/// `gcm` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn kmss_gcm_is_star_spherical(gcm: *const KmssGcm, out: *mut bool) -> KmssStatus {
    guard(|| {
        let a = gcm_ref(gcm)?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        *out = a.is_star_spherical();
        Ok(())
    })
}

/// Writes the `n x n` row-major matrix of the word (1-based letters) acting
/// on the coroot space into `out`.
///
/// # Safety
/// `letters` must hold `len` values (may be null when `len == 0`), `out` must hold `n * n`.
#[no_mangle]
pub unsafe extern "C" fn kmss_weyl_word_matrix(
    gcm: *const KmssGcm,
    letters: *const usize,
    len: usize,
    out: *mut i64,
) -> KmssStatus {
    guard(|| {
        let a = gcm_ref(gcm)?;
        if out.is_null() || (letters.is_null() && len > 0) {
            return Err(null_err("buffer"));
        }
        let word = if len == 0 { &[][..] } else { std::slice::from_raw_parts(letters, len) };
        let w = WeylWord::from_one_based(word).map_err(lib_err)?;
        let m = weylrep::word_to_matrix(a, &w).map_err(lib_err)?;
        let n = a.n();
        let dst = std::slice::from_raw_parts_mut(out, n * n);
        for i in 0..n {
            for j in 0..n {
                dst[i * n + j] = m.get(i, j);
            }
        }
        Ok(())
    })
}

/// Tits cone membership of an integer point in coroot coordinates. The
/// full verdict (witness word, flags) is returned as JSON in `*out_json`
/// when `out_json` is not null.
///
/// # Safety
/// `point` must hold `n` values; output pointers must be writable or null (`out_json` only).
#[no_mangle]
pub unsafe extern "C" fn kmss_tits_cone(
    gcm: *const KmssGcm,
    point: *const i64,
    cap: usize,
    out_verdict: *mut KmssCone,
    out_json: *mut *mut c_char,
) -> KmssStatus {
    guard(|| {
        let a = gcm_ref(gcm)?;
        if point.is_null() || out_verdict.is_null() {
            return Err(null_err("argument"));
        }
        let coords = std::slice::from_raw_parts(point, a.n()).iter().map(|&c| q(c)).collect();
        let v = geometry::tits_cone_membership(a, &TitsConeQuery { point: coords, max_steps: cap }).map_err(lib_err)?;
        *out_verdict = match v {
            ConeVerdict::InCone { .. } => KmssCone::InCone,
            ConeVerdict::InNegativeCone { .. } => KmssCone::InNegativeCone,
            ConeVerdict::Undetermined { .. } => KmssCone::Undetermined,
        };
        if !out_json.is_null() {
            into_c_string(serde_json::to_string(&v).map_err(|e| (KmssStatus::Panic, e.to_string()))?, out_json)?;
        }
        Ok(())
    })
}

/// JSON report for the twisted unipotent element of `SL_{n+1}(R[t,t^-1])`:
/// the matrix, its characteristic polynomial and the diagonalizability verdict.
///
/// # Safety
/// `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn kmss_example_hole_json(n: usize, out_json: *mut *mut c_char) -> KmssStatus {
    guard(|| {
        if out_json.is_null() {
            return Err(null_err("out_json"));
        }
        let h = kmss::liegroup::example_hole(n).map_err(lib_err)?;
        let verdict = kmss::liegroup::diagonalizable_in_affine(&h.v).map_err(lib_err)?;
        let report = serde_json::json!({
            "n": n,
            "v": h.v,
            "charpoly": h.charpoly.to_string(),
            "charpoly_matches": h.charpoly_matches,
            "diagonalizable": verdict,
        });
        into_c_string(report.to_string(), out_json)
    })
}
