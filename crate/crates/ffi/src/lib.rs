//! C ABI for `pauli-fwht`.
//!
//! Matrices cross the boundary as flat row-major buffers of interleaved
//! `(re, im)` doubles. `len` always counts complex entries, so a buffer for
//! `n` qubits holds `4^n` entries and `2 * 4^n` doubles. Decomposition and
//! reconstruction overwrite the caller's buffer and allocate nothing
//! proportional to its size.
//!
//! Every entry point returns a [`PfwhtStatus`]. On any error the caller's
//! buffers are left untouched. Panics are caught and reported as
//! `PFWHT_STATUS_PANIC`; they never unwind into the host.
//!
//! Calls hold no global mutable state. Concurrent calls on distinct buffers
//! are fine; the caller must not touch a buffer while a call on it runs.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use num_complex::Complex64;
use pauli_fwht::matrix::qubits_for_len;
use pauli_fwht::transform::{decompose_slice, reconstruct_slice, terms_from_coefficients};
use pauli_fwht::{CoefficientMatrix, ComplexMatrix, PauliTerm};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PfwhtStatus {
    Ok = 0,
    NullPointer = 1,
    /// Length is not `4^n`.
    InvalidLength = 2,
    TooManyQubits = 3,
    IndexOutOfRange = 4,
    /// Label buffer shorter than `qubits + 1` bytes.
    BufferTooSmall = 5,
    /// Threshold is negative or NaN.
    InvalidThreshold = 6,
    Panic = 255,
}

/// Sparse decomposition owned by the library. Free with [`pfwht_terms_free`].
pub struct PfwhtTerms {
    n: usize,
    terms: Vec<PauliTerm>,
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn pfwht_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Static NUL-terminated description of `status`.
#[no_mangle]
pub extern "C" fn pfwht_status_message(status: PfwhtStatus) -> *const c_char {
    let msg: &'static CStr = match status {
        PfwhtStatus::Ok => c"ok",
        PfwhtStatus::NullPointer => c"null pointer argument",
        PfwhtStatus::InvalidLength => c"buffer length is not a power of 4",
        PfwhtStatus::TooManyQubits => c"matrix exceeds the supported qubit count",
        PfwhtStatus::IndexOutOfRange => c"term index out of range",
        PfwhtStatus::BufferTooSmall => c"label buffer too small",
        PfwhtStatus::InvalidThreshold => c"threshold must be a non-negative number",
        PfwhtStatus::Panic => c"internal error",
    };
    msg.as_ptr()
}

/// Number of qubits for a buffer of `len` complex entries, or -1 if `len` is
/// not a supported power of 4.
#[no_mangle]
pub extern "C" fn pfwht_qubits_for_len(len: usize) -> i32 {
    qubits_for_len(len).map_or(-1, |n| n as i32)
}

/// Replaces the matrix in `data` with its Pauli coefficients: entry `(r, s)`
/// becomes the weight of the string with X-bits `r` and Z-bits `s`.
///
/// # Safety
///
/// `data` must point to `2 * len` writable doubles, aligned for `double`.
#[no_mangle]
pub unsafe extern "C" fn pfwht_decompose(data: *mut f64, len: usize) -> PfwhtStatus {
    in_place(data, len, |buf, n| {
        decompose_slice(buf, n);
    })
}

/// Inverse of [`pfwht_decompose`].
///
/// # Safety
///
/// Same contract as [`pfwht_decompose`].
#[no_mangle]
pub unsafe extern "C" fn pfwht_reconstruct(data: *mut f64, len: usize) -> PfwhtStatus {
    in_place(data, len, |buf, n| {
        reconstruct_slice(buf, n);
    })
}

/// Decomposes a copy of `data` and keeps the terms with `|coeff| > threshold`,
/// ordered by `(r, s)`. The input buffer is not modified. On success `*out`
/// owns a new handle.
///
/// # Safety
///
/// `data` must point to `2 * len` readable doubles and `out` must be a valid
/// place to store a pointer.
#[no_mangle]
pub unsafe extern "C" fn pfwht_terms_new(
    data: *const f64,
    len: usize,
    threshold: f64,
    out: *mut *mut PfwhtTerms,
) -> PfwhtStatus {
    if data.is_null() || out.is_null() {
        return PfwhtStatus::NullPointer;
    }
    if threshold.is_nan() || threshold < 0.0 {
        return PfwhtStatus::InvalidThreshold;
    }
    if let Err(status) = check_len(len) {
        return status;
    }
    guarded(|| {
        let src = slice::from_raw_parts(data.cast::<Complex64>(), len);
        let mut m = ComplexMatrix::from_vec(src.to_vec()).expect("length checked");
        let n = m.qubits();
        decompose_slice(m.as_mut_slice(), n);
        let list = terms_from_coefficients(&CoefficientMatrix::from_matrix(m), threshold);
        let handle = Box::new(PfwhtTerms {
            n,
            terms: list.terms().to_vec(),
        });
        *out = Box::into_raw(handle);
        PfwhtStatus::Ok
    })
}

/// Number of terms held by `terms`; 0 for a null handle.
///
/// # Safety
///
/// `terms` must be null or a live handle from [`pfwht_terms_new`].
#[no_mangle]
pub unsafe extern "C" fn pfwht_terms_len(terms: *const PfwhtTerms) -> usize {
    terms.as_ref().map_or(0, |t| t.terms.len())
}

/// Qubit count of the decomposed matrix; 0 for a null handle.
///
/// # Safety
///
/// `terms` must be null or a live handle from [`pfwht_terms_new`].
#[no_mangle]
pub unsafe extern "C" fn pfwht_terms_qubits(terms: *const PfwhtTerms) -> usize {
    terms.as_ref().map_or(0, |t| t.n)
}

/// Reads term `index`. The label is written NUL-terminated into `label`,
/// which needs room for `qubits + 1` bytes. `label` and any of the output
/// pointers may be null to skip that field.
///
/// # Safety
///
/// `terms` must be a live handle; non-null outputs must be writable, and
/// `label` must have `label_cap` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn pfwht_terms_get(
    terms: *const PfwhtTerms,
    index: usize,
    label: *mut c_char,
    label_cap: usize,
    r: *mut usize,
    s: *mut usize,
    re: *mut f64,
    im: *mut f64,
) -> PfwhtStatus {
    let Some(t) = terms.as_ref() else {
        return PfwhtStatus::NullPointer;
    };
    let Some(term) = t.terms.get(index) else {
        return PfwhtStatus::IndexOutOfRange;
    };
    if !label.is_null() && label_cap < t.n + 1 {
        return PfwhtStatus::BufferTooSmall;
    }
    guarded(|| {
        if !label.is_null() {
            let text = term.label();
            let dst = slice::from_raw_parts_mut(label.cast::<u8>(), t.n + 1);
            dst[..t.n].copy_from_slice(text.as_bytes());
            dst[t.n] = 0;
        }
        if let Some(r) = r.as_mut() {
            *r = term.r;
        }
        if let Some(s) = s.as_mut() {
            *s = term.s;
        }
        if let Some(re) = re.as_mut() {
            *re = term.coeff.re;
        }
        if let Some(im) = im.as_mut() {
            *im = term.coeff.im;
        }
        PfwhtStatus::Ok
    })
}

/// Releases a handle. Null is a no-op.
///
/// # Safety
///
/// `terms` must be null or a handle from [`pfwht_terms_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn pfwht_terms_free(terms: *mut PfwhtTerms) {
    if !terms.is_null() {
        drop(Box::from_raw(terms));
    }
}

fn check_len(len: usize) -> Result<usize, PfwhtStatus> {
    match qubits_for_len(len) {
        Ok(n) => Ok(n),
        Err(pauli_fwht::Error::TooManyQubits { .. }) => Err(PfwhtStatus::TooManyQubits),
        Err(_) => Err(PfwhtStatus::InvalidLength),
    }
}

unsafe fn in_place(
    data: *mut f64,
    len: usize,
    f: impl FnOnce(&mut [Complex64], usize),
) -> PfwhtStatus {
    if data.is_null() {
        return PfwhtStatus::NullPointer;
    }
    let n = match check_len(len) {
        Ok(n) => n,
        Err(status) => return status,
    };
    // Complex64 is two packed doubles with the alignment of one.
    let buf = slice::from_raw_parts_mut(data.cast::<Complex64>(), len);
    guarded(|| {
        f(buf, n);
        PfwhtStatus::Ok
    })
}

fn guarded(f: impl FnOnce() -> PfwhtStatus) -> PfwhtStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(PfwhtStatus::Panic)
}
