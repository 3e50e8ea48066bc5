//! C ABI over the qprojective spectral engine.
//!
//! Every function returns a [`QpStatus`]; results go through out-pointers. Handles are
//! opaque and must be released with their `_free` function. After a non-OK status,
//! `qp_last_error` describes the failure on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qprojective::check::Check;
use qprojective::cli::{run_suites, Suite};
use qprojective::spectra::{self, HighestWeight, SpectraError, Spectrum};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    BufferTooSmall = 4,
    Computation = 5,
    Panic = 6,
}

/// Spectrum of D_N through a fixed level, held exactly.
pub struct QpSpectrum {
    inner: Spectrum,
}

/// One spectral line evaluated at a real q.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct QpLine {
    pub degree: u32,
    pub level: u32,
    /// +1 or -1 for the two halves of a pair, 0 in the kernel.
    pub sign: i8,
    pub multiplicity: u64,
    pub eigenvalue_sq: f64,
    pub eigenvalue: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = s);
}

fn fail(status: QpStatus, msg: impl Into<String>) -> QpStatus {
    set_error(msg);
    status
}

fn spectra_fail(e: SpectraError) -> QpStatus {
    let status = match e {
        SpectraError::InvalidInput(_) => QpStatus::InvalidArgument,
        _ => QpStatus::Computation,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> QpStatus) -> QpStatus {
    set_error("");
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(QpStatus::Panic, "internal panic"))
}

fn check_q(q: f64) -> Result<(), QpStatus> {
    if q > 0.0 && q <= 1.0 {
        Ok(())
    } else {
        Err(fail(QpStatus::InvalidArgument, format!("q must lie in (0, 1], got {q}")))
    }
}

/// Copies `s` with a trailing NUL into `buf`; `needed` receives the full size in bytes.
unsafe fn copy_out(s: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> QpStatus {
    let bytes = s.as_bytes();
    if !needed.is_null() {
        *needed = bytes.len() + 1;
    }
    if buf.is_null() || cap < bytes.len() + 1 {
        return fail(QpStatus::BufferTooSmall, format!("need {} bytes", bytes.len() + 1));
    }
    ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, bytes.len());
    *buf.add(bytes.len()) = 0;
    QpStatus::Ok
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn qp_status_message(status: QpStatus) -> *const c_char {
    let s: &'static CStr = match status {
        QpStatus::Ok => c"ok",
        QpStatus::NullPointer => c"null pointer argument",
        QpStatus::InvalidArgument => c"invalid argument",
        QpStatus::OutOfRange => c"index out of range",
        QpStatus::BufferTooSmall => c"buffer too small",
        QpStatus::Computation => c"computation failed",
        QpStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}

/// Message for the last failure on this thread; valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn qp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Computes the spectrum for rank `ell`, charge `n` and pair levels `0..=m_max`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle pointer.
#[no_mangle]
pub unsafe extern "C" fn qp_spectrum_new(ell: u32, n: i64, m_max: u32, out: *mut *mut QpSpectrum) -> QpStatus {
    guard(|| {
        if out.is_null() {
            return fail(QpStatus::NullPointer, "out is null");
        }
        *out = ptr::null_mut();
        match spectra::full_spectrum(ell as usize, n, m_max) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(QpSpectrum { inner }));
                QpStatus::Ok
            }
            Err(e) => spectra_fail(e),
        }
    })
}

/// Releases a spectrum handle; null is ignored.
///
/// # Safety
/// `h` must come from `qp_spectrum_new` and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qp_spectrum_free(h: *mut QpSpectrum) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

unsafe fn spectrum<'a>(h: *const QpSpectrum) -> Result<&'a Spectrum, QpStatus> {
    h.as_ref().map(|s| &s.inner).ok_or_else(|| fail(QpStatus::NullPointer, "spectrum handle is null"))
}

/// Number of lines in the spectrum.
///
/// # Safety
/// `h` must be a live handle and `len` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_spectrum_len(h: *const QpSpectrum, len: *mut usize) -> QpStatus {
    guard(|| {
        let sp = match spectrum(h) {
            Ok(s) => s,
            Err(e) => return e,
        };
        if len.is_null() {
            return fail(QpStatus::NullPointer, "len is null");
        }
        *len = sp.lines.len();
        QpStatus::Ok
    })
}

/// Total multiplicity of the zero modes.
///
/// # Safety
/// `h` must be a live handle and `dim` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_spectrum_kernel_dim(h: *const QpSpectrum, dim: *mut u64) -> QpStatus {
    guard(|| {
        let sp = match spectrum(h) {
            Ok(s) => s,
            Err(e) => return e,
        };
        if dim.is_null() {
            return fail(QpStatus::NullPointer, "dim is null");
        }
        *dim = sp.kernel_dim();
        QpStatus::Ok
    })
}

/// Line `index` evaluated at `q` in (0, 1].
///
/// # Safety
/// `h` must be a live handle and `line` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_spectrum_line(h: *const QpSpectrum, index: usize, q: f64, line: *mut QpLine) -> QpStatus {
    guard(|| {
        let sp = match spectrum(h) {
            Ok(s) => s,
            Err(e) => return e,
        };
        if line.is_null() {
            return fail(QpStatus::NullPointer, "line is null");
        }
        if let Err(e) = check_q(q) {
            return e;
        }
        let Some(l) = sp.lines.get(index) else {
            return fail(QpStatus::OutOfRange, format!("index {index} of {}", sp.lines.len()));
        };
        let v = if l.sign == 0 { Ok(0.0) } else { l.eigenvalue_sq.eval_at(q) };
        let v = match v {
            Ok(v) => v,
            Err(e) => return fail(QpStatus::Computation, e.to_string()),
        };
        *line = QpLine {
            degree: l.degree as u32,
            level: l.pair_level,
            sign: l.sign,
            multiplicity: l.multiplicity,
            eigenvalue_sq: v,
            eigenvalue: l.sign as f64 * v.max(0.0).sqrt(),
        };
        QpStatus::Ok
    })
}

/// Highest weight of line `index` as "(n1,...,nl)".
///
/// # Safety
/// `h` must be a live handle; `buf` must hold `cap` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn qp_spectrum_weight(
    h: *const QpSpectrum,
    index: usize,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> QpStatus {
    guard(|| {
        let sp = match spectrum(h) {
            Ok(s) => s,
            Err(e) => return e,
        };
        match sp.lines.get(index) {
            Some(l) => copy_out(&l.weight.to_string(), buf, cap, needed),
            None => fail(QpStatus::OutOfRange, format!("index {index} of {}", sp.lines.len())),
        }
    })
}

/// Exact D^2 value of line `index` as a canonical string in t = q^(1/r).
///
/// # Safety
/// As for `qp_spectrum_weight`; `root_order` may be null.
#[no_mangle]
pub unsafe extern "C" fn qp_spectrum_symbolic(
    h: *const QpSpectrum,
    index: usize,
    root_order: *mut u32,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> QpStatus {
    guard(|| {
        let sp = match spectrum(h) {
            Ok(s) => s,
            Err(e) => return e,
        };
        match sp.lines.get(index) {
            Some(l) => {
                if !root_order.is_null() {
                    *root_order = l.eigenvalue_sq.root_order().get();
                }
                copy_out(&l.eigenvalue_sq.canonical_string(), buf, cap, needed)
            }
            None => fail(QpStatus::OutOfRange, format!("index {index} of {}", sp.lines.len())),
        }
    })
}

/// Casimir eigenvalue on the representation with highest weight `weight[0..len]`, at q.
///
/// # Safety
/// `weight` must point to `len` values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_casimir(weight: *const u32, len: usize, q: f64, out: *mut f64) -> QpStatus {
    guard(|| {
        if weight.is_null() || out.is_null() {
            return fail(QpStatus::NullPointer, "weight or out is null");
        }
        if len == 0 {
            return fail(QpStatus::InvalidArgument, "weight must have at least one entry");
        }
        if let Err(e) = check_q(q) {
            return e;
        }
        let w = HighestWeight::new(std::slice::from_raw_parts(weight, len).to_vec());
        let c = spectra::casimir_eigenvalue(&w);
        match c.eval_at(q) {
            Ok(v) => {
                *out = v;
                QpStatus::Ok
            }
            Err(e) => fail(QpStatus::Computation, e.to_string()),
        }
    })
}

/// Dimension of the representation with highest weight `weight[0..len]`.
///
/// # Safety
/// `weight` must point to `len` values and `out` be writable.
#[no_mangle]
pub unsafe extern "C" fn qp_weyl_dim(weight: *const u32, len: usize, out: *mut u64) -> QpStatus {
    guard(|| {
        if weight.is_null() || out.is_null() {
            return fail(QpStatus::NullPointer, "weight or out is null");
        }
        let w = HighestWeight::new(std::slice::from_raw_parts(weight, len).to_vec());
        *out = spectra::weyl_dim(&w);
        QpStatus::Ok
    })
}

/// Runs a verification suite ("scalar", "combinatorics", "grassmann", "uqsl", "spectra",
/// "sphere" or "all") up to rank `ell`, reporting the number of checks and of failures.
///
/// # Safety
/// `suite` must be a NUL-terminated string; `total` and `failed` writable.
#[no_mangle]
pub unsafe extern "C" fn qp_verify(suite: *const c_char, ell: u32, total: *mut usize, failed: *mut usize) -> QpStatus {
    guard(|| {
        if suite.is_null() || total.is_null() || failed.is_null() {
            return fail(QpStatus::NullPointer, "null argument");
        }
        let name = CStr::from_ptr(suite).to_string_lossy();
        let which = match name.as_ref() {
            "scalar" => Suite::Scalar,
            "combinatorics" => Suite::Combinatorics,
            "grassmann" => Suite::Grassmann,
            "uqsl" => Suite::Uqsl,
            "spectra" => Suite::Spectra,
            "sphere" => Suite::Sphere,
            "all" => Suite::All,
            other => return fail(QpStatus::InvalidArgument, format!("unknown suite '{other}'")),
        };
        if ell == 0 {
            return fail(QpStatus::InvalidArgument, "ell must be at least 1");
        }
        let checks: Vec<Check> = run_suites(which, ell as usize);
        *total = checks.len();
        *failed = checks.iter().filter(|c| !c.passed).count();
        QpStatus::Ok
    })
}
