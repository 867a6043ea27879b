//! C ABI over the `clent` library.
//!
//! Every fallible function returns a [`ClentStatus`] and writes results
//! through out-pointers. On failure a message is available from
//! [`clent_last_error_message`] on the same thread. Handles are opaque and
//! must be released with the matching `_free` function.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use clent::covariance::{classical_covariance, lattice_covariance, quantum_ground_covariance, reduce};
use clent::measures::{alpha_entry, classical_purity, classical_von_neumann, sigma_tilde};
use clent::{ActionAssignment, Bipartition, CovarianceMatrix, Error, HamiltonianModel};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClentStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    InvalidModel = 3,
    UnstableSystem = 4,
    NotPositiveDefinite = 5,
    CrossBlockNotZero = 6,
    SubHeisenberg = 7,
    NonUniformScale = 8,
    BufferTooSmall = 9,
    NumericalFailure = 10,
    Panic = 11,
}

impl From<&Error> for ClentStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidModel(_) | Error::DegenerateParameters(_) => ClentStatus::InvalidModel,
            Error::UnstableSystem { .. } => ClentStatus::UnstableSystem,
            Error::NotPositiveDefinite { .. } | Error::SingularMatrix => ClentStatus::NotPositiveDefinite,
            Error::CrossBlockNotZero { .. } => ClentStatus::CrossBlockNotZero,
            Error::SubHeisenberg(_) => ClentStatus::SubHeisenberg,
            Error::NonUniformScale => ClentStatus::NonUniformScale,
            e if e.is_input_error() => ClentStatus::InvalidInput,
            _ => ClentStatus::NumericalFailure,
        }
    }
}

/// A Hamiltonian model.
pub struct ClentModel {
    inner: HamiltonianModel,
}

/// A phase-space covariance matrix in `(q..., p...)` ordering.
pub struct ClentCovariance {
    inner: CovarianceMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn guard(f: impl FnOnce() -> Result<(), ClentStatus>) -> ClentStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => ClentStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic");
            ClentStatus::Panic
        }
    }
}

fn fail(e: Error) -> ClentStatus {
    set_error(e.to_string());
    ClentStatus::from(&e)
}

fn null(what: &str) -> ClentStatus {
    set_error(format!("{what} is null"));
    ClentStatus::NullPointer
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, ClentStatus> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, ClentStatus> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn indices<'a>(p: *const usize, len: usize, what: &str) -> Result<&'a [usize], ClentStatus> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null(what))
    } else {
        Ok(slice::from_raw_parts(p, len))
    }
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message for the most recent failure on this thread. Empty after a success.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn clent_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn clent_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses a model from its JSON description.
#[no_mangle]
pub unsafe extern "C" fn clent_model_from_json(json: *const c_char, model_out: *mut *mut ClentModel) -> ClentStatus {
    guard(|| {
        let slot = out(model_out, "model_out")?;
        *slot = ptr::null_mut();
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| fail(Error::InvalidInput(format!("json is not UTF-8: {e}"))))?;
        let inner = HamiltonianModel::from_json_str(text).map_err(fail)?;
        *slot = boxed(ClentModel { inner });
        Ok(())
    })
}

/// Two oscillators with `H = (p1² + p2²)/2 + (A q1² + B q2² + C q1 q2)/2`.
#[no_mangle]
pub unsafe extern "C" fn clent_model_two_mode(a: f64, b: f64, c: f64, model_out: *mut *mut ClentModel) -> ClentStatus {
    guard(|| {
        let slot = out(model_out, "model_out")?;
        *slot = ptr::null_mut();
        let inner = HamiltonianModel::TwoMode { a, b, c };
        inner.validate().map_err(fail)?;
        *slot = boxed(ClentModel { inner });
        Ok(())
    })
}

/// Ring of `n` identical oscillators with on-site constant `k` and coupling `kappa`.
#[no_mangle]
pub unsafe extern "C" fn clent_model_lattice(
    n: usize,
    k: f64,
    kappa: f64,
    model_out: *mut *mut ClentModel,
) -> ClentStatus {
    guard(|| {
        let slot = out(model_out, "model_out")?;
        *slot = ptr::null_mut();
        let inner = HamiltonianModel::CircularLattice { n, k, kappa };
        inner.validate().map_err(fail)?;
        *slot = boxed(ClentModel { inner });
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn clent_model_n_modes(model: *const ClentModel, n_out: *mut usize) -> ClentStatus {
    guard(|| {
        let m = deref(model, "model")?;
        *out(n_out, "n_out")? = m.inner.n_modes();
        Ok(())
    })
}

/// Releases a model. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn clent_model_free(model: *mut ClentModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// Angle-averaged covariance with every action variable equal to `action`.
#[no_mangle]
pub unsafe extern "C" fn clent_covariance_classical(
    model: *const ClentModel,
    action: f64,
    cov_out: *mut *mut ClentCovariance,
) -> ClentStatus {
    guard(|| {
        let slot = out(cov_out, "cov_out")?;
        *slot = ptr::null_mut();
        let m = deref(model, "model")?;
        let inner = match m.inner {
            HamiltonianModel::CircularLattice { n, k, kappa } => lattice_covariance(n, k, kappa, action),
            ref other => other.normal_modes().and_then(|modes| {
                classical_covariance(&modes, &ActionAssignment::uniform(modes.n(), action)?)
            }),
        }
        .map_err(fail)?;
        *slot = boxed(ClentCovariance { inner });
        Ok(())
    })
}

/// Ground-state covariance for the given `hbar`.
#[no_mangle]
pub unsafe extern "C" fn clent_covariance_quantum(
    model: *const ClentModel,
    hbar: f64,
    cov_out: *mut *mut ClentCovariance,
) -> ClentStatus {
    guard(|| {
        let slot = out(cov_out, "cov_out")?;
        *slot = ptr::null_mut();
        let m = deref(model, "model")?;
        let inner = m.inner.normal_modes().and_then(|modes| quantum_ground_covariance(&modes, hbar)).map_err(fail)?;
        *slot = boxed(ClentCovariance { inner });
        Ok(())
    })
}

/// Restricts `cov` to the listed 0-based oscillators, in the given order.
#[no_mangle]
pub unsafe extern "C" fn clent_covariance_reduce(
    cov: *const ClentCovariance,
    subsystem: *const usize,
    len: usize,
    cov_out: *mut *mut ClentCovariance,
) -> ClentStatus {
    guard(|| {
        let slot = out(cov_out, "cov_out")?;
        *slot = ptr::null_mut();
        let c = deref(cov, "cov")?;
        let idx = indices(subsystem, len, "subsystem")?;
        let inner = reduce(&c.inner, idx).map_err(fail)?;
        *slot = boxed(ClentCovariance { inner });
        Ok(())
    })
}

/// Number of oscillators; the matrix has order twice this.
#[no_mangle]
pub unsafe extern "C" fn clent_covariance_n_modes(cov: *const ClentCovariance, n_out: *mut usize) -> ClentStatus {
    guard(|| {
        let c = deref(cov, "cov")?;
        *out(n_out, "n_out")? = c.inner.n_modes();
        Ok(())
    })
}

/// Copies the `2n × 2n` entries row-major into `buf`, which must hold `len ≥ 4n²` values.
#[no_mangle]
pub unsafe extern "C" fn clent_covariance_entries(
    cov: *const ClentCovariance,
    buf: *mut f64,
    len: usize,
) -> ClentStatus {
    guard(|| {
        let c = deref(cov, "cov")?;
        let data = c.inner.matrix().as_matrix().as_slice();
        if len < data.len() {
            set_error(format!("buffer holds {len} values, {} needed", data.len()));
            return Err(ClentStatus::BufferTooSmall);
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        slice::from_raw_parts_mut(buf, data.len()).copy_from_slice(data);
        Ok(())
    })
}

/// Releases a covariance matrix. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn clent_covariance_free(cov: *mut ClentCovariance) {
    if !cov.is_null() {
        drop(Box::from_raw(cov));
    }
}

/// Rescaled symplectic eigenvalues, ascending; `buf` must hold `n` values.
#[no_mangle]
pub unsafe extern "C" fn clent_sigma_tilde(cov: *const ClentCovariance, buf: *mut f64, len: usize) -> ClentStatus {
    guard(|| {
        let c = deref(cov, "cov")?;
        let s = sigma_tilde(&c.inner).map_err(fail)?;
        if len < s.len() {
            set_error(format!("buffer holds {len} values, {} needed", s.len()));
            return Err(ClentStatus::BufferTooSmall);
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        slice::from_raw_parts_mut(buf, s.len()).copy_from_slice(s.values());
        Ok(())
    })
}

/// Purity and von Neumann entropy of the state described by `cov`.
#[no_mangle]
pub unsafe extern "C" fn clent_measures(
    cov: *const ClentCovariance,
    purity_out: *mut f64,
    von_neumann_out: *mut f64,
) -> ClentStatus {
    guard(|| {
        let c = deref(cov, "cov")?;
        let purity = out(purity_out, "purity_out")?;
        let vn = out(von_neumann_out, "von_neumann_out")?;
        let s = sigma_tilde(&c.inner).map_err(fail)?;
        *purity = classical_purity(&s);
        *vn = classical_von_neumann(&s);
        Ok(())
    })
}

/// Generalized purity, Tsallis and Rényi entropies at `alpha`. At `alpha == 1`
/// the purity is NaN and both entropies equal the von Neumann entropy.
#[no_mangle]
pub unsafe extern "C" fn clent_alpha_measures(
    cov: *const ClentCovariance,
    alpha: f64,
    mu_out: *mut f64,
    tsallis_out: *mut f64,
    renyi_out: *mut f64,
) -> ClentStatus {
    guard(|| {
        let c = deref(cov, "cov")?;
        let mu = out(mu_out, "mu_out")?;
        let ts = out(tsallis_out, "tsallis_out")?;
        let re = out(renyi_out, "renyi_out")?;
        let s = sigma_tilde(&c.inner).map_err(fail)?;
        let e = alpha_entry(&s, alpha).map_err(fail)?;
        *mu = e.mu.unwrap_or(f64::NAN);
        *ts = e.tsallis;
        *re = e.renyi;
        Ok(())
    })
}

/// Logarithmic negativity (bits) and negativity between two disjoint groups of `cov`.
#[no_mangle]
pub unsafe extern "C" fn clent_log_negativity(
    cov: *const ClentCovariance,
    group1: *const usize,
    len1: usize,
    group2: *const usize,
    len2: usize,
    log_negativity_out: *mut f64,
    negativity_out: *mut f64,
) -> ClentStatus {
    guard(|| {
        let c = deref(cov, "cov")?;
        let g1 = indices(group1, len1, "group1")?;
        let g2 = indices(group2, len2, "group2")?;
        let e_out = out(log_negativity_out, "log_negativity_out")?;
        let n_out = out(negativity_out, "negativity_out")?;
        let part = Bipartition::new(g1.to_vec(), g2.to_vec()).map_err(fail)?;
        let r = clent::log_negativity(&c.inner, &part).map_err(fail)?;
        *e_out = r.log_negativity;
        *n_out = r.negativity;
        Ok(())
    })
}
