//! C ABI over `wree`.
//!
//! Every fallible function returns a [`WreeStatus`] and writes its result
//! through an out-pointer. On failure a message describing the error is kept
//! per thread and can be read with [`wree_last_error`]. Panics never cross the
//! boundary; they are reported as [`WreeStatus::Panic`].
//!
//! All entropies are in nats.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;

use wree::css_opt::{ree_numeric_general, ree_numeric_restricted, GeneralConfig};
use wree::monogamy::{self, delta_with, Engine, MonogamyRecord, WParams};
use wree::output::{engine_label, write_atomic, write_csv, CsvMeta, LogBase};
use wree::qmat::{ComplexMatrix, DensityMatrix};
use wree::xfamily::{closed_form_parts, ree_closed_form, ree_vedral_plenio, XState};
use wree::Error;

/// Engine selector for [`wree_delta`] and [`wree_sweep_new`].
pub const WREE_ENGINE_CLOSED_FORM: i32 = 0;
pub const WREE_ENGINE_RESTRICTED_NUMERIC: i32 = 1;

/// Log-base selector for [`wree_sweep_write_csv`].
pub const WREE_LOG_BASE_E: i32 = 0;
pub const WREE_LOG_BASE_2: i32 = 1;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WreeStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    DegenerateInput = 3,
    NotConverged = 4,
    Io = 5,
    Panic = 6,
}

/// Auxiliary quantities of the closed form at an interior point.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WreeClosedFormParts {
    pub delta: f64,
    pub m: f64,
    pub n: f64,
}

/// One point of the monogamy audit.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct WreeMonogamyRecord {
    pub alpha_sq: f64,
    pub beta_sq: f64,
    pub gamma_sq: f64,
    pub e_ab: f64,
    pub e_ac: f64,
    pub e_abc: f64,
    pub delta: f64,
}

impl From<&MonogamyRecord> for WreeMonogamyRecord {
    fn from(r: &MonogamyRecord) -> Self {
        Self {
            alpha_sq: r.alpha_sq,
            beta_sq: r.beta_sq,
            gamma_sq: r.gamma_sq,
            e_ab: r.e_ab,
            e_ac: r.e_ac,
            e_abc: r.e_abc,
            delta: r.delta,
        }
    }
}

/// Opaque result of a simplex sweep.
pub struct WreeSweep {
    resolution: usize,
    engine: Engine,
    records: Vec<MonogamyRecord>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    let c = CString::new(text).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

struct Failure(WreeStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::DegenerateInput(_) => WreeStatus::DegenerateInput,
            Error::ConvergenceFailure { .. } => WreeStatus::NotConverged,
            _ => WreeStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(WreeStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, translating errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> WreeStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => WreeStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            WreeStatus::Panic
        }
    }
}

fn engine_from(code: i32) -> Result<Engine, Failure> {
    match code {
        WREE_ENGINE_CLOSED_FORM => Ok(Engine::ClosedForm),
        WREE_ENGINE_RESTRICTED_NUMERIC => Ok(Engine::RestrictedNumeric),
        _ => Err(Failure(
            WreeStatus::InvalidInput,
            format!("unknown engine {code}"),
        )),
    }
}

fn log_base_from(code: i32) -> Result<LogBase, Failure> {
    match code {
        WREE_LOG_BASE_E => Ok(LogBase::E),
        WREE_LOG_BASE_2 => Ok(LogBase::Two),
        _ => Err(Failure(
            WreeStatus::InvalidInput,
            format!("unknown log base {code}"),
        )),
    }
}

/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn wree_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| {
        slot.borrow()
            .as_ref()
            .map_or(std::ptr::null(), |c| c.as_ptr())
    })
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn wree_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Closed-form REE of the rank-2 state with populations `(a, b, c)`.
///
/// # Safety
/// `out` must be valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn wree_ree_closed_form(a: f64, b: f64, c: f64, out: *mut f64) -> WreeStatus {
    guard(|| {
        let s = XState::new(a, b, c)?;
        write_out(out, ree_closed_form(&s), "out")
    })
}

/// Δ, M and N at an interior point; `WREE_STATUS_DEGENERATE_INPUT` if any of
/// `a`, `b`, `c` vanishes.
///
/// # Safety
/// `out` must be valid for writing one `WreeClosedFormParts`.
#[no_mangle]
pub unsafe extern "C" fn wree_closed_form_parts(
    a: f64,
    b: f64,
    c: f64,
    out: *mut WreeClosedFormParts,
) -> WreeStatus {
    guard(|| {
        let p = closed_form_parts(&XState::new(a, b, c)?)?;
        write_out(
            out,
            WreeClosedFormParts {
                delta: p.delta_disc,
                m: p.m_param,
                n: p.n_param,
            },
            "out",
        )
    })
}

/// REE of `(1-λ)|00><00| + λ|Ψ+><Ψ+|`.
///
/// # Safety
/// `out` must be valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn wree_ree_vedral_plenio(lambda: f64, out: *mut f64) -> WreeStatus {
    guard(|| write_out(out, ree_vedral_plenio(lambda)?, "out"))
}

/// Numerical REE over the invariant separable family.
///
/// # Safety
/// `out` must be valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn wree_ree_numeric_restricted(
    a: f64,
    b: f64,
    c: f64,
    out: *mut f64,
) -> WreeStatus {
    guard(|| {
        let s = XState::new(a, b, c)?;
        write_out(out, ree_numeric_restricted(&s), "out")
    })
}

/// Numerical REE of an arbitrary two-qubit density matrix given as row-major
/// real and imaginary parts (16 entries each). `restarts` and `seed` select the
/// multi-start schedule; zero restarts picks the default.
///
/// The best value found is written even when the result is
/// `WREE_STATUS_NOT_CONVERGED`. An infinite value means no product mixture
/// with finite relative entropy was found.
///
/// # Safety
/// `re` and `im` must point to 16 readable doubles; `out` must be valid for
/// writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn wree_ree_numeric_general(
    re: *const f64,
    im: *const f64,
    restarts: usize,
    seed: u64,
    out: *mut f64,
) -> WreeStatus {
    guard(|| {
        if re.is_null() || im.is_null() {
            return Err(null("matrix"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let (re, im) = (
            std::slice::from_raw_parts(re, 16),
            std::slice::from_raw_parts(im, 16),
        );
        let m = ComplexMatrix::from_fn(4, |i, j| {
            wree::qmat::Complex64::new(re[4 * i + j], im[4 * i + j])
        })?;
        let rho = DensityMatrix::new(m)?;
        let defaults = GeneralConfig::default();
        let cfg = GeneralConfig {
            restarts: if restarts == 0 {
                defaults.restarts
            } else {
                restarts
            },
            seed,
            ..defaults
        };
        let outcome = ree_numeric_general(&rho, &cfg)?;
        out.write(outcome.value.to_f64());
        match outcome.convergence_failure() {
            Some(e) => Err(e.into()),
            None => Ok(()),
        }
    })
}

/// Monogamy record for `α|001> + β|010> + γ|100>`; the amplitudes must have
/// unit norm.
///
/// # Safety
/// `out` must be valid for writing one `WreeMonogamyRecord`.
#[no_mangle]
pub unsafe extern "C" fn wree_delta(
    alpha: f64,
    beta: f64,
    gamma: f64,
    engine: i32,
    out: *mut WreeMonogamyRecord,
) -> WreeStatus {
    guard(|| {
        let engine = engine_from(engine)?;
        let w = WParams::new(alpha, beta, gamma)?;
        write_out(out, (&delta_with(&w, engine)).into(), "out")
    })
}

/// Evaluates δ on the `(β², γ²)` grid of the given resolution (at least 2).
/// Release the handle with [`wree_sweep_free`].
///
/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn wree_sweep_new(
    resolution: usize,
    engine: i32,
    out: *mut *mut WreeSweep,
) -> WreeStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let engine = engine_from(engine)?;
        let records = monogamy::sweep(resolution, engine)?;
        let handle = Box::new(WreeSweep {
            resolution,
            engine,
            records,
        });
        out.write(Box::into_raw(handle));
        Ok(())
    })
}

/// Number of grid points, or 0 for a null handle.
///
/// # Safety
/// `sweep` must be null or a live handle from [`wree_sweep_new`].
#[no_mangle]
pub unsafe extern "C" fn wree_sweep_len(sweep: *const WreeSweep) -> usize {
    sweep.as_ref().map_or(0, |s| s.records.len())
}

/// Record `index` in row-major `(β², γ²)` order.
///
/// # Safety
/// `sweep` must be null or a live handle; `out` must be valid for writing one
/// `WreeMonogamyRecord`.
#[no_mangle]
pub unsafe extern "C" fn wree_sweep_get(
    sweep: *const WreeSweep,
    index: usize,
    out: *mut WreeMonogamyRecord,
) -> WreeStatus {
    guard(|| {
        let s = sweep.as_ref().ok_or_else(|| null("sweep"))?;
        let r = s.records.get(index).ok_or_else(|| {
            Failure(
                WreeStatus::InvalidInput,
                format!("index {index} out of range for {} records", s.records.len()),
            )
        })?;
        write_out(out, r.into(), "out")
    })
}

/// Writes the sweep as CSV to the UTF-8 path `path`, replacing any existing
/// file atomically.
///
/// # Safety
/// `sweep` must be null or a live handle; `path` must be null or a
/// NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn wree_sweep_write_csv(
    sweep: *const WreeSweep,
    path: *const c_char,
    log_base: i32,
    seed: u64,
) -> WreeStatus {
    guard(|| {
        let s = sweep.as_ref().ok_or_else(|| null("sweep"))?;
        if path.is_null() {
            return Err(null("path"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| Failure(WreeStatus::InvalidInput, "path is not UTF-8".into()))?;
        let base = log_base_from(log_base)?;
        let shown: Vec<MonogamyRecord> = s
            .records
            .iter()
            .map(|r| r.in_base(base.ln_base()))
            .collect();
        let meta = CsvMeta {
            engine: engine_label(s.engine),
            resolution: s.resolution,
            seed,
            log_base: base,
        };
        write_atomic(Path::new(path), write_csv(&shown, None, &meta).as_bytes())
            .map_err(|e| Failure(WreeStatus::Io, format!("writing {path}: {e}")))
    })
}

/// Releases a sweep handle; null is ignored.
///
/// # Safety
/// `sweep` must be null or a live handle not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wree_sweep_free(sweep: *mut WreeSweep) {
    if !sweep.is_null() {
        drop(Box::from_raw(sweep));
    }
}
