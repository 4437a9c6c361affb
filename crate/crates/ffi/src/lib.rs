//! C ABI over `hv-core`.
//!
//! Models are opaque `HvModel` handles created by the `hv_model_*`
//! constructors and released with `hv_model_free`. Every fallible call
//! returns an `HvStatus`; on failure `hv_last_error` describes the cause.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hv_core::correlators::{analytic_correlator, mc_correlator};
use hv_core::error::ModelError;
use hv_core::geometry::{chsh_optimal_settings, UnitVector3, Vec3};
use hv_core::inequalities::{chsh_report, margin, Inequality, InequalityReport};
use hv_core::models::{joint, HiddenState, ModelParams, Outcome, Settings};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HvStatus {
    Ok = 0,
    NullPointer = 1,
    /// Model parameters violate a constraint.
    InvalidModel = 2,
    /// A vector, angle, or sample size is out of range.
    InvalidArgument = 3,
    /// The quantity is undefined for this model (e.g. a zero vector).
    Undefined = 4,
    /// An internal panic was caught at the boundary.
    Panic = 5,
}

/// Opaque model handle.
pub struct HvModel {
    params: ModelParams,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HvVec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

/// Hidden state for `hv_joint_table`. FHV reads `u` and `v`, THV reads `u`,
/// SHV reads `p`, QM reads nothing.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HvHidden {
    pub u: HvVec3,
    pub v: HvVec3,
    pub p: HvVec3,
}

/// P(σ, τ) indexed by outcome signs.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HvTable {
    pub pp: f64,
    pub pm: f64,
    pub mp: f64,
    pub mm: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HvMcEstimate {
    pub mean: f64,
    pub stderr_: f64,
    pub n: u64,
    pub seed: u64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HvInequality {
    Chsh = 0,
    Leggett = 1,
    Branciard = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct HvReport {
    pub value: f64,
    pub bound: f64,
    pub margin: f64,
    /// 1 when margin > 0.
    pub violated: u8,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(HvStatus, String);

impl From<ModelError> for Failure {
    fn from(e: ModelError) -> Self {
        let status = match e {
            ModelError::UndefinedConditional(_) | ModelError::UnsupportedFamily(_) => HvStatus::Undefined,
            ModelError::HiddenStateMismatch(_) | ModelError::SampleSize(..) | ModelError::PExceedsSupremum { .. } => {
                HvStatus::InvalidArgument
            }
            _ => HvStatus::InvalidModel,
        };
        Failure(status, e.to_string())
    }
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> HvStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HvStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            HvStatus::Panic
        }
    }
}

fn null() -> Failure {
    Failure(HvStatus::NullPointer, "null pointer argument".into())
}

fn unit(v: HvVec3, name: &str) -> Result<UnitVector3, Failure> {
    if !(v.x.is_finite() && v.y.is_finite() && v.z.is_finite()) {
        return Err(Failure(HvStatus::InvalidArgument, format!("{name} must be finite")));
    }
    UnitVector3::new(v.x, v.y, v.z).ok_or_else(|| Failure(HvStatus::Undefined, format!("{name} is the zero vector")))
}

fn settings(a: HvVec3, b: HvVec3) -> Result<Settings, Failure> {
    Ok(Settings::new(unit(a, "a")?, unit(b, "b")?))
}

/// # Safety
/// `out` must be null or valid for a write of one pointer.
unsafe fn emit_model(out: *mut *mut HvModel, params: Result<ModelParams, ModelError>) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    let params = params?;
    // SAFETY: checked non-null above; the caller guarantees validity.
    unsafe { *out = Box::into_raw(Box::new(HvModel { params })) };
    Ok(())
}

/// # Safety
/// `model` must be null or a live handle from an `hv_model_*` constructor.
unsafe fn model_ref<'a>(model: *const HvModel) -> Result<&'a ModelParams, Failure> {
    // SAFETY: guaranteed by the caller.
    unsafe { model.as_ref() }.map(|m| &m.params).ok_or_else(null)
}

/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null());
    }
    // SAFETY: checked non-null above; the caller guarantees validity.
    unsafe { out.write(value) };
    Ok(())
}

/// Creates an FHV model with bias function f(x) = x/2 for both parties.
///
/// # Safety
/// `out` must be valid for a write of one pointer.
#[no_mangle]
pub unsafe extern "C" fn hv_model_fhv(eta: f64, out: *mut *mut HvModel) -> HvStatus {
    guard(|| unsafe { emit_model(out, ModelParams::fhv(eta)) })
}

/// Creates an SHV model with constant p(λ) = p0.
///
/// # Safety
/// `out` must be valid for a write of one pointer.
#[no_mangle]
pub unsafe extern "C" fn hv_model_shv_constant(p0: HvVec3, out: *mut *mut HvModel) -> HvStatus {
    guard(|| unsafe { emit_model(out, ModelParams::shv_constant(Vec3::new(p0.x, p0.y, p0.z))) })
}

/// Creates a THV model; fails with `InvalidModel` when ζ breaks positivity.
///
/// # Safety
/// `out` must be valid for a write of one pointer.
#[no_mangle]
pub unsafe extern "C" fn hv_model_thv(zeta: f64, out: *mut *mut HvModel) -> HvStatus {
    guard(|| unsafe { emit_model(out, ModelParams::thv(zeta)) })
}

/// # Safety
/// `out` must be valid for a write of one pointer.
#[no_mangle]
pub unsafe extern "C" fn hv_model_qm(out: *mut *mut HvModel) -> HvStatus {
    guard(|| unsafe { emit_model(out, Ok(ModelParams::Qm)) })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `model` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hv_model_free(model: *mut HvModel) {
    if !model.is_null() {
        // SAFETY: the handle came from Box::into_raw and is freed once.
        drop(unsafe { Box::from_raw(model) });
    }
}

/// Joint outcome table at a fixed hidden state.
///
/// # Safety
/// `model` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hv_joint_table(
    model: *const HvModel,
    a: HvVec3,
    b: HvVec3,
    hidden: HvHidden,
    out: *mut HvTable,
) -> HvStatus {
    guard(|| {
        let params = unsafe { model_ref(model) }?;
        let s = settings(a, b)?;
        let h = match params {
            ModelParams::Fhv(_) => HiddenState::Vectors { u: unit(hidden.u, "u")?, v: unit(hidden.v, "v")? },
            ModelParams::Thv(_) => {
                let u = unit(hidden.u, "u")?;
                HiddenState::Vectors { u, v: -u }
            }
            ModelParams::Shv(_) => HiddenState::Carrier { p: Vec3::new(hidden.p.x, hidden.p.y, hidden.p.z) },
            ModelParams::Qm => HiddenState::Empty,
        };
        let t = joint(params, &h, &s)?;
        let g = |sg, tg| t.get(sg, tg);
        let table = HvTable {
            pp: g(Outcome::Plus, Outcome::Plus),
            pm: g(Outcome::Plus, Outcome::Minus),
            mp: g(Outcome::Minus, Outcome::Plus),
            mm: g(Outcome::Minus, Outcome::Minus),
        };
        unsafe { write(out, table) }
    })
}

/// λ-averaged correlator C(a, b).
///
/// # Safety
/// `model` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hv_correlator(model: *const HvModel, a: HvVec3, b: HvVec3, out: *mut f64) -> HvStatus {
    guard(|| {
        let params = unsafe { model_ref(model) }?;
        let c = analytic_correlator(params, &settings(a, b)?);
        unsafe { write(out, c) }
    })
}

/// Monte-Carlo estimate of C(a, b); deterministic in (seed, shards, n).
///
/// # Safety
/// `model` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hv_mc_correlator(
    model: *const HvModel,
    a: HvVec3,
    b: HvVec3,
    n: u64,
    seed: u64,
    shards: u64,
    out: *mut HvMcEstimate,
) -> HvStatus {
    guard(|| {
        let params = unsafe { model_ref(model) }?;
        let e = mc_correlator(params, &settings(a, b)?, n, seed, shards)?;
        unsafe { write(out, HvMcEstimate { mean: e.mean, stderr_: e.stderr, n: e.n, seed: e.seed }) }
    })
}

fn report(r: &InequalityReport) -> HvReport {
    HvReport { value: r.value, bound: r.bound, margin: r.margin, violated: u8::from(r.violated) }
}

/// Value, bound and margin of an inequality selected by an `HvInequality`
/// code. CHSH uses the optimal settings and ignores `phi`.
///
/// # Safety
/// `model` must be a live handle and `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn hv_inequality(
    model: *const HvModel,
    inequality: u32,
    phi: f64,
    out: *mut HvReport,
) -> HvStatus {
    guard(|| {
        let params = unsafe { model_ref(model) }?;
        let which = match inequality {
            0 => HvInequality::Chsh,
            1 => HvInequality::Leggett,
            2 => HvInequality::Branciard,
            _ => return Err(Failure(HvStatus::InvalidArgument, format!("unknown inequality code {inequality}"))),
        };
        let r = match which {
            HvInequality::Chsh => chsh_report(params, &chsh_optimal_settings()),
            HvInequality::Leggett | HvInequality::Branciard if !phi.is_finite() => {
                return Err(Failure(HvStatus::InvalidArgument, "phi must be finite".into()));
            }
            HvInequality::Leggett => margin(Inequality::Leggett, params, phi),
            HvInequality::Branciard => margin(Inequality::Branciard, params, phi),
        };
        unsafe { write(out, report(&r)) }
    })
}

/// Message for the last failure on this thread, or null. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hv_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
