//! C ABI for `minlen-coulomb`.
//!
//! Every function returns an [`MlcStatus`] and writes its result through an
//! out-pointer. On failure the out-pointer is left untouched and
//! [`mlc_last_error_message`] describes the error. Eigenfunctions are opaque
//! [`MlcWavefunction`] handles created by `mlc_wavefunction_new` /
//! `mlc_wavefunction_for_level` and released with `mlc_wavefunction_free`.
//!
//! The generated header lives at `include/minlen_coulomb.h`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use minlen_coulomb::model::{self, Method, ModelParams, SpectralFamily};
use minlen_coulomb::quadrature::{self, IntegralResult, QuadratureSpec};
use minlen_coulomb::semiclassical::{self, ClassicalConfig};
use minlen_coulomb::{Complex, Error, Wavefunction};

/// Result code of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlcStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    NoFiniteSolution = 3,
    SingularRegime = 4,
    ParamsMismatch = 5,
    Quadrature = 6,
    BracketNotFound = 7,
    Singularity = 8,
    Panic = 99,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MlcMethod {
    Closed = 0,
    Root = 1,
    Series = 2,
    Wkb = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlcComplex {
    pub re: f64,
    pub im: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlcBoundState {
    pub n: u32,
    pub epsilon: f64,
    pub energy: f64,
    pub method: MlcMethod,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlcQuadSpec {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlcIntegral {
    pub value: MlcComplex,
    pub error_estimate: f64,
    pub converged: bool,
    pub evaluations: usize,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MlcRegime {
    pub epsilon: f64,
    pub eps_beta: f64,
    pub one_minus_eps_beta: f64,
    pub alpha_sqrt_beta: f64,
    pub bound: f64,
    pub flagged: bool,
}

/// Opaque eigenfunction handle.
pub struct MlcWavefunction(Wavefunction);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c =
        CString::new(msg).unwrap_or_else(|_| CString::new("error message contained NUL").unwrap());
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> MlcStatus {
    match e {
        Error::Domain(_) => MlcStatus::Domain,
        Error::NoFiniteSolution { .. } => MlcStatus::NoFiniteSolution,
        Error::SingularRegime { .. } => MlcStatus::SingularRegime,
        Error::ParamsMismatch => MlcStatus::ParamsMismatch,
        Error::Quadrature { .. } => MlcStatus::Quadrature,
        Error::BracketNotFound { .. } => MlcStatus::BracketNotFound,
        Error::Singularity(_) => MlcStatus::Singularity,
    }
}

/// Runs `f`, stores its value in `out` and maps errors and panics to codes.
fn guard<T, F>(out: *mut T, f: F) -> MlcStatus
where
    F: FnOnce() -> Result<T, Error>,
{
    if out.is_null() {
        set_last_error("output pointer is null".into());
        return MlcStatus::NullPointer;
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            // SAFETY: `out` is non-null and the caller guarantees it is valid
            // for writes of `T`.
            unsafe { out.write(v) };
            MlcStatus::Ok
        }
        Ok(Err(e)) => {
            set_last_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_last_error("internal panic".into());
            MlcStatus::Panic
        }
    }
}

fn wf_ref<'a>(wf: *const MlcWavefunction) -> Result<&'a Wavefunction, Error> {
    // SAFETY: non-null handles come from `Box::into_raw` in this crate and
    // the caller guarantees they have not been freed.
    unsafe { wf.as_ref() }
        .map(|w| &w.0)
        .ok_or_else(|| Error::Domain("wavefunction handle is null".into()))
}

fn quad_spec(spec: *const MlcQuadSpec) -> Result<QuadratureSpec, Error> {
    // SAFETY: caller passes null or a valid pointer.
    match unsafe { spec.as_ref() } {
        None => Ok(QuadratureSpec::default()),
        Some(s) => QuadratureSpec::new(s.abs_tol, s.rel_tol, s.max_subdivisions),
    }
}

fn level_inputs(alpha: f64, beta: f64, delta: f64) -> Result<(ModelParams, SpectralFamily), Error> {
    Ok((ModelParams::new(alpha, beta)?, SpectralFamily::new(delta)?))
}

impl From<Complex> for MlcComplex {
    fn from(z: Complex) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<model::BoundState> for MlcBoundState {
    fn from(s: model::BoundState) -> Self {
        let method = match s.method {
            Method::Closed => MlcMethod::Closed,
            Method::Root => MlcMethod::Root,
            Method::Series => MlcMethod::Series,
            Method::Wkb => MlcMethod::Wkb,
        };
        Self {
            n: s.n,
            epsilon: s.epsilon,
            energy: s.energy,
            method,
        }
    }
}

impl From<IntegralResult> for MlcIntegral {
    fn from(r: IntegralResult) -> Self {
        Self {
            value: r.value.into(),
            error_estimate: r.error_estimate,
            converged: r.converged,
            evaluations: r.evaluations,
        }
    }
}

/// ABI version, `major * 10000 + minor * 100 + patch`.
#[no_mangle]
pub extern "C" fn mlc_version() -> u32 {
    100
}

/// Message for the last failed call on this thread, or null.
///
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mlc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub extern "C" fn mlc_quad_spec_default() -> MlcQuadSpec {
    let d = QuadratureSpec::default();
    MlcQuadSpec {
        abs_tol: d.abs_tol,
        rel_tol: d.rel_tol,
        max_subdivisions: d.max_subdivisions,
    }
}

/// `q(eps) = alpha / (2 (sqrt(eps) + sqrt(beta) eps))`.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_quantization_value(
    alpha: f64,
    beta: f64,
    epsilon: f64,
    out: *mut f64,
) -> MlcStatus {
    guard(out, || {
        model::quantization_value(&ModelParams::new(alpha, beta)?, epsilon)
    })
}

/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_energy_closed_form(
    alpha: f64,
    beta: f64,
    delta: f64,
    n: u32,
    out: *mut MlcBoundState,
) -> MlcStatus {
    guard(out, || {
        let (params, family) = level_inputs(alpha, beta, delta)?;
        model::energy_closed_form(&params, &family, n).map(Into::into)
    })
}

/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_energy_root_find(
    alpha: f64,
    beta: f64,
    delta: f64,
    n: u32,
    tol: f64,
    out: *mut MlcBoundState,
) -> MlcStatus {
    guard(out, || {
        let (params, family) = level_inputs(alpha, beta, delta)?;
        model::energy_root_find(&params, &family, n, tol).map(Into::into)
    })
}

/// Level from the Bohr-Sommerfeld condition.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_energy_wkb(
    alpha: f64,
    beta: f64,
    delta: f64,
    n: u32,
    tol: f64,
    out: *mut MlcBoundState,
) -> MlcStatus {
    guard(out, || {
        let (params, family) = level_inputs(alpha, beta, delta)?;
        semiclassical::wkb_level(&params, &family, n, tol).map(Into::into)
    })
}

/// Small-`beta` series at effective index `nu`, `order` in 0..=2.
///
/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_energy_series(
    alpha: f64,
    beta: f64,
    nu: f64,
    order: u32,
    out: *mut f64,
) -> MlcStatus {
    guard(out, || {
        model::energy_series(&ModelParams::new(alpha, beta)?, nu, order)
    })
}

/// # Safety
/// `out_delta` and `out_n` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_family_from_reference(
    alpha: f64,
    beta: f64,
    epsilon0: f64,
    out_delta: *mut f64,
    out_n: *mut u32,
) -> MlcStatus {
    if out_n.is_null() {
        set_last_error("output pointer is null".into());
        return MlcStatus::NullPointer;
    }
    let mut n = 0;
    let status = guard(out_delta, || {
        let (family, level) = model::family_and_level(&ModelParams::new(alpha, beta)?, epsilon0)?;
        n = level;
        Ok(family.delta())
    });
    if status == MlcStatus::Ok {
        // SAFETY: checked non-null above.
        unsafe { out_n.write(n) };
    }
    status
}

/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_validate_regime(
    alpha: f64,
    beta: f64,
    delta: f64,
    n: u32,
    out: *mut MlcRegime,
) -> MlcStatus {
    guard(out, || {
        let (params, family) = level_inputs(alpha, beta, delta)?;
        let d = model::validate_regime(&params, &family, n);
        Ok(MlcRegime {
            epsilon: d.epsilon,
            eps_beta: d.eps_beta,
            one_minus_eps_beta: d.one_minus_eps_beta,
            alpha_sqrt_beta: d.alpha_sqrt_beta,
            bound: d.bound,
            flagged: d.flagged,
        })
    })
}

/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_normalization_constant(
    alpha: f64,
    beta: f64,
    epsilon: f64,
    out: *mut f64,
) -> MlcStatus {
    guard(out, || {
        minlen_coulomb::wavefunction::normalization_constant(
            &ModelParams::new(alpha, beta)?,
            epsilon,
        )
    })
}

/// # Safety
/// `out` must be null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_action_integral_closed(
    alpha: f64,
    beta: f64,
    epsilon: f64,
    out: *mut f64,
) -> MlcStatus {
    guard(out, || {
        let cfg = ClassicalConfig::from_epsilon(ModelParams::new(alpha, beta)?, epsilon)?;
        Ok(semiclassical::action_integral_closed(&cfg))
    })
}

/// # Safety
/// `spec` must be null (defaults) or valid; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_action_integral_numeric(
    alpha: f64,
    beta: f64,
    epsilon: f64,
    spec: *const MlcQuadSpec,
    out: *mut f64,
) -> MlcStatus {
    guard(out, || {
        let cfg = ClassicalConfig::from_epsilon(ModelParams::new(alpha, beta)?, epsilon)?;
        semiclassical::action_integral_numeric(&cfg, &quad_spec(spec)?)
    })
}

/// Creates an eigenfunction with binding energy `epsilon`.
///
/// # Safety
/// `out` must be null or valid for writes. The handle written to `*out`
/// must be released with [`mlc_wavefunction_free`].
#[no_mangle]
pub unsafe extern "C" fn mlc_wavefunction_new(
    alpha: f64,
    beta: f64,
    epsilon: f64,
    out: *mut *mut MlcWavefunction,
) -> MlcStatus {
    guard(out, || {
        let wf = Wavefunction::new(ModelParams::new(alpha, beta)?, epsilon)?;
        Ok(Box::into_raw(Box::new(MlcWavefunction(wf))))
    })
}

/// Creates the eigenfunction of level `n` in the family `delta`.
///
/// # Safety
/// As for [`mlc_wavefunction_new`].
#[no_mangle]
pub unsafe extern "C" fn mlc_wavefunction_for_level(
    alpha: f64,
    beta: f64,
    delta: f64,
    n: u32,
    out: *mut *mut MlcWavefunction,
) -> MlcStatus {
    guard(out, || {
        let (params, family) = level_inputs(alpha, beta, delta)?;
        let wf = Wavefunction::for_level(params, &family, n)?;
        Ok(Box::into_raw(Box::new(MlcWavefunction(wf))))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `wf` must be null or a handle from this library that was not freed yet.
#[no_mangle]
pub unsafe extern "C" fn mlc_wavefunction_free(wf: *mut MlcWavefunction) {
    if !wf.is_null() {
        // SAFETY: see function contract.
        drop(unsafe { Box::from_raw(wf) });
    }
}

/// # Safety
/// `wf` must be a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_wavefunction_epsilon(
    wf: *const MlcWavefunction,
    out: *mut f64,
) -> MlcStatus {
    guard(out, || Ok(wf_ref(wf)?.epsilon()))
}

/// # Safety
/// `wf` must be a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_wavefunction_norm_const(
    wf: *const MlcWavefunction,
    out: *mut f64,
) -> MlcStatus {
    guard(out, || Ok(wf_ref(wf)?.norm_const()))
}

/// # Safety
/// `wf` must be a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_wavefunction_evaluate(
    wf: *const MlcWavefunction,
    p: f64,
    out: *mut MlcComplex,
) -> MlcStatus {
    guard(out, || Ok(wf_ref(wf)?.evaluate(p).into()))
}

/// # Safety
/// `wf` must be a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_wavefunction_phase(
    wf: *const MlcWavefunction,
    p: f64,
    out: *mut f64,
) -> MlcStatus {
    guard(out, || Ok(wf_ref(wf)?.phase(p)))
}

/// # Safety
/// `wf` must be a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_wavefunction_derivative(
    wf: *const MlcWavefunction,
    p: f64,
    out: *mut MlcComplex,
) -> MlcStatus {
    guard(out, || Ok(wf_ref(wf)?.derivative(p).into()))
}

/// # Safety
/// `wf` must be a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_wavefunction_ode_residual(
    wf: *const MlcWavefunction,
    p: f64,
    out: *mut MlcComplex,
) -> MlcStatus {
    guard(out, || Ok(wf_ref(wf)?.ode_residual(p).into()))
}

/// # Safety
/// `wf` must be a live handle; `out` null or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_wavefunction_boundary_constant(
    wf: *const MlcWavefunction,
    out: *mut MlcComplex,
) -> MlcStatus {
    guard(out, || Ok(wf_ref(wf)?.boundary_constant().into()))
}

/// `(1/X) psi (p)` including the boundary constant.
///
/// # Safety
/// `wf` must be a live handle; `spec` null or valid; `out` null or valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_wavefunction_inverse_x(
    wf: *const MlcWavefunction,
    p: f64,
    spec: *const MlcQuadSpec,
    out: *mut MlcComplex,
) -> MlcStatus {
    guard(out, || {
        Ok(wf_ref(wf)?.inverse_x_apply(p, &quad_spec(spec)?)?.into())
    })
}

/// `<a|b>` with the deformed measure.
///
/// # Safety
/// `a`, `b` must be live handles; `spec` null or valid; `out` null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_inner_product(
    a: *const MlcWavefunction,
    b: *const MlcWavefunction,
    spec: *const MlcQuadSpec,
    out: *mut MlcIntegral,
) -> MlcStatus {
    guard(out, || {
        quadrature::inner_product(wf_ref(a)?, wf_ref(b)?, &quad_spec(spec)?).map(Into::into)
    })
}

/// # Safety
/// `wf` must be a live handle; `spec` null or valid; `out` null or valid
/// for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_measure_integral(
    wf: *const MlcWavefunction,
    spec: *const MlcQuadSpec,
    out: *mut MlcIntegral,
) -> MlcStatus {
    guard(out, || {
        quadrature::measure_integral(wf_ref(wf)?, &quad_spec(spec)?).map(Into::into)
    })
}

/// `<(1/X) a | b> - <a | (1/X) b>`.
///
/// # Safety
/// `a`, `b` must be live handles; `spec` null or valid; `out` null or
/// valid for writes.
#[no_mangle]
pub unsafe extern "C" fn mlc_hermiticity_defect(
    a: *const MlcWavefunction,
    b: *const MlcWavefunction,
    spec: *const MlcQuadSpec,
    out: *mut MlcIntegral,
) -> MlcStatus {
    guard(out, || {
        quadrature::hermiticity_defect(wf_ref(a)?, wf_ref(b)?, &quad_spec(spec)?)
            .map(|r| r.defect.into())
    })
}
