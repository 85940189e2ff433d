//! C ABI for the separable-motion solver.
//!
//! Every function returns a status code from the `SEPELAST_*` family and
//! hands results back through out-pointers; heap objects cross the boundary
//! as opaque handles with dedicated `*_free` functions.  All entry points
//! catch panics and report them as [`SEPELAST_STATUS_PANIC`] instead of
//! unwinding into the caller.

use sepelast::constitutive::ModelError;
use sepelast::dynamics::DynamicsError;
use sepelast::eigensolver::SolveError;
use sepelast::{
    collapse_time, eigenvalue_solve, integrate, EigenSolution, IntegrateOptions, MaterialModel,
    ScaleTrajectory, SolveOptions,
};
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Success.
pub const SEPELAST_STATUS_OK: i32 = 0;
/// Malformed document or string input.
pub const SEPELAST_STATUS_PARSE: i32 = 1;
/// Ill-formed or inadmissible material.
pub const SEPELAST_STATUS_MODEL: i32 = 2;
/// Shear modulus too small for the exponent: no traction root in reach.
pub const SEPELAST_STATUS_SHEAR: i32 = 3;
/// Solver failure (bracket, divergence, no convergence).
pub const SEPELAST_STATUS_SOLVER: i32 = 4;
/// Parameters outside the separable regimes.
pub const SEPELAST_STATUS_REGIME: i32 = 5;
/// Null pointer or out-of-range argument.
pub const SEPELAST_STATUS_INVALID_ARGUMENT: i32 = 6;
/// Internal panic caught at the boundary.
pub const SEPELAST_STATUS_PANIC: i32 = 7;

/// Opaque material model handle.
pub struct SepelastModel(MaterialModel);

/// Opaque solved eigenprofile handle.
pub struct SepelastSolution(EigenSolution);

/// Opaque amplitude trajectory handle.
pub struct SepelastTrajectory(ScaleTrajectory);

fn model_status(e: &ModelError) -> i32 {
    match e {
        ModelError::ShearTooSmall { .. } => SEPELAST_STATUS_SHEAR,
        _ => SEPELAST_STATUS_MODEL,
    }
}

fn solve_status(e: &SolveError) -> i32 {
    match e {
        SolveError::Model(m) => model_status(m),
        SolveError::InvalidGrid { .. } => SEPELAST_STATUS_INVALID_ARGUMENT,
        _ => SEPELAST_STATUS_SOLVER,
    }
}

fn dynamics_status(e: &DynamicsError) -> i32 {
    match e {
        DynamicsError::NonFinite { .. }
        | DynamicsError::NonPositiveAmplitude { .. }
        | DynamicsError::InvalidHorizon { .. } => SEPELAST_STATUS_INVALID_ARGUMENT,
        DynamicsError::NotSeparableRegime { .. } | DynamicsError::NotCollapseRegime { .. } => {
            SEPELAST_STATUS_REGIME
        }
        _ => SEPELAST_STATUS_SOLVER,
    }
}

fn guarded<F: FnOnce() -> i32>(body: F) -> i32 {
    catch_unwind(AssertUnwindSafe(body)).unwrap_or(SEPELAST_STATUS_PANIC)
}

/// Builds a material with quadratic shear profile `1 + (b/2)(u-1)²`.
///
/// # Safety
///
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn sepelast_model_new_quadratic(
    h: f64,
    b: f64,
    m: f64,
    out: *mut *mut SepelastModel,
) -> i32 {
    guarded(|| {
        if out.is_null() {
            return SEPELAST_STATUS_INVALID_ARGUMENT;
        }
        match MaterialModel::quadratic(h, b, m) {
            Ok(model) => {
                unsafe { *out = Box::into_raw(Box::new(SepelastModel(model))) };
                SEPELAST_STATUS_OK
            }
            Err(e) => model_status(&e),
        }
    })
}

/// Builds a material from a model JSON document (same schema as the CLI).
///
/// # Safety
///
/// `json` must be a valid NUL-terminated string and `out` a valid pointer
/// to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn sepelast_model_from_json(
    json: *const c_char,
    out: *mut *mut SepelastModel,
) -> i32 {
    guarded(|| {
        if json.is_null() || out.is_null() {
            return SEPELAST_STATUS_INVALID_ARGUMENT;
        }
        let text = match unsafe { CStr::from_ptr(json) }.to_str() {
            Ok(t) => t,
            Err(_) => return SEPELAST_STATUS_PARSE,
        };
        let doc: sepelast::ModelDoc = match serde_json_from_str(text) {
            Ok(d) => d,
            Err(status) => return status,
        };
        match doc.build() {
            Ok(model) => {
                unsafe { *out = Box::into_raw(Box::new(SepelastModel(model))) };
                SEPELAST_STATUS_OK
            }
            Err(sepelast::LoadModelError::Io(_)) => SEPELAST_STATUS_PARSE,
            Err(sepelast::LoadModelError::Model(e)) => model_status(&e),
        }
    })
}

fn serde_json_from_str(text: &str) -> Result<sepelast::ModelDoc, i32> {
    sepelast::io::parse_model_doc(text).map_err(|_| SEPELAST_STATUS_PARSE)
}

/// Frees a model handle.  Passing NULL is a no-op.
///
/// # Safety
///
/// `model` must be NULL or a pointer obtained from a `sepelast_model_*`
/// constructor that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn sepelast_model_free(model: *mut SepelastModel) {
    if !model.is_null() {
        drop(unsafe { Box::from_raw(model) });
    }
}

/// Volumetric exponent `h`.
///
/// # Safety
///
/// `model` must be a live model handle; NULL yields NaN.
#[no_mangle]
pub unsafe extern "C" fn sepelast_model_h(model: *const SepelastModel) -> f64 {
    if model.is_null() {
        return f64::NAN;
    }
    unsafe { &*model }.0.h()
}

/// Compression modulus `κ = (h/3)(h/3 - 1)`.
///
/// # Safety
///
/// `model` must be a live model handle; NULL yields NaN.
#[no_mangle]
pub unsafe extern "C" fn sepelast_model_kappa(model: *const SepelastModel) -> f64 {
    if model.is_null() {
        return f64::NAN;
    }
    unsafe { &*model }.0.kappa()
}

/// Shear curvature `β = f''(1)`.
///
/// # Safety
///
/// `model` must be a live model handle; NULL yields NaN.
#[no_mangle]
pub unsafe extern "C" fn sepelast_model_beta(model: *const SepelastModel) -> f64 {
    if model.is_null() {
        return f64::NAN;
    }
    unsafe { &*model }.0.beta()
}

/// Working-tube radius `δ`.
///
/// # Safety
///
/// `model` must be a live model handle; NULL yields NaN.
#[no_mangle]
pub unsafe extern "C" fn sepelast_model_delta(model: *const SepelastModel) -> f64 {
    if model.is_null() {
        return f64::NAN;
    }
    unsafe { &*model }.0.delta()
}

/// Checks admissibility; returns OK or MODEL.
///
/// # Safety
///
/// `model` must be a live model handle.
#[no_mangle]
pub unsafe extern "C" fn sepelast_model_validate(model: *const SepelastModel) -> i32 {
    guarded(|| {
        if model.is_null() {
            return SEPELAST_STATUS_INVALID_ARGUMENT;
        }
        if unsafe { &*model }.0.validate().is_admissible() {
            SEPELAST_STATUS_OK
        } else {
            SEPELAST_STATUS_MODEL
        }
    })
}

/// Solves the radial eigenvalue problem on a grid with `grid_n` intervals
/// (pass 0 for the default resolution).
///
/// # Safety
///
/// `model` must be a live model handle and `out` a valid pointer to
/// writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn sepelast_solve(
    model: *const SepelastModel,
    grid_n: usize,
    out: *mut *mut SepelastSolution,
) -> i32 {
    guarded(|| {
        if model.is_null() || out.is_null() {
            return SEPELAST_STATUS_INVALID_ARGUMENT;
        }
        let opts = SolveOptions {
            grid_n: if grid_n == 0 { 2048 } else { grid_n },
            ..Default::default()
        };
        match eigenvalue_solve(&unsafe { &*model }.0, &opts) {
            Ok(solution) => {
                unsafe { *out = Box::into_raw(Box::new(SepelastSolution(solution))) };
                SEPELAST_STATUS_OK
            }
            Err(e) => solve_status(&e),
        }
    })
}

/// Frees a solution handle.  Passing NULL is a no-op.
///
/// # Safety
///
/// `solution` must be NULL or a pointer obtained from [`sepelast_solve`]
/// that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn sepelast_solution_free(solution: *mut SepelastSolution) {
    if !solution.is_null() {
        drop(unsafe { Box::from_raw(solution) });
    }
}

/// Normalised eigenvalue `ε = μ/(κ+β)`.
///
/// # Safety
///
/// `solution` must be a live solution handle; NULL yields NaN.
#[no_mangle]
pub unsafe extern "C" fn sepelast_solution_epsilon(solution: *const SepelastSolution) -> f64 {
    if solution.is_null() {
        return f64::NAN;
    }
    unsafe { &*solution }.0.epsilon
}

/// Eigenvalue `μ`.
///
/// # Safety
///
/// `solution` must be a live solution handle; NULL yields NaN.
#[no_mangle]
pub unsafe extern "C" fn sepelast_solution_mu(solution: *const SepelastSolution) -> f64 {
    if solution.is_null() {
        return f64::NAN;
    }
    unsafe { &*solution }.0.mu
}

/// Traction root `u₀` targeted at the boundary.
///
/// # Safety
///
/// `solution` must be a live solution handle; NULL yields NaN.
#[no_mangle]
pub unsafe extern "C" fn sepelast_solution_u0(solution: *const SepelastSolution) -> f64 {
    if solution.is_null() {
        return f64::NAN;
    }
    unsafe { &*solution }.0.u0
}

/// Boundary stretch ratio `u(1)` of the solved profile.
///
/// # Safety
///
/// `solution` must be a live solution handle; NULL yields NaN.
#[no_mangle]
pub unsafe extern "C" fn sepelast_solution_u_boundary(solution: *const SepelastSolution) -> f64 {
    if solution.is_null() {
        return f64::NAN;
    }
    unsafe { &*solution }.0.u_boundary
}

/// Sup norm of the strong-form residual.
///
/// # Safety
///
/// `solution` must be a live solution handle; NULL yields NaN.
#[no_mangle]
pub unsafe extern "C" fn sepelast_solution_residual_sup(solution: *const SepelastSolution) -> f64 {
    if solution.is_null() {
        return f64::NAN;
    }
    unsafe { &*solution }.0.residual_sup
}

/// Number of grid nodes of the solved profile (`grid_n + 1`).
///
/// # Safety
///
/// `solution` must be a live solution handle; NULL yields 0.
#[no_mangle]
pub unsafe extern "C" fn sepelast_solution_len(solution: *const SepelastSolution) -> usize {
    if solution.is_null() {
        return 0;
    }
    unsafe { &*solution }.0.profile.zeta().len()
}

/// Copies the curvature density `ζ` into `buffer` (`len` must be at least
/// [`sepelast_solution_len`]).
///
/// # Safety
///
/// `solution` must be a live solution handle and `buffer` must point to at
/// least `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn sepelast_solution_zeta(
    solution: *const SepelastSolution,
    buffer: *mut f64,
    len: usize,
) -> i32 {
    guarded(|| {
        if solution.is_null() || buffer.is_null() {
            return SEPELAST_STATUS_INVALID_ARGUMENT;
        }
        let zeta = unsafe { &*solution }.0.profile.zeta();
        if len < zeta.len() {
            return SEPELAST_STATUS_INVALID_ARGUMENT;
        }
        unsafe { ptr::copy_nonoverlapping(zeta.as_ptr(), buffer, zeta.len()) };
        SEPELAST_STATUS_OK
    })
}

/// Integrates the amplitude equation from `(a0, adot0)` until `t_end` or
/// collapse.
///
/// # Safety
///
/// `out` must be a valid pointer to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn sepelast_integrate(
    h: f64,
    mu: f64,
    a0: f64,
    adot0: f64,
    t_end: f64,
    out: *mut *mut SepelastTrajectory,
) -> i32 {
    guarded(|| {
        if out.is_null() {
            return SEPELAST_STATUS_INVALID_ARGUMENT;
        }
        match integrate(h, mu, a0, adot0, t_end, &IntegrateOptions::default()) {
            Ok(trajectory) => {
                unsafe { *out = Box::into_raw(Box::new(SepelastTrajectory(trajectory))) };
                SEPELAST_STATUS_OK
            }
            Err(e) => dynamics_status(&e),
        }
    })
}

/// Frees a trajectory handle.  Passing NULL is a no-op.
///
/// # Safety
///
/// `trajectory` must be NULL or a pointer obtained from
/// [`sepelast_integrate`] that has not been freed yet.
#[no_mangle]
pub unsafe extern "C" fn sepelast_trajectory_free(trajectory: *mut SepelastTrajectory) {
    if !trajectory.is_null() {
        drop(unsafe { Box::from_raw(trajectory) });
    }
}

/// Number of sampled states.
///
/// # Safety
///
/// `trajectory` must be a live trajectory handle; NULL yields 0.
#[no_mangle]
pub unsafe extern "C" fn sepelast_trajectory_len(trajectory: *const SepelastTrajectory) -> usize {
    if trajectory.is_null() {
        return 0;
    }
    unsafe { &*trajectory }.0.samples.len()
}

/// Reads sample `index` into `(t, a, adot)`.
///
/// # Safety
///
/// `trajectory` must be a live trajectory handle; `t`, `a` and `adot` must
/// be valid pointers to writable doubles.
#[no_mangle]
pub unsafe extern "C" fn sepelast_trajectory_sample(
    trajectory: *const SepelastTrajectory,
    index: usize,
    t: *mut f64,
    a: *mut f64,
    adot: *mut f64,
) -> i32 {
    guarded(|| {
        if trajectory.is_null() || t.is_null() || a.is_null() || adot.is_null() {
            return SEPELAST_STATUS_INVALID_ARGUMENT;
        }
        let samples = &unsafe { &*trajectory }.0.samples;
        let Some(sample) = samples.get(index) else {
            return SEPELAST_STATUS_INVALID_ARGUMENT;
        };
        unsafe {
            *t = sample.t;
            *a = sample.a;
            *adot = sample.adot;
        }
        SEPELAST_STATUS_OK
    })
}

/// Collapse time of the trajectory; REGIME status when it did not collapse.
///
/// # Safety
///
/// `trajectory` must be a live trajectory handle and `tau` a valid pointer
/// to a writable double.
#[no_mangle]
pub unsafe extern "C" fn sepelast_trajectory_tau(
    trajectory: *const SepelastTrajectory,
    tau: *mut f64,
) -> i32 {
    guarded(|| {
        if trajectory.is_null() || tau.is_null() {
            return SEPELAST_STATUS_INVALID_ARGUMENT;
        }
        match unsafe { &*trajectory }.0.tau {
            Some(value) => {
                unsafe { *tau = value };
                SEPELAST_STATUS_OK
            }
            None => SEPELAST_STATUS_REGIME,
        }
    })
}

/// Closed-form collapse time for `(h, mu, a0, adot0)`.
///
/// # Safety
///
/// `tau` must be a valid pointer to a writable double.
#[no_mangle]
pub unsafe extern "C" fn sepelast_collapse_time(
    h: f64,
    mu: f64,
    a0: f64,
    adot0: f64,
    tau: *mut f64,
) -> i32 {
    guarded(|| {
        if tau.is_null() {
            return SEPELAST_STATUS_INVALID_ARGUMENT;
        }
        match collapse_time(h, mu, a0, adot0) {
            Ok(value) => {
                unsafe { *tau = value };
                SEPELAST_STATUS_OK
            }
            Err(e) => dynamics_status(&e),
        }
    })
}
