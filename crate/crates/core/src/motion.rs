//! Assembly of full separable motions.
//!
//! A separable motion factors as `x(t, X) = a(t) φ(R) ω(R)` with `R = |X|`
//! and `ω = X/R`: the radial eigenprofile `φ` fixes the shape, the scalar
//! amplitude `a` carries all time dependence, and the eigenvalue `μ` ties
//! the two together.  [`SeparableMotion::assemble`] enforces that coupling —
//! the trajectory must have been integrated with exactly the eigenvalue the
//! profile was solved for, in the regime the exponent dictates — and then
//! offers evaluation anywhere in space-time by cubic interpolation (Hermite
//! in time through the sampled states, Lagrange in radius through the grid
//! profile).

use crate::constitutive::{MaterialModel, ModelError};
use crate::dynamics::{classify_regime, Regime, ScaleState, ScaleTrajectory};
use crate::eigensolver::EigenSolution;
use thiserror::Error;

/// Failures when combining the three ingredients of a separable motion.
#[derive(Debug, Error)]
pub enum MotionError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("trajectory was integrated for mu = {trajectory}, eigenprofile solved mu = {eigen}")]
    MuMismatch { eigen: f64, trajectory: f64 },
    #[error("trajectory exponent h = {trajectory} differs from the model's h = {model}")]
    ExponentMismatch { model: f64, trajectory: f64 },
    #[error("trajectory regime {trajectory} contradicts the regime {expected} implied by (h, mu)")]
    RegimeMismatch {
        expected: Regime,
        trajectory: Regime,
    },
    #[error(
        "eigenvalue inconsistency: |epsilon (kappa + beta) - mu| = {gap} exceeds {tol} \
         (epsilon = {epsilon}, mu = {mu})"
    )]
    EigenvalueInconsistent {
        epsilon: f64,
        mu: f64,
        gap: f64,
        tol: f64,
    },
    #[error("time {t} outside the integrated range [0, {t_max}]")]
    TimeOutOfRange { t: f64, t_max: f64 },
    #[error("radius {r} outside the reference ball [0, 1]")]
    RadiusOutOfRange { r: f64 },
    #[error("direction must be a unit vector, got |omega| = {norm}")]
    NotUnitDirection { norm: f64 },
}

/// Tolerance on `|ε(κ+β) - μ|` in [`SeparableMotion::assemble`].
pub const EIGENVALUE_CONSISTENCY_TOL: f64 = 1e-12;

/// Pointwise state of the motion at `(t, r)`.
#[derive(Debug, Clone, Copy)]
pub struct MotionSample {
    pub t: f64,
    pub r: f64,
    /// Radial position `a(t) φ(r)` of the material sphere of radius `r`.
    pub position: f64,
    /// Radial velocity `ȧ(t) φ(r)`.
    pub velocity: f64,
    /// Density of the time-frozen profile, `1/v(r)` (reference density 1).
    pub rho_material: f64,
    /// Current density `1/(a³ v(r))`.
    pub rho_spatial: f64,
}

/// A fully assembled separable motion.
#[derive(Debug, Clone)]
pub struct SeparableMotion {
    model: MaterialModel,
    eigen: EigenSolution,
    trajectory: ScaleTrajectory,
}

impl SeparableMotion {
    /// Combines material, eigenprofile and amplitude trajectory, rejecting
    /// any mismatch between them:
    ///
    /// - the trajectory's `(h, μ)` must equal the model's exponent and the
    ///   profile's eigenvalue bit-for-bit (no "close enough" here — both
    ///   must come from the same solve);
    /// - the trajectory's regime must be the one `(h, μ)` dictates;
    /// - `ε(κ+β)` must reproduce `μ` within
    ///   [`EIGENVALUE_CONSISTENCY_TOL`].
    pub fn assemble(
        model: MaterialModel,
        eigen: EigenSolution,
        trajectory: ScaleTrajectory,
    ) -> Result<Self, MotionError> {
        model.require_admissible()?;
        if trajectory.mu != eigen.mu {
            return Err(MotionError::MuMismatch {
                eigen: eigen.mu,
                trajectory: trajectory.mu,
            });
        }
        if trajectory.h != model.h() {
            return Err(MotionError::ExponentMismatch {
                model: model.h(),
                trajectory: trajectory.h,
            });
        }
        let expected =
            classify_regime(model.h(), eigen.mu).map_err(|_| MotionError::RegimeMismatch {
                expected: trajectory.regime,
                trajectory: trajectory.regime,
            })?;
        if expected != trajectory.regime {
            return Err(MotionError::RegimeMismatch {
                expected,
                trajectory: trajectory.regime,
            });
        }
        let kappa_beta = model.kappa() + model.beta();
        let gap = (eigen.epsilon * kappa_beta - eigen.mu).abs();
        if gap > EIGENVALUE_CONSISTENCY_TOL {
            return Err(MotionError::EigenvalueInconsistent {
                epsilon: eigen.epsilon,
                mu: eigen.mu,
                gap,
                tol: EIGENVALUE_CONSISTENCY_TOL,
            });
        }
        Ok(Self {
            model,
            eigen,
            trajectory,
        })
    }

    pub fn model(&self) -> &MaterialModel {
        &self.model
    }

    pub fn eigen(&self) -> &EigenSolution {
        &self.eigen
    }

    pub fn trajectory(&self) -> &ScaleTrajectory {
        &self.trajectory
    }

    /// Final integrated time.
    pub fn t_max(&self) -> f64 {
        self.trajectory
            .samples
            .last()
            .expect("trajectory is never empty")
            .t
    }

    /// Amplitude state at `t` by cubic Hermite interpolation through the
    /// integrator samples (`ȧ` interpolated with slopes `ä = μ a^{h-1}`).
    pub fn scale_at(&self, t: f64) -> Result<ScaleState, MotionError> {
        let samples = &self.trajectory.samples;
        let t_max = self.t_max();
        if !(t.is_finite() && (0.0..=t_max).contains(&t)) {
            return Err(MotionError::TimeOutOfRange { t, t_max });
        }
        let idx = samples.partition_point(|s| s.t <= t);
        if idx == samples.len() {
            return Ok(*samples.last().unwrap());
        }
        let left = samples[idx - 1];
        let right = samples[idx];
        let dt = right.t - left.t;
        if dt <= 0.0 {
            return Ok(left);
        }
        let s = (t - left.t) / dt;
        let accel = |state: &ScaleState| self.trajectory.mu * state.a.powf(self.trajectory.h - 1.0);
        let a = hermite(s, dt, left.a, left.adot, right.a, right.adot);
        let adot = hermite(s, dt, left.adot, accel(&left), right.adot, accel(&right));
        Ok(ScaleState { t, a, adot })
    }

    /// Profile displacement `φ(r)` by cubic Lagrange interpolation on the
    /// solver grid.
    pub fn profile_phi(&self, r: f64) -> Result<f64, MotionError> {
        self.interp_profile(r, |i| self.eigen.profile.phi(i))
    }

    /// Profile volume ratio `v(r)` by cubic Lagrange interpolation.
    pub fn profile_v(&self, r: f64) -> Result<f64, MotionError> {
        self.interp_profile(r, |i| self.eigen.profile.v()[i])
    }

    fn interp_profile<F: Fn(usize) -> f64>(&self, r: f64, field: F) -> Result<f64, MotionError> {
        if !(r.is_finite() && (0.0..=1.0).contains(&r)) {
            return Err(MotionError::RadiusOutOfRange { r });
        }
        let grid = self.eigen.profile.grid();
        let n = grid.n();
        let x = r * n as f64;
        let j = (x.floor() as usize).min(n - 1);
        let base = j.saturating_sub(1).min(n - 3);
        let mut value = 0.0;
        for k in 0..4 {
            let xk = (base + k) as f64;
            let mut basis = 1.0;
            for m in 0..4 {
                if m != k {
                    let xm = (base + m) as f64;
                    basis *= (x - xm) / (xk - xm);
                }
            }
            value += basis * field(base + k);
        }
        Ok(value)
    }

    /// Full state of the motion at `(t, r)`.
    pub fn sample(&self, t: f64, r: f64) -> Result<MotionSample, MotionError> {
        let state = self.scale_at(t)?;
        let phi = self.profile_phi(r)?;
        let v = self.profile_v(r)?;
        Ok(MotionSample {
            t,
            r,
            position: state.a * phi,
            velocity: state.adot * phi,
            rho_material: 1.0 / v,
            rho_spatial: 1.0 / (state.a.powi(3) * v),
        })
    }

    /// Outer radius `a(t) φ(1)` at every trajectory sample.
    pub fn radius_series(&self) -> Vec<f64> {
        let phi1 = self.eigen.profile.phi_boundary();
        self.trajectory.samples.iter().map(|s| s.a * phi1).collect()
    }

    /// Largest boundary traction over the trajectory: the residual radial
    /// stress `|∂W/∂λ₁|` of the scaled stretches `(a λ₁(1), a λ₂(1))`,
    /// which equals `a^{h-1} |L₁(λ₁(1), λ₂(1))|` by homogeneity.
    pub fn boundary_stress_residual(&self) -> f64 {
        let l1 = self.eigen.profile.lambda1().last().copied().unwrap();
        let l2 = self.eigen.profile.lambda2().last().copied().unwrap();
        let base = self.model.lagrangian(l1, l2).d1.abs();
        let h = self.model.h();
        self.trajectory
            .samples
            .iter()
            .map(|s| s.a.powf(h - 1.0) * base)
            .fold(0.0f64, f64::max)
    }
}

/// Cubic Hermite basis on `s ∈ [0, 1]` with interval length `dt`.
fn hermite(s: f64, dt: f64, y0: f64, d0: f64, y1: f64, d1: f64) -> f64 {
    let s2 = s * s;
    let s3 = s2 * s;
    (2.0 * s3 - 3.0 * s2 + 1.0) * y0
        + (s3 - 2.0 * s2 + s) * dt * d0
        + (-2.0 * s3 + 3.0 * s2) * y1
        + (s3 - s2) * dt * d1
}

/// Deformation gradient of the separable motion at a material point with
/// unit direction `ω` and profile stretches `(λ₁, λ₂)` scaled by amplitude
/// `a`:
///
/// ```text
/// F = a λ₂ I + a (λ₁ - λ₂) ω ⊗ ω.
/// ```
pub fn deformation_gradient(
    a: f64,
    lambda1: f64,
    lambda2: f64,
    omega: [f64; 3],
) -> Result<[[f64; 3]; 3], MotionError> {
    let norm = (omega[0] * omega[0] + omega[1] * omega[1] + omega[2] * omega[2]).sqrt();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(MotionError::NotUnitDirection { norm });
    }
    let iso = a * lambda2;
    let aniso = a * (lambda1 - lambda2);
    let mut f = [[0.0; 3]; 3];
    for (i, row) in f.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = aniso * omega[i] * omega[j] + if i == j { iso } else { 0.0 };
        }
    }
    Ok(f)
}
