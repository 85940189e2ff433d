//! Separable, spherically symmetric motions of scale-invariant elastic
//! balls surrounded by vacuum.
//!
//! A homogeneous isotropic hyperelastic material with stored energy
//! `W(F) = (det F)^{h/3} f(λ₁/λ₂)` admits motions that factor into a fixed
//! radial shape and a scalar amplitude, `x(t, X) = a(t) φ(|X|) X/|X|`.
//! This crate computes all three ingredients and assembles them:
//!
//! - [`constitutive`] — shear profiles `f`, admissibility checks, the
//!   balance coefficients `U₁, U₂`, boundary traction `g` and its root
//!   `u₀`, stress evaluation, and the phase-plane classification of
//!   stretch invariants;
//! - [`eigensolver`] — the nonlinear radial eigenvalue problem for
//!   `(φ, μ)` on the unit ball with a traction-free boundary, solved by a
//!   contraction fixed point nested inside an eigenvalue bisection;
//! - [`dynamics`] — the amplitude equation `ä = μ a^{h-1}`: adaptive
//!   Runge–Kutta integration, collapse detection, and the closed-form
//!   collapse-time quadrature;
//! - [`motion`] — consistency-checked assembly of material, profile and
//!   amplitude into an evaluable space-time motion;
//! - [`io`] — strict JSON documents for materials and solutions plus CSV
//!   emission of time series;
//! - [`quadrature`] — the uniform-grid product-integration rules that make
//!   the near-origin operators of the eigensolver fourth-order accurate.
//!
//! The exponent window matters throughout: compressions stiffen the
//! material only when `h ∉ [0, 3]`, collapse motions live at `h > 3` with
//! `μ < 0`, and expansion motions at `h < 0` with `μ > 0`.

pub mod constitutive;
pub mod dynamics;
pub mod eigensolver;
pub mod io;
pub mod motion;
pub mod quadrature;

pub use constitutive::{MaterialModel, ModelError, ShearFunction, ValidationReport};
pub use dynamics::{
    classify_regime, collapse_time, energy, integrate, DynamicsError, IntegrateOptions, Regime,
    ScaleState, ScaleTrajectory,
};
pub use eigensolver::{
    eigenvalue_solve, picard_solve, verify_solution, EigenSolution, RadialGrid, RadialProfile,
    SolveError, SolveOptions, VerifyReport,
};
pub use io::{IoError, LoadModelError, ModelDoc, ShearDoc, SolutionDoc};
pub use motion::{MotionError, MotionSample, SeparableMotion};
