//! Radial eigenvalue problem on the unit ball.
//!
//! The displacement profile is sought in the form `φ(r) = r + (Kζ)(r)` with
//! `(Kζ)(r) = ∫₀^r (r - ρ) ρ ζ(ρ) dρ`, which turns the second-order radial
//! balance with a traction-free boundary into the fixed-point problem
//!
//! ```text
//! ζ = L⁻¹ F(ζ, ε),      (Lζ)(r)   = ζ(r) + (2/r³) ∫₀^r ρ² ζ dρ,
//!                       F(ζ, ε)(r) = V₁(u(r)) (1/r³) ∫₀^r ρ² ζ dρ
//!                                    + ε v(r)^{1 - h/3} V₂(u(r)),
//! ```
//!
//! where `ε = μ / (κ + β)` is the normalised eigenvalue.  For each `ε` the
//! map contracts on a ball of radius `R`, and [`picard_solve`] iterates it
//! to a profile `ζ^ε`.  [`eigenvalue_solve`] then bisects `ε` until the
//! boundary stretch ratio `u(1)` hits the traction root `u₀`, which is the
//! free-boundary condition in disguise.
//!
//! All running integrals sit on a uniform grid and use the weighted
//! product-integration rule from [`crate::quadrature`], so operator
//! identities hold exactly for low-degree polynomial profiles and to
//! uniform fourth order otherwise.

use crate::constitutive::{MaterialModel, ModelError};
use crate::quadrature::{cumulative_power_weighted, simpson};
use thiserror::Error;

/// Failures of the radial solver.
#[derive(Debug, Error)]
pub enum SolveError {
    /// Constitutive failure bubbled up from coefficient evaluation.
    #[error(transparent)]
    Model(#[from] ModelError),
    /// Grid construction rejected the node count.
    #[error("invalid grid: n = {n} must be even and at least {min}")]
    InvalidGrid { n: usize, min: usize },
    /// `|ε|` exceeded the working-tube radius.
    #[error("epsilon = {epsilon} outside the admissible ball |epsilon| <= {radius}")]
    EpsilonOutOfRange { epsilon: f64, radius: f64 },
    /// A profile left the working tube `|u - 1| ≤ δ`.
    #[error("iterate left the working tube: |u({r}) - 1| = {excess} > delta = {delta}")]
    TubeViolation { r: f64, excess: f64, delta: f64 },
    /// Successive Picard differences grew three times in a row.
    #[error("fixed-point iteration diverged at epsilon = {epsilon} after {iterations} sweeps")]
    Divergence { epsilon: f64, iterations: usize },
    /// The iteration failed to meet the tolerance within the sweep budget.
    #[error(
        "fixed-point iteration did not reach tol = {tol} in {max_sweeps} sweeps \
         (last difference {last_delta})"
    )]
    NoConvergence {
        tol: f64,
        max_sweeps: usize,
        last_delta: f64,
    },
    /// The endpoint profiles do not straddle the boundary target.
    #[error(
        "bisection bracket failure: z(-R) = {z_low}, z(R) = {z_high} do not \
         straddle u0 - 1 = {target} (R = {radius})"
    )]
    BracketFailure {
        z_low: f64,
        z_high: f64,
        target: f64,
        radius: f64,
    },
}

/// Uniform grid `r_i = i / n` on `[0, 1]`.
///
/// The node count must be even (the verification integrals use composite
/// Simpson) and large enough for the four-point quadrature stencils.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RadialGrid {
    n: usize,
}

impl RadialGrid {
    pub const MIN_INTERVALS: usize = 8;

    pub fn new(n: usize) -> Result<Self, SolveError> {
        if n < Self::MIN_INTERVALS || !n.is_multiple_of(2) {
            return Err(SolveError::InvalidGrid {
                n,
                min: Self::MIN_INTERVALS,
            });
        }
        Ok(Self { n })
    }

    /// Number of intervals; there are `n + 1` nodes.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Node coordinate `r_i = i / n`.
    pub fn node(&self, i: usize) -> f64 {
        i as f64 / self.n as f64
    }
}

impl Default for RadialGrid {
    /// Production resolution used by the command-line driver.
    fn default() -> Self {
        Self { n: 2048 }
    }
}

/// A radial profile: the curvature density `ζ` together with every field
/// derived from it through the ansatz `φ = r + Kζ`.
///
/// With `A(r) = ∫₀^r ρ ζ dρ` and `B(r) = ∫₀^r ρ² ζ dρ`:
///
/// ```text
/// λ₁ = φ' = 1 + A(r),        λ₂ = φ/r = 1 + A(r) - B(r)/r,
/// λ₁ - λ₂ = B(r)/r,          φ'' = r ζ(r),
/// u = λ₁/λ₂,                 v = λ₁ λ₂².
/// ```
#[derive(Debug, Clone)]
pub struct RadialProfile {
    grid: RadialGrid,
    zeta: Vec<f64>,
    lambda1: Vec<f64>,
    lambda2: Vec<f64>,
    u: Vec<f64>,
    v: Vec<f64>,
    /// Cached running integral `B(r_i) = ∫₀^{r_i} ρ² ζ dρ`.
    weighted2: Vec<f64>,
}

impl RadialProfile {
    /// Reconstructs all derived fields from `ζ`, enforcing the working tube
    /// `|u - 1| ≤ δ` (and `‖ζ‖∞ ≤ δ` as its sufficient precondition is not
    /// required here — only the resulting stretch ratio matters).
    pub fn from_zeta(grid: RadialGrid, zeta: Vec<f64>, delta: f64) -> Result<Self, SolveError> {
        assert_eq!(zeta.len(), grid.n() + 1, "zeta length must match the grid");
        let weighted1 = cumulative_power_weighted(1, &zeta);
        let weighted2 = cumulative_power_weighted(2, &zeta);
        let n = grid.n();
        let mut lambda1 = Vec::with_capacity(n + 1);
        let mut lambda2 = Vec::with_capacity(n + 1);
        let mut u = Vec::with_capacity(n + 1);
        let mut v = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let l1 = 1.0 + weighted1[i];
            let l2 = if i == 0 {
                1.0
            } else {
                1.0 + weighted1[i] - weighted2[i] / grid.node(i)
            };
            let ui = l1 / l2;
            let excess = (ui - 1.0).abs();
            // NaN must fail the tube check, hence the explicit second clause.
            if excess > delta + 1e-12 || excess.is_nan() {
                return Err(SolveError::TubeViolation {
                    r: grid.node(i),
                    excess,
                    delta,
                });
            }
            lambda1.push(l1);
            lambda2.push(l2);
            u.push(ui);
            v.push(l1 * l2 * l2);
        }
        Ok(Self {
            grid,
            zeta,
            lambda1,
            lambda2,
            u,
            v,
            weighted2,
        })
    }

    pub fn grid(&self) -> RadialGrid {
        self.grid
    }

    pub fn zeta(&self) -> &[f64] {
        &self.zeta
    }

    pub fn lambda1(&self) -> &[f64] {
        &self.lambda1
    }

    pub fn lambda2(&self) -> &[f64] {
        &self.lambda2
    }

    /// Stretch ratio `u = λ₁/λ₂` per node.
    pub fn u(&self) -> &[f64] {
        &self.u
    }

    /// Volume ratio `v = λ₁λ₂²` per node.
    pub fn v(&self) -> &[f64] {
        &self.v
    }

    /// Displacement `φ(r_i) = r_i λ₂(r_i)`.
    pub fn phi(&self, i: usize) -> f64 {
        self.grid.node(i) * self.lambda2[i]
    }

    /// Boundary stretch ratio `u(1)`.
    pub fn u_boundary(&self) -> f64 {
        *self.u.last().expect("profile is never empty")
    }

    /// Boundary displacement `φ(1) = λ₂(1)`.
    pub fn phi_boundary(&self) -> f64 {
        *self.lambda2.last().expect("profile is never empty")
    }

    /// Sup norm of `ζ`.
    pub fn zeta_sup(&self) -> f64 {
        self.zeta.iter().fold(0.0f64, |m, &z| m.max(z.abs()))
    }
}

/// The averaging operator `(Lζ)(r) = ζ(r) + (2/r³) ∫₀^r ρ² ζ dρ`, with the
/// continuous-limit value `(5/3) ζ(0)` at the origin.
pub fn apply_l(grid: RadialGrid, zeta: &[f64]) -> Vec<f64> {
    assert_eq!(zeta.len(), grid.n() + 1);
    let w2 = cumulative_power_weighted(2, zeta);
    (0..=grid.n())
        .map(|i| {
            if i == 0 {
                5.0 / 3.0 * zeta[0]
            } else {
                let r = grid.node(i);
                zeta[i] + 2.0 * w2[i] / (r * r * r)
            }
        })
        .collect()
}

/// The inverse `(L⁻¹η)(r) = η(r) - (2/r⁵) ∫₀^r ρ⁴ η dρ`, with value
/// `(3/5) η(0)` at the origin.  Constants map to `3c/5` exactly.
pub fn apply_l_inverse(grid: RadialGrid, eta: &[f64]) -> Vec<f64> {
    assert_eq!(eta.len(), grid.n() + 1);
    let w4 = cumulative_power_weighted(4, eta);
    (0..=grid.n())
        .map(|i| {
            if i == 0 {
                3.0 / 5.0 * eta[0]
            } else {
                let r = grid.node(i);
                eta[i] - 2.0 * w4[i] / (r * r * r * r * r)
            }
        })
        .collect()
}

/// Right-hand side `F(ζ, ε)` of the fixed-point equation evaluated on the
/// profile's grid.  The first factor `(1/r³) ∫₀^r ρ² ζ dρ` tends to
/// `ζ(0)/3` at the origin.
pub fn rhs_f(
    profile: &RadialProfile,
    model: &MaterialModel,
    epsilon: f64,
) -> Result<Vec<f64>, SolveError> {
    let n = profile.grid().n();
    let exponent = 1.0 - model.h() / 3.0;
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let kernel = if i == 0 {
            profile.zeta[0] / 3.0
        } else {
            let r = profile.grid().node(i);
            profile.weighted2[i] / (r * r * r)
        };
        let (v1, v2) = model.coefficients_v(profile.u[i])?;
        out.push(v1 * kernel + epsilon * profile.v[i].powf(exponent) * v2);
    }
    Ok(out)
}

/// Outcome of a converged Picard iteration.
#[derive(Debug, Clone)]
pub struct PicardOutcome {
    pub profile: RadialProfile,
    /// Number of completed sweeps.
    pub iterations: usize,
    /// Largest observed ratio of successive sup-norm differences; within
    /// the contraction regime this stays below 1/10.
    pub contraction_rate: f64,
    /// Final sup-norm difference between successive iterates.
    pub final_delta: f64,
}

/// Sweep budget of the fixed-point iteration.
pub const MAX_PICARD_SWEEPS: usize = 200;

/// Iterates `ζ ← L⁻¹ F(ζ, ε)` from `ζ ≡ 0` until the sup-norm difference of
/// successive iterates drops below `tol`.
///
/// Divergence (three consecutive growing differences) and sweeps beyond
/// [`MAX_PICARD_SWEEPS`] are reported as errors; the iterate leaving the
/// working tube is a [`SolveError::TubeViolation`].
pub fn picard_solve(
    model: &MaterialModel,
    grid: RadialGrid,
    epsilon: f64,
    tol: f64,
) -> Result<PicardOutcome, SolveError> {
    model.require_admissible()?;
    assert!(tol > 0.0, "tolerance must be positive");
    let delta = model.delta();
    // NaN must fail the range check, hence the explicit second clause.
    if epsilon.abs() > delta * (1.0 + 1e-12) || epsilon.is_nan() {
        return Err(SolveError::EpsilonOutOfRange {
            epsilon,
            radius: delta,
        });
    }

    let mut zeta = vec![0.0; grid.n() + 1];
    let mut prev_delta = f64::INFINITY;
    let mut growth_streak = 0usize;
    let mut rate: f64 = 0.0;

    for sweep in 1..=MAX_PICARD_SWEEPS {
        let profile = RadialProfile::from_zeta(grid, zeta, delta)?;
        let rhs = rhs_f(&profile, model, epsilon)?;
        let next = apply_l_inverse(grid, &rhs);
        let diff = next
            .iter()
            .zip(profile.zeta())
            .fold(0.0f64, |m, (&a, &b)| m.max((a - b).abs()));

        if prev_delta.is_finite() && prev_delta > 0.0 {
            rate = rate.max(diff / prev_delta);
            if diff > prev_delta {
                growth_streak += 1;
                if growth_streak >= 3 {
                    return Err(SolveError::Divergence {
                        epsilon,
                        iterations: sweep,
                    });
                }
            } else {
                growth_streak = 0;
            }
        }
        prev_delta = diff;
        zeta = next;

        if diff <= tol {
            let profile = RadialProfile::from_zeta(grid, zeta, delta)?;
            return Ok(PicardOutcome {
                profile,
                iterations: sweep,
                contraction_rate: rate,
                final_delta: diff,
            });
        }
    }
    Err(SolveError::NoConvergence {
        tol,
        max_sweeps: MAX_PICARD_SWEEPS,
        last_delta: prev_delta,
    })
}

/// Sup norm of the strong-form radial balance residual
///
/// ```text
/// U₁(u) φ'' + U₂(u) (1/r)(φ' - φ/r) - μ r v^{1 - h/3} u
/// ```
///
/// over the interior and boundary nodes (`φ'' = rζ`,
/// `(1/r)(φ' - φ/r) = (1/r²)∫₀^r ρ²ζ dρ`).  Fourth-order small for solved
/// profiles; zero at the origin by construction.
pub fn ode_residual(
    profile: &RadialProfile,
    model: &MaterialModel,
    mu: f64,
) -> Result<f64, SolveError> {
    let n = profile.grid().n();
    let exponent = 1.0 - model.h() / 3.0;
    let mut sup = 0.0f64;
    for i in 1..=n {
        let r = profile.grid().node(i);
        let (u1, u2) = model.coefficients_u(profile.u[i])?;
        let residual = u1 * r * profile.zeta[i] + u2 * profile.weighted2[i] / (r * r)
            - mu * r * profile.v[i].powf(exponent) * profile.u[i];
        sup = sup.max(residual.abs());
    }
    Ok(sup)
}

/// Options for [`eigenvalue_solve`].
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    /// Grid intervals (even, ≥ 64 in the CLI contract; default 2048).
    pub grid_n: usize,
    /// Stopping tolerance for stand-alone Picard solves.
    pub tol_picard: f64,
    /// Bisection stops once the `ε` interval is this narrow …
    pub tol_eps: f64,
    /// … and the boundary mismatch `|g(u(1))|` is below this.
    pub boundary_tol: f64,
    /// Budget for halving the trust radius on divergence.
    pub max_halvings: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            grid_n: 2048,
            tol_picard: 1e-12,
            tol_eps: 1e-12,
            boundary_tol: 1e-10,
            max_halvings: 8,
        }
    }
}

/// A converged solution of the radial eigenvalue problem.
#[derive(Debug, Clone)]
pub struct EigenSolution {
    /// Normalised eigenvalue `ε₀ = μ / (κ + β)`.
    pub epsilon: f64,
    /// Eigenvalue `μ` of the radial balance.
    pub mu: f64,
    pub profile: RadialProfile,
    /// Boundary stretch ratio `u(1)` of the solved profile.
    pub u_boundary: f64,
    /// Traction root `u₀` the boundary value was matched against.
    pub u0: f64,
    /// Trust radius `R` in force when the solution converged.
    pub radius: f64,
    /// Endpoint values `(u(1; -R) - 1, u(1; +R) - 1)` of the bisection
    /// bracket, reported so marginal brackets are visible to callers.
    pub bracket: (f64, f64),
    /// Sup norm of the strong-form residual at `(ζ, μ)`.
    pub residual_sup: f64,
    /// Contraction rate observed in the final fixed-point solve.
    pub contraction_rate: f64,
    /// Sweeps used by the final fixed-point solve.
    pub iterations: usize,
}

impl EigenSolution {
    /// Boundary traction mismatch `g(u(1))` for `model`.
    pub fn boundary_gap(&self, model: &MaterialModel) -> f64 {
        model.boundary_g(self.u_boundary)
    }
}

/// Solves the eigenvalue problem: bisects `ε ∈ [-R, R]` on
/// `z(ε) = u(1; ζ^ε) - 1` until the boundary value matches the traction
/// root `u₀` of the model.
///
/// The trust radius starts at `δ` and is halved (up to
/// `opts.max_halvings` times) whenever the endpoint fixed-point solves
/// diverge.  The endpoint values must satisfy the one-seventh bounds
/// `z(R) > R/7` and `z(-R) < -R/7` and straddle `u₀ - 1`; any violation is
/// reported as a bracket failure with both endpoint values.
pub fn eigenvalue_solve(
    model: &MaterialModel,
    opts: &SolveOptions,
) -> Result<EigenSolution, SolveError> {
    let grid = RadialGrid::new(opts.grid_n)?;
    let u0 = model.find_u0()?;
    let kappa_beta = model.kappa() + model.beta();
    let target = u0 - 1.0;

    // The bisection needs u(1) resolved below the boundary tolerance mapped
    // through the traction slope, so the inner fixed-point solves run
    // tighter than the stand-alone default.
    let slope = model.boundary_g_d1(u0).abs().max(1.0);
    let u_tol = (0.5 * opts.boundary_tol / slope).max(4.0 * f64::EPSILON);
    let inner_tol = opts.tol_picard.min(u_tol).max(1e-15);

    let mut radius = model.delta();
    let mut halvings = 0;
    let (z_low, z_high) = loop {
        let attempt = (|| -> Result<(f64, f64), SolveError> {
            let low = picard_solve(model, grid, -radius, inner_tol)?;
            let high = picard_solve(model, grid, radius, inner_tol)?;
            Ok((
                low.profile.u_boundary() - 1.0,
                high.profile.u_boundary() - 1.0,
            ))
        })();
        match attempt {
            Ok(pair) => break pair,
            Err(SolveError::Divergence { .. }) | Err(SolveError::TubeViolation { .. })
                if halvings < opts.max_halvings =>
            {
                radius *= 0.5;
                halvings += 1;
            }
            Err(e) => return Err(e),
        }
    };

    let seventh = radius / 7.0;
    if !(z_high > seventh && z_low < -seventh && z_low < target && target < z_high) {
        return Err(SolveError::BracketFailure {
            z_low,
            z_high,
            target,
            radius,
        });
    }

    let mut lo = -radius;
    let mut hi = radius;
    let mut eps = 0.0;
    let mut outcome: Option<PicardOutcome> = None;
    for _ in 0..200 {
        eps = 0.5 * (lo + hi);
        let solved = picard_solve(model, grid, eps, inner_tol)?;
        let z = solved.profile.u_boundary() - 1.0;
        let width = hi - lo;
        let boundary_gap = model.boundary_g(solved.profile.u_boundary());
        outcome = Some(solved);
        if width <= opts.tol_eps && boundary_gap.abs() <= opts.boundary_tol {
            break;
        }
        if width <= 8.0 * f64::EPSILON * radius.max(f64::MIN_POSITIVE) {
            break;
        }
        if z < target {
            lo = eps;
        } else {
            hi = eps;
        }
    }

    let solved = outcome.expect("bisection performs at least one solve");
    let mu = eps * kappa_beta;
    let residual_sup = ode_residual(&solved.profile, model, mu)?;
    Ok(EigenSolution {
        epsilon: eps,
        mu,
        u_boundary: solved.profile.u_boundary(),
        u0,
        radius,
        bracket: (z_low, z_high),
        residual_sup,
        contraction_rate: solved.contraction_rate,
        iterations: solved.iterations,
        profile: solved.profile,
    })
}

/// Status of a single verification check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check's hypothesis is not met (e.g. the virial identity on a
    /// profile that does not satisfy the boundary condition).
    Inapplicable,
}

/// One verification check with its measured detail.
#[derive(Debug, Clone)]
pub struct VerifyCheck {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

/// Report of [`verify_solution`].
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    /// True when no check failed (inapplicable checks do not fail).
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }
}

/// A-posteriori checks on a solved profile:
///
/// 1. pointwise smallness `|λ₂ - 1|, |λ₁ - 1|, |u - 1| ≤ R r²` and
///    `|φ''| ≤ R r`;
/// 2. strict stretch ordering `λ₁ > λ₂ > 1` on `(0, 1]` for `μ > 0`
///    (reversed for `μ < 0`);
/// 3. the virial balance `μ ∫₀¹ φ² r² dr = -h ∫₀¹ L(λ₁, λ₂) r² dr` to
///    relative 1e-6 (inapplicable unless the boundary condition holds);
/// 4. the sign relation `-hμ ≥ 0`;
/// 5. boundary consistency `sgn(u(1) - 1) = sgn μ` and
///    `|g(u(1))|` within the boundary tolerance.
pub fn verify_solution(solution: &EigenSolution, model: &MaterialModel) -> VerifyReport {
    let mut checks = Vec::new();
    let profile = &solution.profile;
    let grid = profile.grid();
    let n = grid.n();
    let radius = solution.radius;
    let slack = 1e-12;

    let mut estimates_ok = true;
    let mut worst = 0.0f64;
    for i in 0..=n {
        let r = grid.node(i);
        let bound = radius * r * r + slack;
        let e1 = (profile.lambda1[i] - 1.0).abs();
        let e2 = (profile.lambda2[i] - 1.0).abs();
        let eu = (profile.u[i] - 1.0).abs();
        let ezz = (r * profile.zeta[i]).abs();
        if e1 > bound || e2 > bound || eu > bound || ezz > radius * r + slack {
            estimates_ok = false;
        }
        if r > 0.0 {
            worst = worst.max(eu / (radius * r * r));
        }
    }
    checks.push(VerifyCheck {
        name: "pointwise estimates |lambda-1|,|u-1| <= R r^2, |phi''| <= R r",
        status: if estimates_ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        detail: format!("R = {radius}, worst |u-1|/(R r^2) = {worst:.3e}"),
    });

    let mu = solution.mu;
    let monotone = if mu == 0.0 {
        (CheckStatus::Inapplicable, "mu = 0".to_string())
    } else {
        let expanding = mu > 0.0;
        let ok = (1..=n).all(|i| {
            if expanding {
                profile.lambda1[i] > profile.lambda2[i] && profile.lambda2[i] > 1.0
            } else {
                profile.lambda1[i] < profile.lambda2[i] && profile.lambda2[i] < 1.0
            }
        });
        (
            if ok {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            format!(
                "mu = {mu}: expected lambda1 {} lambda2 {} 1 on (0, 1]",
                if expanding { ">" } else { "<" },
                if expanding { ">" } else { "<" }
            ),
        )
    };
    checks.push(VerifyCheck {
        name: "stretch ordering on (0, 1]",
        status: monotone.0,
        detail: monotone.1,
    });

    let boundary_gap = model.boundary_g(profile.u_boundary());
    if boundary_gap.abs() <= 1e-8 {
        let lhs_values: Vec<f64> = (0..=n)
            .map(|i| {
                let r = grid.node(i);
                profile.phi(i) * profile.phi(i) * r * r
            })
            .collect();
        let rhs_values: Vec<f64> = (0..=n)
            .map(|i| {
                let r = grid.node(i);
                model
                    .lagrangian(profile.lambda1[i], profile.lambda2[i])
                    .value
                    * r
                    * r
            })
            .collect();
        let lhs = mu * simpson(&lhs_values);
        let rhs = -model.h() * simpson(&rhs_values);
        let rel = (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
        checks.push(VerifyCheck {
            name: "virial balance",
            status: if rel <= 1e-6 {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            detail: format!("mu*I[phi^2] = {lhs:.12e}, -h*I[L] = {rhs:.12e}, rel = {rel:.3e}"),
        });
    } else {
        checks.push(VerifyCheck {
            name: "virial balance",
            status: CheckStatus::Inapplicable,
            detail: format!("boundary condition unsatisfied: g(u(1)) = {boundary_gap:.3e}"),
        });
    }

    checks.push(VerifyCheck {
        name: "sign relation -h mu >= 0",
        status: if -model.h() * mu >= 0.0 {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        detail: format!("-h mu = {}", -model.h() * mu),
    });

    let sign_ok = (profile.u_boundary() - 1.0).signum() == mu.signum()
        || (profile.u_boundary() == 1.0 && mu == 0.0);
    checks.push(VerifyCheck {
        name: "boundary consistency sgn(u(1)-1) = sgn mu, |g(u(1))| small",
        status: if sign_ok && boundary_gap.abs() <= 1e-8 {
            CheckStatus::Pass
        } else if boundary_gap.abs() > 1e-8 {
            CheckStatus::Inapplicable
        } else {
            CheckStatus::Fail
        },
        detail: format!(
            "u(1) - 1 = {:.6e}, g(u(1)) = {:.3e}",
            profile.u_boundary() - 1.0,
            boundary_gap
        ),
    });

    VerifyReport { checks }
}
