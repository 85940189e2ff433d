//! Independent oracles used by the acceptance suite.
//!
//! Nothing here reuses the library's solver machinery: the radial eigenvalue
//! is recomputed by a shooting method (initial value problem + bisection on
//! the traction mismatch) with its own closed-form coefficient functions for
//! the quadratic shear family, and the reference collapse time comes from a
//! Gamma-function identity instead of the library quadrature.

use statrs::function::gamma::gamma;

/// Coefficients of the strong-form radial balance for the quadratic shear
/// profile `f(u) = 1 + B(u-1)²/2`, written out in closed form so the oracle
/// shares no code with the library:
///
/// ```text
/// U1 = κ f + (2h/3) u f' + u² f''          (f' = B(u-1), f'' = B)
/// U2 = 2κ u f + (h/3 - 1) u² f' + 2u² B    (the f'/(u-1) factor is B)
/// g  = (h/3) f + u f'
/// ```
struct QuadraticCoefficients {
    h: f64,
    b: f64,
    kappa: f64,
}

impl QuadraticCoefficients {
    fn new(h: f64, b: f64) -> Self {
        Self {
            h,
            b,
            kappa: (h / 3.0) * (h / 3.0 - 1.0),
        }
    }

    fn f(&self, u: f64) -> f64 {
        1.0 + 0.5 * self.b * (u - 1.0) * (u - 1.0)
    }

    fn u1(&self, u: f64) -> f64 {
        self.kappa * self.f(u) + (2.0 * self.h / 3.0) * u * self.b * (u - 1.0) + u * u * self.b
    }

    fn u2(&self, u: f64) -> f64 {
        2.0 * self.kappa * u * self.f(u)
            + (self.h / 3.0 - 1.0) * u * u * self.b * (u - 1.0)
            + 2.0 * u * u * self.b
    }

    fn g(&self, u: f64) -> f64 {
        (self.h / 3.0) * self.f(u) + u * self.b * (u - 1.0)
    }
}

/// Right-hand side of the first-order system for `y = (φ, φ')`:
///
/// ```text
/// φ'' = [ μ r v^{1-h/3} u - U2(u) (φ' - φ/r) / r ] / U1(u)
/// ```
fn shoot_rhs(c: &QuadraticCoefficients, mu: f64, r: f64, phi: f64, dphi: f64) -> (f64, f64) {
    let l2 = phi / r;
    let u = dphi / l2;
    let v = dphi * l2 * l2;
    let d2 = (mu * r * v.powf(1.0 - c.h / 3.0) * u - c.u2(u) * (dphi - l2) / r) / c.u1(u);
    (dphi, d2)
}

/// Boundary stretch ratio `u(1) = φ'(1)/φ(1)` of the initial value problem
/// started from the series expansion `φ = r + c r³`, `c = μ / (10(κ+β))`,
/// at `r₀ = 10⁻³` (truncation error `O(r₀⁵)`), integrated to `r = 1` by
/// classic fixed-step fourth-order Runge–Kutta.
fn shoot_u_boundary(c: &QuadraticCoefficients, mu: f64, steps: usize) -> f64 {
    let r0 = 1e-3;
    let beta = c.b;
    let cubic = mu / (10.0 * (c.kappa + beta));
    let mut phi = r0 + cubic * r0 * r0 * r0;
    let mut dphi = 1.0 + 3.0 * cubic * r0 * r0;

    let dr = (1.0 - r0) / steps as f64;
    for i in 0..steps {
        let r = r0 + i as f64 * dr;
        let (k1p, k1d) = shoot_rhs(c, mu, r, phi, dphi);
        let (k2p, k2d) = shoot_rhs(
            c,
            mu,
            r + 0.5 * dr,
            phi + 0.5 * dr * k1p,
            dphi + 0.5 * dr * k1d,
        );
        let (k3p, k3d) = shoot_rhs(
            c,
            mu,
            r + 0.5 * dr,
            phi + 0.5 * dr * k2p,
            dphi + 0.5 * dr * k2d,
        );
        let (k4p, k4d) = shoot_rhs(c, mu, r + dr, phi + dr * k3p, dphi + dr * k3d);
        phi += dr / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        dphi += dr / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    }
    dphi / phi
}

/// Independent eigenvalue for the quadratic shear family: bisect `μ` on the
/// traction mismatch `g(u(1; μ))` of the shooting solution.
///
/// The search interval is the sign-appropriate half of
/// `[-(κ+β)δ, (κ+β)δ]` with `δ = min(1/8, 1/(8|h|))`; the endpoints must
/// straddle a root or the oracle panics (that would mean the test setup,
/// not the library, is wrong).
pub fn shoot_mu_quadratic(h: f64, b: f64) -> f64 {
    let c = QuadraticCoefficients::new(h, b);
    let delta = (1.0f64 / 8.0).min(1.0 / (8.0 * h.abs()));
    let span = (c.kappa + b) * delta;
    let (mut lo, mut hi) = if h < 0.0 { (0.0, span) } else { (-span, 0.0) };

    let steps = 4000;
    let mismatch = |mu: f64| c.g(shoot_u_boundary(&c, mu, steps));
    let (g_lo, g_hi) = (mismatch(lo), mismatch(hi));
    assert!(
        g_lo * g_hi < 0.0,
        "oracle bracket failure: g({lo}) = {g_lo}, g({hi}) = {g_hi}"
    );

    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mismatch(mid) * g_lo.signum() < 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-13 * hi.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

/// Reference collapse time for `ä = -a⁵`, `a(0) = 1`, `ȧ(0) = 0`: the
/// quadrature `√3 ∫₀¹ (1-s⁶)^{-1/2} ds` reduces to a Beta function,
/// `τ = √3 · Γ(1/6) Γ(1/2) / (6 Γ(2/3))`.
pub fn collapse_time_gamma_h6() -> f64 {
    3.0f64.sqrt() * gamma(1.0 / 6.0) * gamma(0.5) / (6.0 * gamma(2.0 / 3.0))
}
