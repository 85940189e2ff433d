//! Scalar dynamics of the time amplitude.
//!
//! Separable motions factor as `x(t, r) = a(t) φ(r) ω(r)` with the amplitude
//! governed by the autonomous equation
//!
//! ```text
//! ä = μ a^{h-1},        E = ½ ȧ² - (μ/h) a^h  (conserved).
//! ```
//!
//! Two regimes matter: `μ < 0, h > 0` drives collapse to `a = 0` in finite
//! time `τ` (the admissible material window is `h > 3`), and `μ > 0, h < 0`
//! drives unbounded expansion with asymptotic speed `√(2E₀)`.
//!
//! [`integrate`] advances the state with an embedded Dormand–Prince 5(4)
//! pair, detects the collapse threshold crossing by bisecting the last step,
//! and completes `τ` with the closed-form tail quadrature.  [`collapse_time`]
//! evaluates `τ` directly from the conserved energy without any time
//! stepping, which makes it an independent cross-check on the integrator.

use crate::quadrature::adaptive_simpson;
use thiserror::Error;

/// Failures of the scalar integrator and the collapse-time quadrature.
#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("parameter {name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },
    #[error("initial amplitude must be positive, got a0 = {a0}")]
    NonPositiveAmplitude { a0: f64 },
    #[error("time horizon must be positive and finite, got {t_end}")]
    InvalidHorizon { t_end: f64 },
    #[error(
        "(h, mu) = ({h}, {mu}) is not a separable regime: \
         need mu < 0 with h > 0 (collapse) or mu > 0 with h < 0 (expansion)"
    )]
    NotSeparableRegime { h: f64, mu: f64 },
    #[error("collapse time is defined only for mu < 0 with h > 0, got (h, mu) = ({h}, {mu})")]
    NotCollapseRegime { h: f64, mu: f64 },
    #[error("step size underflow at t = {t} (step = {step})")]
    StepUnderflow { t: f64, step: f64 },
    #[error("integration exceeded {max_steps} accepted steps before t_end")]
    MaxStepsExceeded { max_steps: usize },
}

/// Phase of the separable motion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `μ > 0, h < 0`: the amplitude grows without bound.
    Expansion,
    /// `μ < 0, h > 0`: the amplitude reaches zero in finite time.
    Collapse,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::Expansion => write!(f, "expansion"),
            Regime::Collapse => write!(f, "collapse"),
        }
    }
}

/// Classifies `(h, μ)` into one of the two separable regimes.
pub fn classify_regime(h: f64, mu: f64) -> Result<Regime, DynamicsError> {
    for (name, value) in [("h", h), ("mu", mu)] {
        if !value.is_finite() {
            return Err(DynamicsError::NonFinite { name, value });
        }
    }
    if mu < 0.0 && h > 0.0 {
        Ok(Regime::Collapse)
    } else if mu > 0.0 && h < 0.0 {
        Ok(Regime::Expansion)
    } else {
        Err(DynamicsError::NotSeparableRegime { h, mu })
    }
}

/// Amplitude state at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleState {
    pub t: f64,
    pub a: f64,
    pub adot: f64,
}

/// Conserved energy `½ ȧ² - (μ/h) a^h` of a state.
pub fn energy(h: f64, mu: f64, state: &ScaleState) -> f64 {
    0.5 * state.adot * state.adot - mu / h * state.a.powf(h)
}

/// Options for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct IntegrateOptions {
    /// Relative tolerance of the embedded error estimate.
    pub rtol: f64,
    /// Absolute tolerance of the embedded error estimate.
    pub atol: f64,
    /// Collapse is declared once `a ≤ collapse_threshold · a₀`.
    pub collapse_threshold: f64,
    /// Budget of accepted steps.
    pub max_steps: usize,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-12,
            collapse_threshold: 1e-6,
            max_steps: 200_000,
        }
    }
}

/// Time history of the amplitude.
#[derive(Debug, Clone)]
pub struct ScaleTrajectory {
    pub h: f64,
    pub mu: f64,
    pub regime: Regime,
    /// Accepted states, starting at `t = 0`.
    pub samples: Vec<ScaleState>,
    /// Energy at each sample.
    pub energies: Vec<f64>,
    /// Collapse time, present when the threshold was crossed: hit time plus
    /// the closed-form tail below the threshold.
    pub tau: Option<f64>,
    /// Whether the run ended at the collapse threshold rather than `t_end`.
    pub collapsed: bool,
}

impl ScaleTrajectory {
    /// Largest relative deviation of the sampled energy from its initial
    /// value, `max_i |E_i - E₀| / max(1, |E₀|)`.
    pub fn energy_drift(&self) -> f64 {
        let e0 = self.energies[0];
        let scale = e0.abs().max(1.0);
        self.energies
            .iter()
            .fold(0.0f64, |m, &e| m.max((e - e0).abs()))
            / scale
    }

    /// Asymptotic expansion speed `√(2E₀)`; only meaningful in the
    /// expansion regime where the potential energy decays.
    pub fn asymptotic_speed(&self) -> f64 {
        (2.0 * self.energies[0]).max(0.0).sqrt()
    }

    /// Gap `√(2E₀) - a(t)/t` at the final sample.
    pub fn expansion_gap(&self) -> f64 {
        let last = self.samples.last().expect("trajectory is never empty");
        self.asymptotic_speed() - last.a / last.t
    }
}

// The usual stage times (0, 1/5, 3/10, 4/5, 8/9, 1, 1) never appear
// explicitly because the amplitude equation is autonomous.
const STAGE_A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const WEIGHTS_5TH: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const WEIGHTS_4TH: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

#[derive(Debug, Clone, Copy)]
struct StepResult {
    y: [f64; 2],
    /// Scaled error estimate of the embedded pair (accept when ≤ 1).
    error: f64,
    /// Derivative at the end point (first-same-as-last reuse).
    k_last: [f64; 2],
}

/// One Dormand–Prince 5(4) step of size `dt` from `y` with derivative `k1`
/// already evaluated.  Returns `None` when any stage leaves the physical
/// half-plane `a > 0` (caller shortens the step).
fn dp54_step(
    h: f64,
    mu: f64,
    y: [f64; 2],
    k1: [f64; 2],
    dt: f64,
    rtol: f64,
    atol: f64,
) -> Option<StepResult> {
    let hm1 = h - 1.0;
    let deriv = |state: [f64; 2]| -> Option<[f64; 2]> {
        if state[0] <= 0.0 {
            return None;
        }
        Some([state[1], mu * state[0].powf(hm1)])
    };

    let mut k = [[0.0f64; 2]; 7];
    k[0] = k1;
    for stage in 1..7 {
        let mut ys = y;
        for (j, kj) in k.iter().enumerate().take(stage) {
            let a = STAGE_A[stage][j];
            if a != 0.0 {
                ys[0] += dt * a * kj[0];
                ys[1] += dt * a * kj[1];
            }
        }
        k[stage] = deriv(ys)?;
    }

    let mut y5 = y;
    let mut y4 = y;
    for (j, kj) in k.iter().enumerate() {
        y5[0] += dt * WEIGHTS_5TH[j] * kj[0];
        y5[1] += dt * WEIGHTS_5TH[j] * kj[1];
        y4[0] += dt * WEIGHTS_4TH[j] * kj[0];
        y4[1] += dt * WEIGHTS_4TH[j] * kj[1];
    }
    if y5[0] <= 0.0 {
        return None;
    }

    let mut error = 0.0f64;
    for i in 0..2 {
        let scale = atol + rtol * y[i].abs().max(y5[i].abs());
        error = error.max(((y5[i] - y4[i]) / scale).abs());
    }
    Some(StepResult {
        y: y5,
        error,
        k_last: k[6],
    })
}

/// Integrates the amplitude equation from `(a₀, ȧ₀)` at `t = 0` until
/// `t_end`, or until the collapse threshold is crossed in the collapse
/// regime.  The crossing time is located by bisecting the final step and
/// `τ` is completed with [`collapse_time`] from the hit state.
pub fn integrate(
    h: f64,
    mu: f64,
    a0: f64,
    adot0: f64,
    t_end: f64,
    opts: &IntegrateOptions,
) -> Result<ScaleTrajectory, DynamicsError> {
    let regime = classify_regime(h, mu)?;
    for (name, value) in [("a0", a0), ("adot0", adot0)] {
        if !value.is_finite() {
            return Err(DynamicsError::NonFinite { name, value });
        }
    }
    if a0 <= 0.0 {
        return Err(DynamicsError::NonPositiveAmplitude { a0 });
    }
    if !(t_end > 0.0 && t_end.is_finite()) {
        return Err(DynamicsError::InvalidHorizon { t_end });
    }

    let threshold = opts.collapse_threshold * a0;
    let mut t = 0.0f64;
    let mut y = [a0, adot0];
    let mut k1 = [adot0, mu * a0.powf(h - 1.0)];
    let mut samples = vec![ScaleState {
        t,
        a: y[0],
        adot: y[1],
    }];

    // Initial step heuristic: resolve the faster of position and velocity.
    let accel = k1[1].abs().max(1e-30);
    let mut dt = (0.01 * (a0 / accel).sqrt())
        .min(0.01 * (1.0 + a0) / (1.0 + adot0.abs()))
        .min(t_end / 16.0);

    let mut accepted = 0usize;
    let mut collapsed = false;
    let mut tau = None;

    while t < t_end {
        if accepted >= opts.max_steps {
            return Err(DynamicsError::MaxStepsExceeded {
                max_steps: opts.max_steps,
            });
        }
        let dt_try = dt.min(t_end - t);
        if dt_try < 1e-14 * t.abs().max(1.0) {
            return Err(DynamicsError::StepUnderflow { t, step: dt_try });
        }
        match dp54_step(h, mu, y, k1, dt_try, opts.rtol, opts.atol) {
            Some(step) if step.error <= 1.0 => {
                let crossed = regime == Regime::Collapse && step.y[0] <= threshold;
                if crossed {
                    let (t_hit, y_hit) = bisect_threshold(h, mu, y, k1, t, dt_try, threshold, opts);
                    t = t_hit;
                    y = y_hit;
                    samples.push(ScaleState {
                        t,
                        a: y[0],
                        adot: y[1],
                    });
                    let tail = collapse_time(h, mu, y[0], y[1])?;
                    tau = Some(t + tail);
                    collapsed = true;
                    break;
                }
                t += dt_try;
                y = step.y;
                k1 = step.k_last;
                samples.push(ScaleState {
                    t,
                    a: y[0],
                    adot: y[1],
                });
                accepted += 1;
                let factor = if step.error == 0.0 {
                    5.0
                } else {
                    (0.9 * step.error.powf(-0.2)).clamp(0.2, 5.0)
                };
                dt = dt_try * factor;
            }
            Some(step) => {
                dt = dt_try * (0.9 * step.error.powf(-0.2)).clamp(0.2, 0.9);
            }
            None => {
                dt = dt_try * 0.5;
            }
        }
    }

    let energies = samples.iter().map(|s| energy(h, mu, s)).collect();
    Ok(ScaleTrajectory {
        h,
        mu,
        regime,
        samples,
        energies,
        tau,
        collapsed,
    })
}

/// Bisects the step fraction `λ ∈ (0, 1]` of an accepted step that crossed
/// the collapse threshold, returning the hit time and state.  Partial steps
/// reuse the pre-step derivative, so each probe is a single 5th-order step.
#[allow(clippy::too_many_arguments)]
fn bisect_threshold(
    h: f64,
    mu: f64,
    y_pre: [f64; 2],
    k1: [f64; 2],
    t_pre: f64,
    dt: f64,
    threshold: f64,
    opts: &IntegrateOptions,
) -> (f64, [f64; 2]) {
    let probe = |lambda: f64| -> Option<[f64; 2]> {
        dp54_step(h, mu, y_pre, k1, lambda * dt, opts.rtol, opts.atol).map(|s| s.y)
    };
    let mut lo = 0.0f64;
    let mut hi = 1.0f64;
    let mut best = probe(1.0);
    for _ in 0..80 {
        if hi - lo <= 1e-15 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        match probe(mid) {
            // Stage escaped below a = 0: certainly past the crossing.
            None => hi = mid,
            Some(y) if y[0] <= threshold => {
                hi = mid;
                best = Some(y);
            }
            Some(_) => lo = mid,
        }
    }
    let y_hit = best.or_else(|| probe(hi)).unwrap_or([threshold, y_pre[1]]);
    (t_pre + hi * dt, y_hit)
}

/// Closed-form collapse time from the conserved energy.
///
/// With `E₀ = ½ȧ₀² - (μ/h)a₀^h` and turning amplitude
/// `a* = (hE₀/(-μ))^{1/h}`, the substitution `a = a* - w²` removes the
/// square-root turning singularity and gives
///
/// ```text
/// T(w₁, w₂) = ∫_{w₁}^{w₂} 2w dw / √(2(-μ/h)(a*^h - (a* - w²)^h)),
/// τ = T(√(a*-a₀), √a*)                    for ȧ₀ ≤ 0,
/// τ = T(0, √a*) + T(0, √(a*-a₀))          for ȧ₀ > 0.
/// ```
pub fn collapse_time(h: f64, mu: f64, a0: f64, adot0: f64) -> Result<f64, DynamicsError> {
    for (name, value) in [("h", h), ("mu", mu), ("a0", a0), ("adot0", adot0)] {
        if !value.is_finite() {
            return Err(DynamicsError::NonFinite { name, value });
        }
    }
    if !(mu < 0.0 && h > 0.0) {
        return Err(DynamicsError::NotCollapseRegime { h, mu });
    }
    if a0 <= 0.0 {
        return Err(DynamicsError::NonPositiveAmplitude { a0 });
    }

    let e0 = 0.5 * adot0 * adot0 - mu / h * a0.powf(h);
    let a_star = (h * e0 / -mu).powf(1.0 / h);
    let scale = 2.0 * (-mu) / h * a_star.powf(h);
    // Kinetic bracket 2(-μ/h)(a*^h - (a*-w²)^h), written with expm1/ln1p so
    // it stays accurate for w² ≪ a*.
    let bracket = move |w: f64| -> f64 {
        let x = (w * w / a_star).min(1.0);
        -scale * f64::exp_m1(h * f64::ln_1p(-x))
    };
    let integrand = move |w: f64| -> f64 {
        if w == 0.0 {
            // limit 2w/√(bracket) → √(2/((-μ) h)) a*^{(1-h)/2} · √h … computed
            // from bracket ≈ scale · h w²/a*.
            return 2.0 / (scale * h / a_star).sqrt();
        }
        2.0 * w / bracket(w).sqrt()
    };

    let w_star = a_star.sqrt();
    let tol = 1e-13 * w_star.max(1.0);
    let tau = if adot0 <= 0.0 {
        let w_from = (a_star - a0).max(0.0).sqrt();
        adaptive_simpson(&integrand, w_from, w_star, tol)
    } else {
        adaptive_simpson(&integrand, 0.0, w_star, tol)
            + adaptive_simpson(&integrand, 0.0, (a_star - a0).max(0.0).sqrt(), tol)
    };
    Ok(tau)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI: f64 = std::f64::consts::PI;

    #[test]
    fn regime_classification() {
        assert_eq!(classify_regime(-1.0, 1.0).unwrap(), Regime::Expansion);
        assert_eq!(classify_regime(6.0, -0.5).unwrap(), Regime::Collapse);
        assert!(matches!(
            classify_regime(-1.0, -1.0),
            Err(DynamicsError::NotSeparableRegime { .. })
        ));
        assert!(matches!(
            classify_regime(6.0, 1.0),
            Err(DynamicsError::NotSeparableRegime { .. })
        ));
        assert!(matches!(
            classify_regime(f64::NAN, 1.0),
            Err(DynamicsError::NonFinite { .. })
        ));
    }

    #[test]
    fn harmonic_collapse_times_are_exact() {
        // h = 2, μ = -1 is the harmonic oscillator ä = -a.
        // From (1, 0): a = cos t, zero at π/2.
        let tau = collapse_time(2.0, -1.0, 1.0, 0.0).unwrap();
        assert!((tau - PI / 2.0).abs() < 1e-12, "tau = {tau}");
        // From (1, 1): a = cos t + sin t, zero at 3π/4.
        let tau = collapse_time(2.0, -1.0, 1.0, 1.0).unwrap();
        assert!((tau - 3.0 * PI / 4.0).abs() < 1e-12, "tau = {tau}");
        // From (1, -1): a = cos t - sin t, zero at π/4.
        let tau = collapse_time(2.0, -1.0, 1.0, -1.0).unwrap();
        assert!((tau - PI / 4.0).abs() < 1e-12, "tau = {tau}");
    }

    #[test]
    fn collapse_time_rejects_wrong_regime() {
        assert!(matches!(
            collapse_time(-1.0, 1.0, 1.0, 0.0),
            Err(DynamicsError::NotCollapseRegime { .. })
        ));
        assert!(matches!(
            collapse_time(6.0, -1.0, 0.0, 0.0),
            Err(DynamicsError::NonPositiveAmplitude { .. })
        ));
    }

    #[test]
    fn turning_amplitude_scaling() {
        // h = 6, μ = -1, (a0, ȧ0) = (1, 1): E0 = 2/3, a* = 4^{1/6}.
        let e0 = 0.5 + 1.0 / 6.0;
        let a_star = (6.0 * e0_check(6.0, -1.0, 1.0, 1.0) / 1.0).powf(1.0 / 6.0);
        assert!((e0_check(6.0, -1.0, 1.0, 1.0) - e0).abs() < 1e-15);
        assert!((a_star - 4f64.powf(1.0 / 6.0)).abs() < 1e-15);
        // τ from either side of the turning point is consistent: starting at
        // the turning point with ȧ = 0 takes longer than starting below it
        // moving inward.
        let from_top = collapse_time(6.0, -1.0, a_star, 0.0).unwrap();
        let inward = collapse_time(6.0, -1.0, 1.0, -1.0).unwrap();
        let outward = collapse_time(6.0, -1.0, 1.0, 1.0).unwrap();
        assert!(from_top < outward && inward < from_top);
        assert!((outward + inward - 2.0 * from_top).abs() < 1e-11);
    }

    fn e0_check(h: f64, mu: f64, a0: f64, adot0: f64) -> f64 {
        energy(
            h,
            mu,
            &ScaleState {
                t: 0.0,
                a: a0,
                adot: adot0,
            },
        )
    }

    #[test]
    fn integrator_tracks_harmonic_solution() {
        let opts = IntegrateOptions::default();
        let traj = integrate(2.0, -1.0, 1.0, 0.0, 1.0, &opts).unwrap();
        assert!(!traj.collapsed);
        let last = traj.samples.last().unwrap();
        assert!((last.t - 1.0).abs() < 1e-14);
        assert!((last.a - 1f64.cos()).abs() < 1e-9, "a(1) = {}", last.a);
        assert!((last.adot + 1f64.sin()).abs() < 1e-9);
        assert!(traj.energy_drift() < 1e-10);
    }

    #[test]
    fn integrator_detects_collapse_and_matches_quadrature() {
        let opts = IntegrateOptions::default();
        let traj = integrate(2.0, -1.0, 1.0, 0.0, 10.0, &opts).unwrap();
        assert!(traj.collapsed);
        let tau = traj.tau.unwrap();
        assert!((tau - PI / 2.0).abs() < 1e-8, "tau = {tau}");
        // The run stops at the threshold, not at t_end.
        let last = traj.samples.last().unwrap();
        assert!(last.a <= 1e-6 + 1e-18);
        assert!(last.t < 10.0);
    }

    #[test]
    fn expansion_run_conserves_energy_and_speeds_up() {
        let opts = IntegrateOptions::default();
        let traj = integrate(-1.0, 1.0, 1.0, 0.0, 50.0, &opts).unwrap();
        assert_eq!(traj.regime, Regime::Expansion);
        assert!(!traj.collapsed);
        assert!(traj.energy_drift() < 1e-9, "drift {}", traj.energy_drift());
        // Amplitude grows monotonically and the velocity approaches √(2E₀)
        // from below.
        let speed = traj.asymptotic_speed();
        let mut prev = 0.0;
        for s in &traj.samples {
            assert!(s.a >= prev);
            prev = s.a;
            assert!(s.adot < speed + 1e-12);
        }
        let last = traj.samples.last().unwrap();
        assert!(speed - last.adot < 0.02);
        assert!(traj.expansion_gap() > 0.0);
    }

    #[test]
    fn integrate_validates_inputs() {
        let opts = IntegrateOptions::default();
        assert!(matches!(
            integrate(2.0, -1.0, -1.0, 0.0, 1.0, &opts),
            Err(DynamicsError::NonPositiveAmplitude { .. })
        ));
        assert!(matches!(
            integrate(2.0, -1.0, 1.0, 0.0, 0.0, &opts),
            Err(DynamicsError::InvalidHorizon { .. })
        ));
        assert!(matches!(
            integrate(1.0, 1.0, 1.0, 0.0, 1.0, &opts),
            Err(DynamicsError::NotSeparableRegime { .. })
        ));
    }
}
