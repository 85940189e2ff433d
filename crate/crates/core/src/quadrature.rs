//! Quadrature kernels shared by the radial solver and the scalar dynamics.
//!
//! Three distinct jobs live here:
//!
//! * [`cumulative_power_weighted`] — running integrals `∫₀^{r_i} ρ^k y(ρ) dρ`
//!   on a uniform grid.  The integrand is interpolated by a sliding cubic
//!   while the power weight `ρ^k` is integrated exactly, so the result stays
//!   uniformly fourth-order accurate even after division by `r³` or `r⁵`
//!   near the origin (a plain cumulative Simpson rule loses three orders
//!   there and cannot meet the operator round-trip tolerances).
//! * [`simpson`] — composite Simpson for plain integrals over `[0, 1]`,
//!   used by the virial balance check.
//! * [`adaptive_simpson`] — classic bisection-refined Simpson for smooth
//!   one-off integrands such as the collapse-time quadrature.
//!
//! An 8-point Gauss–Legendre rule on `[0, 1]` is also exported for the
//! divided-difference evaluation of shear-profile derivative ratios.

/// 8-point Gauss–Legendre nodes on `[0, 1]`, mapped from the standard
/// `[-1, 1]` abscissae.  Exact for polynomials of degree ≤ 15.
#[allow(clippy::excessive_precision)]
const GAUSS8_NODE: [f64; 8] = [
    0.019_855_071_751_231_86,
    0.101_666_761_293_186_63,
    0.237_233_795_041_835_51,
    0.408_282_678_752_175_05,
    0.591_717_321_247_824_95,
    0.762_766_204_958_164_49,
    0.898_333_238_706_813_37,
    0.980_144_928_248_768_1,
];

/// Weights paired with [`GAUSS8_NODE`]; they sum to one.
#[allow(clippy::excessive_precision)]
const GAUSS8_WEIGHT: [f64; 8] = [
    0.050_614_268_145_188_13,
    0.111_190_517_226_687_24,
    0.156_853_322_938_943_62,
    0.181_341_891_689_180_99,
    0.181_341_891_689_180_99,
    0.156_853_322_938_943_62,
    0.111_190_517_226_687_24,
    0.050_614_268_145_188_13,
];

/// 4-point Gauss–Legendre nodes on `[0, 1]`.  Exact for degree ≤ 7, which
/// covers the cubic-times-`ρ^k` products (`k ≤ 4`) in the weighted rule.
#[allow(clippy::excessive_precision)]
const GAUSS4_NODE: [f64; 4] = [
    0.069_431_844_202_973_71,
    0.330_009_478_207_571_87,
    0.669_990_521_792_428_13,
    0.930_568_155_797_026_3,
];

const GAUSS4_WEIGHT: [f64; 4] = [
    0.173_927_422_568_726_93,
    0.326_072_577_431_273_07,
    0.326_072_577_431_273_07,
    0.173_927_422_568_726_93,
];

/// Mean of `g` over `[0, 1]` by the 8-point Gauss rule: `∫₀¹ g(s) ds`.
pub fn gauss_mean_01<F: Fn(f64) -> f64>(g: F) -> f64 {
    GAUSS8_NODE
        .iter()
        .zip(GAUSS8_WEIGHT.iter())
        .map(|(&s, &w)| w * g(s))
        .sum()
}

/// Running weighted integrals `out[i] = ∫₀^{r_i} ρ^power y(ρ) dρ` for the
/// uniform grid `r_i = i / n`, where `values[i] = y(r_i)` and
/// `n = values.len() - 1`.
///
/// On every interval the integrand `y` is replaced by the cubic through the
/// four nearest nodes (stencil clamped at both ends) and the product with
/// `ρ^power` is integrated exactly.  The rule is therefore exact whenever
/// `y` is a polynomial of degree ≤ 3 and uniformly `O(n⁻⁴)` otherwise:
/// the local error on an interval carries the factor `∫ ρ^power dρ`, so
/// quotients like `out[i] / r_i³` keep full accuracy down to the first node.
///
/// # Panics
///
/// Panics if `power > 4` or fewer than four nodes are supplied.
pub fn cumulative_power_weighted(power: u32, values: &[f64]) -> Vec<f64> {
    assert!(power <= 4, "weight power {power} out of supported range");
    assert!(values.len() >= 4, "need at least four nodes");
    let n = values.len() - 1;
    let h = 1.0 / n as f64;

    let mut out = vec![0.0; n + 1];
    let mut acc = 0.0;
    for j in 0..n {
        // Four-point stencil around interval [r_j, r_{j+1}], clamped so it
        // stays inside the grid; offsets are measured in units of h from r_j.
        let base = j.saturating_sub(1).min(n - 3);
        let offset = |m: usize| (base + m) as f64 - j as f64;

        let mut interval = 0.0;
        for (&s, &w) in GAUSS4_NODE.iter().zip(GAUSS4_WEIGHT.iter()) {
            let rho = (j as f64 + s) * h;
            // Cubic Lagrange interpolant of `values` at local coordinate s.
            let mut interp = 0.0;
            for m in 0..4 {
                let mut basis = 1.0;
                for k in 0..4 {
                    if k != m {
                        basis *= (s - offset(k)) / (offset(m) - offset(k));
                    }
                }
                interp += values[base + m] * basis;
            }
            interval += w * rho.powi(power as i32) * interp;
        }
        acc += h * interval;
        out[j + 1] = acc;
    }
    out
}

/// Composite Simpson rule for `∫₀¹ y dr` with `values` on a uniform grid.
///
/// # Panics
///
/// Panics unless the number of intervals (`values.len() - 1`) is even and
/// at least two.
pub fn simpson(values: &[f64]) -> f64 {
    let n = values.len() - 1;
    assert!(
        n >= 2 && n.is_multiple_of(2),
        "Simpson needs an even interval count"
    );
    let h = 1.0 / n as f64;
    let mut sum = values[0] + values[n];
    for (i, &v) in values.iter().enumerate().take(n).skip(1) {
        sum += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    sum * h / 3.0
}

/// Adaptive Simpson integration of a smooth `f` over `[a, b]`.
///
/// Recursion keeps bisecting until the classic `|S₂ - S₁| / 15` estimate
/// drops below the local tolerance share; the returned value includes the
/// Richardson correction, so the practical order is five.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    adaptive_simpson_step(f, a, b, fa, fm, fb, whole, tol, 60)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive_simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + adaptive_simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_values<F: Fn(f64) -> f64>(n: usize, f: F) -> Vec<f64> {
        (0..=n).map(|i| f(i as f64 / n as f64)).collect()
    }

    #[test]
    fn gauss8_weights_normalised() {
        let total: f64 = GAUSS8_WEIGHT.iter().sum();
        assert!((total - 1.0).abs() < 1e-15);
        assert!((gauss_mean_01(|s| s * s) - 1.0 / 3.0).abs() < 1e-15);
        // Degree 15 is still integrated exactly.
        let exact = 1.0 / 16.0;
        assert!((gauss_mean_01(|s| s.powi(15)) - exact).abs() < 1e-15);
    }

    #[test]
    fn weighted_cumulative_exact_for_cubics() {
        // y = 1 - 2r + 3r² - r³ against weight ρ²; antiderivative is exact.
        let n = 64;
        let vals = grid_values(n, |r| 1.0 - 2.0 * r + 3.0 * r * r - r * r * r);
        let got = cumulative_power_weighted(2, &vals);
        for (i, &g) in got.iter().enumerate() {
            let r = i as f64 / n as f64;
            let exact =
                r.powi(3) / 3.0 - 2.0 * r.powi(4) / 4.0 + 3.0 * r.powi(5) / 5.0 - r.powi(6) / 6.0;
            assert!((g - exact).abs() < 1e-15, "node {i}: {g} vs {exact}");
        }
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn weighted_cumulative_fourth_order_near_origin() {
        // A non-polynomial integrand divided by r³ must stay fourth order
        // uniformly, including at the very first node.
        let f = |r: f64| (3.0 * r).cos();
        let err_at = |n: usize| {
            let vals = grid_values(n, f);
            let got = cumulative_power_weighted(2, &vals);
            let mut worst = 0.0f64;
            for i in 1..=n {
                let r = i as f64 / n as f64;
                let exact = adaptive_simpson(&|rho: f64| rho * rho * f(rho), 0.0, r, 1e-15);
                worst = worst.max(((got[i] - exact) / r.powi(3)).abs());
            }
            worst
        };
        let coarse = err_at(64);
        let fine = err_at(128);
        let rate = (coarse / fine).log2();
        assert!(
            rate > 3.5,
            "observed order {rate}, errors {coarse} / {fine}"
        );
    }

    #[test]
    fn simpson_matches_closed_forms() {
        let n = 128;
        let vals = grid_values(n, |r| r * r);
        assert!((simpson(&vals) - 1.0 / 3.0).abs() < 1e-15);
        let vals = grid_values(n, |r| (std::f64::consts::PI * r).sin());
        let exact = 2.0 / std::f64::consts::PI;
        assert!((simpson(&vals) - exact).abs() < 5e-9);
    }

    #[test]
    #[should_panic(expected = "even interval count")]
    fn simpson_rejects_odd_interval_count() {
        simpson(&[0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn adaptive_simpson_handles_endpoint_derivative_blowup() {
        // ∫₀¹ 1/(2√s) ds = 1 after the usual s = w² substitution is what the
        // collapse quadrature feeds in; here we check the raw adaptive rule
        // on a mildly singular derivative profile instead.
        let got = adaptive_simpson(&|s: f64| s.sqrt(), 0.0, 1.0, 1e-12);
        assert!((got - 2.0 / 3.0).abs() < 1e-11);
        let got = adaptive_simpson(&|s: f64| (4.0 * s).exp(), 0.0, 1.0, 1e-13);
        let exact = (4.0f64.exp() - 1.0) / 4.0;
        assert!((got - exact).abs() / exact < 1e-13);
    }
}
