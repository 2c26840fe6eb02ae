//! Wrapped Cauchy sums, outcome probabilities and conditional expectations.
//!
//! Every infinite sum over branches here is only conditionally convergent
//! unless the `+n` and `−n` terms are combined first, so partial sums always
//! add matched pairs. Summation runs from the outermost pair inward.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::KickModel;
use crate::{Error, Result};

/// Closed form of `F_a(ψ) = Σ_n (a/π) / (a² + (nπ − ψ)²)`:
/// `(1/π) tanh a / (tanh²a cos²ψ + sin²ψ)`.
pub fn wrapped_sum_closed(a: f64, psi: f64) -> f64 {
    let t = a.tanh();
    let s = psi.sin();
    t / (t * t + (1.0 - t * t) * s * s) / PI
}

/// Paired partial sum of `F_a(ψ)` over `|n| ≤ n_max` plus the integral
/// estimate of both tails, `(1/π²) atan(a / ((n_max + 1/2)π ∓ ψ))`.
pub fn wrapped_sum_numeric(a: f64, psi: f64, n_max: u64) -> f64 {
    let term = |x: f64| a / PI / (a * a + x * x);
    let mut sum = 0.0;
    for n in (1..=n_max).rev() {
        let np = n as f64 * PI;
        sum += term(np - psi) + term(np + psi);
    }
    sum += term(psi);
    let edge = (n_max as f64 + 0.5) * PI;
    let tail = |d: f64| if d > 0.0 { (a / d).atan() / (PI * PI) } else { 0.0 };
    sum + tail(edge - psi) + tail(edge + psi)
}

/// Outcome probabilities with their normalizer `Z = F(θ/2) + F((θ−π)/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeProbabilities {
    pub p_up: f64,
    pub p_down: f64,
    pub z: f64,
}

impl OutcomeProbabilities {
    fn from_weights(up: f64, down: f64) -> Self {
        let z = up + down;
        Self {
            p_up: up / z,
            p_down: down / z,
            z,
        }
    }

    pub fn ratio(&self) -> f64 {
        self.p_down / self.p_up
    }
}

/// Probabilities from the closed-form wrapped sums.
///
/// The closed form of `F` is finite for every `θ`, so `θ = 0` and `θ = π`
/// need no special casing: at `θ = 0`, `p_up = 1/(1 + tanh²a)`.
pub fn outcome_probabilities(model: &KickModel) -> OutcomeProbabilities {
    OutcomeProbabilities::from_weights(
        wrapped_sum_closed(model.a, model.psi_up()),
        wrapped_sum_closed(model.a, model.psi_down()),
    )
}

/// Probabilities from the paired numeric sums truncated at `model.n_max`.
pub fn outcome_probabilities_numeric(model: &KickModel) -> OutcomeProbabilities {
    OutcomeProbabilities::from_weights(
        wrapped_sum_numeric(model.a, model.psi_up(), model.n_max),
        wrapped_sum_numeric(model.a, model.psi_down(), model.n_max),
    )
}

/// Leading small-`a` normalizer `(4a/π) / sin²θ`; infinite at `θ = 0, π`.
pub fn z_small_a(a: f64, theta: f64) -> f64 {
    let s = theta.sin();
    if s == 0.0 {
        f64::INFINITY
    } else {
        4.0 * a / PI / (s * s)
    }
}

/// `(⟨φ⟩_UP, ⟨φ⟩_DOWN) = (−sin(θ/2)cos³(θ/2), −sin³(θ/2)cos(θ/2))`.
pub fn closed_form_expectation(theta: f64) -> (f64, f64) {
    let (s, c) = (0.5 * theta).sin_cos();
    (-s * c * c * c, -s * s * s * c)
}

/// `Σ_{|n| ≤ N} (nπ − ψ)/(a² + (nπ − ψ)²)` in ±n pairs, plus the leading
/// tail `2ψ / (π²(N + 1/2))` of the remaining pairs.
fn kick_moment_sum(a: f64, psi: f64, n_max: u64) -> f64 {
    let term = |x: f64| x / (a * a + x * x);
    let mut sum = 0.0;
    for n in (1..=n_max).rev() {
        let np = n as f64 * PI;
        sum += term(np - psi) + term(-np - psi);
    }
    sum += term(-psi);
    sum + 2.0 * psi / (PI * PI * (n_max as f64 + 0.5))
}

/// Conditional expectations from the paired series, normalized by the
/// numeric `Z` at the same cutoff.
pub fn series_expectation(model: &KickModel) -> (f64, f64) {
    let z = outcome_probabilities_numeric(model).z;
    let pre = model.a / (z * PI);
    (
        pre * kick_moment_sum(model.a, model.psi_up(), model.n_max),
        pre * kick_moment_sum(model.a, model.psi_down(), model.n_max),
    )
}

/// Conditional expectations at finite `a` from the real part of the
/// cotangent identity, `Σ (nπ − ψ)/(…) = −sinψ cosψ / (sin²ψ cosh²a + cos²ψ sinh²a)`.
pub fn finite_a_expectation(a: f64, theta: f64) -> (f64, f64) {
    let z = wrapped_sum_closed(a, 0.5 * theta) + wrapped_sum_closed(a, 0.5 * (theta - PI));
    let pre = a / (z * PI);
    let (ch, sh) = (a.cosh(), a.sinh());
    let real = |psi: f64| {
        let (s, c) = psi.sin_cos();
        -s * c / (s * s * ch * ch + c * c * sh * sh)
    };
    (pre * real(0.5 * theta), pre * real(0.5 * (theta - PI)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KickExpectation {
    pub closed_up: f64,
    pub closed_down: f64,
    pub series_up: f64,
    pub series_down: f64,
}

/// Both the small-`a` closed forms and the numeric series for `model`.
pub fn conditional_kick_expectation(model: &KickModel) -> KickExpectation {
    let (closed_up, closed_down) = closed_form_expectation(model.theta);
    let (series_up, series_down) = series_expectation(model);
    KickExpectation {
        closed_up,
        closed_down,
        series_up,
        series_down,
    }
}

/// `cot(x + iy) = (sin 2x − i sinh 2y) / (cosh 2y − cos 2x)`.
fn cot(z: Complex64) -> Complex64 {
    let d = (2.0 * z.im).cosh() - (2.0 * z.re).cos();
    Complex64::new((2.0 * z.re).sin() / d, -(2.0 * z.im).sinh() / d)
}

fn check_pole(z: Complex64) -> Result<()> {
    let k = (z.re / PI).round();
    if z.im == 0.0 && (z.re - k * PI).abs() <= 1e-12 * z.re.abs().max(1.0) {
        return Err(Error::Validation(format!(
            "cot has a pole at z = {} (multiple of pi)",
            z.re
        )));
    }
    Ok(())
}

/// `1/z + Σ_{n=1}^{N} 2z / (z² − n²π²)`, the paired partial sum of `Σ 1/(z − nπ)`.
pub fn cot_partial_sum(z: Complex64, n_max: u64) -> Result<Complex64> {
    check_pole(z)?;
    let z2 = z * z;
    let mut sum = Complex64::new(0.0, 0.0);
    for n in (1..=n_max).rev() {
        let np = n as f64 * PI;
        sum += 2.0 * z / (z2 - np * np);
    }
    Ok(sum + 1.0 / z)
}

/// Absolute differences of the real and imaginary parts of `cot z` and its
/// paired partial sum.
pub fn cot_identity_residual_parts(z_real: f64, z_imag: f64, n_max: u64) -> Result<(f64, f64)> {
    let z = Complex64::new(z_real, z_imag);
    let partial = cot_partial_sum(z, n_max)?;
    let exact = cot(z);
    Ok(((exact.re - partial.re).abs(), (exact.im - partial.im).abs()))
}

pub fn cot_identity_residual(z_real: f64, z_imag: f64, n_max: u64) -> Result<f64> {
    let z = Complex64::new(z_real, z_imag);
    let partial = cot_partial_sum(z, n_max)?;
    Ok((cot(z) - partial).norm())
}

/// `C` with residual `≤ C / n_max`, valid once `n_max·π ≥ √2 |z|`.
pub fn cot_tail_constant(z_real: f64, z_imag: f64) -> f64 {
    4.0 * z_real.hypot(z_imag) / (PI * PI)
}

/// `Σ_k C_a(θ + 2kπ) = (1/2π) tanh(a/2) / (tanh²(a/2) cos²(θ/2) + sin²(θ/2))`.
pub fn periodic_density(a: f64, theta: f64) -> f64 {
    0.5 * wrapped_sum_closed(0.5 * a, 0.5 * theta)
}

/// `F(θ + π) / F(θ)` for the periodic density; tends to `tan²(θ/2)` as `a → 0`.
pub fn functional_ratio(a: f64, theta: f64) -> f64 {
    periodic_density(a, theta + PI) / periodic_density(a, theta)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_at_right_angle() {
        let m = KickModel::new(0.37, PI / 2.0, 10).unwrap();
        let p = outcome_probabilities(&m);
        assert_eq!(p.p_up, 0.5);
        assert_eq!(p.p_down, 0.5);
    }

    #[test]
    fn born_ratio_small_a() {
        let m = KickModel::new(1e-4, PI / 3.0, 10).unwrap();
        let p = outcome_probabilities(&m);
        assert!((p.ratio() * 3.0 - 1.0).abs() < 1e-6);
    }

    #[test]
    fn endpoints_are_finite() {
        let a: f64 = 0.2;
        let p0 = outcome_probabilities(&KickModel::new(a, 0.0, 1).unwrap());
        assert!((p0.p_up - 1.0 / (1.0 + a.tanh().powi(2))).abs() < 1e-15);
        let p_pi = outcome_probabilities(&KickModel::new(1e-9, PI, 1).unwrap());
        assert!(p_pi.p_down > 1.0 - 1e-15);
        assert!(z_small_a(a, 0.0).is_infinite());
    }

    #[test]
    fn normalizer_matches_small_a_form() {
        for theta in [0.3, 1.0, 2.5] {
            let a = 1e-9;
            let p = outcome_probabilities(&KickModel::new(a, theta, 1).unwrap());
            assert!((p.z / z_small_a(a, theta) - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn numeric_wrapped_sum_matches_closed_form() {
        for &(a, psi) in &[(0.3, 0.2), (1e-3, 1.1), (0.05, -0.7), (2.0, 3.0)] {
            let num = wrapped_sum_numeric(a, psi, 10_000);
            let closed = wrapped_sum_closed(a, psi);
            assert!((num - closed).abs() < 1e-10 * closed.max(1.0), "{a} {psi}: {num} {closed}");
        }
    }

    #[test]
    fn small_a_limit_at_right_angle() {
        let a = 1e-5;
        assert!((wrapped_sum_closed(a, PI / 2.0) * PI / a - 1.0).abs() < 1e-6);
    }

    #[test]
    fn closed_form_expectation_values() {
        let (u, d) = closed_form_expectation(PI / 2.0);
        assert!((u + 0.25).abs() < 1e-15 && (d + 0.25).abs() < 1e-15);
        assert_eq!(closed_form_expectation(0.0), (0.0, 0.0));
        let (u, d) = closed_form_expectation(PI);
        assert!(u.abs() < 1e-15 && d.abs() < 1e-15);
    }

    #[test]
    fn series_agrees_with_real_part_identity() {
        for theta in [0.4, 1.3, 2.2] {
            let m = KickModel::new(0.2, theta, 100_000).unwrap();
            let (su, sd) = series_expectation(&m);
            let (fu, fd) = finite_a_expectation(0.2, theta);
            assert!((su - fu).abs() < 1e-9, "{su} {fu}");
            assert!((sd - fd).abs() < 1e-9, "{sd} {fd}");
        }
    }

    #[test]
    fn cot_residuals_shrink() {
        let r = |n| cot_identity_residual(1.0, 0.1, n).unwrap();
        for k in [100, 1000, 10_000] {
            assert!(r(10 * k) < r(k));
            assert!(r(k) <= cot_tail_constant(1.0, 0.1) / k as f64);
        }
        assert!(cot_identity_residual(PI / 2.0, 0.0, 1_000_000).unwrap() < 1e-6);
    }

    #[test]
    fn cot_pole_rejected() {
        assert!(cot_identity_residual(0.0, 0.0, 10).is_err());
        assert!(cot_identity_residual(2.0 * PI, 0.0, 10).is_err());
        assert!(cot_identity_residual(2.0 * PI, 0.1, 10).is_ok());
    }

    #[test]
    fn functional_equation_small_a() {
        for i in 1..=20 {
            let theta = 0.15 * i as f64;
            let tan2 = (0.5 * theta).tan().powi(2);
            assert!((functional_ratio(1e-7, theta) / tan2 - 1.0).abs() < 1e-10);
        }
    }
}
