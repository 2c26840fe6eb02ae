//! Cauchy-distributed spin kicks.
//!
//! A spin entering at angle `θ` ends UP when its kick `φ` lands on a branch
//! `nπ − θ/2` and DOWN on `(n + 1/2)π − θ/2`. With Cauchy kicks of scale `a`
//! the wrapped sums over branches reproduce Born probabilities as `a → 0`;
//! the same sums give the expected kick size conditioned on the outcome.

mod cauchy;
mod montecarlo;
mod optimize;
mod series;

pub use cauchy::{cauchy_cdf, cauchy_pdf, cauchy_quantile, sample_cauchy};
pub use montecarlo::{
    classify_kick, sample_kicks, self_averaging_test, KickSampleSet, Outcome, SampleFamily,
    SelfAveragingReport,
};
pub use optimize::{objective, optimize_entry_angle, AngleMode, EntryAngle};
pub use series::{
    closed_form_expectation, conditional_kick_expectation, cot_identity_residual,
    cot_identity_residual_parts, cot_partial_sum, cot_tail_constant, finite_a_expectation,
    functional_ratio, outcome_probabilities, outcome_probabilities_numeric, periodic_density,
    series_expectation, wrapped_sum_closed, wrapped_sum_numeric, z_small_a, KickExpectation,
    OutcomeProbabilities,
};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KickModel {
    pub a: f64,
    pub theta: f64,
    pub n_max: u64,
}

impl KickModel {
    pub fn new(a: f64, theta: f64, n_max: u64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::Validation(format!("Cauchy scale a must be positive, got {a}")));
        }
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::Validation(format!("entry angle must lie in [0, pi], got {theta}")));
        }
        if n_max == 0 {
            return Err(Error::validation("n_max must be at least 1"));
        }
        Ok(Self { a, theta, n_max })
    }

    /// Branch argument of the UP sum.
    pub fn psi_up(&self) -> f64 {
        0.5 * self.theta
    }

    /// Branch argument of the DOWN sum.
    pub fn psi_down(&self) -> f64 {
        0.5 * (self.theta - std::f64::consts::PI)
    }
}
