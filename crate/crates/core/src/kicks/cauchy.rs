use std::f64::consts::PI;

use rand::Rng;

use crate::rng::open_unit;
use crate::{Error, Result};

fn check_scale(a: f64) -> Result<()> {
    if a > 0.0 && a.is_finite() {
        Ok(())
    } else {
        Err(Error::Validation(format!("Cauchy scale a must be positive, got {a}")))
    }
}

/// Density `(a/π) / (x² + a²)`.
pub fn cauchy_pdf(a: f64, x: f64) -> Result<f64> {
    check_scale(a)?;
    Ok(a / PI / (x * x + a * a))
}

pub fn cauchy_cdf(a: f64, x: f64) -> Result<f64> {
    check_scale(a)?;
    Ok(0.5 + (x / a).atan() / PI)
}

/// Inverse CDF `a·tan(π(u − 1/2))`.
pub fn cauchy_quantile(a: f64, u: f64) -> f64 {
    if u == 0.5 {
        return 0.0;
    }
    a * (PI * (u - 0.5)).tan()
}

pub fn sample_cauchy(a: f64, rng: &mut impl Rng) -> f64 {
    cauchy_quantile(a, open_unit(rng))
}
