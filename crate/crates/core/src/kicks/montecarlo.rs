use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use super::{sample_cauchy, KickModel};
use crate::rng::substream;
use crate::stats::{ks_two_sample, median_in_place, KsResult};
use crate::{par, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Up,
    Down,
}

impl Outcome {
    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Up => "UP",
            Outcome::Down => "DOWN",
        }
    }
}

/// Label of the branch set nearest to `phi`.
///
/// With `u = (φ + θ/2)/π`, UP branches sit at integer `u` and DOWN branches
/// at half-integers. A kick exactly midway (`u` a quarter-integer) is UP.
pub fn classify_kick(theta: f64, phi: f64) -> Outcome {
    let u = (phi + 0.5 * theta) / PI;
    let frac = u - u.floor();
    let to_integer = frac.min(1.0 - frac);
    if to_integer <= 0.25 {
        Outcome::Up
    } else {
        Outcome::Down
    }
}

const SAMPLE_CHUNK: u64 = 4096;

#[derive(Debug, Clone, PartialEq)]
pub struct KickSampleSet {
    pub kicks: Vec<f64>,
    pub outcomes: Vec<Outcome>,
    pub seed: u64,
}

impl KickSampleSet {
    pub fn len(&self) -> usize {
        self.kicks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kicks.is_empty()
    }

    pub fn fraction_up(&self) -> f64 {
        let ups = self.outcomes.iter().filter(|&&o| o == Outcome::Up).count();
        ups as f64 / self.outcomes.len() as f64
    }
}

/// `count` raw Cauchy kicks for `model`, labelled by branch.
pub fn sample_kicks(model: &KickModel, count: usize, seed: u64) -> KickSampleSet {
    let chunks = (count as u64).div_ceil(SAMPLE_CHUNK);
    let parts = par::map_range(0..chunks, |c| {
        let mut rng = substream(seed, "kicks/samples", c);
        let len = (count as u64 - c * SAMPLE_CHUNK).min(SAMPLE_CHUNK);
        (0..len).map(|_| sample_cauchy(model.a, &mut rng)).collect::<Vec<_>>()
    });
    let kicks: Vec<f64> = parts.into_iter().flatten().collect();
    let outcomes = kicks.iter().map(|&k| classify_kick(model.theta, k)).collect();
    KickSampleSet {
        kicks,
        outcomes,
        seed,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleFamily {
    Cauchy,
    /// Control: normal with standard deviation `a`.
    Gaussian,
}

impl SampleFamily {
    fn draw(self, a: f64, rng: &mut impl Rng) -> f64 {
        match self {
            SampleFamily::Cauchy => sample_cauchy(a, rng),
            SampleFamily::Gaussian => a * rng.sample::<f64, _>(StandardNormal),
        }
    }

    fn tag(self) -> &'static str {
        match self {
            SampleFamily::Cauchy => "cauchy",
            SampleFamily::Gaussian => "gaussian",
        }
    }

    /// Asymptotic standard deviation of the median of `batch` draws.
    fn median_sd(self, a: f64, batch: usize) -> f64 {
        let b = batch as f64;
        match self {
            SampleFamily::Cauchy => PI * a / (2.0 * b.sqrt()),
            SampleFamily::Gaussian => a * (PI / (2.0 * b)).sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelfAveragingReport {
    pub family: SampleFamily,
    pub a: f64,
    pub batch: usize,
    pub repeats: usize,
    /// Two-sample KS test of batch means against single draws.
    pub ks: KsResult,
    pub alpha: f64,
    pub passes: bool,
    pub mean_iqr: f64,
    pub single_iqr: f64,
    pub median_spread: f64,
    pub median_spread_predicted: f64,
}

const REPEAT_CHUNK: u64 = 64;

fn iqr(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let q = |p: f64| {
        let pos = p * (v.len() - 1) as f64;
        let lo = pos.floor() as usize;
        let hi = pos.ceil() as usize;
        v[lo] + (pos - lo as f64) * (v[hi] - v[lo])
    };
    q(0.75) - q(0.25)
}

/// Compare the distribution of `batch`-sample means with single draws.
///
/// For Cauchy draws the mean of a batch is distributed exactly like one
/// draw, so the KS test should pass at level 1%; for the Gaussian control
/// the means are `√batch` times narrower and it should fail. Batch medians
/// are reported as well: they do concentrate, at the rate `1/√batch`.
pub fn self_averaging_test(
    a: f64,
    batch: usize,
    repeats: usize,
    seed: u64,
    family: SampleFamily,
) -> Result<SelfAveragingReport> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::Validation(format!("scale a must be positive, got {a}")));
    }
    if batch == 0 {
        return Err(Error::validation("batch must be at least 1"));
    }
    if repeats < 100 {
        return Err(Error::Validation(format!("repeats must be at least 100, got {repeats}")));
    }
    let chunks = (repeats as u64).div_ceil(REPEAT_CHUNK);
    let span = |c: u64| (repeats as u64 - c * REPEAT_CHUNK).min(REPEAT_CHUNK);
    let batch_tag = format!("kicks/selfavg/{}/batches", family.tag());
    let single_tag = format!("kicks/selfavg/{}/singles", family.tag());

    let batches = par::map_range(0..chunks, |c| {
        let mut rng = substream(seed, &batch_tag, c);
        let mut buf = vec![0.0; batch];
        (0..span(c))
            .map(|_| {
                buf.iter_mut().for_each(|x| *x = family.draw(a, &mut rng));
                let mean = buf.iter().sum::<f64>() / batch as f64;
                (mean, median_in_place(&mut buf))
            })
            .collect::<Vec<_>>()
    });
    let (means, medians): (Vec<f64>, Vec<f64>) = batches.into_iter().flatten().unzip();
    let singles: Vec<f64> = par::map_range(0..chunks, |c| {
        let mut rng = substream(seed, &single_tag, c);
        (0..span(c)).map(|_| family.draw(a, &mut rng)).collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect();

    let ks = ks_two_sample(&means, &singles)?;
    let alpha = 0.01;
    let centre = medians.iter().sum::<f64>() / medians.len() as f64;
    let median_spread = (medians.iter().map(|m| (m - centre).powi(2)).sum::<f64>()
        / (medians.len() as f64 - 1.0))
        .sqrt();
    Ok(SelfAveragingReport {
        family,
        a,
        batch,
        repeats,
        passes: ks.passes(alpha),
        ks,
        alpha,
        mean_iqr: iqr(&means),
        single_iqr: iqr(&singles),
        median_spread,
        median_spread_predicted: family.median_sd(a, batch),
    })
}
