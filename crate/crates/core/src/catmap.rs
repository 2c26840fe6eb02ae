//! Cat-map gas, coarse-grained entropy and the two-time boundary problem.
//!
//! The map `(x, y) -> (x + y, x + 2y) mod 1` preserves area and mixes. A
//! gas of points released from a small box spreads over the unit square and
//! its coarse-grained entropy rises to a plateau. Conditioning the same gas
//! on also occupying a small box at a later time (a two-time boundary
//! condition) makes it regather, while its early evolution looks unchanged.

use rand::Rng;

use crate::rng::substream;
use crate::{par, Error, Result};

/// Point on the unit torus, coordinates in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// `v mod 1` in `[0, 1)`: subtract the floor, then map a rounded-up 1.0 to 0.0.
#[inline]
pub fn wrap_unit(v: f64) -> f64 {
    let r = v - v.floor();
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

#[inline]
pub fn cat_step(p: Point) -> Point {
    Point {
        x: wrap_unit(p.x + p.y),
        y: wrap_unit(p.x + 2.0 * p.y),
    }
}

/// Inverse map `(x, y) -> (2x - y, y - x) mod 1`.
#[inline]
pub fn cat_step_inverse(p: Point) -> Point {
    Point {
        x: wrap_unit(2.0 * p.x - p.y),
        y: wrap_unit(p.y - p.x),
    }
}

pub fn iterate(mut p: Point, steps: usize) -> Point {
    for _ in 0..steps {
        p = cat_step(p);
    }
    p
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatEnsemble {
    pub points: Vec<Point>,
}

impl CatEnsemble {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        let inside = |v: f64| (0.0..1.0).contains(&v);
        if points.iter().any(|p| !(inside(p.x) && inside(p.y))) {
            return Err(Error::validation("ensemble points must lie in [0,1)^2"));
        }
        Ok(Self { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `n` points uniform in `rect`, drawn from chunk 0 of stream `tag`.
    pub fn uniform_in(rect: &Rect, n: usize, seed: u64, tag: &str) -> Self {
        let mut rng = substream(seed, tag, 0);
        Self {
            points: (0..n).map(|_| rect.sample(&mut rng)).collect(),
        }
    }
}

pub fn evolve(e: &CatEnsemble, steps: usize) -> CatEnsemble {
    CatEnsemble {
        points: e.points.iter().map(|&p| iterate(p, steps)).collect(),
    }
}

/// Axis-aligned box `[x0, x1) x [y0, y1)` inside the unit square.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Rect {
    pub const UNIT: Rect = Rect {
        x0: 0.0,
        x1: 1.0,
        y0: 0.0,
        y1: 1.0,
    };

    pub fn new(x0: f64, x1: f64, y0: f64, y1: f64) -> Result<Self> {
        let r = Self { x0, x1, y0, y1 };
        r.validate()?;
        Ok(r)
    }

    fn validate(&self) -> Result<()> {
        let ok = 0.0 <= self.x0
            && self.x0 < self.x1
            && self.x1 <= 1.0
            && 0.0 <= self.y0
            && self.y0 < self.y1
            && self.y1 <= 1.0;
        if ok {
            Ok(())
        } else {
            Err(Error::Validation(format!(
                "box {self:?} must have positive area inside the unit square"
            )))
        }
    }

    pub fn area(&self) -> f64 {
        (self.x1 - self.x0) * (self.y1 - self.y0)
    }

    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.x0 && p.x < self.x1 && p.y >= self.y0 && p.y < self.y1
    }

    pub fn sample(&self, rng: &mut impl Rng) -> Point {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        // keep strictly inside the half-open box under rounding
        let x = (self.x0 + u * (self.x1 - self.x0)).min(self.x1.next_down());
        let y = (self.y0 + v * (self.y1 - self.y0)).min(self.y1.next_down());
        Point { x, y }
    }
}

/// Partition of the unit square into `cols x rows` equal-area grains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrainGrid {
    pub cols: usize,
    pub rows: usize,
}

impl GrainGrid {
    /// `g x g` grains.
    pub fn square(g: usize) -> Result<Self> {
        Self::new(g, g)
    }

    pub fn new(cols: usize, rows: usize) -> Result<Self> {
        if cols == 0 || rows == 0 {
            return Err(Error::validation("grain grid needs at least one grain"));
        }
        Ok(Self { cols, rows })
    }

    /// `count` grains arranged as close to square as the factors of `count`
    /// allow (a prime count gives vertical strips).
    pub fn with_count(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(Error::validation("grain count must be positive"));
        }
        let rows = (1..=count.isqrt())
            .rev()
            .find(|r| count.is_multiple_of(*r))
            .unwrap_or(1);
        Self::new(count / rows, rows)
    }

    pub fn count(&self) -> usize {
        self.cols * self.rows
    }

    pub fn index(&self, p: Point) -> usize {
        let cx = ((p.x * self.cols as f64) as usize).min(self.cols - 1);
        let cy = ((p.y * self.rows as f64) as usize).min(self.rows - 1);
        cy * self.cols + cx
    }

    pub fn occupancy(&self, e: &CatEnsemble) -> Vec<usize> {
        let mut counts = vec![0; self.count()];
        for &p in &e.points {
            counts[self.index(p)] += 1;
        }
        counts
    }
}

/// Plug-in entropy `-sum p ln p` of grain occupation counts.
pub fn entropy_of_counts(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let n = total as f64;
    let s = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum::<f64>();
    s.max(0.0)
}

/// Coarse-grained entropy of `e` on `grid`.
pub fn entropy(e: &CatEnsemble, grid: &GrainGrid) -> Result<f64> {
    if e.is_empty() {
        return Err(Error::Precondition("entropy of an empty ensemble".into()));
    }
    Ok(entropy_of_counts(&grid.occupancy(e)))
}

/// Entropy at each time `0..=steps`.
pub fn entropy_trace(e: &CatEnsemble, grid: &GrainGrid, steps: usize) -> Result<Vec<f64>> {
    let mut current = e.clone();
    let mut trace = Vec::with_capacity(steps + 1);
    trace.push(entropy(&current, grid)?);
    for _ in 0..steps {
        current = evolve(&current, 1);
        trace.push(entropy(&current, grid)?);
    }
    Ok(trace)
}

pub const DEFAULT_CANDIDATE_BUDGET: u64 = 10_000_000;
/// Candidates per RNG substream chunk.
pub const CANDIDATE_CHUNK: u64 = 4096;
/// Chunks evaluated per parallel wave.
const WAVE: u64 = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct TwoTimeProblem {
    pub initial_box: Rect,
    pub final_box: Rect,
    pub horizon: usize,
    pub n_target: usize,
    pub seed: u64,
    pub candidate_budget: u64,
}

impl TwoTimeProblem {
    pub fn new(initial_box: Rect, final_box: Rect, horizon: usize, n_target: usize, seed: u64) -> Self {
        Self {
            initial_box,
            final_box,
            horizon,
            n_target,
            seed,
            candidate_budget: DEFAULT_CANDIDATE_BUDGET,
        }
    }

    fn validate(&self) -> Result<()> {
        self.initial_box.validate()?;
        self.final_box.validate()?;
        if self.n_target == 0 {
            return Err(Error::validation("n_target must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TwoTimeSolution {
    /// Accepted initial points, in candidate order.
    pub ensemble: CatEnsemble,
    /// Candidates drawn up to and including the last accepted one.
    pub candidates: u64,
}

impl TwoTimeSolution {
    pub fn acceptance_rate(&self) -> f64 {
        self.ensemble.len() as f64 / self.candidates as f64
    }
}

/// Accepted points of one chunk, tagged with their global candidate index.
fn filter_chunk(prob: &TwoTimeProblem, chunk: u64) -> Vec<(u64, Point)> {
    let mut rng = substream(prob.seed, "catmap/two-time", chunk);
    let base = chunk * CANDIDATE_CHUNK;
    (0..CANDIDATE_CHUNK)
        .filter_map(|i| {
            let p = prob.initial_box.sample(&mut rng);
            prob.final_box
                .contains(iterate(p, prob.horizon))
                .then_some((base + i, p))
        })
        .collect()
}

/// Uniform samples from `initial_box` whose image after `horizon` steps lies
/// in `final_box`, found by forward filtering of uniform candidates.
///
/// Candidates are drawn in fixed-size chunks, each from its own substream, so
/// the accepted set (the first `n_target` in candidate order) does not depend
/// on how chunks are scheduled.
pub fn solve_two_time(prob: &TwoTimeProblem) -> Result<TwoTimeSolution> {
    prob.validate()?;
    let max_chunks = prob.candidate_budget.div_ceil(CANDIDATE_CHUNK);
    let mut accepted: Vec<(u64, Point)> = Vec::with_capacity(prob.n_target);
    let mut next_chunk = 0;
    while next_chunk < max_chunks {
        let end = (next_chunk + WAVE).min(max_chunks);
        let waves = par::map_range(next_chunk..end, |c| filter_chunk(prob, c));
        for found in waves {
            for (idx, p) in found {
                if idx >= prob.candidate_budget {
                    break;
                }
                accepted.push((idx, p));
                if accepted.len() == prob.n_target {
                    return Ok(TwoTimeSolution {
                        ensemble: CatEnsemble {
                            points: accepted.into_iter().map(|(_, p)| p).collect(),
                        },
                        candidates: idx + 1,
                    });
                }
            }
        }
        next_chunk = end;
    }
    Err(Error::BudgetExhausted {
        budget: prob.candidate_budget,
        accepted: accepted.len(),
        rate: accepted.len() as f64 / prob.candidate_budget as f64,
    })
}

/// Entropy over `t = 0..=horizon` for the constrained and unconstrained gas.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyTraces {
    pub constrained: Vec<f64>,
    pub unconstrained: Vec<f64>,
    pub acceptance_rate: f64,
}

/// Run the two-time experiment. The unconstrained gas has the same size and
/// initial box, drawn from a separate substream of the same seed.
pub fn entropy_experiment(prob: &TwoTimeProblem, grid: &GrainGrid) -> Result<EntropyTraces> {
    let solution = solve_two_time(prob)?;
    let free = CatEnsemble::uniform_in(&prob.initial_box, prob.n_target, prob.seed, "catmap/unconstrained");
    Ok(EntropyTraces {
        constrained: entropy_trace(&solution.ensemble, grid, prob.horizon)?,
        unconstrained: entropy_trace(&free, grid, prob.horizon)?,
        acceptance_rate: solution.acceptance_rate(),
    })
}
