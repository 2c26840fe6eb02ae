use std::f64::consts::PI;

use super::closed_form_expectation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleMode {
    /// Particles sorted by outcome: `cos²(θ/2)⟨φ⟩_UP`.
    Sorted,
    /// All particles: `cos²(θ/2)⟨φ⟩_UP + sin²(θ/2)⟨φ⟩_DOWN`.
    Total,
}

impl AngleMode {
    pub fn as_str(self) -> &'static str {
        match self {
            AngleMode::Sorted => "sorted",
            AngleMode::Total => "total",
        }
    }
}

/// Signed signal for entry angle `theta`; the optimizer maximizes its magnitude.
pub fn objective(mode: AngleMode, theta: f64) -> f64 {
    let (up, down) = closed_form_expectation(theta);
    let (s, c) = (0.5 * theta).sin_cos();
    match mode {
        AngleMode::Sorted => c * c * up,
        AngleMode::Total => c * c * up + s * s * down,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntryAngle {
    pub mode: AngleMode,
    pub theta_star: f64,
    pub objective_star: f64,
    /// `(θ, objective)` on the search grid.
    pub trace: Vec<(f64, f64)>,
}

pub const GRID_POINTS: usize = 1801;

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-12 {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    0.5 * (lo + hi)
}

/// Maximize `|objective|` over `[0, π]`: dense grid, then golden-section
/// search between the neighbours of the best grid point. Equal maxima
/// (within 1e-12 relative) resolve to the smallest angle.
pub fn optimize_entry_angle(mode: AngleMode) -> EntryAngle {
    let step = PI / (GRID_POINTS - 1) as f64;
    let trace: Vec<(f64, f64)> = (0..GRID_POINTS)
        .map(|i| {
            let t = i as f64 * step;
            (t, objective(mode, t))
        })
        .collect();
    let best = trace.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
    let idx = trace
        .iter()
        .position(|p| p.1.abs() >= best * (1.0 - 1e-12))
        .unwrap_or(0);
    let lo = idx.saturating_sub(1) as f64 * step;
    let hi = ((idx + 1).min(GRID_POINTS - 1)) as f64 * step;
    let theta_star = golden_max(|t| objective(mode, t).abs(), lo, hi);
    EntryAngle {
        mode,
        theta_star,
        objective_star: objective(mode, theta_star),
        trace,
    }
}
