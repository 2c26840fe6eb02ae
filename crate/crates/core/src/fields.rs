//! Magnetic field of a finite two-wire Stern–Gerlach surrogate.
//!
//! The loop lies in the plane `z = 0`: straight wires at `x = ±s` running
//! from `y = −L/2` to `y = L/2`, closed by semicircles of radius `s` beyond
//! each end. Current circulates clockwise seen from `+z`, so the wire at
//! `x = +s` carries it toward `−y`. Atoms fly along `+y` at height `z`.
//! All quantities are SI.

use std::f64::consts::PI;

use nalgebra::Vector3;

use crate::{par, quad, Error, Result};

pub const MU0: f64 = 4.0e-7 * PI;
/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Bohr magneton, J/T.
pub const BOHR_MAGNETON: f64 = 9.274_010_078_3e-24;
/// Elementary charge, C.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WireLoop {
    /// Half-separation of the straight wires.
    pub s: f64,
    /// Length of the straight wires.
    pub length: f64,
    pub current: f64,
    pub mu0: f64,
}

impl WireLoop {
    pub fn new(s: f64, length: f64, current: f64) -> Result<Self> {
        let ok = s > 0.0 && length > 0.0 && s.is_finite() && length.is_finite();
        if !ok {
            return Err(Error::Validation(format!(
                "loop needs s > 0 and L > 0, got s = {s}, L = {length}"
            )));
        }
        if current == 0.0 || !current.is_finite() {
            return Err(Error::validation("loop current must be finite and nonzero"));
        }
        Ok(Self {
            s,
            length,
            current,
            mu0: MU0,
        })
    }

    fn prefactor(&self) -> f64 {
        self.mu0 * self.current / (4.0 * PI)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub z: f64,
    pub y_grid: Vec<f64>,
    pub x: f64,
}

impl Trajectory {
    pub fn new(z: f64, y_grid: Vec<f64>, x: f64) -> Result<Self> {
        if !(z > 0.0) {
            return Err(Error::Validation(format!("trajectory height must be positive, got {z}")));
        }
        if y_grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::validation("trajectory y grid must be strictly ascending"));
        }
        Ok(Self { z, y_grid, x })
    }

    /// `points` evenly spaced samples on `[y_min, y_max]`.
    pub fn linspace(z: f64, y_min: f64, y_max: f64, points: usize, x: f64) -> Result<Self> {
        if points < 2 || !(y_min < y_max) {
            return Err(Error::validation("need at least two points on a non-empty y range"));
        }
        let step = (y_max - y_min) / (points - 1) as f64;
        Self::new(z, (0..points).map(|i| y_min + step * i as f64).collect(), x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample {
    pub position: Vector3<f64>,
    pub b: Vector3<f64>,
    pub dbdx: Option<Vector3<f64>>,
}

fn check_height(z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::Validation(format!("observation height must be positive, got {z}")))
    }
}

/// Field of both straight wires at `(0, y, z)`:
/// `B_z = −(μ₀ I s / 2π b²)[sin θ₂ − sin θ₁]`, `sin θ = λ/√(λ² + b²)`,
/// `λ = ±L/2 − y`, `b² = s² + z²`.
pub fn straight_wire_field(lp: &WireLoop, y: f64, z: f64) -> Result<Vector3<f64>> {
    check_height(z)?;
    let b2 = lp.s * lp.s + z * z;
    let sin = |l: f64| l / (l * l + b2).sqrt();
    let half = 0.5 * lp.length;
    let bz = lp.prefactor() * (-2.0 * lp.s / b2) * (sin(half - y) - sin(-half - y));
    Ok(Vector3::new(0.0, 0.0, bz))
}

/// `∂B/∂x` of the straight wires on `x = 0`: `−(μ₀I/4π)·2sz·[A₊ − A₋] x̂`
/// with `A = λ(2λ² + 3b²)/(b⁴(λ² + b²)^{3/2})`.
pub fn straight_wire_gradient_x(lp: &WireLoop, y: f64, z: f64) -> Result<Vector3<f64>> {
    check_height(z)?;
    let b2 = lp.s * lp.s + z * z;
    let a = |l: f64| l * (2.0 * l * l + 3.0 * b2) / (b2 * b2 * (l * l + b2).powf(1.5));
    let half = 0.5 * lp.length;
    let gx = -lp.prefactor() * 2.0 * lp.s * z * (a(half - y) - a(-half - y));
    Ok(Vector3::new(gx, 0.0, 0.0))
}

/// Closed form `(μ₀I/π)[1/√(ȳ² + s² + z²) − 1/√((ȳ + s)² + z²)]` for the
/// left-semicircle `B_x`, with `ȳ = y + L/2`.
pub fn semicircle_bx(lp: &WireLoop, y_bar: f64, z: f64) -> Result<f64> {
    check_height(z)?;
    let s = lp.s;
    Ok(lp.mu0 * lp.current / PI * (bracket_terms(y_bar, s, z)))
}

fn bracket_terms(y_bar: f64, s: f64, z: f64) -> f64 {
    1.0 / (y_bar * y_bar + s * s + z * z).sqrt() - 1.0 / ((y_bar + s).powi(2) + z * z).sqrt()
}

/// Dimensionless bracket `4/√(Y² + S² + 1) − 4/√((Y + S)² + 1)`, with
/// `Y = ȳ/z` and `S = s/z`.
pub fn bracket(y: f64, s: f64) -> f64 {
    4.0 * bracket_terms(y, s, 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContourPiece {
    /// Straight wire at `x = +s`.
    Top,
    /// Straight wire at `x = −s`.
    Bottom,
    /// Semicircle beyond `y = +L/2`.
    Right,
    /// Semicircle beyond `y = −L/2`.
    Left,
}

impl ContourPiece {
    pub const ALL: [ContourPiece; 4] = [
        ContourPiece::Top,
        ContourPiece::Left,
        ContourPiece::Bottom,
        ContourPiece::Right,
    ];

    /// Point and tangent `dr/du` at `u ∈ [0, 1]`, oriented along the current.
    fn at(self, lp: &WireLoop, u: f64) -> (Vector3<f64>, Vector3<f64>) {
        let (s, l) = (lp.s, lp.length);
        match self {
            ContourPiece::Top => (
                Vector3::new(s, 0.5 * l - u * l, 0.0),
                Vector3::new(0.0, -l, 0.0),
            ),
            ContourPiece::Bottom => (
                Vector3::new(-s, -0.5 * l + u * l, 0.0),
                Vector3::new(0.0, l, 0.0),
            ),
            ContourPiece::Left => {
                let (sn, cs) = (PI * u).sin_cos();
                (
                    Vector3::new(s * cs, -0.5 * l - s * sn, 0.0),
                    Vector3::new(-s * sn, -s * cs, 0.0) * PI,
                )
            }
            ContourPiece::Right => {
                let (sn, cs) = (PI * u).sin_cos();
                (
                    Vector3::new(-s * cs, 0.5 * l + s * sn, 0.0),
                    Vector3::new(s * sn, s * cs, 0.0) * PI,
                )
            }
        }
    }

    fn distance(self, lp: &WireLoop, p: &Vector3<f64>) -> f64 {
        let (s, half) = (lp.s, 0.5 * lp.length);
        match self {
            ContourPiece::Top | ContourPiece::Bottom => {
                let x = if self == ContourPiece::Top { s } else { -s };
                let dy = (p.y.clamp(-half, half)) - p.y;
                ((p.x - x).powi(2) + dy * dy + p.z * p.z).sqrt()
            }
            ContourPiece::Left | ContourPiece::Right => {
                let (cy, outward) = if self == ContourPiece::Left {
                    (-half, -1.0)
                } else {
                    (half, 1.0)
                };
                let (rx, ry) = (p.x, p.y - cy);
                let rho = rx.hypot(ry);
                let in_plane = if ry * outward >= 0.0 {
                    (rho - s).abs()
                } else {
                    // nearest point is an end of the arc
                    ((rx.abs() - s).powi(2) + ry * ry).sqrt()
                };
                (in_plane * in_plane + p.z * p.z).sqrt()
            }
        }
    }
}

/// Distance from `p` to the loop.
pub fn distance_to_contour(lp: &WireLoop, p: &Vector3<f64>) -> f64 {
    ContourPiece::ALL
        .iter()
        .map(|c| c.distance(lp, p))
        .fold(f64::INFINITY, f64::min)
}

fn integrand(lp: &WireLoop, piece: ContourPiece, p: &Vector3<f64>, u: f64) -> Vector3<f64> {
    let (r, dr) = piece.at(lp, u);
    let d = p - r;
    let n2 = d.norm_squared();
    dr.cross(&d) / (n2 * n2.sqrt())
}

fn check_off_contour(lp: &WireLoop, p: &Vector3<f64>) -> Result<()> {
    let d = distance_to_contour(lp, p);
    if d < 1e-9 * lp.s {
        return Err(Error::Singularity(format!(
            "point ({}, {}, {}) lies on the current loop (distance {d:e})",
            p.x, p.y, p.z
        )));
    }
    Ok(())
}

/// Composite-Simpson Biot–Savart field of one contour piece.
pub fn biot_savart_piece(
    lp: &WireLoop,
    piece: ContourPiece,
    p: &Vector3<f64>,
    n_nodes: usize,
) -> Result<Vector3<f64>> {
    check_off_contour(lp, p)?;
    let n = n_nodes.max(2).next_multiple_of(2);
    let h = 1.0 / n as f64;
    let mut odd = Vector3::zeros();
    let mut even = Vector3::zeros();
    for i in 1..n {
        let f = integrand(lp, piece, p, i as f64 * h);
        if i % 2 == 1 {
            odd += f;
        } else {
            even += f;
        }
    }
    let ends = integrand(lp, piece, p, 0.0) + integrand(lp, piece, p, 1.0);
    Ok((ends + odd * 4.0 + even * 2.0) * (h / 3.0 * lp.prefactor()))
}

/// Field of the full loop at `p`, composite Simpson with `n_nodes`
/// intervals on each of the four pieces.
pub fn biot_savart_quadrature(lp: &WireLoop, p: &Vector3<f64>, n_nodes: usize) -> Result<Vector3<f64>> {
    let mut total = Vector3::zeros();
    for piece in ContourPiece::ALL {
        total += biot_savart_piece(lp, piece, p, n_nodes)?;
    }
    Ok(total)
}

/// Field of one semicircle by adaptive Gauss–Kronrod quadrature.
pub fn semicircle_field(lp: &WireLoop, piece: ContourPiece, p: &Vector3<f64>) -> Result<Vector3<f64>> {
    if matches!(piece, ContourPiece::Top | ContourPiece::Bottom) {
        return Err(Error::validation("semicircle_field takes the Left or Right piece"));
    }
    check_off_contour(lp, p)?;
    let component = |k: usize| {
        quad::adaptive(|u| integrand(lp, piece, p, u)[k], 0.0, 1.0, 1e-300, 1e-13, 4000).value
    };
    Ok(Vector3::new(component(0), component(1), component(2)) * lp.prefactor())
}

/// Field on `x = 0` from the straight-wire closed form plus both semicircles.
pub fn field_on_axis(lp: &WireLoop, y: f64, z: f64) -> Result<Vector3<f64>> {
    let p = Vector3::new(0.0, y, z);
    Ok(straight_wire_field(lp, y, z)?
        + semicircle_field(lp, ContourPiece::Left, &p)?
        + semicircle_field(lp, ContourPiece::Right, &p)?)
}

/// `|B_far| / |B_near|` for the two semicircles at `(0, y, z)`, `near`
/// being the one at the entrance (`Left`). Measures how well the
/// one-semicircle-at-a-time picture holds.
pub fn far_semicircle_fraction(lp: &WireLoop, y: f64, z: f64) -> Result<f64> {
    let p = Vector3::new(0.0, y, z);
    let near = semicircle_field(lp, ContourPiece::Left, &p)?.norm();
    let far = semicircle_field(lp, ContourPiece::Right, &p)?.norm();
    Ok(far / near)
}

/// Quadrature field and its central-difference `x` derivative (step `1e-6·s`).
pub fn field_sample(lp: &WireLoop, p: Vector3<f64>, n_nodes: usize) -> Result<FieldSample> {
    let h = 1e-6 * lp.s;
    let dx = Vector3::new(h, 0.0, 0.0);
    let b = biot_savart_quadrature(lp, &p, n_nodes)?;
    let plus = biot_savart_quadrature(lp, &(p + dx), n_nodes)?;
    let minus = biot_savart_quadrature(lp, &(p - dx), n_nodes)?;
    Ok(FieldSample {
        position: p,
        b,
        dbdx: Some((plus - minus) / (2.0 * h)),
    })
}

/// Field samples along `traj`, one per grid point, in grid order.
pub fn field_profile(lp: &WireLoop, traj: &Trajectory, n_nodes: usize) -> Result<Vec<FieldSample>> {
    par::map_slice(&traj.y_grid, |&y| {
        field_sample(lp, Vector3::new(traj.x, y, traj.z), n_nodes)
    })
    .into_iter()
    .collect()
}

fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-10 * (1.0 + lo.abs()) {
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
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// `max_Y bracket(Y, S)` and its location, `Y ≥ 0`.
pub fn bracket_max_over_y(s: f64) -> (f64, f64) {
    let y_max = 10.0 * s.max(1.0);
    let points = 400;
    let step = y_max / points as f64;
    let best = (0..=points)
        .map(|i| i as f64 * step)
        .max_by(|a, b| bracket(*a, s).total_cmp(&bracket(*b, s)))
        .unwrap_or(0.0);
    golden_max(|y| bracket(y, s), (best - step).max(0.0), best + step)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BracketMaximum {
    pub s_over_z: f64,
    pub y_over_z: f64,
    pub value: f64,
}

/// Maximize the bracket over `ȳ/z` for each `s/z` in `grid`, then refine
/// `s/z` between the neighbours of the best grid entry.
pub fn bracket_maximum(s_over_z_grid: &[f64]) -> Result<BracketMaximum> {
    if s_over_z_grid.is_empty() || s_over_z_grid.iter().any(|&s| !(s > 0.0)) {
        return Err(Error::validation("s/z grid must be non-empty and positive"));
    }
    let mut grid = s_over_z_grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let values: Vec<f64> = grid.iter().map(|&s| bracket_max_over_y(s).1).collect();
    let k = values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let (s_star, value) = if grid.len() >= 3 {
        let lo = grid[k.saturating_sub(1)];
        let hi = grid[(k + 1).min(grid.len() - 1)];
        golden_max(|s| bracket_max_over_y(s).1, lo, hi)
    } else {
        (grid[k], values[k])
    };
    Ok(BracketMaximum {
        s_over_z: s_star,
        y_over_z: bracket_max_over_y(s_star).0,
        value,
    })
}

/// Peak approach-path bracket relative to the mid-magnet straight-wire
/// field `4S/(1 + S²)` in the same units `μ₀I/(4πz)`.
pub fn external_internal_ratio(s_over_z: f64) -> f64 {
    let s = s_over_z;
    bracket_max_over_y(s).1.abs() / (4.0 * s / (1.0 + s * s))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KickEstimate {
    pub delta_t: f64,
    /// Field giving a spin rotation of order one, `ħ/(μ_B Δt)`, in tesla.
    pub b_required: f64,
    /// `L·B/Δt`, volts per metre.
    pub e_field: f64,
    /// `ħ/Δt` in electron-volts.
    pub photon_energy: f64,
}

/// Order-of-magnitude field, electric-field and photon-energy scales for an
/// interaction lasting `delta_t` over a path of length `length`.
pub fn kick_estimates(delta_t: f64, length: f64) -> Result<KickEstimate> {
    if !(delta_t > 0.0 && delta_t.is_finite()) {
        return Err(Error::Validation(format!("delta_t must be positive, got {delta_t}")));
    }
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::Validation(format!("length must be positive, got {length}")));
    }
    let b = HBAR / (BOHR_MAGNETON * delta_t);
    Ok(KickEstimate {
        delta_t,
        b_required: b,
        e_field: length * b / delta_t,
        photon_energy: HBAR / delta_t / ELEMENTARY_CHARGE,
    })
}
