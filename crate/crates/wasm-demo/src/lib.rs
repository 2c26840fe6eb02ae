//! Browser bindings: survival curve, cat-map two-time experiment and the
//! magnet entrance field.

use nalgebra::Vector3;
use specstate::catmap::{
    entropy_trace, evolve, solve_two_time, CatEnsemble, GrainGrid, Rect, TwoTimeProblem,
};
use specstate::decay::{survival_curve, time_grid, BandSpec, DecayDiagnostics, DecayModel, QuantumState};
use specstate::fields::{biot_savart_quadrature, WireLoop};
use wasm_bindgen::prelude::*;

fn js(e: specstate::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub struct DecayRun {
    times: Vec<f64>,
    survival: Vec<f64>,
    zeno_time: f64,
    golden_rule_slope: f64,
    recurrence_time: f64,
}

#[wasm_bindgen]
impl DecayRun {
    pub fn times(&self) -> Vec<f64> {
        self.times.clone()
    }

    pub fn survival(&self) -> Vec<f64> {
        self.survival.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn zeno_time(&self) -> f64 {
        self.zeno_time
    }

    #[wasm_bindgen(getter)]
    pub fn golden_rule_slope(&self) -> f64 {
        self.golden_rule_slope
    }

    #[wasm_bindgen(getter)]
    pub fn recurrence_time(&self) -> f64 {
        self.recurrence_time
    }
}

/// One level decaying into an equally spaced band.
#[wasm_bindgen]
pub fn decay(band_levels: usize, spacing: f64, coupling: f64, t_max: f64, dt: f64) -> Result<DecayRun, JsError> {
    if !(dt > 0.0 && t_max > 0.0 && t_max / dt <= 20_000.0) {
        return Err(JsError::new("need dt > 0 and at most 20000 time steps"));
    }
    let spec = BandSpec::with_spacing(1, band_levels, spacing, coupling);
    let model = DecayModel::canonical(&spec).map_err(js)?;
    let psi = QuantumState::basis(model.dim(), 0).map_err(js)?;
    let curve = survival_curve(&model, &psi, &time_grid(t_max, dt)).map_err(js)?;
    let d = DecayDiagnostics::compute(&model, &psi, &curve);
    Ok(DecayRun {
        zeno_time: d.zeno_time,
        golden_rule_slope: d.golden_rule_slope.unwrap_or(f64::NAN),
        recurrence_time: d.recurrence_time.unwrap_or(f64::NAN),
        times: curve.times,
        survival: curve.values,
    })
}

#[wasm_bindgen]
pub struct CatRun {
    constrained: CatEnsemble,
    constrained_entropy: Vec<f64>,
    unconstrained_entropy: Vec<f64>,
    acceptance_rate: f64,
}

#[wasm_bindgen]
impl CatRun {
    pub fn constrained_entropy(&self) -> Vec<f64> {
        self.constrained_entropy.clone()
    }

    pub fn unconstrained_entropy(&self) -> Vec<f64> {
        self.unconstrained_entropy.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn acceptance_rate(&self) -> f64 {
        self.acceptance_rate
    }

    /// Constrained gas at time `t`, flattened `x0, y0, x1, y1, ...`.
    pub fn snapshot(&self, t: usize) -> Vec<f64> {
        evolve(&self.constrained, t)
            .points
            .iter()
            .flat_map(|p| [p.x, p.y])
            .collect()
    }
}

/// Gas started in `[0, size]²` and required to be back there at `horizon`.
#[wasm_bindgen]
pub fn catmap(n_points: usize, grains: usize, horizon: usize, size: f64, seed: u64) -> Result<CatRun, JsError> {
    let b = Rect::new(0.0, size, 0.0, size).map_err(js)?;
    let grid = GrainGrid::with_count(grains).map_err(js)?;
    let prob = TwoTimeProblem::new(b, b, horizon, n_points, seed);
    let sol = solve_two_time(&prob).map_err(js)?;
    let free = CatEnsemble::uniform_in(&b, n_points, seed, "catmap/unconstrained");
    Ok(CatRun {
        constrained_entropy: entropy_trace(&sol.ensemble, &grid, horizon).map_err(js)?,
        unconstrained_entropy: entropy_trace(&free, &grid, horizon).map_err(js)?,
        acceptance_rate: sol.acceptance_rate(),
        constrained: sol.ensemble,
    })
}

/// Field along the entrance path `(0, y, z)`, flattened `y, Bx, By, Bz` per point.
#[wasm_bindgen]
pub fn field_profile(
    s: f64,
    length: f64,
    current: f64,
    z: f64,
    y_min: f64,
    y_max: f64,
    points: usize,
) -> Result<Vec<f64>, JsError> {
    let lp = WireLoop::new(s, length, current).map_err(js)?;
    if !(2..=2000).contains(&points) {
        return Err(JsError::new("points must lie in [2, 2000]"));
    }
    let mut out = Vec::with_capacity(4 * points);
    for i in 0..points {
        let y = y_min + (y_max - y_min) * i as f64 / (points - 1) as f64;
        let b = biot_savart_quadrature(&lp, &Vector3::new(0.0, y, z), 800).map_err(js)?;
        out.extend([y, b.x, b.y, b.z]);
    }
    Ok(out)
}
