//! Special states of the multi-level decay model.
//!
//! With `P` the projector onto the `n` excited levels and
//! `U = exp(-iH t0)`, the survival probability of an undecayed initial
//! state is `<psi0| C†C |psi0>` with `C = P U P`. Eigenvectors of `C†C`
//! with eigenvalues near 1 stay undecayed at `t0`; those near 0 have fully
//! decayed by then.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::decay::{survival_with, DecayModel, QuantumState, Spectral, SurvivalCurve};
use crate::{Error, Result};

/// Reduced propagator `C = P exp(-iH t0) P` as an `n x n` matrix.
pub fn reduced_propagator(model: &DecayModel, t0: f64) -> Result<DMatrix<Complex64>> {
    if !(t0.is_finite() && t0 >= 0.0) {
        return Err(Error::validation("t0 must be finite and non-negative"));
    }
    let spectral = Spectral::new(&model.hamiltonian())?;
    Ok(spectral.propagator_block(model.excited(), t0))
}

/// Eigenpairs of `C†C`, sorted by descending eigenvalue.
#[derive(Debug, Clone)]
pub struct SpecialStateSet {
    pub t0: f64,
    pub eigenvalues: Vec<f64>,
    /// Coordinates in the undecayed subspace. The first component with
    /// modulus above [`PHASE_THRESHOLD`] is real and positive.
    pub eigenvectors: Vec<DVector<Complex64>>,
    pub model: DecayModel,
}

pub const PHASE_THRESHOLD: f64 = 1e-10;

impl SpecialStateSet {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Mean of the eigenvalues, i.e. `tr(C†C) / n`: the survival at `t0`
    /// averaged over uniformly random undecayed initial states.
    pub fn mean_survival(&self) -> f64 {
        self.eigenvalues.iter().sum::<f64>() / self.len() as f64
    }

    /// Eigenvector `index` embedded in the full space (band part zero).
    pub fn initial_state(&self, index: usize) -> Result<QuantumState> {
        let v = self
            .eigenvectors
            .get(index)
            .ok_or(Error::IndexOutOfRange {
                index,
                len: self.len(),
            })?;
        QuantumState::embed(v, self.model.dim())
    }
}

fn fix_phase(v: &mut DVector<Complex64>) {
    if let Some(lead) = v.iter().find(|z| z.norm() > PHASE_THRESHOLD).copied() {
        let rotation = lead.conj() / lead.norm();
        for z in v.iter_mut() {
            *z *= rotation;
        }
    }
}

/// Diagonalize `C†C` at `t0`.
pub fn special_states(model: &DecayModel, t0: f64) -> Result<SpecialStateSet> {
    if !(t0.is_finite() && t0 > 0.0) {
        return Err(Error::validation("t0 must be finite and positive"));
    }
    let c = reduced_propagator(model, t0)?;
    let gram = c.ad_mul(&c);
    let eig = SymmetricEigen::try_new(gram, f64::EPSILON, 0)
        .ok_or_else(|| Error::Numeric("eigendecomposition of C†C did not converge".into()))?;
    let mut pairs: Vec<(f64, DVector<Complex64>)> = eig
        .eigenvalues
        .iter()
        .zip(eig.eigenvectors.column_iter())
        .map(|(&e, col)| {
            let mut v = col.clone_owned();
            fix_phase(&mut v);
            (e, v)
        })
        .collect();
    pairs.sort_by(|a, b| {
        b.0.total_cmp(&a.0).then_with(|| {
            // deterministic tie-break on the leading components
            let key = |v: &DVector<Complex64>| v.iter().map(|z| (z.re, z.im)).collect::<Vec<_>>();
            key(&a.1)
                .partial_cmp(&key(&b.1))
                .unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    let (eigenvalues, eigenvectors) = pairs.into_iter().unzip();
    Ok(SpecialStateSet {
        t0,
        eigenvalues,
        eigenvectors,
        model: model.clone(),
    })
}

/// Survival curve of special state `state_index`.
pub fn specialness_trace(
    model: &DecayModel,
    state_index: usize,
    t0: f64,
    time_grid: &[f64],
) -> Result<SurvivalCurve> {
    let set = special_states(model, t0)?;
    trace_of(&set, state_index, time_grid)
}

/// Survival curve of a state from an already computed set.
pub fn trace_of(set: &SpecialStateSet, index: usize, time_grid: &[f64]) -> Result<SurvivalCurve> {
    let psi = set.initial_state(index)?;
    let spectral = Spectral::new(&set.model.hamiltonian())?;
    survival_with(&spectral, set.model.excited(), &psi, time_grid)
}

/// Survival averaged over uniformly random undecayed initial states,
/// `tr(C(t)†C(t)) / n`, on every time of `time_grid`.
pub fn average_survival(model: &DecayModel, time_grid: &[f64]) -> Result<SurvivalCurve> {
    let spectral = Spectral::new(&model.hamiltonian())?;
    let n = model.excited();
    let values = time_grid
        .iter()
        .map(|&t| spectral.propagator_block(n, t).norm_squared() / n as f64)
        .collect();
    Ok(SurvivalCurve {
        times: time_grid.to_vec(),
        values,
    })
}

/// Fraction of eigenvalues within `epsilon` of 0 or 1.
pub fn cluster_fraction(set: &SpecialStateSet, epsilon: f64) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(Error::validation("epsilon must lie in (0, 0.5)"));
    }
    if set.is_empty() {
        return Ok(0.0);
    }
    let near = set
        .eigenvalues
        .iter()
        .filter(|&&e| e <= epsilon || e >= 1.0 - epsilon)
        .count();
    Ok(near as f64 / set.len() as f64)
}

/// How the coupling matrix of the multi-level model is generated.
#[derive(Debug, Clone, PartialEq)]
pub enum CouplingLayout {
    /// Atom `j` sits at ring position `x_j`; `phi_jk = g exp(2πi k x_j / N)`.
    /// Atoms sharing a position have identical couplings.
    Positions(Vec<usize>),
    /// `phi_jk = g exp(i theta_jk)` with independent uniform phases.
    RandomPhase { seed: u64 },
}

impl CouplingLayout {
    /// `groups` sites spread evenly over the ring, `per_group` atoms each.
    pub fn grouped(groups: usize, per_group: usize, band_levels: usize) -> Self {
        let stride = band_levels / groups.max(1);
        Self::Positions(
            (0..groups)
                .flat_map(|g| std::iter::repeat_n(g * stride, per_group))
                .collect(),
        )
    }
}

/// Multi-level model: `n` degenerate levels at `level_energy`, band of
/// `band_levels` equally spaced over `[-W/2, W/2]`, coupling magnitude `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiLevelSpec {
    pub excited: usize,
    pub band_levels: usize,
    pub band_width: f64,
    pub coupling: f64,
    pub level_energy: f64,
    pub layout: CouplingLayout,
}

impl MultiLevelSpec {
    pub fn build(&self) -> Result<DecayModel> {
        use rand::Rng;
        let n = self.excited;
        let big_n = self.band_levels;
        if n == 0 || big_n < 2 {
            return Err(Error::validation("need n >= 1 excited and N >= 2 band levels"));
        }
        let phi = match &self.layout {
            CouplingLayout::Positions(x) => {
                if x.len() != n {
                    return Err(Error::Validation(format!(
                        "{} positions given for {} excited levels",
                        x.len(),
                        n
                    )));
                }
                DMatrix::from_fn(n, big_n, |j, k| {
                    let arg = 2.0 * PI * ((k * x[j]) % big_n) as f64 / big_n as f64;
                    Complex64::from_polar(self.coupling, arg)
                })
            }
            CouplingLayout::RandomPhase { seed } => {
                let mut rng = crate::rng::substream(*seed, "special/phases", 0);
                let mut phases = Vec::with_capacity(n * big_n);
                for _ in 0..n * big_n {
                    phases.push(2.0 * PI * rng.random::<f64>());
                }
                DMatrix::from_row_slice(n, big_n, &phases)
                    .map(|arg| Complex64::from_polar(self.coupling, arg))
            }
        };
        let spacing = self.band_width / (big_n - 1) as f64;
        let center = (big_n as f64 - 1.0) / 2.0;
        let band = (0..big_n)
            .map(|k| self.level_energy + (k as f64 - center) * spacing)
            .collect();
        DecayModel::new(vec![self.level_energy; n], phi, band)
    }
}
