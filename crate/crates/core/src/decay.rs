//! Excited levels coupled to a quasi-continuum band.
//!
//! The Hamiltonian has the block form
//!
//! ```text
//!     H = | diag(omega)   phi          |
//!         | phi†          diag(band)   |
//! ```
//!
//! with `n` excited levels and `N` band levels, in units where ħ = 1.
//! States are propagated through a full eigendecomposition of `H`, so every
//! time point is exact up to the accuracy of the eigensolver.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::{par, Error, Result};

/// Tolerance on `|psi| = 1` accepted by [`QuantumState::new`].
pub const NORM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct DecayModel {
    omega: Vec<f64>,
    phi: DMatrix<Complex64>,
    band: Vec<f64>,
}

impl DecayModel {
    /// Build a model from level energies, the `n x N` coupling and band energies.
    pub fn new(omega: Vec<f64>, phi: DMatrix<Complex64>, band: Vec<f64>) -> Result<Self> {
        if omega.is_empty() || band.is_empty() {
            return Err(Error::validation(
                "need at least one excited level and one band level",
            ));
        }
        if phi.nrows() != omega.len() || phi.ncols() != band.len() {
            return Err(Error::Validation(format!(
                "coupling is {}x{} but there are {} excited and {} band levels",
                phi.nrows(),
                phi.ncols(),
                omega.len(),
                band.len()
            )));
        }
        let finite = omega.iter().chain(band.iter()).all(|x| x.is_finite())
            && phi.iter().all(|z| z.re.is_finite() && z.im.is_finite());
        if !finite {
            return Err(Error::validation("model contains non-finite entries"));
        }
        Ok(Self { omega, phi, band })
    }

    /// Equally spaced band with constant real coupling (see [`BandSpec`]).
    pub fn canonical(spec: &BandSpec) -> Result<Self> {
        spec.validate()?;
        let phi = DMatrix::from_element(
            spec.excited,
            spec.band_levels,
            Complex64::new(spec.coupling, 0.0),
        );
        Self::new(vec![spec.level_energy; spec.excited], phi, spec.band_energies())
    }

    pub fn excited(&self) -> usize {
        self.omega.len()
    }

    pub fn band_len(&self) -> usize {
        self.band.len()
    }

    pub fn dim(&self) -> usize {
        self.excited() + self.band_len()
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn coupling(&self) -> &DMatrix<Complex64> {
        &self.phi
    }

    pub fn band(&self) -> &[f64] {
        &self.band
    }

    /// `Some(message)` when the band is not much larger than the excited block.
    pub fn band_ratio_warning(&self) -> Option<String> {
        (self.band_len() < 5 * self.excited()).then(|| {
            format!(
                "band has {} levels for {} excited levels; results assume N >> n",
                self.band_len(),
                self.excited()
            )
        })
    }

    /// Mean spacing of the band levels, or `None` for a single-level band.
    pub fn band_spacing(&self) -> Option<f64> {
        let n = self.band_len();
        if n < 2 {
            return None;
        }
        let (lo, hi) = self
            .band
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &e| {
                (lo.min(e), hi.max(e))
            });
        Some((hi - lo) / (n - 1) as f64)
    }

    /// Fermi golden-rule slope of `ln S(t)` for excited level `level`:
    /// `-2π <|phi|²> / spacing`.
    pub fn golden_rule_slope(&self, level: usize) -> Option<f64> {
        let spacing = self.band_spacing()?;
        if level >= self.excited() || spacing <= 0.0 {
            return None;
        }
        let row = self.phi.row(level);
        let mean_sq = row.iter().map(|z| z.norm_sqr()).sum::<f64>() / row.len() as f64;
        Some(-2.0 * PI * mean_sq / spacing)
    }

    /// Quantum recurrence time `2π / spacing` of an equally spaced band.
    pub fn recurrence_time(&self) -> Option<f64> {
        self.band_spacing()
            .filter(|&d| d > 0.0)
            .map(|d| 2.0 * PI / d)
    }

    /// Assemble `H`. Only the upper triangle is computed; the lower triangle
    /// is its conjugate mirror, so `H == H†` holds bit for bit.
    pub fn hamiltonian(&self) -> DMatrix<Complex64> {
        let n = self.excited();
        let dim = self.dim();
        let mut h = DMatrix::zeros(dim, dim);
        for (i, &w) in self.omega.iter().enumerate() {
            h[(i, i)] = Complex64::new(w, 0.0);
        }
        for (k, &e) in self.band.iter().enumerate() {
            h[(n + k, n + k)] = Complex64::new(e, 0.0);
        }
        for i in 0..n {
            for k in 0..self.band_len() {
                h[(i, n + k)] = self.phi[(i, k)];
            }
        }
        for i in 0..dim {
            for j in (i + 1)..dim {
                h[(j, i)] = h[(i, j)].conj();
            }
        }
        h
    }
}

/// Parameters of the canonical equally spaced band.
///
/// Band energies are `level_energy + (k - (N-1)/2) * spacing` for
/// `k = 0..N`, i.e. equally spaced over `[-W/2, W/2]` around the level, with
/// `spacing = W / (N - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandSpec {
    pub excited: usize,
    pub band_levels: usize,
    pub band_width: f64,
    pub coupling: f64,
    pub level_energy: f64,
}

impl BandSpec {
    /// Band whose spacing is fixed directly instead of through the width.
    pub fn with_spacing(
        excited: usize,
        band_levels: usize,
        spacing: f64,
        coupling: f64,
    ) -> Self {
        Self {
            excited,
            band_levels,
            band_width: spacing * band_levels.saturating_sub(1) as f64,
            coupling,
            level_energy: 0.0,
        }
    }

    pub fn spacing(&self) -> f64 {
        if self.band_levels < 2 {
            0.0
        } else {
            self.band_width / (self.band_levels - 1) as f64
        }
    }

    pub fn band_energies(&self) -> Vec<f64> {
        let center = (self.band_levels as f64 - 1.0) / 2.0;
        let spacing = self.spacing();
        (0..self.band_levels)
            .map(|k| self.level_energy + (k as f64 - center) * spacing)
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if self.excited == 0 || self.band_levels == 0 {
            return Err(Error::validation("level counts must be positive"));
        }
        if !(self.band_width.is_finite() && self.band_width >= 0.0) {
            return Err(Error::validation("band width must be finite and >= 0"));
        }
        if !(self.coupling.is_finite() && self.level_energy.is_finite()) {
            return Err(Error::validation("coupling and level energy must be finite"));
        }
        Ok(())
    }
}

/// Normalized state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState(DVector<Complex64>);

impl QuantumState {
    /// Wrap `amplitudes`, which must already have unit norm.
    pub fn new(amplitudes: DVector<Complex64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::Validation(format!(
                "state norm is {norm}, expected 1"
            )));
        }
        Ok(Self(amplitudes))
    }

    /// Scale `amplitudes` to unit norm.
    pub fn normalized(amplitudes: DVector<Complex64>) -> Result<Self> {
        let norm = amplitudes.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::validation("cannot normalize a zero or non-finite vector"));
        }
        Ok(Self(amplitudes.unscale(norm)))
    }

    /// Basis vector `e_index` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, len: dim });
        }
        let mut v = DVector::zeros(dim);
        v[index] = Complex64::new(1.0, 0.0);
        Ok(Self(v))
    }

    /// Embed undecayed-subspace amplitudes into the full space (band part zero).
    pub fn embed(undecayed: &DVector<Complex64>, dim: usize) -> Result<Self> {
        if undecayed.len() > dim {
            return Err(Error::validation("undecayed block larger than the space"));
        }
        let mut v = DVector::zeros(dim);
        v.rows_mut(0, undecayed.len()).copy_from(undecayed);
        Self::normalized(v)
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    /// Weight on the first `n` coordinates.
    pub fn undecayed_weight(&self, n: usize) -> f64 {
        self.0.rows(0, n.min(self.dim())).norm_squared()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SurvivalCurve {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl SurvivalCurve {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.times.iter().copied().zip(self.values.iter().copied())
    }

    /// Points with `lo <= t <= hi`.
    pub fn window(&self, lo: f64, hi: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.iter().filter(move |&(t, _)| t >= lo && t <= hi)
    }
}

/// Spectral decomposition `H = V diag(E) V†`, reused for every time point.
#[derive(Debug, Clone)]
pub struct Spectral {
    energies: DVector<f64>,
    vectors: DMatrix<Complex64>,
}

impl Spectral {
    pub fn new(h: &DMatrix<Complex64>) -> Result<Self> {
        if !h.is_square() {
            return Err(Error::validation("Hamiltonian must be square"));
        }
        if h.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(Error::Numeric("Hamiltonian has non-finite entries".into()));
        }
        let eig = SymmetricEigen::try_new(h.clone(), f64::EPSILON, 0)
            .ok_or_else(|| Error::Numeric("eigendecomposition did not converge".into()))?;
        Ok(Self {
            energies: eig.eigenvalues,
            vectors: eig.eigenvectors,
        })
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &DVector<f64> {
        &self.energies
    }

    fn phases(&self, t: f64) -> DVector<Complex64> {
        self.energies.map(|e| Complex64::from_polar(1.0, -e * t))
    }

    /// `exp(-iHt) psi`.
    pub fn propagate(&self, psi: &QuantumState, t: f64) -> Result<QuantumState> {
        if !t.is_finite() {
            return Err(Error::validation("propagation time must be finite"));
        }
        if psi.dim() != self.dim() {
            return Err(Error::validation("state and Hamiltonian dimensions differ"));
        }
        if t == 0.0 {
            return Ok(psi.clone());
        }
        let coeffs = self.vectors.ad_mul(psi.amplitudes());
        let evolved = &self.vectors * coeffs.component_mul(&self.phases(t));
        Ok(QuantumState(evolved))
    }

    /// Upper-left `n x n` block of `exp(-iHt)`.
    pub fn propagator_block(&self, n: usize, t: f64) -> DMatrix<Complex64> {
        let top = self.vectors.rows(0, n);
        let mut scaled = top.clone_owned();
        let phases = self.phases(t);
        for (j, mut col) in scaled.column_iter_mut().enumerate() {
            col *= phases[j];
        }
        scaled * top.adjoint()
    }

    /// Squared norm of the first `n` components of `exp(-iHt) psi` on every
    /// time in `times`.
    fn projected_weights(&self, psi: &QuantumState, n: usize, times: &[f64]) -> Vec<f64> {
        let coeffs = self.vectors.ad_mul(psi.amplitudes());
        let top = self.vectors.rows(0, n).clone_owned();
        par::map_slice(times, |&t| {
            if t == 0.0 {
                return psi.undecayed_weight(n);
            }
            let weighted = coeffs.component_mul(&self.phases(t));
            (&top * weighted).norm_squared()
        })
    }
}

/// `exp(-iHt) psi0` for a Hermitian `h`.
pub fn propagate(h: &DMatrix<Complex64>, psi0: &QuantumState, t: f64) -> Result<QuantumState> {
    Spectral::new(h)?.propagate(psi0, t)
}

/// `S(t) = |P exp(-iHt) psi0|²` on `time_grid`, with `P` the projector onto
/// the excited levels.
pub fn survival_curve(
    model: &DecayModel,
    psi0: &QuantumState,
    time_grid: &[f64],
) -> Result<SurvivalCurve> {
    let spectral = Spectral::new(&model.hamiltonian())?;
    survival_with(&spectral, model.excited(), psi0, time_grid)
}

pub(crate) fn survival_with(
    spectral: &Spectral,
    excited: usize,
    psi0: &QuantumState,
    time_grid: &[f64],
) -> Result<SurvivalCurve> {
    if psi0.dim() != spectral.dim() {
        return Err(Error::validation("state and model dimensions differ"));
    }
    let leak = 1.0 - psi0.undecayed_weight(excited);
    if leak.abs() > NORM_TOLERANCE {
        return Err(Error::Precondition(format!(
            "initial state has weight {leak:e} outside the excited subspace"
        )));
    }
    if time_grid.iter().any(|t| !t.is_finite()) {
        return Err(Error::validation("time grid contains non-finite values"));
    }
    Ok(SurvivalCurve {
        times: time_grid.to_vec(),
        values: spectral.projected_weights(psi0, excited, time_grid),
    })
}

/// `1 / sqrt(<H²> - <H>²)`; `f64::INFINITY` when the energy variance
/// vanishes (an eigenstate never leaves its initial state).
pub fn zeno_time(h: &DMatrix<Complex64>, psi: &QuantumState) -> f64 {
    let v = psi.amplitudes();
    let hv = h * v;
    let mean = v.dotc(&hv).re;
    let second = hv.norm_squared();
    let variance = second - mean * mean;
    if variance <= 8.0 * f64::EPSILON * second || variance <= 0.0 {
        f64::INFINITY
    } else {
        1.0 / variance.sqrt()
    }
}

/// Uniform grid `0, dt, 2dt, ...` up to and including `t_max`.
pub fn time_grid(t_max: f64, dt: f64) -> Vec<f64> {
    let steps = (t_max / dt).round() as usize;
    (0..=steps).map(|k| k as f64 * dt).collect()
}

/// Least-squares fit of `1 - S = (t / tau)²` over `t <= t_max`; returns `tau`.
pub fn fit_quadratic_decay(curve: &SurvivalCurve, t_max: f64) -> Option<f64> {
    let (num, den) = curve
        .window(0.0, t_max)
        .fold((0.0, 0.0), |(num, den), (t, s)| {
            let t2 = t * t;
            (num + t2 * (1.0 - s), den + t2 * t2)
        });
    (den > 0.0 && num > 0.0).then(|| (den / num).sqrt())
}

/// Straight-line fit of `ln S` against `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLinearFit {
    pub slope: f64,
    pub intercept: f64,
    /// Largest `|ln S - fit|` over the window.
    pub max_residual: f64,
    pub points: usize,
}

pub fn fit_log_linear(curve: &SurvivalCurve, lo: f64, hi: f64) -> Option<LogLinearFit> {
    let pts: Vec<(f64, f64)> = curve
        .window(lo, hi)
        .filter(|&(_, s)| s > 0.0)
        .map(|(t, s)| (t, s.ln()))
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let n = pts.len() as f64;
    let mean_t = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mean_t) * (p.1 - mean_y)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mean_t).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_t;
    let max_residual = pts
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).abs())
        .fold(0.0, f64::max);
    Some(LogLinearFit {
        slope,
        intercept,
        max_residual,
        points: pts.len(),
    })
}

/// Largest value of the curve inside `[lo, hi]` as `(t, S)`.
pub fn peak_in(curve: &SurvivalCurve, lo: f64, hi: f64) -> Option<(f64, f64)> {
    curve
        .window(lo, hi)
        .fold(None, |best: Option<(f64, f64)>, p| match best {
            Some(b) if b.1 >= p.1 => Some(b),
            _ => Some(p),
        })
}

/// Derived quantities reported next to a survival curve.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayDiagnostics {
    pub zeno_time: f64,
    pub zeno_time_fit: Option<f64>,
    pub golden_rule_slope: Option<f64>,
    pub fitted_slope: Option<LogLinearFit>,
    pub recurrence_time: Option<f64>,
    pub recurrence_peak: Option<(f64, f64)>,
}

impl DecayDiagnostics {
    /// Windows: quadratic fit on `[0, tau/10]`, log-linear fit on
    /// `[2 tau, T_rec / 3]`, recurrence peak searched in `[0.9, 1.25] T_rec`.
    pub fn compute(model: &DecayModel, psi0: &QuantumState, curve: &SurvivalCurve) -> Self {
        let zeno = zeno_time(&model.hamiltonian(), psi0);
        let recurrence = model.recurrence_time();
        let fitted_slope = match recurrence {
            Some(tr) if zeno.is_finite() => fit_log_linear(curve, 2.0 * zeno, tr / 3.0),
            _ => None,
        };
        Self {
            zeno_time: zeno,
            zeno_time_fit: zeno
                .is_finite()
                .then(|| fit_quadratic_decay(curve, zeno / 10.0))
                .flatten(),
            golden_rule_slope: model.golden_rule_slope(0),
            fitted_slope,
            recurrence_time: recurrence,
            recurrence_peak: recurrence.and_then(|tr| peak_in(curve, 0.9 * tr, 1.25 * tr)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn zero_coupling_is_block_diagonal() {
        let model = DecayModel::new(vec![0.0], DMatrix::zeros(1, 2), vec![1.0, 2.0]).unwrap();
        let h = model.hamiltonian();
        let expected = DMatrix::from_diagonal(&DVector::from_vec(vec![c(0.0), c(1.0), c(2.0)]));
        assert_eq!(h, expected);
    }

    #[test]
    fn two_level_matrix_and_spectrum() {
        let g = Complex64::new(0.3, 0.4);
        let model = DecayModel::new(vec![0.0], DMatrix::from_element(1, 1, g), vec![0.0]).unwrap();
        let h = model.hamiltonian();
        assert_eq!(h[(0, 1)], g);
        assert_eq!(h[(1, 0)], g.conj());
        let spectral = Spectral::new(&h).unwrap();
        let mut e: Vec<f64> = spectral.energies().iter().copied().collect();
        e.sort_by(f64::total_cmp);
        assert_relative_eq!(e[0], -0.5, epsilon = 1e-14);
        assert_relative_eq!(e[1], 0.5, epsilon = 1e-14);
    }

    #[test]
    fn hamiltonian_is_exactly_hermitian() {
        let phi = DMatrix::from_fn(3, 7, |i, k| Complex64::new(0.1 * i as f64 - 0.03 * k as f64, 0.07 * (i * k) as f64));
        let model = DecayModel::new(vec![0.1, -0.2, 0.3], phi, (0..7).map(|k| k as f64 * 0.25).collect()).unwrap();
        let h = model.hamiltonian();
        assert_eq!(h, h.adjoint());
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let err = DecayModel::new(vec![0.0, 0.0], DMatrix::zeros(1, 3), vec![0.0; 3]).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
        let err = DecayModel::new(vec![0.0], DMatrix::zeros(1, 3), vec![0.0; 2]).unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn propagation_at_zero_time_is_identity() {
        let model = DecayModel::canonical(&BandSpec::with_spacing(1, 10, 0.1, 0.05)).unwrap();
        let psi = QuantumState::basis(model.dim(), 0).unwrap();
        let out = propagate(&model.hamiltonian(), &psi, 0.0).unwrap();
        assert_eq!(out, psi);
    }

    #[test]
    fn rabi_oscillation() {
        let g = 0.7;
        let model = DecayModel::new(vec![0.0], DMatrix::from_element(1, 1, c(g)), vec![0.0]).unwrap();
        let psi = QuantumState::basis(2, 0).unwrap();
        for &t in &[0.3, 1.1, 4.0] {
            let out = propagate(&model.hamiltonian(), &psi, t).unwrap();
            let a = out.amplitudes();
            assert_relative_eq!(a[0].re, (g * t).cos(), epsilon = 1e-12);
            assert_relative_eq!(a[0].im, 0.0, epsilon = 1e-12);
            assert_relative_eq!(a[1].re, 0.0, epsilon = 1e-12);
            assert_relative_eq!(a[1].im, -(g * t).sin(), epsilon = 1e-12);
        }
    }

    #[test]
    fn zero_coupling_never_decays() {
        let spec = BandSpec { excited: 2, band_levels: 6, band_width: 1.0, coupling: 0.0, level_energy: 0.0 };
        let model = DecayModel::canonical(&spec).unwrap();
        let psi = QuantumState::normalized(DVector::from_fn(8, |i, _| if i < 2 { c(1.0) } else { c(0.0) })).unwrap();
        let curve = survival_curve(&model, &psi, &time_grid(20.0, 0.5)).unwrap();
        for s in curve.values {
            assert_relative_eq!(s, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn band_state_is_a_precondition_error() {
        let model = DecayModel::canonical(&BandSpec::with_spacing(1, 4, 0.1, 0.05)).unwrap();
        let psi = QuantumState::basis(5, 3).unwrap();
        let err = survival_curve(&model, &psi, &[0.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }

    #[test]
    fn zeno_time_cases() {
        // eigenstate
        let model = DecayModel::new(vec![0.0], DMatrix::from_element(1, 1, c(0.5)), vec![0.0]).unwrap();
        let h = model.hamiltonian();
        let eigen = QuantumState::normalized(DVector::from_vec(vec![c(1.0), c(1.0)])).unwrap();
        assert_eq!(zeno_time(&h, &eigen), f64::INFINITY);
        // two-level
        let e1 = QuantumState::basis(2, 0).unwrap();
        assert_relative_eq!(zeno_time(&h, &e1), 2.0, epsilon = 1e-14);
        // band with sum |phi|^2 = 1/49
        let model = DecayModel::canonical(&BandSpec::with_spacing(1, 100, 2.0 * PI / 300.0, 1.0 / 70.0)).unwrap();
        let e1 = QuantumState::basis(101, 0).unwrap();
        assert_relative_eq!(zeno_time(&model.hamiltonian(), &e1), 7.0, epsilon = 1e-12);
    }

    #[test]
    fn canonical_band_is_centered_and_equally_spaced() {
        let spec = BandSpec { excited: 1, band_levels: 5, band_width: 2.0, coupling: 0.1, level_energy: 0.25 };
        assert_eq!(spec.band_energies(), vec![-0.75, -0.25, 0.25, 0.75, 1.25]);
        let model = DecayModel::canonical(&spec).unwrap();
        assert_relative_eq!(model.band_spacing().unwrap(), 0.5);
        assert_relative_eq!(model.recurrence_time().unwrap(), 4.0 * PI);
    }

    #[test]
    fn norm_check_on_construction() {
        assert!(QuantumState::new(DVector::from_vec(vec![c(1.0), c(1.0)])).is_err());
        assert!(QuantumState::new(DVector::from_vec(vec![c(0.6), Complex64::new(0.0, 0.8)])).is_ok());
    }
}
