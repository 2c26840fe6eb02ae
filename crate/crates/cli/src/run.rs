//! Subcommand bodies. Each writes its files into the output directory and
//! returns the lines printed on stdout.

use std::f64::consts::PI;

use specstate::catmap::{
    entropy_trace, evolve, solve_two_time, CatEnsemble, GrainGrid, Rect, TwoTimeProblem,
};
use specstate::decay::{survival_curve, time_grid, BandSpec, DecayDiagnostics, DecayModel, QuantumState};
use specstate::fields::{
    bracket_maximum, external_internal_ratio, far_semicircle_fraction, field_profile,
    kick_estimates, Trajectory, WireLoop, BOHR_MAGNETON, HBAR,
};
use specstate::kicks::{
    closed_form_expectation, optimize_entry_angle, outcome_probabilities,
    outcome_probabilities_numeric, self_averaging_test, series_expectation, AngleMode, KickModel,
    SampleFamily, SelfAveragingReport,
};
use specstate::special::{
    average_survival, cluster_fraction, special_states, trace_of, CouplingLayout, MultiLevelSpec,
};

use crate::app::RunConfig;
use crate::error::CliError;
use crate::output::{fmt_f64, row, OutDir};
use crate::params::{Command, KickMode, Params};

type Lines = Vec<(String, String)>;

fn kv(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

fn kf(k: &str, v: f64) -> (String, String) {
    (k.to_string(), fmt_f64(v))
}

fn opt(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_else(|| "none".into())
}

fn validation(msg: impl Into<String>) -> CliError {
    CliError::Validation(msg.into())
}

pub fn execute(cfg: &RunConfig, out: &mut OutDir) -> Result<Lines, CliError> {
    let p = &cfg.params;
    match p.command {
        Command::Decay => decay(p, out),
        Command::Special => special(p, cfg.seed, out),
        Command::Catmap => catmap(p, cfg.seed, out),
        Command::Kicks(KickMode::Probs) => kick_probs(p, out),
        Command::Kicks(KickMode::Expectation) => kick_expectation(p, out),
        Command::Kicks(KickMode::Selfavg) => kick_selfavg(p, cfg.seed, out),
        Command::Kicks(KickMode::Optimize) => kick_optimize(p, out),
        Command::Fields => fields(p, out),
    }
}

fn checked_grid(t_max: f64, dt: f64) -> Result<Vec<f64>, CliError> {
    if !(dt > 0.0 && t_max >= 0.0) {
        return Err(validation("need dt > 0 and t_max >= 0"));
    }
    if t_max / dt > 1e7 {
        return Err(validation("time grid exceeds 10^7 points"));
    }
    Ok(time_grid(t_max, dt))
}

fn decay(p: &Params, out: &mut OutDir) -> Result<Lines, CliError> {
    let n_band = p.usize("band_levels")?;
    let spec = BandSpec {
        excited: p.usize("excited")?,
        band_levels: n_band,
        band_width: p.f64("spacing") * n_band.saturating_sub(1) as f64,
        coupling: p.f64("coupling"),
        level_energy: p.f64("level_energy"),
    };
    let model = DecayModel::canonical(&spec)?;
    let psi = QuantumState::basis(model.dim(), 0)?;
    let curve = survival_curve(&model, &psi, &checked_grid(p.f64("t_max"), p.f64("dt"))?)?;
    out.csv("decay.csv", &["t", "S"], curve.iter().map(|(t, s)| row(&[t, s])))?;

    let d = DecayDiagnostics::compute(&model, &psi, &curve);
    let mut lines = vec![
        kf("zeno_time", d.zeno_time),
        kv("zeno_time_fit", opt(d.zeno_time_fit)),
        kv("golden_rule_slope", opt(d.golden_rule_slope)),
        kv("fitted_slope", opt(d.fitted_slope.map(|f| f.slope))),
        kv("log_linear_max_residual", opt(d.fitted_slope.map(|f| f.max_residual))),
        kv("recurrence_time", opt(d.recurrence_time)),
        kv("recurrence_peak_t", opt(d.recurrence_peak.map(|x| x.0))),
        kv("recurrence_peak_S", opt(d.recurrence_peak.map(|x| x.1))),
    ];
    if let Some(w) = model.band_ratio_warning() {
        lines.push(kv("warning", w));
    }
    out.text("diagnostics.txt", &lines)?;
    Ok(lines)
}

fn special(p: &Params, seed: u64, out: &mut OutDir) -> Result<Lines, CliError> {
    let excited = p.usize("excited")?;
    let band_levels = p.usize("band_levels")?;
    let layout = match p.text("layout") {
        "grouped" => {
            let groups = p.usize("groups")?;
            if groups == 0 || excited % groups != 0 || groups > band_levels {
                return Err(validation(format!(
                    "groups must divide excited ({excited}) and not exceed band_levels"
                )));
            }
            CouplingLayout::grouped(groups, excited / groups, band_levels)
        }
        _ => CouplingLayout::RandomPhase { seed },
    };
    let spec = MultiLevelSpec {
        excited,
        band_levels,
        band_width: p.f64("band_width"),
        coupling: p.f64("coupling"),
        level_energy: p.f64("level_energy"),
        layout,
    };
    let model = spec.build()?;
    let t0 = p.f64("t0");
    let set = special_states(&model, t0)?;
    out.csv(
        "spectrum.csv",
        &["index", "eigenvalue"],
        set.eigenvalues
            .iter()
            .enumerate()
            .map(|(k, &e)| vec![k.to_string(), fmt_f64(e)]),
    )?;

    let grid = checked_grid(p.f64("t_max"), p.f64("dt"))?;
    let avg = average_survival(&model, &grid)?;
    let top = trace_of(&set, 0, &grid)?;
    let bottom = trace_of(&set, set.len() - 1, &grid)?;
    out.csv(
        "trace.csv",
        &["t", "S_avg", "S_top", "S_bottom"],
        (0..grid.len()).map(|i| row(&[grid[i], avg.values[i], top.values[i], bottom.values[i]])),
    )?;

    let at_t0 = |k: usize| trace_of(&set, k, &[t0]).map(|c| c.values[0]);
    let lines = vec![
        kf("t0", t0),
        kf("mean_survival_t0", set.mean_survival()),
        kf("top_eigenvalue", set.eigenvalues[0]),
        kf("bottom_eigenvalue", set.eigenvalues[set.len() - 1]),
        kf("top_S_t0", at_t0(0)?),
        kf("bottom_S_t0", at_t0(set.len() - 1)?),
        kf("cluster_fraction", cluster_fraction(&set, p.f64("epsilon"))?),
    ];
    out.text("summary.txt", &lines)?;
    Ok(lines)
}

fn rect(p: &Params, prefix: &str) -> Result<Rect, CliError> {
    let f = |s: &str| p.f64(&format!("{prefix}_{s}"));
    Ok(Rect::new(f("x0"), f("x1"), f("y0"), f("y1"))?)
}

fn catmap(p: &Params, seed: u64, out: &mut OutDir) -> Result<Lines, CliError> {
    let horizon = p.usize("horizon")?;
    let n = p.usize("n_points")?;
    let grid = GrainGrid::with_count(p.usize("grains")?)?;
    let mut times = Vec::new();
    for &t in p.list("snapshot_times") {
        if t < 0.0 || t.fract() != 0.0 || t > horizon as f64 {
            return Err(validation(format!(
                "snapshot time {t} must be an integer in [0, {horizon}]"
            )));
        }
        times.push(t as usize);
    }
    let prob = TwoTimeProblem {
        candidate_budget: p.u64("budget"),
        ..TwoTimeProblem::new(rect(p, "init")?, rect(p, "final")?, horizon, n, seed)
    };
    let sol = solve_two_time(&prob)?;
    let free = CatEnsemble::uniform_in(&prob.initial_box, n, seed, "catmap/unconstrained");
    let constrained = entropy_trace(&sol.ensemble, &grid, horizon)?;
    let unconstrained = entropy_trace(&free, &grid, horizon)?;

    let mut snaps = Vec::new();
    for &t in &times {
        for q in evolve(&sol.ensemble, t).points {
            snaps.push(vec![t.to_string(), fmt_f64(q.x), fmt_f64(q.y)]);
        }
    }
    out.csv("snapshots.csv", &["t", "x", "y"], snaps)?;
    out.csv(
        "entropy.csv",
        &["t", "S_constrained", "S_unconstrained"],
        (0..=horizon).map(|t| vec![t.to_string(), fmt_f64(constrained[t]), fmt_f64(unconstrained[t])]),
    )?;
    let lines = vec![
        kv("candidates", sol.candidates),
        kv("accepted", sol.ensemble.len()),
        kf("acceptance_rate", sol.acceptance_rate()),
        kf("final_box_area", prob.final_box.area()),
        kv("grains", grid.count()),
        kf("max_entropy", (grid.count() as f64).ln()),
        kf("S_constrained_at_T", constrained[horizon]),
        kf("S_unconstrained_at_T", unconstrained[horizon]),
    ];
    out.text("summary.txt", &lines)?;
    Ok(lines)
}

fn theta_grid(p: &Params) -> Result<Vec<f64>, CliError> {
    let k = p.usize("theta_points")?;
    if k < 2 {
        return Err(validation("theta_points must be at least 2"));
    }
    Ok((0..k).map(|i| PI * i as f64 / (k - 1) as f64).collect())
}

fn kick_probs(p: &Params, out: &mut OutDir) -> Result<Lines, CliError> {
    let a = p.f64("a");
    let numeric = p.text("method") == "numeric";
    let mut rows = Vec::new();
    for theta in theta_grid(p)? {
        let m = KickModel::new(a, theta, p.u64("n_max"))?;
        let pr = if numeric {
            outcome_probabilities_numeric(&m)
        } else {
            outcome_probabilities(&m)
        };
        let t = (0.5 * theta).tan();
        rows.push(row(&[theta, pr.p_up, pr.p_down, pr.ratio(), t * t]));
    }
    let count = rows.len();
    out.csv("probs.csv", &["theta", "p_up", "p_down", "ratio", "tan2"], rows)?;
    Ok(vec![kv("angles", count)])
}

fn kick_expectation(p: &Params, out: &mut OutDir) -> Result<Lines, CliError> {
    let a = p.f64("a");
    let series = p.text("method") == "series";
    let mut rows = Vec::new();
    for theta in theta_grid(p)? {
        let (up, down) = if series {
            series_expectation(&KickModel::new(a, theta, p.u64("n_max"))?)
        } else {
            closed_form_expectation(theta)
        };
        rows.push(row(&[theta, up, down]));
    }
    let count = rows.len();
    out.csv("expectation.csv", &["theta", "mean_up", "mean_down"], rows)?;
    Ok(vec![kv("angles", count)])
}

fn report_lines(r: &SelfAveragingReport) -> Lines {
    let fam = match r.family {
        SampleFamily::Cauchy => "cauchy",
        SampleFamily::Gaussian => "gaussian",
    };
    let k = |s: &str| format!("{fam}.{s}");
    vec![
        kv(&k("ks_statistic"), fmt_f64(r.ks.statistic)),
        kv(&k("ks_p_value"), fmt_f64(r.ks.p_value)),
        kv(&k("alpha"), fmt_f64(r.alpha)),
        kv(&k("same_distribution"), r.passes),
        kv(&k("mean_iqr"), fmt_f64(r.mean_iqr)),
        kv(&k("single_iqr"), fmt_f64(r.single_iqr)),
        kv(&k("median_spread"), fmt_f64(r.median_spread)),
        kv(&k("median_spread_predicted"), fmt_f64(r.median_spread_predicted)),
    ]
}

fn kick_selfavg(p: &Params, seed: u64, out: &mut OutDir) -> Result<Lines, CliError> {
    let families: &[SampleFamily] = match p.text("family") {
        "cauchy" => &[SampleFamily::Cauchy],
        "gaussian" => &[SampleFamily::Gaussian],
        _ => &[SampleFamily::Cauchy, SampleFamily::Gaussian],
    };
    let (a, batch, repeats) = (p.f64("a"), p.usize("batch")?, p.usize("repeats")?);
    let mut lines = Vec::new();
    for &fam in families {
        let r = self_averaging_test(a, batch, repeats, seed, fam)?;
        lines.extend(report_lines(&r));
    }
    out.text("selfavg.txt", &lines)?;
    Ok(lines)
}

fn kick_optimize(p: &Params, out: &mut OutDir) -> Result<Lines, CliError> {
    let mode = match p.text("mode") {
        "total" => AngleMode::Total,
        _ => AngleMode::Sorted,
    };
    let best = optimize_entry_angle(mode);
    out.csv(
        "optimize.csv",
        &["theta", "objective"],
        best.trace.iter().map(|&(t, f)| row(&[t, f])),
    )?;
    let lines = vec![
        kv("mode", mode.as_str()),
        kf("theta_star", best.theta_star),
        kf("theta_star_deg", best.theta_star.to_degrees()),
        kf("objective_star", best.objective_star),
    ];
    out.text("optimize.txt", &lines)?;
    Ok(lines)
}

fn fields(p: &Params, out: &mut OutDir) -> Result<Lines, CliError> {
    let lp = WireLoop::new(p.f64("s"), p.f64("length"), p.f64("current"))?;
    let z = p.f64("z");
    let traj = Trajectory::linspace(z, p.f64("y_min"), p.f64("y_max"), p.usize("points")?, p.f64("x"))?;
    let n_nodes = p.usize("n_nodes")?;
    if n_nodes < 2 {
        return Err(validation("n_nodes must be at least 2"));
    }
    let prof = field_profile(&lp, &traj, n_nodes)?;
    out.csv(
        "profile.csv",
        &["y", "Bx", "By", "Bz", "dBx_dx"],
        prof.iter().map(|s| {
            let g = s.dbdx.map(|d| d.x).unwrap_or(f64::NAN);
            row(&[s.position.y, s.b.x, s.b.y, s.b.z, g])
        }),
    )?;

    let short = kick_estimates(1e-16, p.f64("path_length"))?;
    let long = kick_estimates(p.f64("delta_t"), p.f64("path_length"))?;
    let grid: Vec<f64> = (1..=300).map(|i| 0.01 * i as f64).collect();
    let bm = bracket_maximum(&grid)?;
    let s_over_z = lp.s / z;
    let lines = vec![
        kf("hbar_over_mu_B", HBAR / BOHR_MAGNETON),
        kf("photon_energy_eV_at_1e-16s", short.photon_energy),
        kf("B_required_at_1e-16s", short.b_required),
        kf("delta_t", long.delta_t),
        kf("B_required", long.b_required),
        kf("E_field", long.e_field),
        kf("photon_energy_eV", long.photon_energy),
        kf("bracket_max", bm.value),
        kf("bracket_max_s_over_z", bm.s_over_z),
        kf("bracket_max_y_over_z", bm.y_over_z),
        kf("s_over_z", s_over_z),
        kf("external_internal_ratio", external_internal_ratio(s_over_z)),
        kf(
            "far_semicircle_fraction",
            far_semicircle_fraction(&lp, -0.5 * lp.length, z)?,
        ),
    ];
    out.text("estimates.txt", &lines)?;
    Ok(lines)
}
