//! Acceptance suite. Prints one PASS/FAIL line per check and exits non-zero
//! if any check fails.

use std::f64::consts::PI;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use nalgebra::Vector3;
use specstate::catmap::{
    entropy_trace, solve_two_time, CatEnsemble, GrainGrid, Rect, TwoTimeProblem,
};
use specstate::decay::{survival_curve, time_grid, BandSpec, DecayDiagnostics, DecayModel, QuantumState};
use specstate::fields::{
    biot_savart_piece, bracket_maximum, semicircle_bx, semicircle_field, straight_wire_field,
    ContourPiece, WireLoop, BOHR_MAGNETON, HBAR,
};
use specstate::kicks::{
    closed_form_expectation, cot_identity_residual_parts, objective, optimize_entry_angle,
    outcome_probabilities, self_averaging_test, series_expectation, wrapped_sum_closed,
    wrapped_sum_numeric, AngleMode, KickModel, SampleFamily,
};
use specstate::special::{special_states, trace_of, CouplingLayout, MultiLevelSpec};

struct Check {
    id: &'static str,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Result<String, String>,
}

fn ok_if(cond: bool, detail: String) -> Result<String, String> {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

// 1

fn born_ratio() -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for theta in [0.1, 0.5, 1.0, 2.0, 3.0] {
        let m = KickModel::new(1e-4, theta, 1).map_err(|e| e.to_string())?;
        let tan2 = (0.5 * theta).tan().powi(2);
        let rel = (outcome_probabilities(&m).ratio() - tan2).abs() / tan2;
        worst = worst.max(rel);
    }
    ok_if(worst <= 1e-4, format!("max relative deviation {worst:.3e} (limit 1e-4)"))
}

// 2

fn expectation_grid() -> Vec<f64> {
    (1..=10).map(|k| k as f64 * PI / 11.0).collect()
}

fn expectation_check(down: bool) -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for theta in expectation_grid() {
        let m = KickModel::new(1e-6, theta, 1_000_000).map_err(|e| e.to_string())?;
        let closed = closed_form_expectation(theta);
        let series = series_expectation(&m);
        let d = if down {
            (closed.1 - series.1).abs()
        } else {
            (closed.0 - series.0).abs()
        };
        worst = worst.max(d);
    }
    ok_if(worst <= 1e-5, format!("max |closed - series| {worst:.3e} (limit 1e-5)"))
}

fn expectation_up() -> Result<String, String> {
    expectation_check(false)
}

fn expectation_down() -> Result<String, String> {
    expectation_check(true)
}

// 3

fn angle_sorted() -> Result<String, String> {
    let deg = optimize_entry_angle(AngleMode::Sorted).theta_star.to_degrees();
    ok_if((deg - 48.19).abs() <= 0.1, format!("theta* = {deg:.4} deg (target 48.19 +- 0.1)"))
}

fn angle_total() -> Result<String, String> {
    let deg = optimize_entry_angle(AngleMode::Total).theta_star.to_degrees();
    ok_if((deg - 54.74).abs() <= 0.1, format!("theta* = {deg:.4} deg (target 54.74 +- 0.1)"))
}

fn angle_total_minimum() -> Result<String, String> {
    let f = |deg: f64| objective(AngleMode::Total, deg.to_radians()).abs();
    let mid = f(90.0);
    let is_min = [0.1, 0.5, 2.0].iter().all(|&d| f(90.0 - d) > mid && f(90.0 + d) > mid);
    ok_if(
        is_min,
        format!("|signal| at 90 deg = {mid:.6}, at 88/92 deg = {:.6}/{:.6}", f(88.0), f(92.0)),
    )
}

// 4

fn self_averaging() -> Result<String, String> {
    let e = |x: specstate::Error| x.to_string();
    let c = self_averaging_test(0.01, 100, 10_000, 4, SampleFamily::Cauchy).map_err(e)?;
    let g = self_averaging_test(0.01, 100, 10_000, 4, SampleFamily::Gaussian).map_err(e)?;
    ok_if(
        c.passes && !g.passes,
        format!(
            "Cauchy KS p = {:.3} (passes {}), Gaussian KS p = {:.3e} (passes {})",
            c.ks.p_value, c.passes, g.ks.p_value, g.passes
        ),
    )
}

// 5

fn cot_identity() -> Result<String, String> {
    let points = [(0.3, 0.01), (1.0, 0.5), (2.0, 1e-4), (-0.7, 0.2), (1.5, 1.0)];
    let mut worst: f64 = 0.0;
    for (x, y) in points {
        let (re, im) = cot_identity_residual_parts(x, y, 1_000_000).map_err(|e| e.to_string())?;
        worst = worst.max(re.abs()).max(im.abs());
    }
    ok_if(worst <= 1e-6, format!("max residual {worst:.3e} (limit 1e-6)"))
}

fn wrapped_sum() -> Result<String, String> {
    let mut worst: f64 = 0.0;
    for a in [0.01, 0.1, 0.5, 1.0] {
        for psi in [0.0, 0.3, 0.8, 1.2, 1.5] {
            let closed = wrapped_sum_closed(a, psi);
            let numeric = wrapped_sum_numeric(a, psi, 1_000_000);
            worst = worst.max((numeric - closed).abs());
        }
    }
    ok_if(worst <= 1e-10, format!("max |numeric - closed| {worst:.3e} (limit 1e-10)"))
}

// 6

fn special_states_check() -> Result<String, String> {
    let e = |x: specstate::Error| x.to_string();
    let spec = MultiLevelSpec {
        excited: 10,
        band_levels: 100,
        band_width: 2.0,
        coupling: 0.02,
        level_energy: 0.0,
        layout: CouplingLayout::grouped(5, 2, 100),
    };
    let model = spec.build().map_err(e)?;
    let set = special_states(&model, 16.0).map_err(e)?;
    let mean = set.mean_survival();
    let s_at = |k: usize| trace_of(&set, k, &[16.0]).map(|c| c.values[0]);
    let top = s_at(0).map_err(e)?;
    let bottom = s_at(set.len() - 1).map_err(e)?;
    let in_range = set.eigenvalues.iter().all(|&v| (-1e-10..=1.0 + 1e-10).contains(&v));
    let mut worst: f64 = 0.0;
    for k in 0..set.len() {
        worst = worst.max((s_at(k).map_err(e)? - set.eigenvalues[k]).abs());
    }
    ok_if(
        (0.4..=0.6).contains(&mean) && top >= 0.9 && bottom <= 0.1 && in_range && worst <= 1e-8,
        format!(
            "mean S(16) = {mean:.4}, top S(16) = {top:.6}, bottom S(16) = {bottom:.4}, \
             spectrum in range {in_range}, max |S - eigenvalue| = {worst:.2e}"
        ),
    )
}

// 7

fn decay_diagnostics() -> Result<DecayDiagnostics, String> {
    let spec = BandSpec::with_spacing(1, 100, 2.0 * PI / 300.0, 1.0 / 70.0);
    let m = DecayModel::canonical(&spec).map_err(|e| e.to_string())?;
    let psi = QuantumState::basis(m.dim(), 0).map_err(|e| e.to_string())?;
    let curve = survival_curve(&m, &psi, &time_grid(400.0, 0.1)).map_err(|e| e.to_string())?;
    Ok(DecayDiagnostics::compute(&m, &psi, &curve))
}

fn decay_zeno() -> Result<String, String> {
    let d = decay_diagnostics()?;
    let fit = d.zeno_time_fit.ok_or("no Zeno fit")?;
    let rel = (fit / d.zeno_time - 1.0).abs();
    ok_if(rel <= 0.02, format!("fitted {fit:.4} vs {:.4} ({:.2}%)", d.zeno_time, 100.0 * rel))
}

fn decay_exponential() -> Result<String, String> {
    let d = decay_diagnostics()?;
    let fit = d.fitted_slope.ok_or("no log-linear fit")?;
    ok_if(
        fit.max_residual < 0.02,
        format!(
            "max log residual {:.4} over {} points, slope {:.5} (golden rule {:.5})",
            fit.max_residual,
            fit.points,
            fit.slope,
            d.golden_rule_slope.unwrap_or(f64::NAN)
        ),
    )
}

fn decay_recurrence() -> Result<String, String> {
    let d = decay_diagnostics()?;
    let t_rec = d.recurrence_time.ok_or("no recurrence time")?;
    let (t, s) = d.recurrence_peak.ok_or("no recurrence peak")?;
    ok_if(
        s > 0.5 && t >= 0.9 * t_rec && t <= 1.25 * t_rec,
        format!("peak S = {s:.4} at t = {t:.1}, 2pi/dw = {t_rec:.1}"),
    )
}

// 8

fn catmap_acceptance() -> Result<String, String> {
    let final_box = Rect::new(0.4, 0.6, 0.2, 0.3).map_err(|e| e.to_string())?;
    let prob = TwoTimeProblem::new(Rect::UNIT, final_box, 19, 2000, 8);
    let sol = solve_two_time(&prob).map_err(|e| e.to_string())?;
    let rate = sol.acceptance_rate();
    let p = final_box.area();
    let se = (p * (1.0 - p) / sol.candidates as f64).sqrt();
    ok_if(
        (rate - p).abs() <= 3.0 * se,
        format!("rate {rate:.5} vs {p:.3} (3 SE = {:.5}, {} candidates)", 3.0 * se, sol.candidates),
    )
}

struct PairedTraces {
    constrained: Vec<Vec<f64>>,
    unconstrained: Vec<Vec<f64>>,
}

fn fig6_traces(seeds: u64) -> Result<PairedTraces, String> {
    let e = |x: specstate::Error| x.to_string();
    let b = Rect::new(0.0, 0.1, 0.0, 0.1).map_err(e)?;
    let grid = GrainGrid::square(10).map_err(e)?;
    let mut out = PairedTraces {
        constrained: Vec::new(),
        unconstrained: Vec::new(),
    };
    for seed in 0..seeds {
        let prob = TwoTimeProblem::new(b, b, 19, 250, 1000 + seed);
        let sol = solve_two_time(&prob).map_err(e)?;
        let free = CatEnsemble::uniform_in(&b, 250, 1000 + seed, "catmap/unconstrained");
        out.constrained.push(entropy_trace(&sol.ensemble, &grid, 19).map_err(e)?);
        out.unconstrained.push(entropy_trace(&free, &grid, 19).map_err(e)?);
    }
    Ok(out)
}

fn catmap_endpoints() -> Result<String, String> {
    let tr = fig6_traces(20)?;
    let plateau = 0.9 * 100f64.ln();
    let back_to_zero = tr.constrained.iter().all(|c| c[19] == 0.0);
    let min_free = tr
        .unconstrained
        .iter()
        .flat_map(|u| u[8..].iter().copied())
        .fold(f64::INFINITY, f64::min);
    ok_if(
        back_to_zero && min_free >= plateau,
        format!(
            "S_constrained(19) = 0 for all seeds: {back_to_zero}; \
             min S_unconstrained(t >= 8) = {min_free:.3} (plateau floor {plateau:.3})"
        ),
    )
}

fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    (m, xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0))
}

fn catmap_first_half() -> Result<String, String> {
    let seeds = 20;
    let tr = fig6_traces(seeds)?;
    let mut worst: f64 = 0.0;
    let mut all_ok = true;
    for t in 0..=9 {
        let c: Vec<f64> = tr.constrained.iter().map(|v| v[t]).collect();
        let u: Vec<f64> = tr.unconstrained.iter().map(|v| v[t]).collect();
        let (mc, vc) = mean_var(&c);
        let (mu, vu) = mean_var(&u);
        let pooled = (vc / seeds as f64 + vu / seeds as f64).sqrt();
        let diff = (mc - mu).abs();
        if diff > 0.0 {
            worst = worst.max(diff / pooled);
        }
        all_ok &= diff <= 3.0 * pooled;
    }
    ok_if(all_ok, format!("max |difference| / pooled SE over t = 0..9: {worst:.2} (limit 3)"))
}

// 9

fn field_grid() -> Vec<(f64, f64)> {
    let ys = [-0.04, -0.026, -0.01, 0.0, 0.018];
    let zs = [0.002, 0.003, 0.004, 0.006, 0.009];
    ys.iter().flat_map(|&y| zs.iter().map(move |&z| (y, z))).collect()
}

fn straight_closed_form() -> Result<String, String> {
    let e = |x: specstate::Error| x.to_string();
    let lp = WireLoop::new(0.003, 0.05, 100.0).map_err(e)?;
    let mut worst: f64 = 0.0;
    for (y, z) in field_grid() {
        let p = Vector3::new(0.0, y, z);
        let closed = straight_wire_field(&lp, y, z).map_err(e)?;
        let quad = biot_savart_piece(&lp, ContourPiece::Top, &p, 10_000).map_err(e)?
            + biot_savart_piece(&lp, ContourPiece::Bottom, &p, 10_000).map_err(e)?;
        worst = worst.max((closed - quad).norm() / closed.norm());
    }
    ok_if(worst <= 1e-6, format!("max relative deviation {worst:.3e} on 5x5 grid (limit 1e-6)"))
}

fn semicircle_closed_form() -> Result<String, String> {
    let e = |x: specstate::Error| x.to_string();
    let lp = WireLoop::new(0.003, 0.05, 100.0).map_err(e)?;
    let mut worst: f64 = 0.0;
    for (y, z) in field_grid() {
        let y_bar = y + 0.5 * lp.length;
        let closed = semicircle_bx(&lp, y_bar, z).map_err(e)?;
        let quad = semicircle_field(&lp, ContourPiece::Left, &Vector3::new(0.0, y, z)).map_err(e)?;
        let rel = (closed - quad.x).abs() / closed.abs().max(quad.norm());
        worst = worst.max(rel);
    }
    ok_if(worst <= 1e-6, format!("max relative deviation of B_x {worst:.3e} (limit 1e-6)"))
}

fn bracket_max() -> Result<String, String> {
    let grid: Vec<f64> = (1..=300).map(|i| 0.01 * i as f64).collect();
    let bm = bracket_maximum(&grid).map_err(|e| e.to_string())?;
    ok_if(
        (bm.value - 0.5).abs() <= 0.05 * 0.5 && (bm.s_over_z - 0.75).abs() <= 0.1 * 0.75,
        format!(
            "maximum {:.5} at s/z = {:.4}, y/z = {:.4} (target 0.5 +- 5% at 0.75 +- 10%)",
            bm.value, bm.s_over_z, bm.y_over_z
        ),
    )
}

fn hbar_over_mu_b() -> Result<String, String> {
    let r = HBAR / BOHR_MAGNETON;
    ok_if(
        (r - 1.14e-11).abs() <= 0.005e-11,
        format!("hbar/mu_B = {r:.5e} T s (target 1.14e-11 to 3 digits)"),
    )
}

// 10

fn run_cli(args: &[&str], out: &Path, threads: usize) -> Result<(), String> {
    let status = Command::new(env!("CARGO_BIN_EXE_specstate"))
        .args(args)
        .arg("--out")
        .arg(out)
        .arg("--threads")
        .arg(threads.to_string())
        .output()
        .map_err(|e| e.to_string())?;
    if status.status.success() {
        Ok(())
    } else {
        Err(format!(
            "{args:?} failed: {}",
            String::from_utf8_lossy(&status.stderr).trim()
        ))
    }
}

fn data_files(dir: &Path) -> Result<Vec<(String, Vec<u8>)>, String> {
    let mut files: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.file_name().is_some_and(|n| n != "manifest.txt"))
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            std::fs::read(&p).map(|b| (name, b)).map_err(|e| e.to_string())
        })
        .collect::<Result<_, _>>()?;
    files.sort();
    Ok(files)
}

fn determinism() -> Result<String, String> {
    let runs: &[&[&str]] = &[
        &["decay", "--preset", "fig1"],
        &["special", "--preset", "fig2"],
        &["special", "--layout", "random", "--seed", "5"],
        &["catmap", "--preset", "fig3-5"],
        &["kicks", "probs", "--method", "numeric"],
        &["kicks", "expectation", "--n-max", "100000"],
        &["kicks", "selfavg", "--repeats", "2000"],
        &["kicks", "optimize", "--mode", "total"],
        &["fields", "--points", "41", "--n-nodes", "400"],
    ];
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut compared = 0;
    for (i, args) in runs.iter().enumerate() {
        let mut outputs = Vec::new();
        for (k, threads) in [1, 4, 4].into_iter().enumerate() {
            let dir = tmp.path().join(format!("{i}-{k}"));
            run_cli(args, &dir, threads)?;
            outputs.push(data_files(&dir)?);
        }
        if outputs[0].is_empty() || outputs.iter().any(|o| *o != outputs[0]) {
            return Err(format!("{args:?}: outputs differ between runs"));
        }
        compared += outputs[0].len();
    }
    Ok(format!(
        "{} runs x 3 (threads 1, 4, 4): {compared} output files byte-identical",
        runs.len()
    ))
}

const CHECKS: &[Check] = &[
    Check { id: "1", name: "Born ratio recovery", limit: secs(1), run: born_ratio },
    Check { id: "2a", name: "conditional expectation UP", limit: secs(10), run: expectation_up },
    Check { id: "2b", name: "conditional expectation DOWN", limit: secs(10), run: expectation_down },
    Check { id: "3a", name: "entry angle, sorted", limit: secs(1), run: angle_sorted },
    Check { id: "3b", name: "entry angle, total", limit: secs(1), run: angle_total },
    Check { id: "3c", name: "total signal minimum at 90 deg", limit: secs(1), run: angle_total_minimum },
    Check { id: "4", name: "non-self-averaging", limit: secs(30), run: self_averaging },
    Check { id: "5a", name: "cotangent identity", limit: secs(10), run: cot_identity },
    Check { id: "5b", name: "wrapped sum closed form", limit: secs(10), run: wrapped_sum },
    Check { id: "6", name: "special states", limit: secs(30), run: special_states_check },
    Check { id: "7a", name: "Zeno time by fit", limit: secs(30), run: decay_zeno },
    Check { id: "7b", name: "exponential window", limit: secs(30), run: decay_exponential },
    Check { id: "7c", name: "recurrence peak", limit: secs(30), run: decay_recurrence },
    Check { id: "8a", name: "cat-map acceptance rate", limit: secs(60), run: catmap_acceptance },
    Check { id: "8b", name: "regathering and plateau", limit: secs(60), run: catmap_endpoints },
    Check { id: "8c", name: "first-half entropy agreement", limit: secs(60), run: catmap_first_half },
    Check { id: "9a", name: "straight-wire closed form", limit: secs(10), run: straight_closed_form },
    Check { id: "9b", name: "semicircle B_x closed form", limit: secs(10), run: semicircle_closed_form },
    Check { id: "9c", name: "bracket maximum", limit: secs(10), run: bracket_max },
    Check { id: "9d", name: "hbar / mu_B", limit: secs(10), run: hbar_over_mu_b },
    Check { id: "10", name: "determinism across runs and threads", limit: None, run: determinism },
];

fn main() {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = Vec::new();
    let mut ran = 0;
    for c in CHECKS {
        if !filter.is_empty() && !filter.iter().any(|f| c.id.starts_with(f.as_str())) {
            continue;
        }
        ran += 1;
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let slow = c.limit.is_some_and(|l| elapsed > l);
        let (status, detail) = match (&result, slow) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("{d}; runtime over limit")),
            (Err(d), _) => ("FAIL", d.clone()),
        };
        let limit = c.limit.map(|l| format!(" / {}s", l.as_secs())).unwrap_or_default();
        println!(
            "{status} criterion {:<3} {:<36} {detail} [{:.2}s{limit}]",
            c.id,
            c.name,
            elapsed.as_secs_f64()
        );
        if status == "FAIL" {
            failed.push(c.id);
        }
    }
    println!("acceptance: {} passed, {} failed", ran - failed.len(), failed.len());
    if !failed.is_empty() {
        println!("failed: {}", failed.join(", "));
        std::process::exit(1);
    }
}
