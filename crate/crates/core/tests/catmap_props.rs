use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use specstate::catmap::{
    cat_step, cat_step_inverse, entropy, entropy_experiment, entropy_of_counts, entropy_trace,
    evolve, iterate, solve_two_time, CatEnsemble, GrainGrid, Point, Rect, TwoTimeProblem,
};

const BITS: u32 = 24;
const MASK: u64 = (1 << BITS) - 1;

fn dyadic(kx: u64, ky: u64) -> Point {
    let scale = (1u64 << BITS) as f64;
    Point::new(kx as f64 / scale, ky as f64 / scale)
}

fn integer_step((kx, ky): (u64, u64)) -> (u64, u64) {
    ((kx + ky) & MASK, (kx + 2 * ky) & MASK)
}

proptest! {
    #[test]
    fn dyadic_points_follow_the_integer_map(kx in 0..=MASK, ky in 0..=MASK, steps in 0usize..40) {
        let mut k = (kx, ky);
        for _ in 0..steps {
            k = integer_step(k);
        }
        prop_assert_eq!(iterate(dyadic(kx, ky), steps), dyadic(k.0, k.1));
    }

    #[test]
    fn inverse_undoes_step_exactly_on_dyadics(kx in 0..=MASK, ky in 0..=MASK) {
        let p = dyadic(kx, ky);
        prop_assert_eq!(cat_step_inverse(cat_step(p)), p);
        prop_assert_eq!(cat_step(cat_step_inverse(p)), p);
    }

    #[test]
    fn inverse_undoes_step_in_floating_point(x in 0.0..1.0f64, y in 0.0..1.0f64) {
        let p = Point::new(x, y);
        let q = cat_step_inverse(cat_step(p));
        let d = |a: f64, b: f64| { let t = (a - b).abs(); t.min(1.0 - t) };
        prop_assert!(d(q.x, x) < 1e-12 && d(q.y, y) < 1e-12);
    }

    #[test]
    fn images_stay_in_unit_square(x in 0.0..1.0f64, y in 0.0..1.0f64, steps in 0usize..60) {
        let q = iterate(Point::new(x, y), steps);
        prop_assert!((0.0..1.0).contains(&q.x) && (0.0..1.0).contains(&q.y));
    }

    #[test]
    fn entropy_is_bounded(counts in prop::collection::vec(0usize..50, 1..200)) {
        prop_assume!(counts.iter().sum::<usize>() > 0);
        let s = entropy_of_counts(&counts);
        prop_assert!(s >= 0.0 && s <= (counts.len() as f64).ln() + 1e-12);
    }
}

#[test]
fn small_box_spreads_in_eight_steps() {
    let init = Rect::new(0.0, 0.1, 0.0, 0.1).unwrap();
    let grid = GrainGrid::square(10).unwrap();
    let e = CatEnsemble::uniform_in(&init, 250, 2024, "test/spread");
    let occupied = grid.occupancy(&evolve(&e, 8)).iter().filter(|&&c| c > 0).count();
    assert!(occupied >= 90, "{occupied} grains occupied");
}

#[test]
fn measure_is_preserved() {
    let n = 200_000;
    let r = Rect::new(0.3, 0.5, 0.55, 0.7).unwrap();
    let e = CatEnsemble::uniform_in(&Rect::UNIT, n, 5, "test/measure");
    for k in [5, 9, 20] {
        let hits = evolve(&e, k).points.iter().filter(|&&p| r.contains(p)).count();
        let p = r.area();
        let se = (p * (1.0 - p) / n as f64).sqrt();
        let frac = hits as f64 / n as f64;
        assert!((frac - p).abs() < 4.0 * se, "k = {k}: {frac} vs {p}");
    }
}

/// Plug-in entropy of a multinomial sample of `n` over `cells` equiprobable cells.
fn multinomial_entropy(n: usize, cells: usize, rng: &mut ChaCha8Rng) -> f64 {
    let mut counts = vec![0usize; cells];
    for _ in 0..n {
        counts[rng.random_range(0..cells)] += 1;
    }
    entropy_of_counts(&counts)
}

#[test]
fn uniform_gas_entropy_matches_multinomial_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let oracle: Vec<f64> = (0..4000).map(|_| multinomial_entropy(250, 100, &mut rng)).collect();
    let mean = oracle.iter().sum::<f64>() / oracle.len() as f64;
    let sd = (oracle.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (oracle.len() - 1) as f64)
        .sqrt();
    let grid = GrainGrid::square(10).unwrap();
    let seeds = 40;
    let mut total = 0.0;
    for seed in 0..seeds {
        let e = CatEnsemble::uniform_in(&Rect::UNIT, 250, seed, "test/uniform");
        let s = entropy(&e, &grid).unwrap();
        assert!((s - mean).abs() < 4.0 * sd);
        total += s;
    }
    let avg = total / seeds as f64;
    assert!((avg - mean).abs() < 3.0 * sd / (seeds as f64).sqrt(), "{avg} vs {mean} ± {sd}");
}

#[test]
fn acceptance_rate_for_unit_initial_box() {
    let final_box = Rect::new(0.4, 0.6, 0.2, 0.3).unwrap();
    for horizon in [1, 19] {
        let prob = TwoTimeProblem::new(Rect::UNIT, final_box, horizon, 1000, 8);
        let sol = solve_two_time(&prob).unwrap();
        let rate = sol.acceptance_rate();
        if horizon == 19 {
            let se = (0.02 * 0.98 / sol.candidates as f64).sqrt();
            assert!((rate - 0.02).abs() < 3.0 * se, "rate {rate}");
        } else {
            assert!(rate > 0.01 && rate < 0.04, "rate {rate}");
        }
        assert!(sol
            .ensemble
            .points
            .iter()
            .all(|&p| final_box.contains(iterate(p, horizon))));
    }
}

#[test]
fn two_time_solution_is_seed_deterministic() {
    let b = Rect::new(0.0, 0.1, 0.0, 0.1).unwrap();
    let prob = TwoTimeProblem::new(b, b, 19, 250, 31);
    assert_eq!(solve_two_time(&prob).unwrap(), solve_two_time(&prob).unwrap());
    let other = TwoTimeProblem { seed: 32, ..prob.clone() };
    assert_ne!(solve_two_time(&prob).unwrap(), solve_two_time(&other).unwrap());
}

#[test]
fn constrained_gas_regathers() {
    let b = Rect::new(0.0, 0.1, 0.0, 0.1).unwrap();
    let grid = GrainGrid::square(10).unwrap();
    let traces = entropy_experiment(&TwoTimeProblem::new(b, b, 19, 250, 7), &grid).unwrap();
    assert_eq!(traces.constrained.len(), 20);
    assert_eq!(traces.constrained[0], 0.0);
    assert_eq!(traces.constrained[19], 0.0);
    assert!(traces.unconstrained[19] > 0.85 * 100f64.ln());
}

#[test]
fn unconstrained_entropy_never_falls_back() {
    let b = Rect::new(0.0, 0.1, 0.0, 0.1).unwrap();
    let grid = GrainGrid::square(10).unwrap();
    let plateau = 100f64.ln();
    for seed in 0..10 {
        let e = CatEnsemble::uniform_in(&b, 250, seed, "test/poincare");
        let trace = entropy_trace(&e, &grid, 40).unwrap();
        assert!(trace[5..].iter().all(|&s| s > 0.5 * plateau));
    }
}
