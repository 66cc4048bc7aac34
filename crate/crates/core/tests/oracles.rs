//! Cross-validation of the solver and search against independent oracles:
//! bisection for the fixed-point solve, dense reference grids for the
//! minimiser, and the published benchmark factors.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slopestab::{
    bishop_rhs, build_slices, circle_from_params, delta_min, evaluate_params, search_fi, search_fs,
    search_hi, solve_factor, EvalCounter, Material, SearchConfig, SliceSet, SlipParams, SlopeCase,
    SoilProfile, SolveStatus, SolverOptions,
};

const HALF_PI: f64 = std::f64::consts::FRAC_PI_2;

fn case1() -> SlopeCase {
    SlopeCase::from_height_width(
        5.0,
        10.0,
        SoilProfile::homogeneous(5.0, Material::new(9.8, 10f64.to_radians(), 17.64).unwrap()),
    )
    .unwrap()
}

fn case2() -> SlopeCase {
    SlopeCase::from_height_width(
        8.5,
        17.0,
        SoilProfile::homogeneous(8.5, Material::new(14.71, 20f64.to_radians(), 18.63).unwrap()),
    )
    .unwrap()
}

/// Random slice sets built from physically consistent surfaces on random
/// homogeneous slopes, with a positive driving sum.
fn random_slice_sets(count: usize, seed: u64) -> Vec<SliceSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sets = Vec::with_capacity(count);
    while sets.len() < count {
        let beta_deg: f64 = rng.random_range(15.0..80.0);
        let c: f64 = rng.random_range(0.5..30.0);
        let phi_deg: f64 = rng.random_range(0.0..42.0);
        let gamma: f64 = rng.random_range(14.0..22.0);
        let h: f64 = rng.random_range(3.0..12.0);
        let slope = SlopeCase::homogeneous(
            h,
            beta_deg.to_radians(),
            Material::new(c, phi_deg.to_radians(), gamma).unwrap(),
        )
        .unwrap();
        let b = slope.width();
        let m = h.max(b);
        let x_in = rng.random_range(b..=b + m);
        let x_out = rng.random_range(-m..=b / 4.0);
        let Ok(dmin) = delta_min(&slope, x_in, x_out) else { continue };
        if dmin >= HALF_PI - 1e-3 {
            continue;
        }
        let t: f64 = rng.random_range(0.05..1.0);
        let p = SlipParams::new(x_in, x_out, dmin + t * (HALF_PI - dmin));
        let Ok(circle) = circle_from_params(&slope, &p) else { continue };
        let Ok(slices) = build_slices(&slope, &circle, 25) else { continue };
        if slices.driving_sum() <= 0.0 {
            continue;
        }
        // the bisection oracle works on [0.05, 50]; keep factors inside it
        let eval = solve_factor(&slices, &SolverOptions::default());
        if eval.status != SolveStatus::Ok || !(0.06..45.0).contains(&eval.factor) {
            continue;
        }
        sets.push(slices);
    }
    sets
}

/// Independent root of g(F) = F - rhs(F) by bisection on [0.05, 50]. The
/// lower end of the bracket is walked up past the region where the Bishop
/// denominator degenerates (tiny F blows up m_alpha for negative base
/// angles); there g < 0 anyway, so the root is preserved.
fn bisect_factor(slices: &SliceSet, floor: f64) -> Option<f64> {
    let g = |f: f64| bishop_rhs(slices, f, floor).map(|rhs| f - rhs);
    let mut lo = 0.05;
    let mut g_lo = loop {
        match g(lo) {
            Ok(v) => break v,
            Err(_) => {
                lo *= 1.5;
                if lo > 50.0 {
                    return None;
                }
            }
        }
    };
    // the guard can also trip at large F, where m_alpha decays towards
    // cos(alpha); walk the upper end down until g evaluates
    let mut hi = 50.0;
    let g_hi = loop {
        match g(hi) {
            Ok(v) => break v,
            Err(_) => {
                hi *= 0.8;
                if hi <= lo {
                    return None;
                }
            }
        }
    };
    if g_lo.signum() == g_hi.signum() {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let g_mid = g(mid).ok()?;
        if g_mid == 0.0 {
            return Some(mid);
        }
        if g_mid.signum() == g_lo.signum() {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 {
            break;
        }
    }
    Some(0.5 * (lo + hi))
}

#[test]
fn fixed_point_matches_bisection_on_random_sets() {
    let opts = SolverOptions::default();
    let mut compared = 0;
    for slices in random_slice_sets(100, 7) {
        let eval = solve_factor(&slices, &opts);
        assert_eq!(eval.status, SolveStatus::Ok);
        let root = bisect_factor(&slices, opts.m_alpha_floor)
            .expect("bisection bracket must hold for solvable sets");
        assert!(
            (eval.factor - root).abs() < 1e-6,
            "fixed point {} vs bisection {}",
            eval.factor,
            root
        );
        compared += 1;
    }
    assert_eq!(compared, 100);
}

#[test]
fn frictionless_sets_solve_in_one_iteration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut tested = 0;
    while tested < 20 {
        let beta_deg: f64 = rng.random_range(15.0..70.0);
        let c: f64 = rng.random_range(2.0..30.0);
        let slope = SlopeCase::homogeneous(
            5.0,
            beta_deg.to_radians(),
            Material::new(c, 0.0, 18.0).unwrap(),
        )
        .unwrap();
        let b = slope.width();
        let x_in = b + 2.0 + rng.random_range(0.0..3.0);
        let Ok(dmin) = delta_min(&slope, x_in, -1.0) else { continue };
        let p = SlipParams::new(x_in, -1.0, dmin + 0.3 * (HALF_PI - dmin));
        let Ok(circle) = circle_from_params(&slope, &p) else { continue };
        let Ok(slices) = build_slices(&slope, &circle, 25) else { continue };
        if slices.driving_sum() <= 0.0 {
            continue;
        }
        let eval = solve_factor(&slices, &SolverOptions::default());
        assert_eq!(eval.status, SolveStatus::Ok);
        assert_eq!(eval.iterations, 1);
        // closed form: sum(c b / cos a) / sum(W sin a)
        let closed: f64 = slices
            .slices()
            .iter()
            .map(|s| s.base_material.cohesion * s.width / s.base_angle.cos())
            .sum::<f64>()
            / slices.driving_sum();
        assert!((eval.factor - closed).abs() / closed < 1e-12);
        tested += 1;
    }
}

#[test]
fn benchmark_case1_factor() {
    let outcome = search_hi(&case1(), &SearchConfig::default()).unwrap();
    assert!(
        (outcome.factor() - 1.3429).abs() <= 0.015,
        "case 1 factor {} off the published 1.3429",
        outcome.factor()
    );
    assert!(outcome.evaluations <= 600, "case 1 evaluations {}", outcome.evaluations);
}

#[test]
fn benchmark_case2_factor() {
    let outcome = search_hi(&case2(), &SearchConfig::default()).unwrap();
    assert!(
        (outcome.factor() - 1.7336).abs() <= 0.02,
        "case 2 factor {} off the published 1.7336",
        outcome.factor()
    );
}

#[test]
fn slice_doubling_changes_factor_negligibly() {
    for slope in [case1(), case2()] {
        let mut config = SearchConfig::default();
        let f25 = search_hi(&slope, &config).unwrap().factor();
        config.n_slices = 50;
        let f50 = search_hi(&slope, &config).unwrap().factor();
        assert!((f50 - f25).abs() / f25 < 0.005, "doubling moved {f25} to {f50}");
    }
}

#[test]
fn hybrid_beats_dense_reference_grid_on_vertical_slope() {
    // brute-force oracle: a 30 x 30 x 60 grid over the parameter box
    let slope = SlopeCase::homogeneous(
        5.0,
        HALF_PI,
        Material::new(10.0, 30f64.to_radians(), 18.0).unwrap(),
    )
    .unwrap();
    let dense_min = dense_grid_minimum(&slope, 30, 30, 60);
    let outcome = search_hi(&slope, &SearchConfig::default()).unwrap();
    assert!(
        outcome.factor() <= dense_min + 0.01,
        "hybrid {} vs dense grid {dense_min}",
        outcome.factor()
    );
}

fn dense_grid_minimum(slope: &SlopeCase, n_in: usize, n_out: usize, n_delta: usize) -> f64 {
    let b = slope.width();
    let m = slope.height().max(b);
    let counter = EvalCounter::new();
    let opts = SolverOptions::default();
    let mut best = f64::INFINITY;
    for i in 0..n_in {
        let x_in = b + m * i as f64 / (n_in - 1) as f64;
        for j in 0..n_out {
            let x_out = -m + (m + b / 4.0) * j as f64 / (n_out - 1) as f64;
            let Ok(dmin) = delta_min(slope, x_in, x_out) else { continue };
            if dmin >= HALF_PI {
                continue;
            }
            for k in 0..n_delta {
                let delta = dmin + (HALF_PI - dmin) * k as f64 / (n_delta - 1) as f64;
                let eval = evaluate_params(slope, &SlipParams::new(x_in, x_out, delta), 25, &opts, &counter);
                if eval.status == SolveStatus::Ok && eval.factor < best {
                    best = eval.factor;
                }
            }
        }
    }
    best
}

#[test]
fn fine_grid_counts_follow_the_inclination_trend() {
    let config = SearchConfig::default();
    let mut previous = u64::MAX;
    let mut count_at_10 = 0;
    let mut count_at_90 = 0;
    for beta_deg in (1..=9).map(|i| 10.0 * i as f64) {
        let slope = SlopeCase::homogeneous(
            5.0,
            beta_deg.to_radians(),
            Material::new(10.0, 30f64.to_radians(), 18.0).unwrap(),
        )
        .unwrap();
        let outcome = search_fi(&slope, &config).unwrap();
        assert!(
            outcome.evaluations <= previous,
            "count rose from {previous} to {} at beta = {beta_deg}",
            outcome.evaluations
        );
        previous = outcome.evaluations;
        if beta_deg == 10.0 {
            count_at_10 = outcome.evaluations;
        }
        if beta_deg == 90.0 {
            count_at_90 = outcome.evaluations;
        }
    }
    assert!((1124..=1686).contains(&count_at_10), "beta=10 count {count_at_10}");
    assert!((142..=214).contains(&count_at_90), "beta=90 count {count_at_90}");
}

#[test]
fn fs_runs_exactly_one_thousand_evaluations_everywhere() {
    for beta_deg in [10.0f64, 26.565051177077986, 50.0, 90.0] {
        let slope = SlopeCase::homogeneous(
            5.0,
            beta_deg.to_radians(),
            Material::new(10.0, 30f64.to_radians(), 18.0).unwrap(),
        )
        .unwrap();
        assert_eq!(search_fs(&slope, &SearchConfig::default()).unwrap().evaluations, 1000);
    }
}

#[test]
fn strength_scaling_invariance_on_random_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let config = SearchConfig::default();
    for _ in 0..20 {
        let beta_deg: f64 = rng.random_range(15.0..75.0);
        let c: f64 = rng.random_range(1.0..25.0);
        let phi_deg: f64 = rng.random_range(5.0..40.0);
        let gamma: f64 = rng.random_range(14.0..22.0);
        let lambda: f64 = rng.random_range(0.2..5.0);
        let make = |scale: f64| {
            SlopeCase::homogeneous(
                5.0,
                beta_deg.to_radians(),
                Material::new(c * scale, phi_deg.to_radians(), gamma * scale).unwrap(),
            )
            .unwrap()
        };
        let f1 = search_hi(&make(1.0), &config).unwrap().factor();
        let f2 = search_hi(&make(lambda), &config).unwrap().factor();
        assert!(
            (f1 - f2).abs() / f1 < 1e-9,
            "scaling by {lambda} moved {f1} to {f2} (beta {beta_deg}, c {c}, phi {phi_deg})"
        );
    }
}
