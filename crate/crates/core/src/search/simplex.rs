//! Bounded Nelder-Mead refinement in the transformed parameter space.
//!
//! The simplex works on coordinates `(x_in, x_out, t)` where
//! `t = (delta - delta_min) / (90 deg - delta_min)` maps each pair's feasible
//! tangent range onto `[0, 1]`. That decouples the moving `delta` bound from
//! the other two axes; the remaining box constraints are handled by clamping
//! every trial point before evaluation.
//!
//! The refinement restarts the simplex at its own converged point with a
//! fresh full-size initial simplex until a restart stops improving (or the
//! evaluation budget runs out). A single simplex contracts prematurely on
//! this objective near the toe, where the feasible tangent range of exits
//! just left of the toe pinches to a point and the surface family switches
//! from plateau exits to face exits; a restarted vertex steps cleanly across
//! the pinch instead of creeping towards it.

use std::cell::RefCell;

use super::{GridSpec, Objective, SimplexOptions};
use crate::bishop::SafetyEvaluation;
use crate::error::SearchError;
use crate::geometry::{check_viability, delta_min, SlipParams};
use crate::slope::SlopeCase;

const HALF_PI: f64 = std::f64::consts::FRAC_PI_2;

type Coords = [f64; 3];
type Bounds = [(f64, f64); 3];

fn clamp_coords(x: Coords, bounds: &Bounds) -> Coords {
    [
        x[0].clamp(bounds[0].0, bounds[0].1),
        x[1].clamp(bounds[1].0, bounds[1].1),
        x[2].clamp(bounds[2].0, bounds[2].1),
    ]
}

/// Generic bounded Nelder-Mead over a 3-D box. Returns the best point seen,
/// its value, and the number of objective evaluations spent.
///
/// `start_value`, when given, is reused for the initial vertex so an already
/// evaluated start costs nothing.
pub fn nelder_mead_box<F: FnMut(Coords) -> f64>(
    mut objective: F,
    start: Coords,
    bounds: &Bounds,
    steps: Coords,
    opts: &SimplexOptions,
    start_value: Option<f64>,
) -> (Coords, f64, u64) {
    let mut evals: u64 = 0;
    let mut best_seen: Option<(Coords, f64)> = None;
    let mut eval = |x: Coords, evals: &mut u64, best: &mut Option<(Coords, f64)>| -> f64 {
        let v = objective(x);
        *evals += 1;
        if best.map(|(_, bf)| v < bf).unwrap_or(true) {
            *best = Some((x, v));
        }
        v
    };

    // initial simplex: start plus one offset vertex per axis, stepping away
    // from the nearer box edge
    let v0 = clamp_coords(start, bounds);
    let f0 = match start_value {
        Some(f) => {
            best_seen = Some((v0, f));
            f
        }
        None => eval(v0, &mut evals, &mut best_seen),
    };
    let mut simplex: Vec<(Coords, f64)> = vec![(v0, f0)];
    for axis in 0..3 {
        let mut v = v0;
        let step = steps[axis].abs().max(1e-12);
        v[axis] = if v0[axis] + step <= bounds[axis].1 { v0[axis] + step } else { v0[axis] - step };
        let v = clamp_coords(v, bounds);
        let f = eval(v, &mut evals, &mut best_seen);
        simplex.push((v, f));
    }

    let sizes = [
        (bounds[0].1 - bounds[0].0).max(1e-12),
        (bounds[1].1 - bounds[1].0).max(1e-12),
        (bounds[2].1 - bounds[2].0).max(1e-12),
    ];

    while evals < opts.max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[3].1 - simplex[0].1;
        let anchor = simplex[0].0;
        let diameter = simplex[1..]
            .iter()
            .flat_map(|(v, _)| (0..3).map(move |a| (v[a] - anchor[a]).abs() / sizes[a]))
            .fold(0.0f64, f64::max);
        if spread < opts.f_tol && diameter < opts.x_tol {
            break;
        }

        let worst = simplex[3];
        let mut centroid = [0.0; 3];
        for (v, _) in &simplex[..3] {
            for (c, x) in centroid.iter_mut().zip(v) {
                *c += x / 3.0;
            }
        }
        let along = |coef: f64| -> Coords {
            let mut x = [0.0; 3];
            for a in 0..3 {
                x[a] = centroid[a] + coef * (centroid[a] - worst.0[a]);
            }
            clamp_coords(x, bounds)
        };

        let xr = along(opts.reflection);
        let fr = eval(xr, &mut evals, &mut best_seen);
        if fr < simplex[0].1 {
            if evals >= opts.max_evals {
                simplex[3] = (xr, fr);
                break;
            }
            let xe = along(opts.reflection * opts.expansion);
            let fe = eval(xe, &mut evals, &mut best_seen);
            simplex[3] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[2].1 {
            simplex[3] = (xr, fr);
        } else {
            if evals >= opts.max_evals {
                break;
            }
            // outside contraction against a merely bad reflection, inside
            // contraction against a worse-than-worst one
            let (xc, accept_vs) = if fr < worst.1 {
                (along(opts.reflection * opts.contraction), fr)
            } else {
                (along(-opts.contraction), worst.1)
            };
            let fc = eval(xc, &mut evals, &mut best_seen);
            if fc <= accept_vs {
                simplex[3] = (xc, fc);
            } else {
                // shrink everything towards the best vertex
                for i in 1..4 {
                    if evals >= opts.max_evals {
                        break;
                    }
                    let anchor = simplex[0].0;
                    let mut v = simplex[i].0;
                    for (x, best_x) in v.iter_mut().zip(anchor) {
                        *x = best_x + opts.shrink * (*x - best_x);
                    }
                    let v = clamp_coords(v, bounds);
                    let f = eval(v, &mut evals, &mut best_seen);
                    simplex[i] = (v, f);
                }
            }
        }
    }

    let (x, f) = best_seen.expect("at least the start vertex was recorded");
    (x, f, evals)
}

/// Local refinement of the counting objective from a viable start triplet.
/// Never returns a surface worse than the start.
pub fn nelder_mead(
    objective: &Objective<'_>,
    start: SlipParams,
    start_eval: SafetyEvaluation,
    coarse: &GridSpec,
    opts: &SimplexOptions,
) -> Result<(SlipParams, SafetyEvaluation), SearchError> {
    let slope = objective.slope;
    let viability = check_viability(slope, &start);
    if !viability.viable {
        return Err(SearchError::StartNotViable(format!("{:?}", viability.reason)));
    }
    let (xin_box, xout_box) = super::grid::param_box(slope);
    let bounds: Bounds = [(xin_box[0], xin_box[1]), (xout_box[0], xout_box[1]), (0.0, 1.0)];

    let step_for = |p: &SlipParams| -> Coords {
        let range = delta_min(slope, p.x_in, p.x_out).map(|d| HALF_PI - d).unwrap_or(0.0);
        [
            opts.initial_step * (xin_box[1] - xin_box[0]) / (coarse.n_xin - 1) as f64,
            opts.initial_step * (xout_box[1] - xout_box[0]) / (coarse.n_xout - 1) as f64,
            opts.initial_step * if range <= 1e-12 { 1.0 } else { (coarse.delta_spacing / range).min(1.0) },
        ]
    };
    let coords_for = |p: &SlipParams| -> Coords {
        let range = delta_min(slope, p.x_in, p.x_out).map(|d| HALF_PI - d).unwrap_or(0.0);
        let t = if range <= 1e-12 { 1.0 } else { ((p.delta - (HALF_PI - range)) / range).clamp(0.0, 1.0) };
        [p.x_in, p.x_out, t]
    };

    let best = RefCell::new((start, start_eval));
    let kernel_objective = |coords: Coords| -> f64 {
        let p = params_from_coords(slope, coords);
        let eval = objective.eval(&p);
        let mut tracked = best.borrow_mut();
        if eval.factor < tracked.1.factor {
            *tracked = (p, eval);
        }
        eval.factor
    };

    let mut budget = opts.max_evals;
    let mut anchor = (start, start_eval.factor);
    while budget > 0 {
        let run_opts = SimplexOptions { max_evals: budget, ..*opts };
        let (_, _, used) = nelder_mead_box(
            &kernel_objective,
            coords_for(&anchor.0),
            &bounds,
            step_for(&anchor.0),
            &run_opts,
            Some(anchor.1),
        );
        budget = budget.saturating_sub(used.max(1));
        let (p, eval) = *best.borrow();
        let improvement = anchor.1 - eval.factor;
        anchor = (p, eval.factor);
        if improvement < opts.f_tol {
            break;
        }
    }
    Ok(best.into_inner())
}

/// Map clamped simplex coordinates back to a slip triplet.
fn params_from_coords(slope: &SlopeCase, coords: Coords) -> SlipParams {
    let [x_in, x_out, t] = coords;
    match delta_min(slope, x_in, x_out) {
        Ok(dmin) if dmin < HALF_PI => SlipParams::new(x_in, x_out, dmin + t * (HALF_PI - dmin)),
        // collapsed or degenerate pair: probe at the right angle and let the
        // objective classify it
        _ => SlipParams::new(x_in, x_out, HALF_PI),
    }
}
