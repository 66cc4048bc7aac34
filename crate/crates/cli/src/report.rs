//! JSON-serialisable views of search results.

use serde::Serialize;

use slopestab::{arc_depth, efficiency_gain, Algorithm, SearchOutcome};

#[derive(Serialize)]
pub struct SurfaceReport {
    pub x_in: f64,
    pub x_out: f64,
    pub delta_deg: f64,
    pub center: [f64; 2],
    pub radius: f64,
}

#[derive(Serialize)]
pub struct EvaluationCounts {
    pub total: u64,
    pub grid: u64,
    pub refine: u64,
}

#[derive(Serialize)]
pub struct SolverReport {
    pub iterations: usize,
    pub converged: bool,
}

/// Output of `analyze`: the critical surface, its factor, the work spent,
/// and the slip line as a polyline over the slice boundaries.
#[derive(Serialize)]
pub struct AnalysisReport {
    pub factor_of_safety: f64,
    pub algorithm: Algorithm,
    pub surface: SurfaceReport,
    pub evaluations: EvaluationCounts,
    pub solver: SolverReport,
    pub polyline: Vec<[f64; 2]>,
}

fn surface(outcome: &SearchOutcome) -> SurfaceReport {
    SurfaceReport {
        x_in: outcome.critical.x_in,
        x_out: outcome.critical.x_out,
        delta_deg: outcome.critical.delta.to_degrees(),
        center: [outcome.circle.center.0, outcome.circle.center.1],
        radius: outcome.circle.radius,
    }
}

fn counts(outcome: &SearchOutcome) -> EvaluationCounts {
    EvaluationCounts {
        total: outcome.evaluations,
        grid: outcome.grid_evaluations,
        refine: outcome.refine_evaluations,
    }
}

/// Arc points at the slice boundaries: `n + 1` points from exit to entry.
pub fn slip_polyline(outcome: &SearchOutcome, n_slices: usize) -> Vec<[f64; 2]> {
    let (x_out, x_in) = (outcome.critical.x_out, outcome.critical.x_in);
    let width = (x_in - x_out) / n_slices as f64;
    (0..=n_slices)
        .map(|j| {
            let x = if j == n_slices { x_in } else { x_out + j as f64 * width };
            let y = arc_depth(&outcome.circle, x).unwrap_or(outcome.circle.center.1 - outcome.circle.radius);
            [x, y]
        })
        .collect()
}

impl AnalysisReport {
    pub fn new(outcome: &SearchOutcome, n_slices: usize) -> Self {
        Self {
            factor_of_safety: outcome.factor(),
            algorithm: outcome.algorithm,
            surface: surface(outcome),
            evaluations: counts(outcome),
            solver: SolverReport {
                iterations: outcome.evaluation.iterations,
                converged: outcome.evaluation.converged,
            },
            polyline: slip_polyline(outcome, n_slices),
        }
    }
}

#[derive(Serialize)]
pub struct AlgorithmReport {
    pub factor_of_safety: f64,
    pub surface: SurfaceReport,
    pub evaluations: EvaluationCounts,
    pub solver: SolverReport,
    /// Wall time averaged over the repetitions of this algorithm.
    pub mean_wall_time_s: f64,
}

impl AlgorithmReport {
    pub fn new(outcome: &SearchOutcome, mean_wall_time_s: f64) -> Self {
        Self {
            factor_of_safety: outcome.factor(),
            surface: surface(outcome),
            evaluations: counts(outcome),
            solver: SolverReport {
                iterations: outcome.evaluation.iterations,
                converged: outcome.evaluation.converged,
            },
            mean_wall_time_s,
        }
    }
}

/// Runtime and accuracy reductions of the hybrid and fine-improved searches
/// against the conventional grid, by wall time and by evaluation count.
#[derive(Serialize)]
pub struct EfficiencyGains {
    pub hi_vs_fs_time_percent: f64,
    pub fi_vs_fs_time_percent: f64,
    pub hi_vs_fs_evaluations_percent: f64,
    pub fi_vs_fs_evaluations_percent: f64,
}

/// Output of `compare`: all three algorithms side by side on one slope.
#[derive(Serialize)]
pub struct CompareReport {
    pub hi: AlgorithmReport,
    pub fi: AlgorithmReport,
    pub fs: AlgorithmReport,
    pub efficiency_gains: EfficiencyGains,
}

impl CompareReport {
    pub fn new(
        hi: (&SearchOutcome, f64),
        fi: (&SearchOutcome, f64),
        fs: (&SearchOutcome, f64),
    ) -> Self {
        let gains = EfficiencyGains {
            hi_vs_fs_time_percent: efficiency_gain(fs.1, hi.1).unwrap_or(f64::NAN),
            fi_vs_fs_time_percent: efficiency_gain(fs.1, fi.1).unwrap_or(f64::NAN),
            hi_vs_fs_evaluations_percent: efficiency_gain(
                fs.0.evaluations as f64,
                hi.0.evaluations as f64,
            )
            .unwrap_or(f64::NAN),
            fi_vs_fs_evaluations_percent: efficiency_gain(
                fs.0.evaluations as f64,
                fi.0.evaluations as f64,
            )
            .unwrap_or(f64::NAN),
        };
        Self {
            hi: AlgorithmReport::new(hi.0, hi.1),
            fi: AlgorithmReport::new(fi.0, fi.1),
            fs: AlgorithmReport::new(fs.0, fs.1),
            efficiency_gains: gains,
        }
    }
}
