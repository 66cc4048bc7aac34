//! Critical-surface search: minimisation of the factor of safety over the
//! slip-surface parameter space.
//!
//! Three algorithms are provided:
//! - `hi`: a coarse grid over the `(x_in, x_out, delta)` space followed by a
//!   local Nelder-Mead refinement around the best grid point;
//! - `fi`: a fine grid over the same space, no refinement;
//! - `fs`: the conventional fine grid over circle centres and radii.

mod grid;
mod simplex;

pub use grid::{grid_candidates_fs, grid_candidates_new_param, grid_minimize, FsCandidate};
pub use simplex::{nelder_mead, nelder_mead_box};

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::bishop::{evaluate_params, EvalCounter, SafetyEvaluation, SolverOptions};
use crate::error::SearchError;
use crate::geometry::{circle_from_params, SlipCircle, SlipParams};
use crate::slope::SlopeCase;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Hi,
    Fi,
    Fs,
}

impl Algorithm {
    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Hi => "hi",
            Algorithm::Fi => "fi",
            Algorithm::Fs => "fs",
        }
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Grid resolution over the `(x_in, x_out, delta)` space: point counts along
/// the two abscissa axes and the ladder spacing for the tangent angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub n_xin: usize,
    pub n_xout: usize,
    /// Tangent-angle spacing (radians).
    pub delta_spacing: f64,
}

impl GridSpec {
    pub fn new(n_xin: usize, n_xout: usize, delta_spacing: f64) -> Self {
        debug_assert!(n_xin >= 2 && n_xout >= 2 && delta_spacing > 0.0);
        Self { n_xin, n_xout, delta_spacing }
    }

    /// Coarse probe grid used by the hybrid algorithm: 3 x 4 x 5 deg.
    pub fn coarse() -> Self {
        Self::new(3, 4, 5f64.to_radians())
    }

    /// Fine grid used by the `fi` algorithm: 8 x 12 x 5 deg.
    pub fn fine() -> Self {
        Self::new(8, 12, 5f64.to_radians())
    }
}

/// Nelder-Mead controls. Coefficients are the classical ones; the initial
/// simplex steps are a fraction of the coarse-grid spacing per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    pub reflection: f64,
    pub expansion: f64,
    pub contraction: f64,
    pub shrink: f64,
    pub initial_step: f64,
    /// Absolute spread of vertex values below which the simplex is converged.
    pub f_tol: f64,
    /// Simplex diameter, as a fraction of the box size per axis.
    pub x_tol: f64,
    pub max_evals: u64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            reflection: 1.0,
            expansion: 2.0,
            contraction: 0.5,
            shrink: 0.5,
            initial_step: 0.5,
            f_tol: 1e-5,
            x_tol: 1e-3,
            max_evals: 500,
        }
    }
}

/// Everything a search run needs besides the slope itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub n_slices: usize,
    pub solver: SolverOptions,
    pub coarse: GridSpec,
    pub fine: GridSpec,
    pub simplex: SimplexOptions,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            n_slices: 25,
            solver: SolverOptions::default(),
            coarse: GridSpec::coarse(),
            fine: GridSpec::fine(),
            simplex: SimplexOptions::default(),
        }
    }
}

/// Result of one search session.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub algorithm: Algorithm,
    pub critical: SlipParams,
    pub circle: SlipCircle,
    /// Solver outcome at the critical surface.
    pub evaluation: SafetyEvaluation,
    pub evaluations: u64,
    pub grid_evaluations: u64,
    pub refine_evaluations: u64,
    pub wall_time: Duration,
}

impl SearchOutcome {
    pub fn factor(&self) -> f64 {
        self.evaluation.factor
    }
}

/// The counting objective bound to one slope and one search session.
pub struct Objective<'a> {
    pub slope: &'a SlopeCase,
    pub n_slices: usize,
    pub solver: SolverOptions,
    pub counter: &'a EvalCounter,
}

impl Objective<'_> {
    pub fn eval(&self, p: &SlipParams) -> SafetyEvaluation {
        evaluate_params(self.slope, p, self.n_slices, &self.solver, self.counter)
    }
}

/// Hybrid search: coarse grid, then simplex refinement. The refinement is
/// seeded from the best coarse point of each exit family (lower-ground and
/// face exits form separate basins, glued non-smoothly at the toe) and never
/// returns a worse surface than the best grid point.
pub fn search_hi(slope: &SlopeCase, config: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    let started = Instant::now();
    let counter = EvalCounter::new();
    let objective = Objective { slope, n_slices: config.n_slices, solver: config.solver, counter: &counter };
    let candidates = grid_candidates_new_param(slope, &config.coarse);
    let (_, family_starts) = grid::grid_minimize_by_family(&objective, &candidates)?;
    let grid_evaluations = counter.count();
    let mut refined: Option<(SlipParams, SafetyEvaluation)> = None;
    for (p, eval) in family_starts {
        let (cp, ce) = nelder_mead(&objective, p, eval, &config.coarse, &config.simplex)?;
        let better = refined.as_ref().map(|(_, b)| ce.factor < b.factor).unwrap_or(true);
        if better {
            refined = Some((cp, ce));
        }
    }
    let (critical, evaluation) = refined.expect("at least one viable family start");
    let evaluations = counter.count();
    finish(Algorithm::Hi, slope, critical, evaluation, evaluations, grid_evaluations, started)
}

/// Fine grid over the `(x_in, x_out, delta)` space.
pub fn search_fi(slope: &SlopeCase, config: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    let started = Instant::now();
    let counter = EvalCounter::new();
    let objective = Objective { slope, n_slices: config.n_slices, solver: config.solver, counter: &counter };
    let candidates = grid_candidates_new_param(slope, &config.fine);
    let (critical, evaluation) = grid_minimize(&objective, &candidates)?;
    let evaluations = counter.count();
    finish(Algorithm::Fi, slope, critical, evaluation, evaluations, evaluations, started)
}

/// Conventional fine grid over circle centres and radii (always 1000
/// candidate evaluations).
pub fn search_fs(slope: &SlopeCase, config: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    let started = Instant::now();
    let counter = EvalCounter::new();
    let objective = Objective { slope, n_slices: config.n_slices, solver: config.solver, counter: &counter };
    let candidates = grid_candidates_fs(slope);
    let (critical, evaluation) = grid::fs_minimize(&objective, &candidates)?;
    let evaluations = counter.count();
    finish(Algorithm::Fs, slope, critical, evaluation, evaluations, evaluations, started)
}

pub fn search(
    algorithm: Algorithm,
    slope: &SlopeCase,
    config: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    match algorithm {
        Algorithm::Hi => search_hi(slope, config),
        Algorithm::Fi => search_fi(slope, config),
        Algorithm::Fs => search_fs(slope, config),
    }
}

fn finish(
    algorithm: Algorithm,
    slope: &SlopeCase,
    critical: SlipParams,
    evaluation: SafetyEvaluation,
    evaluations: u64,
    grid_evaluations: u64,
    started: Instant,
) -> Result<SearchOutcome, SearchError> {
    let circle = circle_from_params(slope, &critical)
        .expect("minimiser only returns surfaces that evaluated successfully");
    Ok(SearchOutcome {
        algorithm,
        critical,
        circle,
        evaluation,
        evaluations,
        grid_evaluations,
        refine_evaluations: evaluations - grid_evaluations,
        wall_time: started.elapsed(),
    })
}
