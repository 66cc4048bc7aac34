//! Slope stability by the simplified Bishop method of slices, with a
//! physically bounded slip-surface parametrisation and a hybrid coarse-grid
//! plus Nelder-Mead search for the critical surface.
//!
//! A slip circle is identified by `(x_in, x_out, delta)`: the abscissae where
//! it enters and leaves the ground and its tangent angle at the entry point.
//! All three carry physical bounds, so a grid over them covers every viable
//! rotational mechanism and nothing else. The hybrid `hi` search probes that
//! box with a coarse grid and refines the best cell with a bounded simplex;
//! `fi` and `fs` are fine-grid baselines (improved and conventional
//! parametrisation) for accuracy and cost comparisons.

pub mod bishop;
pub mod error;
pub mod geometry;
pub mod search;
pub mod slices;
pub mod slope;
pub mod sweep;

pub use bishop::{
    bishop_rhs, evaluate_params, solve_factor, EvalCounter, SafetyEvaluation, SolveStatus,
    SolverOptions,
};
pub use error::{GeometryError, ModelError, SearchError, SliceError, SweepError};
pub use geometry::{
    arc_depth, check_viability, chord_angle, circle_from_params, delta_min, SlipCircle, SlipParams,
    Viability, ViabilityReason,
};
pub use search::{
    search, search_fi, search_fs, search_hi, Algorithm, GridSpec, SearchConfig, SearchOutcome,
    SimplexOptions,
};
pub use slices::{build_slices, Slice, SliceSet};
pub use slope::{Material, SlopeCase, SoilProfile};
pub use sweep::{
    accuracy_stats, efficiency_by_beta, efficiency_gain, run_reference_benchmarks, run_sweep,
    sweep_csv, AccuracyStats, BenchmarkReport, LayerInterfaces, SweepRecord, SweepTable,
};
