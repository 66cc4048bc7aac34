//! Factor of safety of a sliced mass by the simplified Bishop method.
//!
//! The safety factor satisfies
//! `F = (1 / sum W_i sin a_i) * sum (c_i b_i + W_i tan phi_i) / m_a,i` with
//! `m_a,i = cos a_i (1 + tan a_i tan phi_i / F)`, so `F` appears on both
//! sides and is found by fixed-point iteration. Per-slice cohesion and
//! friction come from the material at the slice base, which makes the same
//! formula serve layered profiles.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::geometry::SlipParams;
use crate::slices::{build_slices, SliceSet};
use crate::slope::SlopeCase;

/// Iteration controls and guards for the fixed-point solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Relative tolerance on successive iterates.
    pub tol_f: f64,
    pub max_iter: usize,
    /// Initial guess F0.
    pub initial_f: f64,
    /// Floor on the Bishop denominator m_a; evaluations at or below it are
    /// flagged instead of returning a misleading factor.
    pub m_alpha_floor: f64,
    /// Factor reported for surfaces that cannot be evaluated, large enough
    /// to lose against any real factor during minimisation.
    pub sentinel_f: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { tol_f: 1e-8, max_iter: 100, initial_f: 1.0, m_alpha_floor: 0.05, sentinel_f: 1e6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Ok,
    /// The assumed sliding direction is not driven: sum W sin a <= 0.
    NonDriving,
    /// Some m_a fell to the floor; the formula is ill-posed for this surface.
    MAlphaDegenerate,
    NoConvergence,
    /// The surface failed the geometric viability check.
    NotViable,
}

/// Outcome of one factor-of-safety evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SafetyEvaluation {
    pub factor: f64,
    pub iterations: usize,
    pub converged: bool,
    pub driving_sum: f64,
    pub status: SolveStatus,
}

impl SafetyEvaluation {
    fn failed(status: SolveStatus, driving_sum: f64) -> Self {
        Self { factor: f64::NAN, iterations: 0, converged: false, driving_sum, status }
    }
}

/// Why a single right-hand-side evaluation failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RhsFailure {
    MAlphaDegenerate,
    NonDriving,
}

/// One evaluation of the Bishop right-hand side at trial factor `f`.
pub fn bishop_rhs(slices: &SliceSet, f: f64, m_alpha_floor: f64) -> Result<f64, RhsFailure> {
    let driving = slices.driving_sum();
    if driving <= 0.0 {
        return Err(RhsFailure::NonDriving);
    }
    let mut resisting = 0.0;
    for s in slices.slices() {
        let tan_phi = s.base_material.friction_angle.tan();
        let m_alpha = s.base_angle.cos() * (1.0 + s.base_angle.tan() * tan_phi / f);
        if m_alpha <= m_alpha_floor {
            return Err(RhsFailure::MAlphaDegenerate);
        }
        resisting += (s.base_material.cohesion * s.width + s.weight * tan_phi) / m_alpha;
    }
    Ok(resisting / driving)
}

/// Solve the implicit equation by fixed-point iteration from `initial_f`.
///
/// A frictionless slice set makes the right-hand side independent of `F`, so
/// the factor is exact after a single evaluation.
pub fn solve_factor(slices: &SliceSet, opts: &SolverOptions) -> SafetyEvaluation {
    let driving = slices.driving_sum();
    if driving <= 0.0 {
        return SafetyEvaluation::failed(SolveStatus::NonDriving, driving);
    }
    let frictionless = slices.slices().iter().all(|s| s.base_material.friction_angle == 0.0);
    if frictionless {
        return match bishop_rhs(slices, opts.initial_f, opts.m_alpha_floor) {
            Ok(f) => SafetyEvaluation {
                factor: f,
                iterations: 1,
                converged: true,
                driving_sum: driving,
                status: SolveStatus::Ok,
            },
            Err(e) => SafetyEvaluation::failed(map_rhs_failure(e), driving),
        };
    }
    let mut f = opts.initial_f;
    for k in 1..=opts.max_iter {
        let next = match bishop_rhs(slices, f, opts.m_alpha_floor) {
            Ok(v) => v,
            Err(e) => return SafetyEvaluation::failed(map_rhs_failure(e), driving),
        };
        if !next.is_finite() || next <= 0.0 {
            return SafetyEvaluation::failed(SolveStatus::NoConvergence, driving);
        }
        if (next - f).abs() < opts.tol_f * f {
            return SafetyEvaluation {
                factor: next,
                iterations: k,
                converged: true,
                driving_sum: driving,
                status: SolveStatus::Ok,
            };
        }
        f = next;
    }
    SafetyEvaluation { factor: f, iterations: opts.max_iter, converged: false, driving_sum: driving, status: SolveStatus::NoConvergence }
}

fn map_rhs_failure(e: RhsFailure) -> SolveStatus {
    match e {
        RhsFailure::MAlphaDegenerate => SolveStatus::MAlphaDegenerate,
        RhsFailure::NonDriving => SolveStatus::NonDriving,
    }
}

/// Counts objective evaluations within one search session.
#[derive(Debug, Default)]
pub struct EvalCounter(AtomicU64);

impl EvalCounter {
    pub fn new() -> Self {
        Self(AtomicU64::new(0))
    }

    pub fn bump(&self) {
        self.0.fetch_add(1, Ordering::Relaxed);
    }

    pub fn count(&self) -> u64 {
        self.0.load(Ordering::Relaxed)
    }
}

/// The counting objective minimised by every search algorithm: viability,
/// slicing and the Bishop solve for one triplet. Every call counts, viable
/// or not; failures carry the sentinel factor so grid scans never abort.
pub fn evaluate_params(
    slope: &SlopeCase,
    p: &SlipParams,
    n_slices: usize,
    opts: &SolverOptions,
    counter: &EvalCounter,
) -> SafetyEvaluation {
    counter.bump();
    let (viability, circle) = crate::geometry::viability_with_circle(slope, p);
    if !viability.viable {
        return SafetyEvaluation {
            factor: opts.sentinel_f,
            iterations: 0,
            converged: false,
            driving_sum: 0.0,
            status: SolveStatus::NotViable,
        };
    }
    let circle = circle.expect("viable triplet always carries its circle");
    let slices = match build_slices(slope, &circle, n_slices.max(1)) {
        Ok(s) => s,
        Err(_) => {
            return SafetyEvaluation {
                factor: opts.sentinel_f,
                iterations: 0,
                converged: false,
                driving_sum: 0.0,
                status: SolveStatus::NotViable,
            }
        }
    };
    let mut eval = solve_factor(&slices, opts);
    if eval.status != SolveStatus::Ok {
        eval.factor = opts.sentinel_f;
    }
    eval
}
