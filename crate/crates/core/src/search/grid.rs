//! Candidate generators and exhaustive grid minimisation.

use super::{GridSpec, Objective};
use crate::bishop::{SafetyEvaluation, SolveStatus};

/// A candidate together with its evaluation.
type Scored = (SlipParams, SafetyEvaluation);
use crate::error::SearchError;
use crate::geometry::{delta_min, entry_point, exit_point, SlipParams};
use crate::slope::SlopeCase;

const HALF_PI: f64 = std::f64::consts::FRAC_PI_2;

/// Search box for the improved parametrisation:
/// `x_in` on the upper ground, `x_out` on the lower ground or the first
/// quarter of the face.
pub(crate) fn param_box(slope: &SlopeCase) -> ([f64; 2], [f64; 2]) {
    let b = slope.width();
    let m = slope.height().max(b);
    ([b, b + m], [-m, b / 4.0])
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    debug_assert!(n >= 2);
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(|i| if i == n - 1 { hi } else { lo + i as f64 * step }).collect()
}

/// Tangent-angle ladder for one entry/exit pair: `delta_min`, then
/// `spacing`-sized steps, with the 90 deg endpoint always included.
fn delta_ladder(dmin: f64, spacing: f64) -> Vec<f64> {
    if dmin >= HALF_PI - 1e-12 {
        return vec![HALF_PI];
    }
    let mut ladder = Vec::new();
    let mut k = 0usize;
    loop {
        let d = dmin + k as f64 * spacing;
        if d >= HALF_PI - 1e-12 {
            break;
        }
        ladder.push(d);
        k += 1;
    }
    ladder.push(HALF_PI);
    ladder
}

/// All grid candidates over the `(x_in, x_out, delta)` box. The ladder is
/// anchored at each pair's own `delta_min`, so the candidate count varies
/// with the slope inclination.
pub fn grid_candidates_new_param(slope: &SlopeCase, spec: &GridSpec) -> Vec<SlipParams> {
    let (xin_box, xout_box) = param_box(slope);
    let mut candidates = Vec::new();
    for &x_in in &linspace(xin_box[0], xin_box[1], spec.n_xin) {
        for &x_out in &linspace(xout_box[0], xout_box[1], spec.n_xout) {
            let ladder = match delta_min(slope, x_in, x_out) {
                Ok(dmin) => delta_ladder(dmin, spec.delta_spacing),
                // degenerate pair (vertical slope corner): keep the
                // mandatory 90 deg probe so the pair is still counted
                Err(_) => vec![HALF_PI],
            };
            for delta in ladder {
                candidates.push(SlipParams::new(x_in, x_out, delta));
            }
        }
    }
    candidates
}

/// Evaluate every candidate through the counting objective and return the
/// lowest factor; ties keep the earliest candidate.
pub fn grid_minimize(
    objective: &Objective<'_>,
    candidates: &[SlipParams],
) -> Result<(SlipParams, SafetyEvaluation), SearchError> {
    grid_minimize_by_family(objective, candidates).map(|(best, _)| best)
}

/// Grid minimisation that also reports the best candidate of each exit
/// family (lower-ground exits versus face exits). The two families are the
/// two branches of the tangent-angle bound; their factor basins are glued
/// non-smoothly at the toe, so the refinement stage starts once in each.
pub(crate) fn grid_minimize_by_family(
    objective: &Objective<'_>,
    candidates: &[SlipParams],
) -> Result<(Scored, Vec<Scored>), SearchError> {
    if candidates.is_empty() {
        return Err(SearchError::NoCandidates);
    }
    let mut per_family: [Option<Scored>; 2] = [None, None];
    for p in candidates {
        let eval = objective.eval(p);
        let family = usize::from(p.x_out > 0.0);
        let better = match &per_family[family] {
            None => true,
            Some((_, b)) => eval.factor < b.factor,
        };
        if better {
            per_family[family] = Some((*p, eval));
        }
    }
    let best = per_family
        .iter()
        .flatten()
        .min_by(|a, b| a.1.factor.total_cmp(&b.1.factor))
        .copied()
        .expect("non-empty candidate list");
    if best.1.status != SolveStatus::Ok {
        return Err(SearchError::AllCandidatesInvalid);
    }
    let family_starts = per_family
        .into_iter()
        .flatten()
        .filter(|(_, e)| e.status == SolveStatus::Ok)
        .collect();
    Ok((best, family_starts))
}

/// One conventional-parametrisation candidate: a circle centre and radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FsCandidate {
    pub center: (f64, f64),
    pub radius: f64,
}

/// The conventional 10 x 10 x 10 grid: centres on a rectangle above the
/// slope, radii from ground tangency out to the far end of the lower ground.
/// Always exactly 1000 candidates.
pub fn grid_candidates_fs(slope: &SlopeCase) -> Vec<FsCandidate> {
    let h = slope.height();
    let b = slope.width();
    let be = if b > 0.0 { b } else { h };
    let m = h.max(b);
    let xs = linspace(-be / 2.0, be + be / 4.0, 10);
    let ys = linspace(h, h + 2.0 * m, 10);
    let far = (-m, 0.0);
    let mut candidates = Vec::with_capacity(1000);
    for &yc in &ys {
        for &xc in &xs {
            let r_lo = min_ground_distance(slope, (xc, yc));
            let r_hi = ((xc - far.0).powi(2) + (yc - far.1).powi(2)).sqrt();
            let radii = if r_hi <= r_lo { vec![r_lo; 10] } else { linspace(r_lo, r_hi, 10) };
            for radius in radii {
                candidates.push(FsCandidate { center: (xc, yc), radius });
            }
        }
    }
    debug_assert_eq!(candidates.len(), 1000);
    candidates
}

/// Distance from a point to the ground surface polyline.
fn min_ground_distance(slope: &SlopeCase, p: (f64, f64)) -> f64 {
    let h = slope.height();
    let b = slope.width();
    let d_lower = if p.0 <= 0.0 { p.1.abs() } else { (p.0 * p.0 + p.1 * p.1).sqrt() };
    let d_upper = if p.0 >= b {
        (p.1 - h).abs()
    } else {
        ((p.0 - b).powi(2) + (p.1 - h).powi(2)).sqrt()
    };
    let d_face = segment_distance(p, (0.0, 0.0), (b, h));
    d_lower.min(d_upper).min(d_face)
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let ab = (b.0 - a.0, b.1 - a.1);
    let ap = (p.0 - a.0, p.1 - a.1);
    let len2 = ab.0 * ab.0 + ab.1 * ab.1;
    let t = if len2 == 0.0 { 0.0 } else { ((ap.0 * ab.0 + ap.1 * ab.1) / len2).clamp(0.0, 1.0) };
    let q = (a.0 + t * ab.0, a.1 + t * ab.1);
    ((p.0 - q.0).powi(2) + (p.1 - q.1).powi(2)).sqrt()
}

/// Intersections of a circle with the ground surface, sorted by abscissa.
fn ground_intersections(slope: &SlopeCase, center: (f64, f64), radius: f64) -> Vec<(f64, f64)> {
    let (xc, yc) = center;
    let h = slope.height();
    let b = slope.width();
    let r2 = radius * radius;
    let mut points: Vec<(f64, f64)> = Vec::new();
    // lower ground y = 0, x <= 0
    if r2 >= yc * yc {
        let s = (r2 - yc * yc).sqrt();
        for x in [xc - s, xc + s] {
            if x <= 1e-12 {
                points.push((x, 0.0));
            }
        }
    }
    // face
    if b > 0.0 {
        let k = h / b;
        let qa = 1.0 + k * k;
        let qb = -2.0 * (xc + k * yc);
        let qc = xc * xc + yc * yc - r2;
        let disc = qb * qb - 4.0 * qa * qc;
        if disc >= 0.0 {
            let sq = disc.sqrt();
            for x in [(-qb - sq) / (2.0 * qa), (-qb + sq) / (2.0 * qa)] {
                if (-1e-12..=b + 1e-12).contains(&x) {
                    let x = x.clamp(0.0, b);
                    points.push((x, k * x));
                }
            }
        }
    } else if r2 >= xc * xc {
        // vertical face: the segment x = 0, 0 <= y <= H
        let s = (r2 - xc * xc).sqrt();
        for y in [yc - s, yc + s] {
            if (-1e-12..=h + 1e-12).contains(&y) {
                points.push((0.0, y.clamp(0.0, h)));
            }
        }
    }
    // upper ground y = H, x >= B
    let dy = yc - h;
    if r2 >= dy * dy {
        let s = (r2 - dy * dy).sqrt();
        for x in [xc - s, xc + s] {
            if x >= b - 1e-12 {
                points.push((x.max(b), h));
            }
        }
    }
    points.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.total_cmp(&q.1)));
    points.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-9 && (p.1 - q.1).abs() < 1e-9);
    points
}

/// Express a centre/radius candidate as a `(x_in, x_out, delta)` triplet.
/// Returns `None` when the circle does not cut the ground in two points that
/// the abscissa parametrisation can represent.
pub(crate) fn fs_params(slope: &SlopeCase, candidate: &FsCandidate) -> Option<SlipParams> {
    let points = ground_intersections(slope, candidate.center, candidate.radius);
    if points.len() < 2 {
        return None;
    }
    let exit = points[0];
    let entry = points[points.len() - 1];
    // the endpoints must agree with the entry/exit elevation conventions,
    // otherwise the triplet would denote a different surface
    if (entry_point(slope, entry.0).1 - entry.1).abs() > 1e-9 {
        return None;
    }
    if (exit_point(slope, exit.0).1 - exit.1).abs() > 1e-9 {
        return None;
    }
    let delta = ((entry.0 - candidate.center.0) / candidate.radius).clamp(-1.0, 1.0).asin();
    Some(SlipParams::new(entry.0, exit.0, delta))
}

/// Grid minimisation over centre/radius candidates. Candidates that cannot
/// be expressed as a surface still consume one counted evaluation so the
/// total is always the full grid size.
pub(crate) fn fs_minimize(
    objective: &Objective<'_>,
    candidates: &[FsCandidate],
) -> Result<(SlipParams, SafetyEvaluation), SearchError> {
    if candidates.is_empty() {
        return Err(SearchError::NoCandidates);
    }
    let mut best: Option<(SlipParams, SafetyEvaluation)> = None;
    for candidate in candidates {
        let eval = match fs_params(objective.slope, candidate) {
            Some(p) => {
                let eval = objective.eval(&p);
                let better = match &best {
                    None => true,
                    Some((_, b)) => eval.factor < b.factor,
                };
                if better {
                    best = Some((p, eval));
                }
                eval
            }
            None => {
                objective.counter.bump();
                SafetyEvaluation {
                    factor: objective.solver.sentinel_f,
                    iterations: 0,
                    converged: false,
                    driving_sum: 0.0,
                    status: SolveStatus::NotViable,
                }
            }
        };
        if best.is_none() {
            // keep something to report even if everything is invalid
            let p = SlipParams::new(0.0, 0.0, HALF_PI);
            best = Some((p, eval));
        }
    }
    let (p, eval) = best.expect("non-empty candidate list");
    if eval.status != SolveStatus::Ok {
        return Err(SearchError::AllCandidatesInvalid);
    }
    Ok((p, eval))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bishop::EvalCounter;
    use crate::bishop::SolverOptions;
    use crate::slope::{Material, SoilProfile};

    fn slope_with_beta(beta_deg: f64) -> SlopeCase {
        SlopeCase::homogeneous(
            5.0,
            beta_deg.to_radians(),
            Material::new(10.0, 30f64.to_radians(), 18.0).unwrap(),
        )
        .unwrap()
    }

    fn case1() -> SlopeCase {
        SlopeCase::from_height_width(
            5.0,
            10.0,
            SoilProfile::homogeneous(5.0, Material::new(9.8, 10f64.to_radians(), 17.64).unwrap()),
        )
        .unwrap()
    }

    #[test]
    fn ladder_collapses_at_right_angle() {
        assert_eq!(delta_ladder(HALF_PI, 5f64.to_radians()), vec![HALF_PI]);
        assert_eq!(delta_ladder(HALF_PI + 0.2, 5f64.to_radians()), vec![HALF_PI]);
        let ladder = delta_ladder(85f64.to_radians(), 5f64.to_radians());
        assert_eq!(ladder.len(), 2);
        assert_eq!(*ladder.last().unwrap(), HALF_PI);
    }

    #[test]
    fn coarse_grid_count_for_case1() {
        let candidates = grid_candidates_new_param(&case1(), &GridSpec::coarse());
        // 12 (x_in, x_out) pairs; ladder lengths depend on each pair's bound
        let pairs: std::collections::BTreeSet<(u64, u64)> = candidates
            .iter()
            .map(|p| (p.x_in.to_bits(), p.x_out.to_bits()))
            .collect();
        assert_eq!(pairs.len(), 12);
        assert_eq!(candidates.len(), 162);
    }

    #[test]
    fn fine_grid_count_shrinks_with_inclination() {
        let shallow = grid_candidates_new_param(&slope_with_beta(10.0), &GridSpec::fine()).len();
        let steep = grid_candidates_new_param(&slope_with_beta(90.0), &GridSpec::fine()).len();
        assert!(shallow > steep);
        // near the published magnitudes for the two extremes
        assert!((1124..=1686).contains(&shallow), "shallow count {shallow}");
        assert!((142..=214).contains(&steep), "steep count {steep}");
    }

    #[test]
    fn fs_grid_is_always_one_thousand() {
        for beta in [10.0, 26.565051177077986, 45.0, 60.0, 90.0] {
            assert_eq!(grid_candidates_fs(&slope_with_beta(beta)).len(), 1000);
        }
    }

    #[test]
    fn collapsed_radius_interval_repeats_r_lo() {
        // every generated radius respects the ground-tangency floor, which
        // is the branch that pads collapsed intervals with r_lo
        let slope = slope_with_beta(45.0);
        let candidates = grid_candidates_fs(&slope);
        for c in candidates {
            assert!(c.radius >= min_ground_distance(&slope, c.center) - 1e-9);
        }
    }

    #[test]
    fn grid_minimize_picks_single_and_valid() {
        let slope = case1();
        let counter = EvalCounter::new();
        let objective =
            Objective { slope: &slope, n_slices: 25, solver: SolverOptions::default(), counter: &counter };
        let single = vec![SlipParams::new(15.0, 0.0, 1.2)];
        let (p, eval) = grid_minimize(&objective, &single).unwrap();
        assert_eq!(p, single[0]);
        assert_eq!(eval.status, SolveStatus::Ok);
        assert_eq!(counter.count(), 1);

        // one valid among invalid candidates
        let chord = (1.0f64 / 3.0).atan();
        let mixed = vec![
            SlipParams::new(15.0, 0.0, chord),       // degenerate
            SlipParams::new(15.0, -5.0, 0.3),        // below bound
            SlipParams::new(15.0, 0.0, 1.2),         // valid
        ];
        let (p, _) = grid_minimize(&objective, &mixed).unwrap();
        assert_eq!(p, mixed[2]);
        assert_eq!(counter.count(), 4);
    }

    #[test]
    fn grid_minimize_flags_all_invalid() {
        let slope = case1();
        let counter = EvalCounter::new();
        let objective =
            Objective { slope: &slope, n_slices: 25, solver: SolverOptions::default(), counter: &counter };
        let chord = (1.0f64 / 3.0).atan();
        let bad = vec![SlipParams::new(15.0, 0.0, chord), SlipParams::new(15.0, -5.0, 0.3)];
        assert_eq!(grid_minimize(&objective, &bad), Err(SearchError::AllCandidatesInvalid));
        assert!(grid_minimize(&objective, &[]).is_err());
    }

    #[test]
    fn fs_conversion_round_trips_the_circle() {
        let slope = case1();
        // the worked circle: centre (20/3, 5), R = 25/3 enters at (15, 5)
        // and exits at the toe
        let candidate = FsCandidate { center: (20.0 / 3.0, 5.0), radius: 25.0 / 3.0 };
        let p = fs_params(&slope, &candidate).unwrap();
        assert!((p.x_in - 15.0).abs() < 1e-9);
        assert!(p.x_out.abs() < 1e-9);
        // asin near 1 amplifies roundoff to the order of sqrt(eps)
        assert!((p.delta - HALF_PI).abs() < 1e-6);
    }

    #[test]
    fn fs_rejects_non_cutting_circles() {
        let slope = case1();
        // tiny circle far above the ground
        let candidate = FsCandidate { center: (5.0, 25.0), radius: 1.0 };
        assert!(fs_params(&slope, &candidate).is_none());
    }
}
