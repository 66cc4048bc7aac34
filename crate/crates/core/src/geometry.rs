//! Slip-surface parametrisation and circle geometry.
//!
//! A candidate surface is the triplet `(x_in, x_out, delta)`: the entry
//! abscissa on the upper ground, the exit abscissa on the face or the lower
//! ground, and the tangent angle of the slip line at the entry point. The
//! tangent angle replaces the radius because it carries physical bounds:
//! `delta <= 90 deg`, and `delta >= delta_min` where the lower bound depends
//! on where the exit sits (see [`delta_min`]).
//!
//! Other third parameters are possible (the radius itself, the mid-arc
//! sagitta, or the centre-to-chord distance) but they bound poorly and
//! sample the space unevenly, so only the tangent angle is implemented.

use crate::error::GeometryError;
use crate::slope::SlopeCase;

const HALF_PI: f64 = std::f64::consts::FRAC_PI_2;

/// Tolerance for arc-versus-ground comparisons (metres).
pub const GROUND_EPS: f64 = 1e-9;
/// Tolerance for comparisons between tangent angles (radians).
const ANGLE_EPS: f64 = 1e-9;

/// One candidate slip surface: entry abscissa, exit abscissa, entry tangent
/// angle (radians from horizontal). Out-of-bound triplets are representable;
/// [`check_viability`] classifies them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlipParams {
    pub x_in: f64,
    pub x_out: f64,
    pub delta: f64,
}

impl SlipParams {
    pub fn new(x_in: f64, x_out: f64, delta: f64) -> Self {
        Self { x_in, x_out, delta }
    }
}

/// The circle realising a `SlipParams` triplet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlipCircle {
    pub center: (f64, f64),
    pub radius: f64,
    pub entry: (f64, f64),
    pub exit: (f64, f64),
}

impl SlipCircle {
    /// Tangent angle of the lower arc at the entry point (radians).
    pub fn entry_tangent(&self) -> f64 {
        ((self.entry.0 - self.center.0) / self.radius).clamp(-1.0, 1.0).asin()
    }
}

/// Why a triplet is or is not a mechanically viable slip surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViabilityReason {
    Ok,
    DeltaBelowMin,
    DeltaAboveMax,
    ArcAboveGround,
    DegenerateChord,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Viability {
    pub viable: bool,
    pub reason: ViabilityReason,
}

impl Viability {
    fn ok() -> Self {
        Self { viable: true, reason: ViabilityReason::Ok }
    }

    fn rejected(reason: ViabilityReason) -> Self {
        debug_assert!(reason != ViabilityReason::Ok);
        Self { viable: false, reason }
    }
}

/// Entry point on the ground surface for an entry abscissa.
pub fn entry_point(slope: &SlopeCase, x_in: f64) -> (f64, f64) {
    (x_in, slope.ground_elevation(x_in))
}

/// Exit point for an exit abscissa. Exits at `x <= 0` sit on the lower
/// ground at elevation 0; this matters for a vertical face, where the
/// ground surface at `x = 0` jumps to `H` but the exit stays at the toe.
pub fn exit_point(slope: &SlopeCase, x_out: f64) -> (f64, f64) {
    if x_out <= 0.0 {
        (x_out, 0.0)
    } else {
        (x_out, slope.ground_elevation(x_out))
    }
}

/// Inclination of the entry-exit chord, `atan((y_in - y_out)/(x_in - x_out))`.
pub fn chord_angle(entry: (f64, f64), exit: (f64, f64)) -> Result<f64, GeometryError> {
    let dx = entry.0 - exit.0;
    if dx <= 0.0 {
        return Err(GeometryError::DegenerateChord { x_in: entry.0, x_out: exit.0 });
    }
    Ok(((entry.1 - exit.1) / dx).atan())
}

/// Circumcircle through three points: `(center, radius)`, or `None` when the
/// points are (nearly) collinear.
fn circumcircle(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> Option<((f64, f64), f64)> {
    let d = 2.0 * (a.0 * (b.1 - c.1) + b.0 * (c.1 - a.1) + c.0 * (a.1 - b.1));
    let scale = a.0.abs().max(a.1.abs()).max(b.0.abs()).max(b.1.abs()).max(c.0.abs()).max(c.1.abs());
    if d.abs() <= 1e-12 * scale * scale {
        return None;
    }
    let na = a.0 * a.0 + a.1 * a.1;
    let nb = b.0 * b.0 + b.1 * b.1;
    let nc = c.0 * c.0 + c.1 * c.1;
    let ux = (na * (b.1 - c.1) + nb * (c.1 - a.1) + nc * (a.1 - b.1)) / d;
    let uy = (na * (c.0 - b.0) + nb * (a.0 - c.0) + nc * (b.0 - a.0)) / d;
    let r = ((a.0 - ux).powi(2) + (a.1 - uy).powi(2)).sqrt();
    Some(((ux, uy), r))
}

/// Smallest viable entry tangent angle for an entry/exit pair.
///
/// Exit on the face (`x_out > 0`): the bound is the chord angle itself; below
/// it the circle's curvature flips sign and the arc bulges out of the slope.
/// Exit on the lower ground (`x_out <= 0`): the limiting circle passes through
/// the entry point, the exit point and the toe, and the bound is that circle's
/// tangent angle at entry, `chord_angle + asin(L / (2 R3))` with `L` the chord
/// length and `R3` the circumradius. If the three points are collinear (exit at
/// the toe itself) the limit degenerates to the straight line, i.e. the chord
/// angle.
pub fn delta_min(slope: &SlopeCase, x_in: f64, x_out: f64) -> Result<f64, GeometryError> {
    let entry = entry_point(slope, x_in);
    let exit = exit_point(slope, x_out);
    let chord = chord_angle(entry, exit)?;
    if x_out > 0.0 {
        return Ok(chord);
    }
    let toe = (0.0, 0.0);
    match circumcircle(entry, exit, toe) {
        None => Ok(chord),
        Some((_, r3)) => {
            let l = ((entry.0 - exit.0).powi(2) + (entry.1 - exit.1).powi(2)).sqrt();
            let half_central = (l / (2.0 * r3)).clamp(-1.0, 1.0).asin();
            Ok(chord + half_central)
        }
    }
}

/// Build the slip circle for a triplet. With tangent-chord angle
/// `omega = delta - chord_angle` and chord length `L`, the radius is
/// `R = L / (2 sin omega)` and the centre sits at distance `R` from the entry
/// along the inward normal of the entry tangent, i.e. at
/// `(x_in - R sin delta, y_in + R cos delta)`.
pub fn circle_from_params(slope: &SlopeCase, p: &SlipParams) -> Result<SlipCircle, GeometryError> {
    let entry = entry_point(slope, p.x_in);
    let exit = exit_point(slope, p.x_out);
    circle_from_points(entry, exit, p.delta)
}

/// Same construction from explicit entry/exit points.
pub fn circle_from_points(
    entry: (f64, f64),
    exit: (f64, f64),
    delta: f64,
) -> Result<SlipCircle, GeometryError> {
    let chord = chord_angle(entry, exit)?;
    if delta > HALF_PI + ANGLE_EPS {
        return Err(GeometryError::TangentAboveRightAngle(delta.to_degrees()));
    }
    let omega = delta - chord;
    if omega <= ANGLE_EPS {
        return Err(GeometryError::InfiniteRadius {
            delta_deg: delta.to_degrees(),
            chord_deg: chord.to_degrees(),
        });
    }
    let l = ((entry.0 - exit.0).powi(2) + (entry.1 - exit.1).powi(2)).sqrt();
    let radius = l / (2.0 * omega.sin());
    let center = (entry.0 - radius * delta.sin(), entry.1 + radius * delta.cos());
    Ok(SlipCircle { center, radius, entry, exit })
}

/// Elevation of the lower arc at abscissa `x`.
pub fn arc_depth(circle: &SlipCircle, x: f64) -> Result<f64, GeometryError> {
    let dx = x - circle.center.0;
    let rem = circle.radius * circle.radius - dx * dx;
    // tolerate roundoff at the span endpoints, where rem crosses zero
    if rem < -1e-12 * circle.radius * circle.radius {
        return Err(GeometryError::OutsideSpan {
            x,
            lo: circle.center.0 - circle.radius,
            hi: circle.center.0 + circle.radius,
        });
    }
    Ok(circle.center.1 - rem.max(0.0).sqrt())
}

/// Classify a triplet. Checks, in order: chord degeneracy, the tangent-angle
/// bounds, and that the arc stays below the ground surface.
///
/// The ground check is exact: the lower arc is convex and the ground is
/// piecewise linear, so `arc - ground` attains its maximum on each ground
/// piece at the piece's endpoints. The arc equals the ground at entry and
/// exit by construction, which leaves the interior breakpoints x = 0 (against
/// the lower ground) and x = B (against the upper plateau).
pub fn check_viability(slope: &SlopeCase, p: &SlipParams) -> Viability {
    viability_with_circle(slope, p).0
}

pub(crate) fn viability_with_circle(slope: &SlopeCase, p: &SlipParams) -> (Viability, Option<SlipCircle>) {
    if !p.x_in.is_finite() || !p.x_out.is_finite() || !p.delta.is_finite() || p.x_in - p.x_out <= 1e-12 {
        return (Viability::rejected(ViabilityReason::DegenerateChord), None);
    }
    let dmin = match delta_min(slope, p.x_in, p.x_out) {
        Ok(d) => d,
        Err(_) => return (Viability::rejected(ViabilityReason::DegenerateChord), None),
    };
    if p.delta < dmin - ANGLE_EPS {
        return (Viability::rejected(ViabilityReason::DeltaBelowMin), None);
    }
    if p.delta > HALF_PI + ANGLE_EPS {
        return (Viability::rejected(ViabilityReason::DeltaAboveMax), None);
    }
    let circle = match circle_from_params(slope, p) {
        Ok(c) => c,
        // delta == delta_min on a face exit: the surface is the straight
        // chord, which has no finite circle.
        Err(_) => return (Viability::rejected(ViabilityReason::DegenerateChord), None),
    };
    // Interior breakpoints of the ground surface. At x = 0 the binding bound
    // is the lower ground (elevation 0), which also covers the vertical-face
    // step where the surface jumps to H.
    for (xb, bound) in [(0.0, 0.0), (slope.width(), slope.height())] {
        if p.x_out < xb && xb < p.x_in {
            match arc_depth(&circle, xb) {
                Ok(y) if y <= bound + GROUND_EPS => {}
                _ => return (Viability::rejected(ViabilityReason::ArcAboveGround), None),
            }
        }
    }
    (Viability::ok(), Some(circle))
}

/// Point-wise fallback check: sample the arc at the `n` slice midpoints and
/// compare against the ground surface. Used to cross-validate the analytic
/// breakpoint test.
pub fn arc_clears_ground(slope: &SlopeCase, circle: &SlipCircle, n: usize) -> bool {
    let span = circle.entry.0 - circle.exit.0;
    let width = span / n as f64;
    (0..n).all(|i| {
        let x = circle.exit.0 + (i as f64 + 0.5) * width;
        match arc_depth(circle, x) {
            Ok(y) => {
                let ground = if x <= 0.0 { 0.0 } else { slope.ground_elevation(x) };
                y <= ground + 1e-6
            }
            Err(_) => false,
        }
    })
}
