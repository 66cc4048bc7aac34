//! Cutting the sliding mass above a slip circle into vertical slices.
//!
//! Slices are equally wide; height, base angle and base material are
//! evaluated at the slice midpoint, while the weight integrates the unit
//! weight exactly over every layer crossed by the soil column.

use crate::error::SliceError;
use crate::geometry::SlipCircle;
use crate::slope::{Material, SlopeCase, SoilProfile};

/// Height deficit (metres) beyond which a midpoint column is treated as the
/// arc piercing the ground rather than roundoff.
const PIERCE_TOL: f64 = 1e-6;

/// One vertical slice of the sliding mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slice {
    pub x_mid: f64,
    /// Width b (m).
    pub width: f64,
    /// Column height between arc and ground at the midpoint (m).
    pub height: f64,
    /// Base inclination alpha (radians); positive where the base rises
    /// towards the entry side.
    pub base_angle: f64,
    /// Weight per unit thickness W (kN/m).
    pub weight: f64,
    pub base_material: Material,
}

/// The ordered slices cut from one slip circle, exit side first.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceSet {
    slices: Vec<Slice>,
}

impl SliceSet {
    pub fn new(slices: Vec<Slice>) -> Self {
        debug_assert!(!slices.is_empty());
        Self { slices }
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn len(&self) -> usize {
        self.slices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slices.is_empty()
    }

    /// Sum of W_i sin(alpha_i), the driving term of the equilibrium.
    pub fn driving_sum(&self) -> f64 {
        self.slices.iter().map(|s| s.weight * s.base_angle.sin()).sum()
    }

    pub fn total_weight(&self) -> f64 {
        self.slices.iter().map(|s| s.weight).sum()
    }
}

/// Cut `n` equal-width slices between the circle's exit and entry.
pub fn build_slices(slope: &SlopeCase, circle: &SlipCircle, n: usize) -> Result<SliceSet, SliceError> {
    build_slices_over(|x| slope.ground_elevation(x), slope.profile(), circle, n)
}

/// Slicing against an explicit ground function; `build_slices` binds it to
/// the slope surface, tests may bind something simpler.
pub(crate) fn build_slices_over<G: Fn(f64) -> f64>(
    ground: G,
    profile: &SoilProfile,
    circle: &SlipCircle,
    n: usize,
) -> Result<SliceSet, SliceError> {
    if n < 1 {
        return Err(SliceError::NoSlices);
    }
    let span = circle.entry.0 - circle.exit.0;
    let width = span / n as f64;
    let mut slices = Vec::with_capacity(n);
    for i in 0..n {
        let x_mid = circle.exit.0 + (i as f64 + 0.5) * width;
        let dx = x_mid - circle.center.0;
        let rem = (circle.radius * circle.radius - dx * dx).max(0.0);
        let y_arc = circle.center.1 - rem.sqrt();
        let y_ground = ground(x_mid);
        let height = y_ground - y_arc;
        if height < -PIERCE_TOL {
            return Err(SliceError::ArcAboveGround { x: x_mid, excess: -height });
        }
        let height = height.max(0.0);
        let base_angle = (dx / circle.radius).clamp(-1.0, 1.0).asin();
        let weight = profile.column_weight(y_arc, y_ground) * width;
        let base_material = *profile.material_at_elevation(y_arc);
        slices.push(Slice { x_mid, width, height, base_angle, weight, base_material });
    }
    Ok(SliceSet::new(slices))
}
