//! Slope geometry and layered soil profile.
//!
//! The coordinate convention puts the slope toe at the origin with the face
//! rising to the right: the ground surface is 0 for `x <= 0`, `x * tan(beta)`
//! on the face, and `H` on the upper plateau (`x >= B` with `B = H / tan(beta)`).
//! A vertical slope (`beta = 90 deg`) has `B = 0` and a step ground surface.

use crate::error::ModelError;

const HALF_PI: f64 = std::f64::consts::FRAC_PI_2;

/// Mohr-Coulomb material: cohesion c (kPa), friction angle phi (radians),
/// unit weight gamma (kN/m3).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Material {
    pub cohesion: f64,
    pub friction_angle: f64,
    pub unit_weight: f64,
}

impl Material {
    pub fn new(cohesion: f64, friction_angle: f64, unit_weight: f64) -> Result<Self, ModelError> {
        if !cohesion.is_finite() || cohesion < 0.0 {
            return Err(ModelError::NegativeCohesion(cohesion));
        }
        if !(0.0..HALF_PI).contains(&friction_angle) {
            return Err(ModelError::FrictionOutOfRange(friction_angle.to_degrees()));
        }
        if !unit_weight.is_finite() || unit_weight <= 0.0 {
            return Err(ModelError::NonPositiveUnitWeight(unit_weight));
        }
        Ok(Self { cohesion, friction_angle, unit_weight })
    }
}

/// Horizontally layered soil column: `(top_elevation, material)` pairs,
/// topmost first, with strictly decreasing tops. The deepest layer extends
/// downward without bound.
#[derive(Debug, Clone, PartialEq)]
pub struct SoilProfile {
    layers: Vec<(f64, Material)>,
}

impl SoilProfile {
    pub fn new(layers: Vec<(f64, Material)>) -> Result<Self, ModelError> {
        if layers.is_empty() {
            return Err(ModelError::EmptyProfile);
        }
        for i in 0..layers.len() {
            if !layers[i].0.is_finite() {
                return Err(ModelError::UnorderedLayers(i));
            }
            if i > 0 && layers[i].0 >= layers[i - 1].0 {
                return Err(ModelError::UnorderedLayers(i));
            }
        }
        Ok(Self { layers })
    }

    pub fn homogeneous(top_elevation: f64, material: Material) -> Self {
        Self { layers: vec![(top_elevation, material)] }
    }

    pub fn layers(&self) -> &[(f64, Material)] {
        &self.layers
    }

    pub fn top_elevation(&self) -> f64 {
        self.layers[0].0
    }

    /// Material of the layer containing elevation `y`. A point exactly on an
    /// interface belongs to the upper layer.
    pub fn material_at_elevation(&self, y: f64) -> &Material {
        for (i, (_, material)) in self.layers.iter().enumerate() {
            let bottom = self.layers.get(i + 1).map(|l| l.0);
            match bottom {
                Some(b) if y >= b => return material,
                Some(_) => continue,
                None => return material,
            }
        }
        unreachable!("profile is non-empty")
    }

    /// Weight per unit width of the soil column between elevations
    /// `y_bottom` and `y_top` (kN/m2), integrating each layer's unit weight
    /// exactly over the portion of the column it occupies.
    pub fn column_weight(&self, y_bottom: f64, y_top: f64) -> f64 {
        if y_top <= y_bottom {
            return 0.0;
        }
        let mut total = 0.0;
        for (i, (top, material)) in self.layers.iter().enumerate() {
            // Topmost layer also covers anything above its nominal top.
            let seg_top = if i == 0 { y_top } else { y_top.min(*top) };
            let seg_bottom = match self.layers.get(i + 1) {
                Some((next_top, _)) => y_bottom.max(*next_top),
                None => y_bottom,
            };
            if seg_top > seg_bottom {
                total += material.unit_weight * (seg_top - seg_bottom);
            }
        }
        total
    }
}

/// A slope case: height `H`, inclination `beta`, derived width `B = H/tan(beta)`,
/// and the soil profile beneath the ground surface.
#[derive(Debug, Clone, PartialEq)]
pub struct SlopeCase {
    height: f64,
    beta: f64,
    width: f64,
    profile: SoilProfile,
}

impl SlopeCase {
    pub fn from_height_beta(height: f64, beta: f64, profile: SoilProfile) -> Result<Self, ModelError> {
        if !height.is_finite() || height <= 0.0 {
            return Err(ModelError::NonPositiveHeight(height));
        }
        if !beta.is_finite() || beta <= 0.0 || beta > HALF_PI {
            return Err(ModelError::InclinationOutOfRange);
        }
        let width = if beta == HALF_PI { 0.0 } else { height / beta.tan() };
        Self::validate(height, beta, width, profile)
    }

    /// Construct from the plan width `B` instead of the inclination;
    /// `B = 0` gives a vertical face.
    pub fn from_height_width(height: f64, width: f64, profile: SoilProfile) -> Result<Self, ModelError> {
        if !height.is_finite() || height <= 0.0 {
            return Err(ModelError::NonPositiveHeight(height));
        }
        if !width.is_finite() || width < 0.0 {
            return Err(ModelError::NegativeWidth(width));
        }
        let beta = if width == 0.0 { HALF_PI } else { (height / width).atan() };
        Self::validate(height, beta, width, profile)
    }

    pub fn homogeneous(height: f64, beta: f64, material: Material) -> Result<Self, ModelError> {
        Self::from_height_beta(height, beta, SoilProfile::homogeneous(height, material))
    }

    fn validate(height: f64, beta: f64, width: f64, profile: SoilProfile) -> Result<Self, ModelError> {
        let top = profile.top_elevation();
        if top < height {
            return Err(ModelError::ProfileTooShallow { top, height });
        }
        Ok(Self { height, beta, width, profile })
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    /// Inclination in radians.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Plan width of the face, `B = H / tan(beta)`.
    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn profile(&self) -> &SoilProfile {
        &self.profile
    }

    /// Ground surface elevation `y_s(x)`. For a vertical face this is the
    /// step function with value `H` at `x = 0`.
    pub fn ground_elevation(&self, x: f64) -> f64 {
        if x <= 0.0 {
            if self.width == 0.0 && x == 0.0 {
                self.height
            } else {
                0.0
            }
        } else if x >= self.width {
            self.height
        } else {
            x * self.beta.tan()
        }
    }

    /// Material at a point on or below the ground surface.
    pub fn material_at(&self, x: f64, y: f64) -> Result<&Material, ModelError> {
        if y > self.ground_elevation(x) {
            return Err(ModelError::PointAboveGround { x, y });
        }
        Ok(self.profile.material_at_elevation(y))
    }
}
