//! Error types shared across the crate.

use thiserror::Error;

/// Errors raised when constructing or querying the slope model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("slope height must be positive, got {0}")]
    NonPositiveHeight(f64),
    #[error("inclination must be in (0, 90]")]
    InclinationOutOfRange,
    #[error("slope width must be non-negative, got {0}")]
    NegativeWidth(f64),
    #[error("cohesion must be non-negative, got {0}")]
    NegativeCohesion(f64),
    #[error("friction angle must be in [0, 90), got {0} deg")]
    FrictionOutOfRange(f64),
    #[error("unit weight must be positive, got {0}")]
    NonPositiveUnitWeight(f64),
    #[error("soil profile needs at least one layer")]
    EmptyProfile,
    #[error("layer top elevations must be strictly decreasing (layer {0})")]
    UnorderedLayers(usize),
    #[error("topmost layer elevation {top} does not cover the slope height {height}")]
    ProfileTooShallow { top: f64, height: f64 },
    #[error("point ({x}, {y}) lies above the ground surface")]
    PointAboveGround { x: f64, y: f64 },
}

/// Errors raised by slip-circle geometry operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("entry abscissa {x_in} does not exceed exit abscissa {x_out}")]
    DegenerateChord { x_in: f64, x_out: f64 },
    #[error("tangent angle {delta_deg} deg does not exceed the chord angle {chord_deg} deg; radius is unbounded")]
    InfiniteRadius { delta_deg: f64, chord_deg: f64 },
    #[error("tangent angle {0} deg exceeds the 90 deg bound")]
    TangentAboveRightAngle(f64),
    #[error("x = {x} is outside the circle's horizontal span [{lo}, {hi}]")]
    OutsideSpan { x: f64, lo: f64, hi: f64 },
}

/// Errors raised while cutting a sliding mass into slices.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SliceError {
    #[error("slice count must be at least 1")]
    NoSlices,
    #[error("circle is not viable: arc rises {excess} m above ground at x = {x}")]
    ArcAboveGround { x: f64, excess: f64 },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Errors raised by the search drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("every candidate surface was invalid; widen the search bounds")]
    AllCandidatesInvalid,
    #[error("simplex start point is not viable ({0})")]
    StartNotViable(String),
    #[error("candidate list is empty")]
    NoCandidates,
}

/// Errors raised by the sweep/benchmark harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("reference time must be positive, got {0}")]
    NonPositiveReferenceTime(f64),
    #[error("sweep table has no cases")]
    EmptyTable,
    #[error("record {index} is missing algorithm {algorithm}")]
    MissingAlgorithm { index: usize, algorithm: String },
}
