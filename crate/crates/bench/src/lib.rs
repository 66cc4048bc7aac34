//! Shared fixtures for the benchmark targets.

use slopestab::{Material, SlopeCase, SoilProfile};

/// Homogeneous benchmark slope: H = 5 m, B = 10 m, c = 9.8 kPa,
/// phi = 10 deg, gamma = 17.64 kN/m3.
pub fn benchmark_case1() -> SlopeCase {
    SlopeCase::from_height_width(
        5.0,
        10.0,
        SoilProfile::homogeneous(5.0, Material::new(9.8, 10f64.to_radians(), 17.64).unwrap()),
    )
    .unwrap()
}

/// Homogeneous benchmark slope: H = 8.5 m, B = 17 m, c = 14.71 kPa,
/// phi = 20 deg, gamma = 18.63 kN/m3.
pub fn benchmark_case2() -> SlopeCase {
    SlopeCase::from_height_width(
        8.5,
        17.0,
        SoilProfile::homogeneous(8.5, Material::new(14.71, 20f64.to_radians(), 18.63).unwrap()),
    )
    .unwrap()
}

/// One slope of the sweep campaign at the given inclination.
pub fn sweep_slope(beta_deg: f64) -> SlopeCase {
    SlopeCase::homogeneous(
        5.0,
        beta_deg.to_radians(),
        Material::new(10.0, 30f64.to_radians(), 18.0).unwrap(),
    )
    .unwrap()
}
