//! Deterministic path and atmospheric attenuation: free space, rain (ITU and
//! Crane) and fog/cloud liquid water.

mod fog;
mod rain;

pub use fog::{fog_attenuation, fog_specific_attenuation, FogConditions};
pub use rain::{
    crane_rain_attenuation, itu_effective_path_factor, itu_rain_attenuation,
    itu_rain_attenuation_with, rain_coefficients, RainCoefficients, RainPath, CRANE_MAX_PATH_KM,
};

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::units::{DistanceM, FrequencyHz, SPEED_OF_LIGHT};

/// Polarization tilt angle relative to horizontal, degrees.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polarization {
    tilt_deg: f64,
}

impl Polarization {
    pub fn new(tilt_deg: f64) -> Result<Self> {
        if (0.0..=90.0).contains(&tilt_deg) {
            Ok(Self { tilt_deg })
        } else {
            Err(Error::Argument(format!(
                "polarization tilt must be in [0, 90] degrees, got {tilt_deg}"
            )))
        }
    }

    pub const fn horizontal() -> Self {
        Self { tilt_deg: 0.0 }
    }

    pub const fn vertical() -> Self {
        Self { tilt_deg: 90.0 }
    }

    pub const fn circular() -> Self {
        Self { tilt_deg: 45.0 }
    }

    pub fn tilt_deg(self) -> f64 {
        self.tilt_deg
    }
}

/// Path elevation angle, degrees. Zero is a ground-parallel path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathGeometry {
    elevation_deg: f64,
}

impl PathGeometry {
    pub fn new(elevation_deg: f64) -> Result<Self> {
        if (0.0..=90.0).contains(&elevation_deg) {
            Ok(Self { elevation_deg })
        } else {
            Err(Error::Argument(format!(
                "elevation must be in [0, 90] degrees, got {elevation_deg}"
            )))
        }
    }

    pub const fn horizontal() -> Self {
        Self { elevation_deg: 0.0 }
    }

    pub fn elevation_deg(self) -> f64 {
        self.elevation_deg
    }
}

/// Free-space path loss `20·log10(4πR/λ)` in dB.
pub fn fspl(f: FrequencyHz, r: DistanceM) -> Result<f64> {
    if r.is_zero() {
        return Err(Error::Domain("free-space path loss needs a distance > 0".into()));
    }
    Ok(20.0 * (4.0 * PI * r.m() * f.hz() / SPEED_OF_LIGHT).log10())
}
