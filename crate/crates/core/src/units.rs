//! Scalar quantities, decibel conversions and sweep grids shared by every model.

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Carrier frequency in hertz. Always finite and strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FrequencyHz(f64);

impl FrequencyHz {
    pub fn new(hz: f64) -> Result<Self> {
        if hz.is_finite() && hz > 0.0 {
            Ok(Self(hz))
        } else {
            Err(Error::Domain(format!("frequency must be finite and > 0 Hz, got {hz}")))
        }
    }

    pub fn from_ghz(ghz: f64) -> Result<Self> {
        Self::new(ghz * 1e9)
    }

    pub fn hz(self) -> f64 {
        self.0
    }

    pub fn ghz(self) -> f64 {
        self.0 / 1e9
    }

    pub fn wavelength_m(self) -> f64 {
        SPEED_OF_LIGHT / self.0
    }
}

/// Distance in meters. Finite and non-negative; operations that need a
/// strictly positive path check that themselves.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct DistanceM(f64);

impl DistanceM {
    /// Strictly positive distance.
    pub fn new(m: f64) -> Result<Self> {
        if m.is_finite() && m > 0.0 {
            Ok(Self(m))
        } else {
            Err(Error::Domain(format!("distance must be finite and > 0 m, got {m}")))
        }
    }

    /// Distance that may be zero (empty paths for attenuation models).
    pub fn new_or_zero(m: f64) -> Result<Self> {
        if m.is_finite() && m >= 0.0 {
            Ok(Self(m))
        } else {
            Err(Error::Domain(format!("distance must be finite and >= 0 m, got {m}")))
        }
    }

    pub fn from_km(km: f64) -> Result<Self> {
        Self::new(km * 1e3)
    }

    pub fn m(self) -> f64 {
        self.0
    }

    pub fn km(self) -> f64 {
        self.0 / 1e3
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }
}

/// Strictly increasing, non-empty list of sweep abscissae (Hz or m).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid(Vec<f64>);

impl SweepGrid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Argument("sweep grid must not be empty".into()));
        }
        if points.iter().any(|p| !p.is_finite()) {
            return Err(Error::Argument("sweep grid contains non-finite values".into()));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Argument("sweep grid must be strictly increasing".into()));
        }
        Ok(Self(points))
    }

    pub fn points(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl AsRef<[f64]> for SweepGrid {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// `10·log10(x)` for a positive linear power ratio.
pub fn db_from_linear(x: f64) -> Result<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(10.0 * x.log10())
    } else {
        Err(Error::Domain(format!("linear ratio must be finite and > 0, got {x}")))
    }
}

pub fn linear_from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Power in dBm for a power given in watts.
pub fn dbm_from_watts(p: f64) -> Result<f64> {
    if p.is_finite() && p > 0.0 {
        Ok(10.0 * (p * 1e3).log10())
    } else {
        Err(Error::Domain(format!("power must be finite and > 0 W, got {p}")))
    }
}

/// `n` geometrically spaced points from `start` to `stop`, both endpoints exact.
pub fn log_space_grid(start: f64, stop: f64, n: usize) -> Result<SweepGrid> {
    if !(start.is_finite() && stop.is_finite() && start > 0.0 && start < stop) {
        return Err(Error::Argument(format!(
            "log grid needs 0 < start < stop, got start={start}, stop={stop}"
        )));
    }
    if n < 2 {
        return Err(Error::Argument(format!("log grid needs at least 2 points, got {n}")));
    }
    let (lo, hi) = (start.log10(), stop.log10());
    let last = n - 1;
    let points = (0..n)
        .map(|i| match i {
            0 => start,
            i if i == last => stop,
            i => 10f64.powf(lo + (hi - lo) * i as f64 / last as f64),
        })
        .collect();
    SweepGrid::new(points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn db_examples() {
        assert_eq!(db_from_linear(1.0).unwrap(), 0.0);
        assert_abs_diff_eq!(db_from_linear(100.0).unwrap(), 20.0, epsilon = 1e-12);
        assert_abs_diff_eq!(db_from_linear(64.0).unwrap(), 18.062, epsilon = 5e-4);
        assert!(matches!(db_from_linear(0.0), Err(Error::Domain(_))));
        assert!(matches!(db_from_linear(-3.0), Err(Error::Domain(_))));
    }

    #[test]
    fn dbm_examples() {
        assert_abs_diff_eq!(dbm_from_watts(0.001).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(dbm_from_watts(0.5).unwrap(), 26.99, epsilon = 5e-3);
        assert_abs_diff_eq!(dbm_from_watts(1.0).unwrap(), 30.0, epsilon = 1e-12);
        assert!(dbm_from_watts(0.0).is_err());
    }

    #[test]
    fn log_grid_examples() {
        let g = log_space_grid(1.0, 100.0, 3).unwrap();
        assert_eq!(g.points()[0], 1.0);
        assert_abs_diff_eq!(g.points()[1], 10.0, epsilon = 1e-12);
        assert_eq!(g.points()[2], 100.0);

        assert_eq!(log_space_grid(10.0, 1000.0, 2).unwrap().points(), &[10.0, 1000.0]);

        let g = log_space_grid(1.0, 1000.0, 4).unwrap();
        for (got, want) in g.points().iter().zip([1.0, 10.0, 100.0, 1000.0]) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-9);
        }
    }

    #[test]
    fn log_grid_rejects_bad_bounds() {
        assert!(log_space_grid(0.0, 10.0, 3).is_err());
        assert!(log_space_grid(10.0, 1.0, 3).is_err());
        assert!(log_space_grid(1.0, 10.0, 1).is_err());
    }

    #[test]
    fn quantity_validation() {
        assert!(FrequencyHz::new(0.0).is_err());
        assert!(FrequencyHz::new(f64::NAN).is_err());
        assert!(DistanceM::new(0.0).is_err());
        assert!(DistanceM::new_or_zero(0.0).unwrap().is_zero());
        assert!(DistanceM::new_or_zero(-1.0).is_err());
        assert!(SweepGrid::new(vec![1.0, 1.0]).is_err());
        assert!(SweepGrid::new(vec![]).is_err());
    }
}
