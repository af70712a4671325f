//! Rain attenuation.
//!
//! Specific attenuation follows the power law `γ = k·R^α` (dB/km) with the
//! frequency-dependent `k` and `α` regression of ITU-R P.838-3, valid from
//! 1 GHz to 1 THz. Path attenuation is available either over the geometric
//! path or over the ITU-R P.530 effective path, and through the Crane global
//! model which integrates an exponentially shaped rain cell profile.

use super::{PathGeometry, Polarization};
use crate::error::{Error, Result};
use crate::units::{DistanceM, FrequencyHz};

const MIN_GHZ: f64 = 1.0;
const MAX_GHZ: f64 = 1000.0;

/// Longest path the Crane global model is defined for, km.
pub const CRANE_MAX_PATH_KM: f64 = 22.5;

/// One Gaussian term `a·exp(-((x - b)/c)²)` of the log-frequency regression.
struct Term {
    a: f64,
    b: f64,
    c: f64,
}

/// `Σ terms + m·x + c` with `x = log10(f_GHz)`.
struct Regression<const N: usize> {
    terms: [Term; N],
    m: f64,
    c: f64,
}

impl<const N: usize> Regression<N> {
    fn eval(&self, log_f: f64) -> f64 {
        let gauss: f64 = self
            .terms
            .iter()
            .map(|t| t.a * (-((log_f - t.b) / t.c).powi(2)).exp())
            .sum();
        gauss + self.m * log_f + self.c
    }
}

const fn t(a: f64, b: f64, c: f64) -> Term {
    Term { a, b, c }
}

// ITU-R P.838-3, Table 1: coefficients for log10(k_H).
const K_H: Regression<4> = Regression {
    terms: [
        t(-5.33980, -0.10008, 1.13098),
        t(-0.35351, 1.26970, 0.45400),
        t(-0.23789, 0.86036, 0.15354),
        t(-0.94158, 0.64552, 0.16817),
    ],
    m: -0.18961,
    c: 0.71147,
};

// ITU-R P.838-3, Table 2: coefficients for log10(k_V).
const K_V: Regression<4> = Regression {
    terms: [
        t(-3.80595, 0.56934, 0.81061),
        t(-3.44965, -0.22911, 0.51059),
        t(-0.39902, 0.73042, 0.11899),
        t(0.50167, 1.07319, 0.27195),
    ],
    m: -0.16398,
    c: 0.63297,
};

// ITU-R P.838-3, Table 3: coefficients for α_H.
const ALPHA_H: Regression<5> = Regression {
    terms: [
        t(-0.14318, 1.82442, -0.55187),
        t(0.29591, 0.77564, 0.19822),
        t(0.32177, 0.63773, 0.13164),
        t(-5.37610, -0.96230, 1.47828),
        t(16.1721, -3.29980, 3.43990),
    ],
    m: 0.67849,
    c: -1.95537,
};

// ITU-R P.838-3, Table 4: coefficients for α_V.
const ALPHA_V: Regression<5> = Regression {
    terms: [
        t(-0.07771, 2.33840, -0.76284),
        t(0.56727, 0.95545, 0.54039),
        t(-0.20238, 1.14520, 0.26809),
        t(-48.2991, 0.791669, 0.116226),
        t(48.5833, 0.791459, 0.116479),
    ],
    m: -0.053739,
    c: 0.83433,
};

/// Power-law pair of the specific attenuation `γ = k·R^α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RainCoefficients {
    pub k: f64,
    pub alpha: f64,
}

impl RainCoefficients {
    /// Specific attenuation in dB/km for `rain_rate` mm/h.
    pub fn specific_attenuation(&self, rain_rate: f64) -> f64 {
        if rain_rate == 0.0 {
            0.0
        } else {
            self.k * rain_rate.powf(self.alpha)
        }
    }
}

fn check_frequency(f: FrequencyHz) -> Result<f64> {
    let ghz = f.ghz();
    if (MIN_GHZ..=MAX_GHZ).contains(&ghz) {
        Ok(ghz)
    } else {
        Err(Error::ModelValidity(format!(
            "rain models are valid between 1 GHz and 1 THz, got {ghz} GHz"
        )))
    }
}

fn check_rain_rate(rain_rate: f64) -> Result<()> {
    if rain_rate.is_finite() && rain_rate >= 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("rain rate must be >= 0 mm/h, got {rain_rate}")))
    }
}

/// Combined `(k, α)` for the given polarization tilt and path elevation.
pub fn rain_coefficients(
    f: FrequencyHz,
    pol: Polarization,
    geom: PathGeometry,
) -> Result<RainCoefficients> {
    let log_f = check_frequency(f)?.log10();
    let k_h = 10f64.powf(K_H.eval(log_f));
    let k_v = 10f64.powf(K_V.eval(log_f));
    let a_h = ALPHA_H.eval(log_f);
    let a_v = ALPHA_V.eval(log_f);

    let elevation = geom.elevation_deg().to_radians();
    let tilt = pol.tilt_deg().to_radians();
    let mix = elevation.cos().powi(2) * (2.0 * tilt).cos();

    // Pure H or V at a ground-parallel path must reproduce the table pair
    // bit-for-bit, so skip the mixing arithmetic there.
    if mix == 1.0 {
        return Ok(RainCoefficients { k: k_h, alpha: a_h });
    }
    if mix == -1.0 {
        return Ok(RainCoefficients { k: k_v, alpha: a_v });
    }

    let k = (k_h + k_v + (k_h - k_v) * mix) / 2.0;
    let alpha = (k_h * a_h + k_v * a_v + (k_h * a_h - k_v * a_v) * mix) / (2.0 * k);
    Ok(RainCoefficients { k, alpha })
}

/// How the ITU rain model turns specific attenuation into path attenuation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RainPath {
    /// `γ · d`, exactly linear in distance.
    #[default]
    Geometric,
    /// `γ · r · d` with the ITU-R P.530 distance factor `r` (capped at 2.5).
    Effective,
}

/// Rain attenuation over the geometric path, dB.
pub fn itu_rain_attenuation(
    f: FrequencyHz,
    rain_rate: f64,
    d: DistanceM,
    pol: Polarization,
    geom: PathGeometry,
) -> Result<f64> {
    itu_rain_attenuation_with(f, rain_rate, d, pol, geom, RainPath::Geometric)
}

/// ITU-R P.530 distance factor `r` for a terrestrial path of `d_km`.
///
/// `r = 1 / (0.477·d^0.633·R^(0.073α)·f^0.123 − 10.579·(1 − e^(−0.024·d)))`,
/// clamped to 2.5 when the denominator drops below 0.4.
pub fn itu_effective_path_factor(f_ghz: f64, rain_rate: f64, d_km: f64, alpha: f64) -> f64 {
    const MAX_FACTOR: f64 = 2.5;
    let denom = 0.477 * d_km.powf(0.633) * rain_rate.powf(0.073 * alpha) * f_ghz.powf(0.123)
        - 10.579 * (1.0 - (-0.024 * d_km).exp());
    if denom < 1.0 / MAX_FACTOR {
        MAX_FACTOR
    } else {
        1.0 / denom
    }
}

pub fn itu_rain_attenuation_with(
    f: FrequencyHz,
    rain_rate: f64,
    d: DistanceM,
    pol: Polarization,
    geom: PathGeometry,
    path: RainPath,
) -> Result<f64> {
    check_rain_rate(rain_rate)?;
    let coeffs = rain_coefficients(f, pol, geom)?;
    if rain_rate == 0.0 || d.is_zero() {
        return Ok(0.0);
    }
    let gamma = coeffs.specific_attenuation(rain_rate);
    let factor = match path {
        RainPath::Geometric => 1.0,
        RainPath::Effective => itu_effective_path_factor(f.ghz(), rain_rate, d.km(), coeffs.alpha),
    };
    Ok(gamma * factor * d.km())
}

/// `(e^(x) − 1)/x`, continuous through `x = 0`.
fn exprel(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        1.0 + x / 2.0
    } else {
        x.exp_m1() / x
    }
}

/// Crane global model path attenuation for a ground-parallel path, dB.
///
/// Rain rate along the path decays as `R·e^(u·x)` inside the cell core
/// (`x ≤ δ`) and as `R·b·e^(c·x)` in the debris region beyond it; the
/// attenuation is the closed-form integral of `k·R(x)^α` over the path.
pub fn crane_rain_attenuation(
    f: FrequencyHz,
    rain_rate: f64,
    d: DistanceM,
    pol: Polarization,
) -> Result<f64> {
    check_rain_rate(rain_rate)?;
    let d_km = d.km();
    if d_km > CRANE_MAX_PATH_KM {
        return Err(Error::ModelValidity(format!(
            "Crane model is limited to paths of {CRANE_MAX_PATH_KM} km, got {d_km} km"
        )));
    }
    let coeffs = rain_coefficients(f, pol, PathGeometry::horizontal())?;
    if rain_rate == 0.0 || d.is_zero() {
        return Ok(0.0);
    }

    let CraneTerms { delta, b, c, u } = CraneTerms::new(rain_rate)?;
    let gamma = coeffs.specific_attenuation(rain_rate);
    let beta = coeffs.alpha;

    // ∫_0^D e^(uβx) dx written as D·exprel(uβD) so u → 0 stays finite.
    let core = |len: f64| len * exprel(u * beta * len);
    if d_km <= delta {
        Ok(gamma * core(d_km))
    } else {
        let tail_len = d_km - delta;
        let tail = b.powf(beta) * (c * beta * delta).exp() * tail_len * exprel(c * beta * tail_len);
        Ok(gamma * (core(delta) + tail))
    }
}

/// Empirical rain cell shape terms of the Crane global model.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CraneTerms {
    /// Core length, km.
    pub delta: f64,
    pub b: f64,
    pub c: f64,
    pub u: f64,
}

impl CraneTerms {
    pub(crate) fn new(rain_rate: f64) -> Result<Self> {
        let ln_r = rain_rate.ln();
        let delta = 3.8 - 0.6 * ln_r;
        if delta <= 0.0 {
            return Err(Error::ModelValidity(format!(
                "Crane cell core length is non-positive at {rain_rate} mm/h"
            )));
        }
        let b = 2.3 * rain_rate.powf(-0.17);
        let c = 0.026 - 0.03 * ln_r;
        let u = (b.ln() + c * delta) / delta;
        Ok(Self { delta, b, c, u })
    }
}
