//! Fog and cloud attenuation from liquid water content (ITU-R P.840),
//! using the double-Debye model of the complex permittivity of water.

use crate::error::{Error, Result};
use crate::units::{DistanceM, FrequencyHz};

const MIN_GHZ: f64 = 10.0;
const MAX_GHZ: f64 = 1000.0;

/// Temperature and liquid water density of a fog or cloud layer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FogConditions {
    temperature_c: f64,
    water_density_g_m3: f64,
}

impl FogConditions {
    pub fn new(temperature_c: f64, water_density_g_m3: f64) -> Result<Self> {
        check_temperature(temperature_c)?;
        if !(0.0..=10.0).contains(&water_density_g_m3) {
            return Err(Error::Argument(format!(
                "liquid water density must be in [0, 10] g/m^3, got {water_density_g_m3}"
            )));
        }
        Ok(Self {
            temperature_c,
            water_density_g_m3,
        })
    }

    pub fn temperature_c(&self) -> f64 {
        self.temperature_c
    }

    pub fn water_density_g_m3(&self) -> f64 {
        self.water_density_g_m3
    }
}

fn check_temperature(t: f64) -> Result<()> {
    if (-20.0..=60.0).contains(&t) {
        Ok(())
    } else {
        Err(Error::Argument(format!("temperature must be in [-20, 60] C, got {t}")))
    }
}

/// Real and imaginary parts of the permittivity of liquid water at `f_ghz`.
fn water_permittivity(f_ghz: f64, temperature_c: f64) -> (f64, f64) {
    let theta = 300.0 / (temperature_c + 273.15);
    let eps0 = 77.66 + 103.3 * (theta - 1.0);
    let eps1 = 0.0671 * eps0;
    let eps2 = 3.52;
    // principal and secondary relaxation frequencies, GHz
    let fp = 20.20 - 146.0 * (theta - 1.0) + 316.0 * (theta - 1.0).powi(2);
    let fs = 39.8 * fp;

    let rp = 1.0 + (f_ghz / fp).powi(2);
    let rs = 1.0 + (f_ghz / fs).powi(2);
    let eps_imag = f_ghz * (eps0 - eps1) / (fp * rp) + f_ghz * (eps1 - eps2) / (fs * rs);
    let eps_real = (eps0 - eps1) / rp + (eps1 - eps2) / rs + eps2;
    (eps_real, eps_imag)
}

/// Specific attenuation coefficient `K_l`, (dB/km)/(g/m³).
pub fn fog_specific_attenuation(f: FrequencyHz, temperature_c: f64) -> Result<f64> {
    let f_ghz = f.ghz();
    if !(MIN_GHZ..=MAX_GHZ).contains(&f_ghz) {
        return Err(Error::ModelValidity(format!(
            "fog model is valid between 10 GHz and 1 THz, got {f_ghz} GHz"
        )));
    }
    check_temperature(temperature_c)?;
    let (eps_real, eps_imag) = water_permittivity(f_ghz, temperature_c);
    let eta = (2.0 + eps_real) / eps_imag;
    Ok(0.819 * f_ghz / (eps_imag * (1.0 + eta * eta)))
}

/// Fog attenuation over `d`, dB. Linear in both water density and distance.
pub fn fog_attenuation(f: FrequencyHz, cond: FogConditions, d: DistanceM) -> Result<f64> {
    let kl = fog_specific_attenuation(f, cond.temperature_c)?;
    Ok(kl * cond.water_density_g_m3 * d.km())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ghz(v: f64) -> FrequencyHz {
        FrequencyHz::from_ghz(v).unwrap()
    }

    #[test]
    fn specific_attenuation_reference_points() {
        // Values of the double-Debye formulas evaluated independently at 15 C.
        assert_relative_eq!(fog_specific_attenuation(ghz(10.0), 15.0).unwrap(), 0.060150, max_relative = 1e-4);
        assert_relative_eq!(fog_specific_attenuation(ghz(100.0), 15.0).unwrap(), 4.40686, max_relative = 1e-4);
        assert_relative_eq!(fog_specific_attenuation(ghz(1000.0), 15.0).unwrap(), 40.2348, max_relative = 1e-4);
    }

    #[test]
    fn specific_attenuation_monotone_in_frequency() {
        let mut prev = 0.0;
        for i in 0..=400 {
            let f = 10.0 * 100f64.powf(i as f64 / 400.0);
            let k = fog_specific_attenuation(ghz(f), 15.0).unwrap();
            assert!(k > prev, "not increasing at {f} GHz");
            prev = k;
        }
    }

    #[test]
    fn validity_range() {
        assert!(matches!(
            fog_specific_attenuation(ghz(9.9), 15.0),
            Err(Error::ModelValidity(_))
        ));
        assert!(fog_specific_attenuation(ghz(1000.1), 15.0).is_err());
        assert!(FogConditions::new(70.0, 0.1).is_err());
        assert!(FogConditions::new(15.0, -0.1).is_err());
    }

    #[test]
    fn endpoints_at_100_m() {
        let heavy = FogConditions::new(15.0, 0.5).unwrap();
        let d = DistanceM::new(100.0).unwrap();
        let lo = fog_attenuation(ghz(10.0), heavy, d).unwrap();
        let hi = fog_attenuation(ghz(1000.0), heavy, d).unwrap();
        assert!((lo - 0.003).abs() < 0.3 * 0.003, "{lo}");
        assert!((hi - 2.0).abs() < 0.3 * 2.0, "{hi}");
        let dry = FogConditions::new(15.0, 0.0).unwrap();
        assert_eq!(fog_attenuation(ghz(300.0), dry, d).unwrap(), 0.0);
    }
}
