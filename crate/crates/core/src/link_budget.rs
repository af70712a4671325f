//! Thermal noise, array gain and SNR link budgets.

use crate::channel::{pathloss, PathLossModel};
use crate::error::{Error, Result};
use crate::sweep::SweepTable;
use crate::units::{db_from_linear, dbm_from_watts, DistanceM, FrequencyHz};

/// Thermal noise density at 290 K, dBm/Hz.
pub const THERMAL_NOISE_DBM_PER_HZ: f64 = -174.0;

pub const DEFAULT_TX_POWER_W: f64 = 0.5;
pub const DEFAULT_NOISE_FIGURE_DB: f64 = 10.0;
/// Largest single-carrier NR bandwidth.
pub const MMWAVE_BANDWIDTH_HZ: f64 = 400e6;
/// IEEE 802.15.3d channel bandwidth.
pub const THZ_BANDWIDTH_HZ: f64 = 50e9;

/// Carriers above this use the THz model in the band presets.
pub const MMWAVE_MAX_CARRIER_HZ: f64 = 100e9;

/// Transmitter, receiver and channel description of a single link.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkConfig {
    pub tx_power_w: f64,
    pub noise_figure_db: f64,
    pub bandwidth_hz: f64,
    pub carrier: FrequencyHz,
    pub model: PathLossModel,
    pub n_tx_elements: u32,
    pub n_rx_elements: u32,
}

impl LinkConfig {
    pub fn new(
        tx_power_w: f64,
        noise_figure_db: f64,
        bandwidth_hz: f64,
        carrier: FrequencyHz,
        model: PathLossModel,
    ) -> Result<Self> {
        let cfg = Self {
            tx_power_w,
            noise_figure_db,
            bandwidth_hz,
            carrier,
            model,
            n_tx_elements: 1,
            n_rx_elements: 1,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// 0.5 W, 10 dB noise figure, 400 MHz, UMi street canyon.
    pub fn mmwave(carrier: FrequencyHz) -> Self {
        Self {
            tx_power_w: DEFAULT_TX_POWER_W,
            noise_figure_db: DEFAULT_NOISE_FIGURE_DB,
            bandwidth_hz: MMWAVE_BANDWIDTH_HZ,
            carrier,
            model: PathLossModel::umi_street_canyon(),
            n_tx_elements: 1,
            n_rx_elements: 1,
        }
    }

    /// 0.5 W, 10 dB noise figure, 50 GHz, spreading plus `model`'s absorption.
    pub fn thz(carrier: FrequencyHz, model: PathLossModel) -> Self {
        Self {
            tx_power_w: DEFAULT_TX_POWER_W,
            noise_figure_db: DEFAULT_NOISE_FIGURE_DB,
            bandwidth_hz: THZ_BANDWIDTH_HZ,
            carrier,
            model,
            n_tx_elements: 1,
            n_rx_elements: 1,
        }
    }

    /// mmWave preset up to 100 GHz, THz preset with the bundled table above.
    pub fn for_carrier(carrier: FrequencyHz) -> Self {
        if carrier.hz() <= MMWAVE_MAX_CARRIER_HZ {
            Self::mmwave(carrier)
        } else {
            Self::thz(carrier, PathLossModel::thz_standard_atmosphere())
        }
    }

    pub fn with_arrays(mut self, n_tx: u32, n_rx: u32) -> Result<Self> {
        self.n_tx_elements = n_tx;
        self.n_rx_elements = n_rx;
        self.validate()?;
        Ok(self)
    }

    pub fn with_carrier(mut self, carrier: FrequencyHz) -> Self {
        self.carrier = carrier;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tx_power_w.is_finite() && self.tx_power_w > 0.0) {
            return Err(Error::Argument(format!("tx power must be > 0 W, got {}", self.tx_power_w)));
        }
        if !(self.bandwidth_hz.is_finite() && self.bandwidth_hz > 0.0) {
            return Err(Error::Argument(format!("bandwidth must be > 0 Hz, got {}", self.bandwidth_hz)));
        }
        if !self.noise_figure_db.is_finite() {
            return Err(Error::Argument("noise figure must be finite".into()));
        }
        if self.n_tx_elements == 0 || self.n_rx_elements == 0 {
            return Err(Error::Argument("antenna element counts must be >= 1".into()));
        }
        Ok(())
    }

    pub fn beamforming_gain_db(&self) -> f64 {
        10.0 * (f64::from(self.n_tx_elements) * f64::from(self.n_rx_elements)).log10()
    }
}

/// Receiver noise power `-174 + 10·log10(B) + F`, dBm.
pub fn noise_power_dbm(bandwidth_hz: f64, noise_figure_db: f64) -> Result<f64> {
    if !(bandwidth_hz.is_finite() && bandwidth_hz > 0.0) {
        return Err(Error::Domain(format!("bandwidth must be > 0 Hz, got {bandwidth_hz}")));
    }
    Ok(THERMAL_NOISE_DBM_PER_HZ + db_from_linear(bandwidth_hz)? + noise_figure_db)
}

/// Coherent array gain of both ends, `10·log10(n_tx·n_rx)`.
pub fn beamforming_gain_db(n_tx: u32, n_rx: u32) -> Result<f64> {
    if n_tx == 0 || n_rx == 0 {
        return Err(Error::Argument("antenna element counts must be >= 1".into()));
    }
    Ok(10.0 * (f64::from(n_tx) * f64::from(n_rx)).log10())
}

/// Link SNR at distance `d`, dB.
pub fn snr_db(cfg: &LinkConfig, d: DistanceM, include_beamforming: bool) -> Result<f64> {
    cfg.validate()?;
    let gain = if include_beamforming {
        beamforming_gain_db(cfg.n_tx_elements, cfg.n_rx_elements)?
    } else {
        0.0
    };
    let loss = pathloss(&cfg.model, cfg.carrier, d)?;
    let noise = noise_power_dbm(cfg.bandwidth_hz, cfg.noise_figure_db)?;
    Ok(dbm_from_watts(cfg.tx_power_w)? + gain - loss - noise)
}

/// Orientation of an SNR sweep table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// x = carrier (GHz), one series per distance.
    Carrier,
    /// x = distance (m), one series per configuration.
    Distance,
}

/// SNR of each configuration at each distance.
///
/// With [`SweepAxis::Carrier`] the configurations' carriers must be
/// strictly increasing; with [`SweepAxis::Distance`] the distances must be.
pub fn snr_sweep(
    configs: &[LinkConfig],
    distances: &[DistanceM],
    include_beamforming: bool,
    axis: SweepAxis,
) -> Result<SweepTable> {
    if configs.is_empty() || distances.is_empty() {
        return Err(Error::Argument("SNR sweep needs at least one carrier and one distance".into()));
    }
    match axis {
        SweepAxis::Carrier => {
            let x = configs.iter().map(|c| c.carrier.ghz()).collect();
            let mut table = SweepTable::new("carrier_ghz", x)?;
            for d in distances {
                let y = configs
                    .iter()
                    .map(|c| snr_db(c, *d, include_beamforming))
                    .collect::<Result<Vec<_>>>()?;
                table.push_series(format!("snr_db_d{}m", d.m()), y)?;
            }
            Ok(table)
        }
        SweepAxis::Distance => {
            let x = distances.iter().map(|d| d.m()).collect();
            let mut table = SweepTable::new("distance_m", x)?;
            for c in configs {
                let y = distances
                    .iter()
                    .map(|d| snr_db(c, *d, include_beamforming))
                    .collect::<Result<Vec<_>>>()?;
                table.push_series(format!("snr_db_f{}ghz", c.carrier.ghz()), y)?;
            }
            Ok(table)
        }
    }
}

/// Monostatic two-way propagation loss, `2 × pathloss`, dB.
pub fn two_way_loss_db(model: &PathLossModel, f: FrequencyHz, d: DistanceM) -> Result<f64> {
    Ok(2.0 * pathloss(model, f, d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::propagation::fspl;
    use approx::assert_abs_diff_eq;

    fn ghz(v: f64) -> FrequencyHz {
        FrequencyHz::from_ghz(v).unwrap()
    }

    fn m(v: f64) -> DistanceM {
        DistanceM::new(v).unwrap()
    }

    #[test]
    fn noise_examples() {
        assert_abs_diff_eq!(noise_power_dbm(1.0, 0.0).unwrap(), -174.0, epsilon = 1e-12);
        assert_abs_diff_eq!(noise_power_dbm(400e6, 10.0).unwrap(), -77.98, epsilon = 5e-3);
        assert_abs_diff_eq!(noise_power_dbm(50e9, 10.0).unwrap(), -57.01, epsilon = 5e-3);
        assert!(matches!(noise_power_dbm(0.0, 10.0), Err(Error::Domain(_))));
    }

    #[test]
    fn array_gain_examples() {
        assert_eq!(beamforming_gain_db(1, 1).unwrap(), 0.0);
        assert_abs_diff_eq!(beamforming_gain_db(16, 4).unwrap(), 18.06, epsilon = 5e-3);
        assert_abs_diff_eq!(beamforming_gain_db(1024, 256).unwrap(), 54.19, epsilon = 5e-3);
        assert!(beamforming_gain_db(0, 4).is_err());
    }

    #[test]
    fn snr_example_at_100_m() {
        let cfg = LinkConfig::new(0.5, 10.0, 400e6, ghz(40.0), PathLossModel::urban_canyon_los()).unwrap();
        assert_abs_diff_eq!(snr_db(&cfg, m(100.0), false).unwrap(), -1.47, epsilon = 5e-3);
        let mut wide = cfg.clone();
        wide.bandwidth_hz *= 2.0;
        let drop = snr_db(&cfg, m(100.0), false).unwrap() - snr_db(&wide, m(100.0), false).unwrap();
        assert_abs_diff_eq!(drop, 3.0103, epsilon = 1e-4);
    }

    #[test]
    fn carrier_sweep_matches_pointwise() {
        let cfgs: Vec<_> = [28.0, 41.0, 60.0].iter().map(|f| LinkConfig::mmwave(ghz(*f))).collect();
        let ds = [m(5.0), m(50.0), m(150.0)];
        let t = snr_sweep(&cfgs, &ds, false, SweepAxis::Carrier).unwrap();
        assert_eq!(t.series().len(), 3);
        assert_eq!(t.series()[1].label, "snr_db_d50m");
        for (s, d) in t.series().iter().zip(ds) {
            for (y, c) in s.y.iter().zip(&cfgs) {
                assert_eq!(*y, snr_db(c, d, false).unwrap());
            }
        }
    }

    #[test]
    fn free_space_distance_series_offset() {
        let cfg = LinkConfig::new(1.0, 5.0, 1e9, ghz(10.0), PathLossModel::FreeSpace).unwrap();
        let cfgs = [cfg.clone(), cfg.clone().with_carrier(ghz(20.0))];
        let t = snr_sweep(&cfgs, &[m(5.0), m(50.0)], false, SweepAxis::Carrier).unwrap();
        let (near, far) = (&t.series()[0].y, &t.series()[1].y);
        for (a, b) in near.iter().zip(far) {
            assert_abs_diff_eq!(b - a, -20.0, epsilon = 1e-9);
        }
        let single = snr_sweep(std::slice::from_ref(&cfg), &[m(7.0), m(9.0)], true, SweepAxis::Distance).unwrap();
        assert_eq!(single.series().len(), 1);
        assert_eq!(single.series()[0].y[1], snr_db(&cfg, m(9.0), true).unwrap());
    }

    #[test]
    fn two_way_is_double_one_way() {
        assert_abs_diff_eq!(
            two_way_loss_db(&PathLossModel::FreeSpace, ghz(1.0), m(1000.0)).unwrap(),
            184.9,
            epsilon = 0.01
        );
        let thz = PathLossModel::Thz { absorption: None };
        assert_eq!(
            two_way_loss_db(&thz, ghz(300.0), m(10.0)).unwrap(),
            2.0 * fspl(ghz(300.0), m(10.0)).unwrap()
        );
    }

    #[test]
    fn empty_sweep_rejected() {
        assert!(snr_sweep(&[], &[m(1.0)], false, SweepAxis::Carrier).is_err());
        assert!(snr_sweep(&[LinkConfig::mmwave(ghz(28.0))], &[], false, SweepAxis::Carrier).is_err());
    }
}
