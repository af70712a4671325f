//! Propagation losses (free space, rain, fog), mmWave/THz link budgets and
//! Poisson-deployment coverage probability.

pub mod channel;
pub mod coverage;
pub mod error;
pub mod link_budget;
mod plot;
pub mod propagation;
pub mod sweep;
pub mod units;

pub use channel::{
    load_absorption_table, pathloss, thz_pathloss, umi_los_pathloss, AbsorptionTable, PathLossModel,
};
pub use coverage::{
    coverage_probability, coverage_probability_with, coverage_sweep, critical_radius, sample_ppp,
    CoverageEstimate, CoverageSweep, CriticalRadius, DeploymentConfig, Execution,
};
pub use error::{Error, Result};
pub use link_budget::{
    beamforming_gain_db, noise_power_dbm, snr_db, snr_sweep, two_way_loss_db, LinkConfig, SweepAxis,
};
pub use propagation::{
    crane_rain_attenuation, fog_attenuation, fog_specific_attenuation, fspl, itu_rain_attenuation,
    itu_rain_attenuation_with, rain_coefficients, FogConditions, PathGeometry, Polarization,
    RainCoefficients, RainPath,
};
pub use sweep::{Series, SweepTable};
pub use units::{db_from_linear, dbm_from_watts, log_space_grid, DistanceM, FrequencyHz, SweepGrid};
