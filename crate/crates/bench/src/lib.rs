//! Shared workloads for the criterion benches.

use terarad_core::{
    log_space_grid, DeploymentConfig, FrequencyHz, LinkConfig, Result, SweepGrid,
};

/// The 1 GHz to 1 THz axis of the figure sweeps.
pub fn frequency_axis(points: usize) -> SweepGrid {
    log_space_grid(1e9, 1e12, points).expect("valid grid")
}

/// 40 GHz, 16x4 elements, 80 BS/km^2.
pub fn mmwave_deployment() -> Result<DeploymentConfig> {
    let link = LinkConfig::for_carrier(FrequencyHz::new(40e9)?).with_arrays(16, 4)?;
    DeploymentConfig::new(80.0, link, 0.0)
}

/// 400 GHz, 1024x256 elements, 100 BS/km^2.
pub fn thz_deployment() -> Result<DeploymentConfig> {
    let link = LinkConfig::for_carrier(FrequencyHz::new(400e9)?).with_arrays(1024, 256)?;
    DeploymentConfig::new(100.0, link, 0.0)
}
