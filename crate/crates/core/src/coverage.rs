//! Monte Carlo SNR coverage under Poisson base-station deployments.
//!
//! The test user sits at the origin. A trial is covered when at least one
//! base station of a PPP realisation delivers an SNR (beamforming gain
//! included) strictly above the threshold.
//!
//! Randomness: each trial `t` draws from ChaCha8 seeded with
//! `ChaCha8Rng::seed_from_u64(seed)` on stream `t`. Trials therefore do not
//! share state, and parallel evaluation is bit-identical to sequential.

use std::f64::consts::PI;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::link_budget::{snr_db, LinkConfig};
use crate::sweep::SweepTable;
use crate::units::DistanceM;

pub const DEFAULT_TRIALS: u64 = 20_000;
pub const DEFAULT_MIN_LINK_DISTANCE_M: f64 = 1.0;
/// Default window is this multiple of the critical radius...
pub const WINDOW_MARGIN: f64 = 3.0;
/// ...capped at this radius, m.
pub const MAX_DEFAULT_WINDOW_M: f64 = 20_000.0;

const MAX_BRACKET_M: f64 = 1e8;

/// Deployment and link parameters of one coverage experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct DeploymentConfig {
    pub bs_density_per_km2: f64,
    pub link: LinkConfig,
    pub snr_threshold_db: f64,
    pub window_radius_m: f64,
    pub min_link_distance_m: f64,
}

impl DeploymentConfig {
    /// Deployment with a 1 m minimum link distance and the default window.
    pub fn new(bs_density_per_km2: f64, link: LinkConfig, snr_threshold_db: f64) -> Result<Self> {
        let mut cfg = Self {
            bs_density_per_km2,
            link,
            snr_threshold_db,
            window_radius_m: 1.0,
            min_link_distance_m: DEFAULT_MIN_LINK_DISTANCE_M,
        };
        cfg.validate_params()?;
        cfg.window_radius_m = cfg.default_window_radius()?;
        Ok(cfg)
    }

    pub fn with_window_radius(mut self, radius_m: f64) -> Self {
        self.window_radius_m = radius_m;
        self
    }

    pub fn with_density(mut self, bs_density_per_km2: f64) -> Self {
        self.bs_density_per_km2 = bs_density_per_km2;
        self
    }

    /// `WINDOW_MARGIN × critical radius`, capped at `MAX_DEFAULT_WINDOW_M`.
    pub fn default_window_radius(&self) -> Result<f64> {
        let r0 = critical_radius(self)?;
        Ok((WINDOW_MARGIN * r0.radius.m()).min(MAX_DEFAULT_WINDOW_M))
    }

    fn validate_params(&self) -> Result<()> {
        if !(self.bs_density_per_km2.is_finite() && self.bs_density_per_km2 > 0.0) {
            return Err(Error::Argument(format!(
                "base-station density must be > 0 per km^2, got {}",
                self.bs_density_per_km2
            )));
        }
        if !self.snr_threshold_db.is_finite() {
            return Err(Error::Argument("SNR threshold must be finite".into()));
        }
        if !(self.min_link_distance_m.is_finite() && self.min_link_distance_m > 0.0) {
            return Err(Error::Argument("minimum link distance must be > 0 m".into()));
        }
        if !(self.window_radius_m.is_finite() && self.window_radius_m > 0.0) {
            return Err(Error::Argument("window radius must be > 0 m".into()));
        }
        self.link.validate()
    }
}

/// Distance at which the SNR falls to the threshold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalRadius {
    pub radius: DistanceM,
    /// `false` when even the minimum link distance misses the threshold;
    /// `radius` is then the minimum link distance and coverage is zero.
    pub reachable: bool,
}

/// Bisection root of `snr_db(link, r) = threshold` on `[min_link_distance, ∞)`.
pub fn critical_radius(cfg: &DeploymentConfig) -> Result<CriticalRadius> {
    let snr = |r: f64| -> Result<f64> { snr_db(&cfg.link, DistanceM::new(r)?, true) };
    let threshold = cfg.snr_threshold_db;
    let mut lo = cfg.min_link_distance_m;
    if snr(lo)? <= threshold {
        return Ok(CriticalRadius {
            radius: DistanceM::new(lo)?,
            reachable: false,
        });
    }
    let mut hi = lo * 2.0;
    while snr(hi)? > threshold {
        lo = hi;
        hi *= 2.0;
        if hi > MAX_BRACKET_M {
            return Err(Error::Numeric(format!(
                "SNR stays above {threshold} dB beyond {MAX_BRACKET_M} m; no bracketing interval"
            )));
        }
    }
    for _ in 0..200 {
        if hi - lo <= 1e-12 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if snr(mid)? > threshold {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(CriticalRadius {
        radius: DistanceM::new(0.5 * (lo + hi))?,
        reachable: true,
    })
}

/// Draws a homogeneous PPP on a disk in order of increasing distance from
/// the centre: successive areas `π·r_k²` are partial sums of exponential
/// gaps with mean `1/λ`, and angles are uniform. Points inside a smaller
/// disk do not depend on the outer radius.
pub struct PppSampler<'a, R: RngCore> {
    rng: &'a mut R,
    intensity_per_m2: f64,
    radius_m: f64,
    area: f64,
    done: bool,
}

impl<'a, R: RngCore> PppSampler<'a, R> {
    pub fn new(density_per_km2: f64, radius_m: f64, rng: &'a mut R) -> Result<Self> {
        if !(density_per_km2.is_finite() && density_per_km2 > 0.0) {
            return Err(Error::Argument(format!("density must be > 0, got {density_per_km2}")));
        }
        if !(radius_m.is_finite() && radius_m > 0.0) {
            return Err(Error::Argument(format!("radius must be > 0 m, got {radius_m}")));
        }
        Ok(Self {
            rng,
            intensity_per_m2: density_per_km2 / 1e6,
            radius_m,
            area: 0.0,
            done: false,
        })
    }
}

impl<R: RngCore> Iterator for PppSampler<'_, R> {
    /// `(x, y)` in meters.
    type Item = [f64; 2];

    fn next(&mut self) -> Option<[f64; 2]> {
        if self.done {
            return None;
        }
        let u: f64 = self.rng.random();
        self.area += -(1.0 - u).ln() / self.intensity_per_m2;
        let r = (self.area / PI).sqrt();
        if r > self.radius_m {
            self.done = true;
            return None;
        }
        let theta = 2.0 * PI * self.rng.random::<f64>();
        Some([r * theta.cos(), r * theta.sin()])
    }
}

/// One PPP realisation on the disk of `radius_m` around the origin.
pub fn sample_ppp<R: RngCore>(density_per_km2: f64, radius_m: f64, rng: &mut R) -> Result<Vec<[f64; 2]>> {
    Ok(PppSampler::new(density_per_km2, radius_m, rng)?.collect())
}

/// RNG of trial `trial` for `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Monte Carlo coverage estimate with a normal-approximation 95% interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageEstimate {
    pub p_hat: f64,
    pub ci_half_width_95: f64,
    pub n_trials: u64,
    pub covered: u64,
    pub seed: u64,
}

impl CoverageEstimate {
    fn from_counts(covered: u64, n_trials: u64, seed: u64) -> Self {
        let p_hat = covered as f64 / n_trials as f64;
        Self {
            p_hat,
            ci_half_width_95: 1.96 * (p_hat * (1.0 - p_hat) / n_trials as f64).sqrt(),
            n_trials,
            covered,
            seed,
        }
    }

    /// Binomial standard error, `ci_half_width_95 / 1.96`.
    pub fn std_error(&self) -> f64 {
        self.ci_half_width_95 / 1.96
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

fn check_ready(cfg: &DeploymentConfig, n_trials: u64) -> Result<()> {
    if n_trials == 0 {
        return Err(Error::Argument("need at least one trial".into()));
    }
    cfg.validate_params()?;
    let r0 = critical_radius(cfg)?;
    if r0.reachable && r0.radius.m() > cfg.window_radius_m {
        return Err(Error::Config(format!(
            "window radius {} m is smaller than the critical radius {:.3} m",
            cfg.window_radius_m,
            r0.radius.m()
        )));
    }
    Ok(())
}

fn run_trial(cfg: &DeploymentConfig, seed: u64, trial: u64) -> Result<bool> {
    let mut rng = trial_rng(seed, trial);
    let stations = PppSampler::new(cfg.bs_density_per_km2, cfg.window_radius_m, &mut rng)?;
    for [x, y] in stations {
        let d = DistanceM::new(x.hypot(y).max(cfg.min_link_distance_m))?;
        if snr_db(&cfg.link, d, true)? > cfg.snr_threshold_db {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Coverage probability with trial-parallel execution.
pub fn coverage_probability(cfg: &DeploymentConfig, n_trials: u64, seed: u64) -> Result<CoverageEstimate> {
    coverage_probability_with(cfg, n_trials, seed, Execution::Parallel)
}

pub fn coverage_probability_with(
    cfg: &DeploymentConfig,
    n_trials: u64,
    seed: u64,
    execution: Execution,
) -> Result<CoverageEstimate> {
    check_ready(cfg, n_trials)?;
    let covered = match execution {
        Execution::Sequential => {
            let mut covered = 0u64;
            for t in 0..n_trials {
                covered += u64::from(run_trial(cfg, seed, t)?);
            }
            covered
        }
        Execution::Parallel => (0..n_trials)
            .into_par_iter()
            .map(|t| run_trial(cfg, seed, t).map(u64::from))
            .try_reduce(|| 0, |a, b| Ok(a + b))?,
    };
    Ok(CoverageEstimate::from_counts(covered, n_trials, seed))
}

/// Coverage estimates of several link configurations over a density grid.
#[derive(Debug, Clone)]
pub struct CoverageSweep {
    pub densities: Vec<f64>,
    pub labels: Vec<String>,
    /// `estimates[config][density]`.
    pub estimates: Vec<Vec<CoverageEstimate>>,
}

impl CoverageSweep {
    /// `p_hat` per configuration, optionally followed by the 95% half-widths.
    pub fn table(&self, with_ci: bool) -> Result<SweepTable> {
        let mut table = SweepTable::new("density_per_km2", self.densities.clone())?;
        for (label, est) in self.labels.iter().zip(&self.estimates) {
            table.push_series(format!("p_hat_{label}"), est.iter().map(|e| e.p_hat).collect())?;
        }
        if with_ci {
            for (label, est) in self.labels.iter().zip(&self.estimates) {
                table.push_series(
                    format!("ci95_{label}"),
                    est.iter().map(|e| e.ci_half_width_95).collect(),
                )?;
            }
        }
        Ok(table)
    }
}

/// Series label `"{carrier}ghz_{n_tx}x{n_rx}"` of a link.
pub fn config_label(link: &LinkConfig) -> String {
    format!("{}ghz_{}x{}", link.carrier.ghz(), link.n_tx_elements, link.n_rx_elements)
}

/// Sweeps every link over `densities` (strictly increasing). Each point uses
/// the default window for its link and the same `seed`.
pub fn coverage_sweep(
    links: &[LinkConfig],
    densities: &[f64],
    snr_threshold_db: f64,
    n_trials: u64,
    seed: u64,
) -> Result<CoverageSweep> {
    if links.is_empty() || densities.is_empty() {
        return Err(Error::Argument("coverage sweep needs at least one configuration and one density".into()));
    }
    if densities.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Argument("densities must be strictly increasing".into()));
    }
    let mut estimates = Vec::with_capacity(links.len());
    for link in links {
        let base = DeploymentConfig::new(densities[0], link.clone(), snr_threshold_db)?;
        let row = densities
            .iter()
            .map(|&rho| coverage_probability(&base.clone().with_density(rho), n_trials, seed))
            .collect::<Result<Vec<_>>>()?;
        estimates.push(row);
    }
    Ok(CoverageSweep {
        densities: densities.to_vec(),
        labels: links.iter().map(config_label).collect(),
        estimates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::PathLossModel;
    use crate::units::{FrequencyHz, SPEED_OF_LIGHT};
    use approx::assert_relative_eq;

    fn ghz(v: f64) -> FrequencyHz {
        FrequencyHz::from_ghz(v).unwrap()
    }

    fn free_space_link() -> LinkConfig {
        LinkConfig::new(0.5, 10.0, 400e6, ghz(28.0), PathLossModel::FreeSpace)
            .unwrap()
            .with_arrays(16, 4)
            .unwrap()
    }

    #[test]
    fn critical_radius_free_space_closed_form() {
        let cfg = DeploymentConfig::new(10.0, free_space_link(), 0.0).unwrap();
        let r0 = critical_radius(&cfg).unwrap();
        assert!(r0.reachable);
        let budget = 10.0 * (0.5f64 * 1e3).log10() + 10.0 * 64f64.log10()
            - (-174.0 + 10.0 * 400e6f64.log10() + 10.0);
        let closed = SPEED_OF_LIGHT / (4.0 * PI * 28e9) * 10f64.powf(budget / 20.0);
        assert_relative_eq!(r0.radius.m(), closed, max_relative = 1e-6);
    }

    #[test]
    fn unreachable_threshold_flags_zero_coverage() {
        let cfg = DeploymentConfig::new(10.0, free_space_link(), 500.0).unwrap();
        let r0 = critical_radius(&cfg).unwrap();
        assert!(!r0.reachable);
        assert_eq!(r0.radius.m(), cfg.min_link_distance_m);
        let est = coverage_probability(&cfg, 200, 1).unwrap();
        assert_eq!(est.p_hat, 0.0);
    }

    #[test]
    fn critical_radius_antitone_in_threshold() {
        let mut prev = f64::INFINITY;
        for thr in [-10.0, 0.0, 5.0, 20.0] {
            let cfg = DeploymentConfig::new(10.0, free_space_link(), thr).unwrap();
            let r = critical_radius(&cfg).unwrap().radius.m();
            assert!(r < prev);
            prev = r;
        }
    }

    #[test]
    fn ppp_points_stay_in_disk() {
        let mut rng = trial_rng(3, 0);
        let pts = sample_ppp(2e4, 50.0, &mut rng).unwrap();
        assert!(!pts.is_empty());
        assert!(pts.iter().all(|p| p[0].hypot(p[1]) <= 50.0));
        let mut rng = trial_rng(3, 1);
        // mean count 1e-3
        let empty = (0..1000)
            .filter(|_| sample_ppp(1e-3 / (PI * 1e-6), 1.0, &mut rng).unwrap().is_empty())
            .count();
        assert!(empty >= 990);
    }

    #[test]
    fn ppp_mean_count() {
        // λπr² = 50 with r = 100 m
        let density = 50.0 / (PI * 0.01);
        let draws = 100_000u64;
        let total: usize = (0..draws)
            .map(|t| sample_ppp(density, 100.0, &mut trial_rng(11, t)).unwrap().len())
            .sum();
        let mean = total as f64 / draws as f64;
        assert!((mean - 50.0).abs() < 0.5, "{mean}");
    }

    #[test]
    fn ppp_argument_validation() {
        let mut rng = trial_rng(0, 0);
        assert!(sample_ppp(0.0, 10.0, &mut rng).is_err());
        assert!(sample_ppp(1.0, -1.0, &mut rng).is_err());
    }

    #[test]
    fn small_window_is_a_config_error() {
        let cfg = DeploymentConfig::new(10.0, free_space_link(), 0.0).unwrap();
        let r0 = critical_radius(&cfg).unwrap().radius.m();
        let tight = cfg.with_window_radius(r0 / 2.0);
        assert!(matches!(coverage_probability(&tight, 10, 0), Err(Error::Config(_))));
    }

    #[test]
    fn zero_trials_rejected() {
        let cfg = DeploymentConfig::new(10.0, free_space_link(), 0.0).unwrap();
        assert!(coverage_probability(&cfg, 0, 0).is_err());
    }

    #[test]
    fn sequential_equals_parallel() {
        let cfg = DeploymentConfig::new(2.0, free_space_link(), 0.0).unwrap();
        let a = coverage_probability_with(&cfg, 3000, 99, Execution::Sequential).unwrap();
        let b = coverage_probability_with(&cfg, 3000, 99, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sweep_point_equals_direct_estimate() {
        let link = free_space_link();
        let sweep = coverage_sweep(std::slice::from_ref(&link), &[3.0], 0.0, 2000, 5).unwrap();
        let direct = coverage_probability(&DeploymentConfig::new(3.0, link, 0.0).unwrap(), 2000, 5).unwrap();
        assert_eq!(sweep.estimates[0][0], direct);
        let table = sweep.table(true).unwrap();
        assert_eq!(table.series()[0].label, "p_hat_28ghz_16x4");
        assert_eq!(table.series()[1].label, "ci95_28ghz_16x4");
    }
}
