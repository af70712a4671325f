//! Figure reproduction front end: each subcommand evaluates one sweep and
//! writes it as CSV or as a standalone SVG chart.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use terarad_core::coverage::{coverage_sweep, DEFAULT_TRIALS};
use terarad_core::link_budget::{MMWAVE_MAX_CARRIER_HZ, THZ_BANDWIDTH_HZ};
use terarad_core::{
    crane_rain_attenuation, fog_attenuation, fspl, itu_rain_attenuation_with, load_absorption_table,
    log_space_grid, snr_sweep, AbsorptionTable, DistanceM, Error, FogConditions, FrequencyHz,
    LinkConfig, PathGeometry, PathLossModel, Polarization, RainPath, SweepAxis, SweepTable,
};

mod units;

pub use units::parse_frequency;

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 2;
const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "terarad", version, about = "RF propagation, link budget and coverage sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Free-space path loss versus frequency for several ranges.
    Fspl(FsplArgs),
    /// ITU and Crane rain attenuation versus frequency.
    Rain(RainArgs),
    /// Fog attenuation versus frequency for several liquid water densities.
    Fog(FogArgs),
    /// SNR versus carrier for several distances.
    Snr(SnrArgs),
    /// Monte Carlo coverage probability versus base-station density.
    Coverage(CoverageArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Args)]
struct Output {
    /// Number of sweep points.
    #[arg(long, default_value_t = 200)]
    points: usize,
    /// Output file (standard output when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Debug, Args)]
struct FsplArgs {
    #[arg(long, value_parser = parse_frequency, default_value = "1e9")]
    f_min: f64,
    #[arg(long, value_parser = parse_frequency, default_value = "1e12")]
    f_max: f64,
    /// Ranges in meters.
    #[arg(long, value_delimiter = ',', default_value = "50,1000")]
    ranges: Vec<f64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RainModelArg {
    Itu,
    Crane,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ItuPathArg {
    Effective,
    Geometric,
}

#[derive(Debug, Args)]
struct RainArgs {
    #[arg(long, value_enum, default_value_t = RainModelArg::Both)]
    model: RainModelArg,
    /// Rain rates in mm/h.
    #[arg(long, value_delimiter = ',', default_value = "1,4,20")]
    rates: Vec<f64>,
    /// Path length in meters.
    #[arg(long, default_value_t = 1000.0)]
    distance: f64,
    /// `h`, `v`, `c` or a tilt angle in degrees.
    #[arg(long, default_value = "h")]
    polarization: String,
    /// Path elevation in degrees (ITU model only).
    #[arg(long, default_value_t = 0.0)]
    elevation: f64,
    /// Path length used by the ITU model.
    #[arg(long, value_enum, default_value_t = ItuPathArg::Effective)]
    itu_path: ItuPathArg,
    #[arg(long, value_parser = parse_frequency, default_value = "1e9")]
    f_min: f64,
    #[arg(long, value_parser = parse_frequency, default_value = "1e12")]
    f_max: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct FogArgs {
    /// Liquid water densities in g/m^3.
    #[arg(long, value_delimiter = ',', default_value = "0.01,0.05,0.5")]
    densities: Vec<f64>,
    /// Temperature in Celsius.
    #[arg(long, default_value_t = 15.0, allow_negative_numbers = true)]
    temperature: f64,
    /// Path length in meters.
    #[arg(long, default_value_t = 100.0)]
    distance: f64,
    #[arg(long, value_parser = parse_frequency, default_value = "10e9")]
    f_min: f64,
    #[arg(long, value_parser = parse_frequency, default_value = "1e12")]
    f_max: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Band {
    Both,
    Mmwave,
    Thz,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    FreeSpace,
    Umi,
    Thz,
}

#[derive(Debug, Args)]
struct SnrArgs {
    #[arg(long, value_enum, default_value_t = Band::Both)]
    band: Band,
    /// Carriers in Hz (k/M/G/T suffixes accepted). Defaults depend on the band.
    #[arg(long, value_delimiter = ',', value_parser = parse_frequency)]
    carriers: Vec<f64>,
    /// Link distances in meters.
    #[arg(long, value_delimiter = ',', default_value = "5,50,150")]
    distances: Vec<f64>,
    /// Overrides the band's bandwidth, Hz.
    #[arg(long, value_parser = parse_frequency)]
    bandwidth: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    tx_power: f64,
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    noise_figure: f64,
    /// Add the array gain of `--bs-elems` x `--ue-elems`.
    #[arg(long)]
    beamforming: bool,
    #[arg(long, default_value_t = 16)]
    bs_elems: u32,
    #[arg(long, default_value_t = 4)]
    ue_elems: u32,
    /// Path-loss model of the custom band.
    #[arg(long, value_enum, default_value_t = ModelArg::FreeSpace)]
    model: ModelArg,
    /// BS/UE height difference used by the UMi model, m.
    #[arg(long, default_value_t = terarad_core::channel::UMI_HEIGHT_OFFSET_M)]
    height_offset: f64,
    #[arg(long)]
    absorption_file: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Debug, Args)]
struct CoverageArgs {
    /// Carriers in Hz; paired with `--bs-elems`/`--ue-elems`.
    #[arg(long, value_delimiter = ',', value_parser = parse_frequency)]
    carrier: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    bs_elems: Vec<u32>,
    #[arg(long, value_delimiter = ',')]
    ue_elems: Vec<u32>,
    /// Base-station densities per km^2.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "1,2,5,10,20,50,100,200,500,1000,2000,5000,10000"
    )]
    densities: Vec<f64>,
    /// SNR threshold, dB.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    threshold: f64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Also emit the 95% confidence half-widths.
    #[arg(long)]
    with_ci: bool,
    #[arg(long)]
    absorption_file: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

/// Rendering hints of one produced table.
struct Artifact {
    table: SweepTable,
    title: &'static str,
    y_label: &'static str,
    log_y: bool,
}

/// Runs the CLI with process stdout/stderr and returns the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with_io(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with_io<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(stdout, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("error: invalid arguments");
            let _ = writeln!(stderr, "{first}");
            return EXIT_USAGE;
        }
    };

    let (output, result) = match &cli.command {
        Command::Fspl(a) => (&a.output, fspl_table(a)),
        Command::Rain(a) => (&a.output, rain_table(a)),
        Command::Fog(a) => (&a.output, fog_table(a)),
        Command::Snr(a) => (&a.output, snr_table(a)),
        Command::Coverage(a) => (&a.output, coverage_table(a)),
    };
    let written = result.and_then(|artifact| emit(&artifact, output, stdout));
    match written {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Numeric(_) => EXIT_NUMERIC,
        _ => EXIT_USAGE,
    }
}

fn emit(artifact: &Artifact, output: &Output, stdout: &mut dyn Write) -> Result<(), Error> {
    let text = match output.format {
        Format::Csv => artifact.table.to_csv(),
        Format::Svg => artifact
            .table
            .to_svg(artifact.title, artifact.y_label, artifact.log_y)?,
    };
    match &output.out {
        Some(path) => {
            let mut file = File::create(path)
                .map_err(|e| Error::Io(format!("cannot create {}: {e}", path.display())))?;
            file.write_all(text.as_bytes())?;
        }
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn frequency_grid(f_min: f64, f_max: f64, points: usize) -> Result<Vec<FrequencyHz>, Error> {
    log_space_grid(f_min, f_max, points)?
        .points()
        .iter()
        .map(|f| FrequencyHz::new(*f))
        .collect()
}

fn ghz_axis(freqs: &[FrequencyHz]) -> Vec<f64> {
    freqs.iter().map(|f| f.ghz()).collect()
}

fn non_empty<T>(values: &[T], flag: &str) -> Result<(), Error> {
    if values.is_empty() {
        Err(Error::Argument(format!("{flag} needs at least one value")))
    } else {
        Ok(())
    }
}

fn fspl_table(a: &FsplArgs) -> Result<Artifact, Error> {
    non_empty(&a.ranges, "--ranges")?;
    let freqs = frequency_grid(a.f_min, a.f_max, a.output.points)?;
    let mut table = SweepTable::new("frequency_ghz", ghz_axis(&freqs))?;
    for &range in &a.ranges {
        let d = DistanceM::new(range)?;
        let y = freqs.iter().map(|f| fspl(*f, d)).collect::<Result<Vec<_>, _>>()?;
        table.push_series(format!("fspl_db_r{range}m"), y)?;
    }
    Ok(Artifact {
        table,
        title: "Free-space path loss",
        y_label: "path loss (dB)",
        log_y: false,
    })
}

fn parse_polarization(s: &str) -> Result<Polarization, Error> {
    match s.to_ascii_lowercase().as_str() {
        "h" | "horizontal" => Ok(Polarization::horizontal()),
        "v" | "vertical" => Ok(Polarization::vertical()),
        "c" | "circular" => Ok(Polarization::circular()),
        other => other
            .parse::<f64>()
            .map_err(|_| Error::Argument(format!("unknown polarization `{s}`")))
            .and_then(Polarization::new),
    }
}

fn rain_table(a: &RainArgs) -> Result<Artifact, Error> {
    non_empty(&a.rates, "--rates")?;
    let pol = parse_polarization(&a.polarization)?;
    let geom = PathGeometry::new(a.elevation)?;
    let d = DistanceM::new_or_zero(a.distance)?;
    let path = match a.itu_path {
        ItuPathArg::Effective => RainPath::Effective,
        ItuPathArg::Geometric => RainPath::Geometric,
    };
    let freqs = frequency_grid(a.f_min, a.f_max, a.output.points)?;
    let mut table = SweepTable::new("frequency_ghz", ghz_axis(&freqs))?;
    if matches!(a.model, RainModelArg::Itu | RainModelArg::Both) {
        for &rate in &a.rates {
            let y = freqs
                .iter()
                .map(|f| itu_rain_attenuation_with(*f, rate, d, pol, geom, path))
                .collect::<Result<Vec<_>, _>>()?;
            table.push_series(format!("itu_rain_db_r{rate}mmh"), y)?;
        }
    }
    if matches!(a.model, RainModelArg::Crane | RainModelArg::Both) {
        for &rate in &a.rates {
            let y = freqs
                .iter()
                .map(|f| crane_rain_attenuation(*f, rate, d, pol))
                .collect::<Result<Vec<_>, _>>()?;
            table.push_series(format!("crane_rain_db_r{rate}mmh"), y)?;
        }
    }
    Ok(Artifact {
        table,
        title: "Rain attenuation",
        y_label: "attenuation (dB)",
        log_y: true,
    })
}

fn fog_table(a: &FogArgs) -> Result<Artifact, Error> {
    non_empty(&a.densities, "--densities")?;
    let d = DistanceM::new_or_zero(a.distance)?;
    let freqs = frequency_grid(a.f_min, a.f_max, a.output.points)?;
    let mut table = SweepTable::new("frequency_ghz", ghz_axis(&freqs))?;
    for &m in &a.densities {
        let cond = FogConditions::new(a.temperature, m)?;
        let y = freqs
            .iter()
            .map(|f| fog_attenuation(*f, cond, d))
            .collect::<Result<Vec<_>, _>>()?;
        table.push_series(format!("fog_db_m{m}gm3"), y)?;
    }
    Ok(Artifact {
        table,
        title: "Fog attenuation",
        y_label: "attenuation (dB)",
        log_y: true,
    })
}

fn absorption(path: Option<&PathBuf>) -> Result<Arc<AbsorptionTable>, Error> {
    match path {
        None => Ok(AbsorptionTable::standard_atmosphere()),
        Some(p) => {
            let file = File::open(p)
                .map_err(|e| Error::Io(format!("cannot read {}: {e}", p.display())))?;
            Ok(Arc::new(load_absorption_table(file)?))
        }
    }
}

const MMWAVE_CARRIERS_HZ: [f64; 4] = [28e9, 41e9, 60e9, 100e9];
const THZ_CARRIERS_HZ: [f64; 4] = [300e9, 400e9, 700e9, 1000e9];

fn snr_table(a: &SnrArgs) -> Result<Artifact, Error> {
    non_empty(&a.distances, "--distances")?;
    let table = absorption(a.absorption_file.as_ref())?;
    let thz_model = PathLossModel::Thz {
        absorption: Some(table),
    };
    let umi = PathLossModel::UrbanCanyonLos {
        height_offset_m: a.height_offset,
    };
    if !(a.height_offset.is_finite() && a.height_offset >= 0.0) {
        return Err(Error::Argument("--height-offset must be >= 0".into()));
    }

    let carriers: Vec<f64> = if !a.carriers.is_empty() {
        a.carriers.clone()
    } else {
        match a.band {
            Band::Mmwave => MMWAVE_CARRIERS_HZ.to_vec(),
            Band::Thz => THZ_CARRIERS_HZ.to_vec(),
            Band::Both => MMWAVE_CARRIERS_HZ.iter().chain(&THZ_CARRIERS_HZ).copied().collect(),
            Band::Custom => {
                return Err(Error::Argument("--band custom requires --carriers".into()));
            }
        }
    };

    let configs = carriers
        .iter()
        .map(|&hz| {
            let f = FrequencyHz::new(hz)?;
            let mut cfg = match a.band {
                Band::Mmwave => LinkConfig::mmwave(f),
                Band::Thz => LinkConfig::thz(f, thz_model.clone()),
                Band::Both if hz <= MMWAVE_MAX_CARRIER_HZ => LinkConfig::mmwave(f),
                Band::Both => LinkConfig::thz(f, thz_model.clone()),
                Band::Custom => {
                    let model = match a.model {
                        ModelArg::FreeSpace => PathLossModel::FreeSpace,
                        ModelArg::Umi => umi.clone(),
                        ModelArg::Thz => thz_model.clone(),
                    };
                    let bw = a.bandwidth.unwrap_or(THZ_BANDWIDTH_HZ);
                    LinkConfig::new(a.tx_power, a.noise_figure, bw, f, model)?
                }
            };
            if let PathLossModel::UrbanCanyonLos { .. } = cfg.model {
                cfg.model = umi.clone();
            }
            cfg.tx_power_w = a.tx_power;
            cfg.noise_figure_db = a.noise_figure;
            if let Some(bw) = a.bandwidth {
                cfg.bandwidth_hz = bw;
            }
            cfg.with_arrays(a.bs_elems, a.ue_elems)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let distances = a
        .distances
        .iter()
        .map(|d| DistanceM::new(*d))
        .collect::<Result<Vec<_>, _>>()?;
    let table = snr_sweep(&configs, &distances, a.beamforming, SweepAxis::Carrier)?;
    Ok(Artifact {
        table,
        title: "SNR of mmWave and THz links",
        y_label: "SNR (dB)",
        log_y: false,
    })
}

const FIG3_CARRIERS_HZ: [f64; 4] = [40e9, 400e9, 400e9, 2000e9];
const FIG3_BS_ELEMS: [u32; 4] = [16, 16, 1024, 1024];
const FIG3_UE_ELEMS: [u32; 4] = [4, 4, 256, 256];

/// Pairs list flags elementwise; a single value is repeated.
fn broadcast<T: Copy>(values: &[T], n: usize, flag: &str) -> Result<Vec<T>, Error> {
    match values.len() {
        1 => Ok(vec![values[0]; n]),
        len if len == n => Ok(values.to_vec()),
        len => Err(Error::Argument(format!("{flag} has {len} values, expected 1 or {n}"))),
    }
}

fn coverage_table(a: &CoverageArgs) -> Result<Artifact, Error> {
    non_empty(&a.densities, "--densities")?;
    let (carriers, bs, ue) = if a.carrier.is_empty() {
        let bs = if a.bs_elems.is_empty() { FIG3_BS_ELEMS.to_vec() } else { a.bs_elems.clone() };
        let ue = if a.ue_elems.is_empty() { FIG3_UE_ELEMS.to_vec() } else { a.ue_elems.clone() };
        (FIG3_CARRIERS_HZ.to_vec(), bs, ue)
    } else {
        let bs = if a.bs_elems.is_empty() { vec![16] } else { a.bs_elems.clone() };
        let ue = if a.ue_elems.is_empty() { vec![4] } else { a.ue_elems.clone() };
        (a.carrier.clone(), bs, ue)
    };
    let n = carriers.len().max(bs.len()).max(ue.len());
    let carriers = broadcast(&carriers, n, "--carrier")?;
    let bs = broadcast(&bs, n, "--bs-elems")?;
    let ue = broadcast(&ue, n, "--ue-elems")?;

    let table = absorption(a.absorption_file.as_ref())?;
    let links = (0..n)
        .map(|i| {
            let f = FrequencyHz::new(carriers[i])?;
            let link = if carriers[i] <= MMWAVE_MAX_CARRIER_HZ {
                LinkConfig::mmwave(f)
            } else {
                LinkConfig::thz(
                    f,
                    PathLossModel::Thz {
                        absorption: Some(table.clone()),
                    },
                )
            };
            link.with_arrays(bs[i], ue[i])
        })
        .collect::<Result<Vec<_>, _>>()?;

    let sweep = coverage_sweep(&links, &a.densities, a.threshold, a.trials, a.seed)?;
    Ok(Artifact {
        table: sweep.table(a.with_ci)?,
        title: "Coverage probability",
        y_label: "P(SNR > threshold)",
        log_y: false,
    })
}
