//! Carrier-dependent end-to-end path loss: free space, 3GPP UMi line of
//! sight for mmWave, and spreading plus molecular absorption for THz.

use std::fmt::Write as _;
use std::io::Read;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::propagation::fspl;
use crate::units::{DistanceM, FrequencyHz};

/// `10·log10(e)`: dB per neper of power attenuation.
const DB_PER_NEPER: f64 = 4.342_944_819_032_518;

const ABSORPTION_HEADER: &str = "frequency_ghz,k_per_m";

static DEFAULT_TABLE_CSV: &str = include_str!("../data/absorption_standard_atmosphere.csv");

/// Height difference between a 10 m UMi base station and a 1.5 m user.
pub const UMI_HEIGHT_OFFSET_M: f64 = 8.5;

/// Molecular absorption coefficient samples `(f, k(f))`, k in 1/m.
#[derive(Debug, Clone, PartialEq)]
pub struct AbsorptionTable {
    freqs_hz: Vec<f64>,
    k_per_m: Vec<f64>,
}

impl AbsorptionTable {
    /// Samples must have strictly increasing frequencies and non-negative
    /// coefficients, with at least two entries.
    pub fn new(samples: Vec<(FrequencyHz, f64)>) -> Result<Self> {
        if samples.len() < 2 {
            return Err(Error::Argument("absorption table needs at least 2 samples".into()));
        }
        let mut freqs_hz = Vec::with_capacity(samples.len());
        let mut k_per_m = Vec::with_capacity(samples.len());
        for (i, (f, k)) in samples.into_iter().enumerate() {
            if !(k.is_finite() && k >= 0.0) {
                return Err(Error::Argument(format!("negative or non-finite k at sample {i}")));
            }
            if freqs_hz.last().is_some_and(|&prev| f.hz() <= prev) {
                return Err(Error::Argument(format!("non-monotone frequency at sample {i}")));
            }
            freqs_hz.push(f.hz());
            k_per_m.push(k);
        }
        Ok(Self { freqs_hz, k_per_m })
    }

    /// The bundled clear-air table, 100 GHz to 2 THz.
    pub fn standard_atmosphere() -> Arc<AbsorptionTable> {
        static TABLE: OnceLock<Arc<AbsorptionTable>> = OnceLock::new();
        TABLE
            .get_or_init(|| {
                Arc::new(
                    load_absorption_table(DEFAULT_TABLE_CSV.as_bytes())
                        .expect("bundled absorption table is valid"),
                )
            })
            .clone()
    }

    pub fn len(&self) -> usize {
        self.freqs_hz.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freqs_hz.is_empty()
    }

    /// `(min, max)` frequency covered, Hz.
    pub fn span_hz(&self) -> (f64, f64) {
        (self.freqs_hz[0], self.freqs_hz[self.freqs_hz.len() - 1])
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.freqs_hz.iter().copied().zip(self.k_per_m.iter().copied())
    }

    /// Piecewise-linear `k(f)`; errors outside the sampled span.
    pub fn coefficient(&self, f: FrequencyHz) -> Result<f64> {
        let x = f.hz();
        let (lo, hi) = self.span_hz();
        if x < lo || x > hi {
            return Err(Error::Interpolation(format!(
                "{} GHz is outside the absorption table span [{}, {}] GHz",
                f.ghz(),
                lo / 1e9,
                hi / 1e9
            )));
        }
        match self.freqs_hz.binary_search_by(|p| p.total_cmp(&x)) {
            Ok(i) => Ok(self.k_per_m[i]),
            Err(i) => {
                let (f0, f1) = (self.freqs_hz[i - 1], self.freqs_hz[i]);
                let (k0, k1) = (self.k_per_m[i - 1], self.k_per_m[i]);
                let t = (x - f0) / (f1 - f0);
                Ok(k0 + t * (k1 - k0))
            }
        }
    }

    /// CSV text in the same schema `load_absorption_table` reads.
    pub fn to_csv(&self) -> String {
        let mut out = String::with_capacity(32 * self.len());
        out.push_str(ABSORPTION_HEADER);
        out.push('\n');
        for (f, k) in self.samples() {
            let _ = writeln!(out, "{},{}", f / 1e9, k);
        }
        out
    }
}

/// Parse an absorption CSV (`frequency_ghz,k_per_m`). Lines starting with
/// `#` are comments. Errors carry the 1-based line number of the culprit.
pub fn load_absorption_table<R: Read>(source: R) -> Result<AbsorptionTable> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(source);

    let mut header_seen = false;
    let mut freqs_hz: Vec<f64> = Vec::new();
    let mut k_per_m = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            Error::parse(line, e.to_string())
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if !header_seen {
            let header: Vec<&str> = record.iter().collect();
            if header.join(",") != ABSORPTION_HEADER {
                return Err(Error::parse(
                    line,
                    format!("expected header `{ABSORPTION_HEADER}`"),
                ));
            }
            header_seen = true;
            continue;
        }
        if record.len() != 2 {
            return Err(Error::parse(line, format!("expected 2 fields, found {}", record.len())));
        }
        let parse = |s: &str, what: &str| -> Result<f64> {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::parse(line, format!("invalid {what} `{s}`")))
        };
        let f_ghz = parse(&record[0], "frequency")?;
        let k = parse(&record[1], "coefficient")?;
        if f_ghz <= 0.0 {
            return Err(Error::parse(line, "frequency must be positive"));
        }
        if k < 0.0 {
            return Err(Error::parse(line, format!("negative coefficient at line {line}")));
        }
        let f_hz = f_ghz * 1e9;
        if freqs_hz.last().is_some_and(|&prev| f_hz <= prev) {
            return Err(Error::parse(line, format!("non-monotone frequency at line {line}")));
        }
        freqs_hz.push(f_hz);
        k_per_m.push(k);
    }
    if !header_seen {
        return Err(Error::parse(1, "empty absorption file"));
    }
    if freqs_hz.len() < 2 {
        return Err(Error::parse(
            reader.position().line(),
            "absorption table needs at least 2 samples",
        ));
    }
    Ok(AbsorptionTable { freqs_hz, k_per_m })
}

/// 3GPP TR 38.901 UMi street canyon LOS path loss (below breakpoint), dB.
///
/// `d` is the direct (3D) link distance.
pub fn umi_los_pathloss(f: FrequencyHz, d: DistanceM) -> Result<f64> {
    let f_ghz = f.ghz();
    if !(0.5..=100.0).contains(&f_ghz) {
        return Err(Error::ModelValidity(format!(
            "UMi model is valid between 0.5 and 100 GHz, got {f_ghz} GHz"
        )));
    }
    if d.is_zero() {
        return Err(Error::Domain("UMi path loss needs a distance > 0".into()));
    }
    Ok(32.4 + 21.0 * d.m().log10() + 20.0 * f_ghz.log10())
}

/// Spreading loss plus molecular absorption `10·log10(e)·k(f)·d`, dB.
/// Without a table the absorption term is zero.
pub fn thz_pathloss(f: FrequencyHz, d: DistanceM, absorption: Option<&AbsorptionTable>) -> Result<f64> {
    let spreading = fspl(f, d)?;
    let k = match absorption {
        Some(table) => table.coefficient(f)?,
        None => 0.0,
    };
    Ok(spreading + DB_PER_NEPER * k * d.m())
}

/// Path-loss model selector.
#[derive(Debug, Clone, PartialEq)]
pub enum PathLossModel {
    FreeSpace,
    /// UMi LOS evaluated at `sqrt(d² + h²)` for a ground distance `d`
    /// and antenna height difference `h`. `h = 0` treats `d` as the link distance.
    UrbanCanyonLos { height_offset_m: f64 },
    Thz { absorption: Option<Arc<AbsorptionTable>> },
}

impl PathLossModel {
    /// UMi LOS with `d` taken as the direct link distance.
    pub const fn urban_canyon_los() -> Self {
        PathLossModel::UrbanCanyonLos { height_offset_m: 0.0 }
    }

    /// UMi street canyon with 10 m base stations and 1.5 m users.
    pub const fn umi_street_canyon() -> Self {
        PathLossModel::UrbanCanyonLos {
            height_offset_m: UMI_HEIGHT_OFFSET_M,
        }
    }

    /// THz model backed by the bundled clear-air absorption table.
    pub fn thz_standard_atmosphere() -> Self {
        PathLossModel::Thz {
            absorption: Some(AbsorptionTable::standard_atmosphere()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            PathLossModel::FreeSpace => "free-space",
            PathLossModel::UrbanCanyonLos { .. } => "umi-los",
            PathLossModel::Thz { .. } => "thz",
        }
    }
}

/// One-way path loss under `model`, dB.
pub fn pathloss(model: &PathLossModel, f: FrequencyHz, d: DistanceM) -> Result<f64> {
    match model {
        PathLossModel::FreeSpace => fspl(f, d),
        PathLossModel::UrbanCanyonLos { height_offset_m } => {
            let link = if *height_offset_m == 0.0 {
                d
            } else {
                DistanceM::new(d.m().hypot(*height_offset_m))?
            };
            umi_los_pathloss(f, link)
        }
        PathLossModel::Thz { absorption } => thz_pathloss(f, d, absorption.as_deref()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ghz(v: f64) -> FrequencyHz {
        FrequencyHz::from_ghz(v).unwrap()
    }

    fn m(v: f64) -> DistanceM {
        DistanceM::new(v).unwrap()
    }

    fn flat_table(k: f64) -> AbsorptionTable {
        AbsorptionTable::new(vec![(ghz(100.0), k), (ghz(2000.0), k)]).unwrap()
    }

    #[test]
    fn umi_examples() {
        assert_abs_diff_eq!(umi_los_pathloss(ghz(40.0), m(100.0)).unwrap(), 106.44, epsilon = 0.005);
        assert_abs_diff_eq!(umi_los_pathloss(ghz(28.0), m(10.0)).unwrap(), 82.34, epsilon = 0.005);
        let step = umi_los_pathloss(ghz(28.0), m(100.0)).unwrap() - umi_los_pathloss(ghz(28.0), m(10.0)).unwrap();
        assert_abs_diff_eq!(step, 21.0, epsilon = 1e-12);
        assert!(matches!(
            umi_los_pathloss(ghz(300.0), m(10.0)),
            Err(Error::ModelValidity(_))
        ));
    }

    #[test]
    fn thz_examples() {
        assert_abs_diff_eq!(thz_pathloss(ghz(300.0), m(10.0), None).unwrap(), 101.990, epsilon = 5e-4);
        let table = flat_table(0.001);
        let with = thz_pathloss(ghz(500.0), m(100.0), Some(&table)).unwrap();
        let without = thz_pathloss(ghz(500.0), m(100.0), None).unwrap();
        assert_abs_diff_eq!(with - without, 0.434, epsilon = 5e-4);

        let spreading = thz_pathloss(ghz(700.0), m(5.0), None).unwrap();
        assert_abs_diff_eq!(spreading, 103.329, epsilon = 5e-4);
        let default = AbsorptionTable::standard_atmosphere();
        let total = thz_pathloss(ghz(700.0), m(5.0), Some(&default)).unwrap();
        let k = default.coefficient(ghz(700.0)).unwrap();
        assert_abs_diff_eq!(total - spreading, DB_PER_NEPER * k * 5.0, epsilon = 1e-12);
    }

    #[test]
    fn interpolation_is_exact_at_samples_and_bracketed_between() {
        let table = AbsorptionTable::new(vec![(ghz(100.0), 0.2), (ghz(200.0), 0.1), (ghz(300.0), 0.4)]).unwrap();
        assert_eq!(table.coefficient(ghz(200.0)).unwrap(), 0.1);
        assert_abs_diff_eq!(table.coefficient(ghz(150.0)).unwrap(), 0.15, epsilon = 1e-15);
        assert!(matches!(table.coefficient(ghz(99.0)), Err(Error::Interpolation(_))));
        assert!(table.coefficient(ghz(301.0)).is_err());
    }

    #[test]
    fn load_minimal_table() {
        let t = load_absorption_table("frequency_ghz,k_per_m\n100,0.001\n200,0.002\n".as_bytes()).unwrap();
        assert_eq!(t.len(), 2);
        let crlf = load_absorption_table("frequency_ghz,k_per_m\r\n100,0.001\r\n200,0.002\r\n".as_bytes()).unwrap();
        assert_eq!(t, crlf);
    }

    #[test]
    fn load_reports_line_numbers() {
        let err = load_absorption_table("frequency_ghz,k_per_m\n300,0.1\n200,0.2\n".as_bytes()).unwrap_err();
        assert_eq!(
            err,
            Error::Parse { line: 3, message: "non-monotone frequency at line 3".into() }
        );
        let err = load_absorption_table("frequency_ghz,k_per_m\n100,0.1\n200,-0.2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = load_absorption_table("frequency_ghz,k_per_m\n100,0.1\n200,abc\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = load_absorption_table("freq,k\n100,0.1\n200,0.2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }), "{err}");
        let err = load_absorption_table("frequency_ghz,k_per_m\n100,0.1\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { .. }), "{err}");
        let err = load_absorption_table("frequency_ghz,k_per_m\n100,0.1,3\n200,0.2\n".as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn bundled_table_spans_100_ghz_to_2_thz() {
        let t = AbsorptionTable::standard_atmosphere();
        let (lo, hi) = t.span_hz();
        assert!(lo <= 100e9 && hi >= 2000e9);
    }

    #[test]
    fn dispatch() {
        assert_abs_diff_eq!(
            pathloss(&PathLossModel::FreeSpace, ghz(1.0), m(1000.0)).unwrap(),
            92.45,
            epsilon = 0.005
        );
        assert_eq!(
            pathloss(&PathLossModel::Thz { absorption: None }, ghz(420.0), m(33.0)).unwrap(),
            pathloss(&PathLossModel::FreeSpace, ghz(420.0), m(33.0)).unwrap()
        );
        assert_abs_diff_eq!(
            pathloss(&PathLossModel::urban_canyon_los(), ghz(40.0), m(100.0)).unwrap(),
            106.44,
            epsilon = 0.005
        );
        let canyon = pathloss(&PathLossModel::umi_street_canyon(), ghz(41.0), m(5.0)).unwrap();
        let direct = umi_los_pathloss(ghz(41.0), m(5f64.hypot(8.5))).unwrap();
        assert_eq!(canyon, direct);
    }
}
