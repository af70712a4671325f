//! Labeled sweep tables and their CSV / SVG renderings.

use std::fmt::Write as _;
use std::io::Read;

use crate::error::{Error, Result};

/// One labeled curve of a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub y: Vec<f64>,
}

/// A grid `x` with any number of equally long series.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    x_label: String,
    x: Vec<f64>,
    series: Vec<Series>,
}

fn check_label(label: &str) -> Result<()> {
    if label.is_empty() || label.contains([',', '"', '\n', '\r']) {
        return Err(Error::Argument(format!("invalid column label `{label}`")));
    }
    Ok(())
}

impl SweepTable {
    pub fn new(x_label: impl Into<String>, x: Vec<f64>) -> Result<Self> {
        let x_label = x_label.into();
        check_label(&x_label)?;
        if x.is_empty() {
            return Err(Error::Argument("sweep needs at least one x value".into()));
        }
        if x.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Argument(format!("{x_label} must be strictly increasing")));
        }
        Ok(Self {
            x_label,
            x,
            series: Vec::new(),
        })
    }

    pub fn push_series(&mut self, label: impl Into<String>, y: Vec<f64>) -> Result<()> {
        let label = label.into();
        check_label(&label)?;
        if y.len() != self.x.len() {
            return Err(Error::Argument(format!(
                "series `{label}` has {} values, expected {}",
                y.len(),
                self.x.len()
            )));
        }
        if self.series.iter().any(|s| s.label == label) || label == self.x_label {
            return Err(Error::Argument(format!("duplicate column `{label}`")));
        }
        self.series.push(Series { label, y });
        Ok(())
    }

    pub fn x_label(&self) -> &str {
        &self.x_label
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn series(&self) -> &[Series] {
        &self.series
    }

    pub fn get(&self, label: &str) -> Option<&Series> {
        self.series.iter().find(|s| s.label == label)
    }

    /// LF-terminated CSV, shortest round-trip float formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.x_label);
        for s in &self.series {
            out.push(',');
            out.push_str(&s.label);
        }
        out.push('\n');
        for (i, x) in self.x.iter().enumerate() {
            let _ = write!(out, "{x}");
            for s in &self.series {
                let _ = write!(out, ",{}", s.y[i]);
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv<R: Read>(source: R) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(source);
        let headers = reader
            .headers()
            .map_err(|e| Error::parse(1, e.to_string()))?
            .clone();
        if headers.is_empty() {
            return Err(Error::parse(1, "missing header"));
        }
        let mut x = Vec::new();
        let mut columns: Vec<Vec<f64>> = vec![Vec::new(); headers.len() - 1];
        for record in reader.records() {
            let record = record.map_err(|e| {
                Error::parse(e.position().map_or(0, |p| p.line()), e.to_string())
            })?;
            let line = record.position().map_or(0, |p| p.line());
            let mut values = record.iter().map(|s| {
                s.parse::<f64>()
                    .map_err(|_| Error::parse(line, format!("invalid number `{s}`")))
            });
            x.push(values.next().unwrap_or_else(|| Err(Error::parse(line, "empty row")))?);
            for (col, v) in columns.iter_mut().zip(values) {
                col.push(v?);
            }
        }
        let mut table = SweepTable::new(&headers[0], x)?;
        for (label, y) in headers.iter().skip(1).zip(columns) {
            table.push_series(label, y)?;
        }
        Ok(table)
    }

    /// Self-contained SVG line chart with a log-scaled x axis.
    pub fn to_svg(&self, title: &str, y_label: &str, log_y: bool) -> Result<String> {
        crate::plot::render(self, title, y_label, log_y)
    }
}
