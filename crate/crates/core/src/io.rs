//! JSON envelopes and per-curve CSV files.
//!
//! Floats are written with the shortest digit string that parses back to the same
//! binary value, so every record round-trips exactly.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::atlas::{CurveId, CurvePoint, CurveSample};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("csv file mixes curves {0} and {1}")]
    MixedCurves(String, String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Top-level shape of every JSON artifact.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<I, R, S, G = f64> {
    /// A single γ, or the list of γ a suite ran over.
    pub gamma: G,
    pub input: I,
    pub result: R,
    pub residuals: S,
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, IoError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T, IoError> {
    Ok(serde_json::from_str(text)?)
}

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub x: f64,
    pub y: f64,
    pub curve_id: String,
    pub residual: f64,
}

pub fn write_curve_csv<W: Write>(sample: &CurveSample, out: W) -> Result<(), IoError> {
    let mut w = csv::Writer::from_writer(out);
    let id = sample.curve_id.stem();
    if sample.points.is_empty() {
        w.write_record(["x", "y", "curve_id", "residual"])?;
    }
    for p in &sample.points {
        w.serialize(CurveRow {
            x: p.x,
            y: p.y,
            curve_id: id.to_string(),
            residual: p.residual,
        })?;
    }
    w.flush()?;
    Ok(())
}

/// Reads a single-curve CSV back into its id and points.
pub fn read_curve_csv<R: Read>(input: R) -> Result<(Option<CurveId>, Vec<CurvePoint>), IoError> {
    let mut r = csv::Reader::from_reader(input);
    let mut id: Option<String> = None;
    let mut points = Vec::new();
    for row in r.deserialize() {
        let row: CurveRow = row?;
        match &id {
            Some(prev) if *prev != row.curve_id => {
                return Err(IoError::MixedCurves(prev.clone(), row.curve_id));
            }
            None => id = Some(row.curve_id.clone()),
            _ => {}
        }
        points.push(CurvePoint { x: row.x, y: row.y, residual: row.residual });
    }
    Ok((id.and_then(|s| s.parse().ok()), points))
}

pub fn curve_file_name(id: CurveId, format: Format) -> String {
    match format {
        Format::Json => format!("{}.json", id.stem()),
        Format::Csv => format!("{}.csv", id.stem()),
    }
}

pub fn curve_to_string(
    sample: &CurveSample,
    format: Format,
    input: &impl Serialize,
) -> Result<String, IoError> {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_curve_csv(sample, &mut buf)?;
            Ok(String::from_utf8(buf).expect("csv output is utf-8"))
        }
        Format::Json => to_json(&Envelope {
            gamma: sample.gamma,
            input,
            result: sample,
            residuals: CurveResiduals::of(sample),
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveResiduals {
    pub points: usize,
    pub max_abs: f64,
}

impl CurveResiduals {
    pub fn of(sample: &CurveSample) -> Self {
        Self {
            points: sample.points.len(),
            max_abs: sample.points.iter().map(|p| p.residual.abs()).fold(0.0, f64::max),
        }
    }
}

/// Writes one file per curve into `dir` and returns the paths in curve order.
pub fn write_curves(
    dir: &Path,
    samples: &[CurveSample],
    format: Format,
    input: &impl Serialize,
) -> Result<Vec<PathBuf>, IoError> {
    fs::create_dir_all(dir)?;
    let mut paths = Vec::with_capacity(samples.len());
    for s in samples {
        let path = dir.join(curve_file_name(s.curve_id, format));
        fs::write(&path, curve_to_string(s, format, input)?)?;
        paths.push(path);
    }
    Ok(paths)
}
