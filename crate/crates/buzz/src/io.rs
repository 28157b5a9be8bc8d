//! CSV readers and writers for time series and point clouds.
//!
//! Series files hold one value per row (a single column), or all values on a
//! single whitespace-separated line. Point-cloud files hold one point per row.
//! A non-numeric first row is treated as a header.

use std::fs;
use std::path::Path;

use crate::dynamics::TimeSeries;
use crate::error::{BuzzError, Result};
use crate::geometry::PointCloud;

fn parse_err(path: &Path, message: impl Into<String>) -> BuzzError {
    BuzzError::Parse {
        path: path.display().to_string(),
        message: message.into(),
    }
}

fn numeric_rows(path: &Path, text: &str) -> Result<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        let parsed: std::result::Result<Vec<f64>, _> = record.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(row) => rows.push(row),
            Err(_) if line == 0 => continue,
            Err(e) => return Err(parse_err(path, format!("row {}: {e}", line + 1))),
        }
    }
    Ok(rows)
}

pub fn parse_series(path: &Path, text: &str) -> Result<Vec<f64>> {
    let lines: Vec<&str> = text.lines().filter(|l| !l.trim().is_empty()).collect();
    if lines.len() == 1 && lines[0].split_whitespace().count() > 1 && !lines[0].contains(',') {
        return lines[0]
            .split_whitespace()
            .map(|tok| tok.parse::<f64>().map_err(|e| parse_err(path, e.to_string())))
            .collect();
    }
    let rows = numeric_rows(path, text)?;
    if let Some(bad) = rows.iter().position(|r| r.len() != 1) {
        return Err(parse_err(path, format!("row {} has {} columns, expected 1", bad + 1, rows[bad].len())));
    }
    let values: Vec<f64> = rows.into_iter().map(|r| r[0]).collect();
    if values.is_empty() {
        return Err(parse_err(path, "no values"));
    }
    Ok(values)
}

pub fn read_series(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let path = path.as_ref();
    parse_series(path, &fs::read_to_string(path)?)
}

pub fn parse_point_cloud(path: &Path, text: &str) -> Result<PointCloud> {
    let rows = numeric_rows(path, text)?;
    if rows.is_empty() {
        return Err(parse_err(path, "no points"));
    }
    let dim = rows[0].len();
    if let Some(bad) = rows.iter().position(|r| r.len() != dim) {
        return Err(parse_err(path, format!("row {} has {} columns, expected {dim}", bad + 1, rows[bad].len())));
    }
    PointCloud::from_rows(&rows)
}

pub fn read_point_cloud(path: impl AsRef<Path>) -> Result<PointCloud> {
    let path = path.as_ref();
    parse_point_cloud(path, &fs::read_to_string(path)?)
}

pub fn write_series(path: impl AsRef<Path>, series: &TimeSeries) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["value"])?;
    for v in &series.values {
        w.serialize(v)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_point_cloud(path: impl AsRef<Path>, cloud: &PointCloud) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record((0..cloud.dim()).map(|k| format!("x{k}")))?;
    for p in cloud.points() {
        w.serialize(p)?;
    }
    w.flush()?;
    Ok(())
}
