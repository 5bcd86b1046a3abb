//! CSV and JSON emission.
//!
//! CSV: UTF-8, one header row, '.' decimal point, columns exactly in struct
//! field order, floats in shortest round-trip form — byte-identical across
//! reruns of the same configuration. JSON mirrors the same rows as an array
//! of objects; sum-rate rows additionally carry base-2 companions of the
//! nat-valued columns there.

use serde::Serialize;
use std::path::Path;

use super::sumrate::ResultRow;
use crate::{Error, Result};

/// Output encoding selected on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidConfig(format!(
                "unknown output format \"{other}\" (expected \"csv\" or \"json\")"
            ))),
        }
    }
}

/// Serialize rows to a CSV string (header + one line per row).
pub fn rows_to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| Error::InvalidConfig(format!("csv serialization failed: {e}")))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Error::InvalidConfig(format!("csv flush failed: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidConfig(format!("csv not utf-8: {e}")))
}

/// Serialize rows to a pretty-printed JSON array.
pub fn rows_to_json<T: Serialize>(rows: &[T]) -> Result<String> {
    serde_json::to_string_pretty(rows)
        .map_err(|e| Error::InvalidConfig(format!("json serialization failed: {e}")))
}

pub fn write_csv<T: Serialize>(rows: &[T], path: &Path) -> Result<()> {
    std::fs::write(path, rows_to_csv(rows)?)?;
    Ok(())
}

pub fn write_json<T: Serialize>(rows: &[T], path: &Path) -> Result<()> {
    std::fs::write(path, rows_to_json(rows)?)?;
    Ok(())
}

/// JSON view of a [`ResultRow`] with base-2 rate companions.
#[derive(Serialize)]
pub struct ResultRowJson<'a> {
    #[serde(flatten)]
    row: &'a ResultRow,
    sum_rate_true_at_decision_bits: f64,
    sum_rate_perfect_csi_bits: f64,
}

impl<'a> From<&'a ResultRow> for ResultRowJson<'a> {
    fn from(row: &'a ResultRow) -> Self {
        const NATS_TO_BITS: f64 = std::f64::consts::LOG2_E;
        Self {
            row,
            sum_rate_true_at_decision_bits: row.sum_rate_true_at_decision * NATS_TO_BITS,
            sum_rate_perfect_csi_bits: row.sum_rate_perfect_csi * NATS_TO_BITS,
        }
    }
}

/// JSON emission for sum-rate rows, including the bits columns.
pub fn sumrate_rows_to_json(rows: &[ResultRow]) -> Result<String> {
    let decorated: Vec<ResultRowJson<'_>> = rows.iter().map(Into::into).collect();
    rows_to_json(&decorated)
}
