//! JSON persistence of Tracy–Widom tables, ratio distributions and
//! threshold tables.
//!
//! Floats are written in the shortest decimal form that parses back to the
//! same `f64`, so a save/load cycle is bit-exact.

use std::fs;
use std::path::{Path, PathBuf};

use eigensense_core::ratio::RatioDistribution;
use eigensense_core::scaling::SensingConfig;
use eigensense_core::thresholds::{ThresholdEntry, ThresholdMeta, ThresholdTable};
use eigensense_core::tracy_widom::{TableMeta, TracyWidomTable};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: parse error at line {line}, column {column}: {message}")]
    Parse { path: PathBuf, line: usize, column: usize, message: String },
    #[error("{path}: {source}")]
    Invalid { path: PathBuf, source: eigensense_core::Error },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MetaJson {
    s_left: f64,
    s_right: f64,
    tol: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TwJson {
    grid: Vec<f64>,
    cdf: Vec<f64>,
    pdf: Vec<f64>,
    meta: MetaJson,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RatioJson {
    #[serde(rename = "K")]
    receivers: usize,
    #[serde(rename = "N")]
    samples: usize,
    grid: Vec<f64>,
    cdf: Vec<f64>,
    pdf: Vec<f64>,
    meta: MetaJson,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryJson {
    #[serde(rename = "K")]
    receivers: usize,
    #[serde(rename = "N")]
    samples: usize,
    pfa: f64,
    gamma: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThresholdMetaJson {
    tw_tol: f64,
    grid: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ThresholdJson {
    entries: Vec<EntryJson>,
    meta: ThresholdMetaJson,
}

/// A ratio distribution together with the Tracy–Widom parameters it was
/// built from.
#[derive(Debug, Clone, PartialEq)]
pub struct StoredRatio {
    pub dist: RatioDistribution,
    pub tw_meta: TableMeta,
}

fn meta_json(m: TableMeta) -> MetaJson {
    MetaJson { s_left: m.s_left, s_right: m.s_right, tol: m.tol }
}

fn table_meta(m: &MetaJson) -> TableMeta {
    TableMeta { s_left: m.s_left, s_right: m.s_right, tol: m.tol }
}

fn encode<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("in-memory JSON encoding cannot fail");
    s.push('\n');
    s
}

fn write(path: &Path, text: &str) -> Result<(), FormatError> {
    fs::write(path, text).map_err(|source| FormatError::Io { path: path.to_path_buf(), source })
}

fn read(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io { path: path.to_path_buf(), source })
}

fn decode<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, FormatError> {
    serde_json::from_str(text).map_err(|e| FormatError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn invalid(path: &Path) -> impl FnOnce(eigensense_core::Error) -> FormatError + '_ {
    move |source| FormatError::Invalid { path: path.to_path_buf(), source }
}

pub fn tw_table_to_json(table: &TracyWidomTable) -> String {
    encode(&TwJson {
        grid: table.grid().to_vec(),
        cdf: table.cdf_values().to_vec(),
        pdf: table.pdf_values().to_vec(),
        meta: meta_json(table.meta()),
    })
}

pub fn tw_table_from_json(path: &Path, text: &str) -> Result<TracyWidomTable, FormatError> {
    let j: TwJson = decode(path, text)?;
    TracyWidomTable::from_parts(j.grid, j.cdf, j.pdf, table_meta(&j.meta)).map_err(invalid(path))
}

pub fn save_tw_table(table: &TracyWidomTable, path: &Path) -> Result<(), FormatError> {
    write(path, &tw_table_to_json(table))
}

pub fn load_tw_table(path: &Path) -> Result<TracyWidomTable, FormatError> {
    tw_table_from_json(path, &read(path)?)
}

pub fn ratio_to_json(stored: &StoredRatio) -> String {
    let d = &stored.dist;
    encode(&RatioJson {
        receivers: d.config().receivers(),
        samples: d.config().samples(),
        grid: d.t_grid().to_vec(),
        cdf: d.cdf_values().to_vec(),
        pdf: d.pdf_values().to_vec(),
        meta: meta_json(stored.tw_meta),
    })
}

pub fn ratio_from_json(path: &Path, text: &str) -> Result<StoredRatio, FormatError> {
    let j: RatioJson = decode(path, text)?;
    let config = SensingConfig::new(j.receivers, j.samples).map_err(invalid(path))?;
    let dist = RatioDistribution::from_parts(config, j.grid, j.pdf, j.cdf).map_err(invalid(path))?;
    Ok(StoredRatio { dist, tw_meta: table_meta(&j.meta) })
}

pub fn save_ratio(stored: &StoredRatio, path: &Path) -> Result<(), FormatError> {
    write(path, &ratio_to_json(stored))
}

pub fn load_ratio(path: &Path) -> Result<StoredRatio, FormatError> {
    ratio_from_json(path, &read(path)?)
}

pub fn threshold_table_to_json(table: &ThresholdTable) -> String {
    encode(&ThresholdJson {
        entries: table
            .entries()
            .map(|e| EntryJson { receivers: e.receivers, samples: e.samples, pfa: e.pfa, gamma: e.gamma })
            .collect(),
        meta: ThresholdMetaJson { tw_tol: table.meta().tw_tol, grid: table.meta().grid },
    })
}

pub fn threshold_table_from_json(path: &Path, text: &str) -> Result<ThresholdTable, FormatError> {
    let j: ThresholdJson = decode(path, text)?;
    let rows = j
        .entries
        .into_iter()
        .map(|e| ThresholdEntry { receivers: e.receivers, samples: e.samples, pfa: e.pfa, gamma: e.gamma });
    ThresholdTable::from_entries(rows, ThresholdMeta { tw_tol: j.meta.tw_tol, grid: j.meta.grid }).map_err(invalid(path))
}

pub fn save_threshold_table(table: &ThresholdTable, path: &Path) -> Result<(), FormatError> {
    write(path, &threshold_table_to_json(table))
}

pub fn load_threshold_table(path: &Path) -> Result<ThresholdTable, FormatError> {
    threshold_table_from_json(path, &read(path)?)
}

/// What a JSON table file holds, judged by its top-level keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableKind {
    TracyWidom,
    Ratio,
    Thresholds,
}

pub fn sniff_table(path: &Path) -> Result<TableKind, FormatError> {
    let text = read(path)?;
    let value: serde_json::Value = decode(path, &text)?;
    let has = |k: &str| value.get(k).is_some();
    if has("entries") {
        Ok(TableKind::Thresholds)
    } else if has("K") {
        Ok(TableKind::Ratio)
    } else {
        Ok(TableKind::TracyWidom)
    }
}
