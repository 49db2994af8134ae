//! On-disk cache of Tracy–Widom tables and ratio distributions, keyed by a
//! SHA-256 hash of the construction parameters.

use std::fs;
use std::path::{Path, PathBuf};

use eigensense_core::painleve::solve_painleve_ii;
use eigensense_core::ratio::build_ratio_distribution;
use eigensense_core::scaling::SensingConfig;
use eigensense_core::tracy_widom::{build_tw2_table, TableMeta, TracyWidomTable};
use sha2::{Digest, Sha256};

use crate::formats::{load_ratio, load_tw_table, save_ratio, save_tw_table, FormatError, StoredRatio};

pub const CACHE_ENV: &str = "EIGENSENSE_CACHE_DIR";

/// Cache location: `$EIGENSENSE_CACHE_DIR`, else `$XDG_CACHE_HOME/eigensense`,
/// else `~/.cache/eigensense`, else `.eigensense-cache`.
pub fn default_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_ENV).filter(|d| !d.is_empty()) {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME").filter(|d| !d.is_empty()) {
        return PathBuf::from(dir).join("eigensense");
    }
    if let Some(home) = std::env::var_os("HOME").filter(|d| !d.is_empty()) {
        return PathBuf::from(home).join(".cache").join("eigensense");
    }
    PathBuf::from(".eigensense-cache")
}

/// Hex SHA-256 of `kind` and the exact bit patterns of `params`.
pub fn key(kind: &str, params: &[u64]) -> String {
    let mut h = Sha256::new();
    h.update(kind.as_bytes());
    for p in params {
        h.update(p.to_le_bytes());
    }
    hex::encode(h.finalize())
}

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("cannot create cache directory {path}: {source}")]
    Dir { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Numerics(#[from] eigensense_core::Error),
}

pub struct Cache {
    dir: PathBuf,
    rebuild: bool,
}

impl Cache {
    pub fn new(dir: PathBuf, rebuild: bool) -> Self {
        Cache { dir, rebuild }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, kind: &str, params: &[u64]) -> PathBuf {
        self.dir.join(format!("{kind}-{}.json", key(kind, params)))
    }

    fn ensure_dir(&self) -> Result<(), CacheError> {
        fs::create_dir_all(&self.dir).map_err(|source| CacheError::Dir { path: self.dir.clone(), source })
    }

    /// Cached entries that fail to load are rebuilt and overwritten.
    fn fetch<T>(
        &self,
        path: PathBuf,
        load: impl Fn(&Path) -> Result<T, FormatError>,
        build: impl FnOnce() -> Result<T, CacheError>,
        save: impl Fn(&T, &Path) -> Result<(), FormatError>,
    ) -> Result<T, CacheError> {
        if !self.rebuild && path.exists() {
            match load(&path) {
                Ok(v) => return Ok(v),
                Err(e) => eprintln!("warning: ignoring unusable cache entry ({e})"),
            }
        }
        let value = build()?;
        self.ensure_dir()?;
        save(&value, &path)?;
        Ok(value)
    }

    pub fn tw_table(&self, meta: TableMeta) -> Result<TracyWidomTable, CacheError> {
        let path = self.path_for("tw", &[meta.s_left.to_bits(), meta.s_right.to_bits(), meta.tol.to_bits()]);
        self.fetch(
            path,
            load_tw_table,
            || Ok(build_tw2_table(&solve_painleve_ii(meta.s_left, meta.s_right, meta.tol)?)?),
            save_tw_table,
        )
    }

    pub fn ratio(&self, config: &SensingConfig, tw: &TracyWidomTable) -> Result<StoredRatio, CacheError> {
        let m = tw.meta();
        let path = self.path_for(
            "ratio",
            &[
                config.receivers() as u64,
                config.samples() as u64,
                m.s_left.to_bits(),
                m.s_right.to_bits(),
                m.tol.to_bits(),
            ],
        );
        self.fetch(
            path,
            load_ratio,
            || Ok(StoredRatio { dist: build_ratio_distribution(config, tw)?, tw_meta: m }),
            save_ratio,
        )
    }
}
