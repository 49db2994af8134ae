//! Decision thresholds for the eigenvalue-ratio test and their lookup table.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{check_probability, Error, Result};
use crate::ratio::{build_ratio_distribution, RatioDistribution, RATIO_GRID_POINTS};
use crate::scaling::{ScalingConstants, SensingConfig};
use crate::tracy_widom::TracyWidomTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ThresholdKind {
    Asymptotic,
    SemiAsymptotic,
    RatioBased,
    Energy,
}

impl ThresholdKind {
    pub const ALL: [ThresholdKind; 4] =
        [ThresholdKind::Asymptotic, ThresholdKind::SemiAsymptotic, ThresholdKind::RatioBased, ThresholdKind::Energy];

    /// Short tag used on the command line and in CSV output.
    pub fn tag(self) -> &'static str {
        match self {
            ThresholdKind::Asymptotic => "as",
            ThresholdKind::SemiAsymptotic => "sa",
            ThresholdKind::RatioBased => "rd",
            ThresholdKind::Energy => "ed",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.tag() == tag)
    }

    /// Whether the threshold can be tuned to a target false-alarm rate.
    pub fn takes_target(self) -> bool {
        self != ThresholdKind::Asymptotic
    }
}

impl fmt::Display for ThresholdKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A threshold rule and, unless asymptotic, its target false-alarm rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdPolicy {
    kind: ThresholdKind,
    target_pfa: Option<f64>,
}

impl ThresholdPolicy {
    pub fn new(kind: ThresholdKind, target_pfa: Option<f64>) -> Result<Self> {
        match (kind.takes_target(), target_pfa) {
            (false, None) => {}
            (false, Some(p)) => {
                return Err(Error::Domain { what: "the asymptotic threshold takes no target false-alarm rate", value: p })
            }
            (true, Some(p)) => check_probability("target false-alarm rate must lie in (0, 1)", p)?,
            (true, None) => {
                return Err(Error::Domain { what: "this threshold needs a target false-alarm rate", value: f64::NAN })
            }
        }
        Ok(ThresholdPolicy { kind, target_pfa })
    }

    pub fn asymptotic() -> Self {
        ThresholdPolicy { kind: ThresholdKind::Asymptotic, target_pfa: None }
    }

    pub fn kind(&self) -> ThresholdKind {
        self.kind
    }

    pub fn target_pfa(&self) -> Option<f64> {
        self.target_pfa
    }
}

/// `γ_as = b / a`.
pub fn gamma_asymptotic(config: &SensingConfig) -> f64 {
    ScalingConstants::from_config(config).limit_ratio()
}

/// `γ_as · (1 + (√N + √K)^(-2/3) (NK)^(-1/6) s)` for a Tracy–Widom quantile `s`.
pub fn semi_asymptotic_from_quantile(config: &SensingConfig, s: f64) -> f64 {
    let k = config.receivers() as f64;
    let n = config.samples() as f64;
    let scale = libm::pow(libm::sqrt(n) + libm::sqrt(k), -2.0 / 3.0) / libm::pow(n * k, 1.0 / 6.0);
    gamma_asymptotic(config) * (1.0 + scale * s)
}

/// `γ_sa` with the quantile `F_TW2⁻¹(1 - pfa)`.
pub fn gamma_semi_asymptotic(config: &SensingConfig, table: &TracyWidomTable, pfa: f64) -> Result<f64> {
    check_probability("false-alarm rate must lie in (0, 1)", pfa)?;
    Ok(semi_asymptotic_from_quantile(config, table.inverse_cdf(1.0 - pfa)?))
}

/// `γ_rd = F_T⁻¹(1 - pfa)`.
pub fn gamma_ratio_based(dist: &RatioDistribution, pfa: f64) -> Result<f64> {
    check_probability("false-alarm rate must lie in (0, 1)", pfa)?;
    dist.inverse_cdf(1.0 - pfa)
}

/// Rounds a false-alarm rate to the `1e-6` resolution used as table key.
pub fn pfa_key(pfa: f64) -> u64 {
    libm::round(pfa * 1e6) as u64
}

/// Construction parameters recorded with a table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdMeta {
    /// Tolerance of the Tracy–Widom table the thresholds came from.
    pub tw_tol: f64,
    /// Number of abscissae of each ratio distribution.
    pub grid: usize,
}

/// One row of a [`ThresholdTable`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThresholdEntry {
    pub receivers: usize,
    pub samples: usize,
    pub pfa: f64,
    pub gamma: f64,
}

/// Ratio-based thresholds keyed by `(K, N, round(pfa·1e6))`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdTable {
    entries: BTreeMap<(usize, usize, u64), ThresholdEntry>,
    meta: ThresholdMeta,
}

impl ThresholdTable {
    /// Builds a table from rows, checking that keys are unique, every
    /// `γ > 1` and `γ` strictly decreases in `pfa` for each `(K, N)`.
    pub fn from_entries(rows: impl IntoIterator<Item = ThresholdEntry>, meta: ThresholdMeta) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for row in rows {
            SensingConfig::new(row.receivers, row.samples)?;
            check_probability("table false-alarm rate must lie in (0, 1)", row.pfa)?;
            if !(row.gamma > 1.0) || !row.gamma.is_finite() {
                return Err(Error::Domain { what: "table thresholds must be finite and exceed 1", value: row.gamma });
            }
            let key = (row.receivers, row.samples, pfa_key(row.pfa));
            if entries.insert(key, row).is_some() {
                return Err(Error::Domain { what: "duplicate table entry for false-alarm rate", value: row.pfa });
            }
        }
        let rows: Vec<&ThresholdEntry> = entries.values().collect();
        for w in rows.windows(2) {
            if (w[0].receivers, w[0].samples) == (w[1].receivers, w[1].samples) && !(w[1].gamma < w[0].gamma) {
                return Err(Error::ForConfig {
                    receivers: w[0].receivers,
                    samples: w[0].samples,
                    source: Box::new(Error::Invariant("thresholds must strictly decrease in the false-alarm rate")),
                });
            }
        }
        Ok(ThresholdTable { entries, meta })
    }

    pub fn meta(&self) -> ThresholdMeta {
        self.meta
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Rows in key order.
    pub fn entries(&self) -> impl Iterator<Item = &ThresholdEntry> {
        self.entries.values()
    }

    pub fn lookup(&self, config: &SensingConfig, pfa: f64) -> Option<f64> {
        self.entries.get(&(config.receivers(), config.samples(), pfa_key(pfa))).map(|e| e.gamma)
    }
}

/// Ratio-based thresholds for every `(config, pfa)` pair.
pub fn build_threshold_table(
    configs: &[SensingConfig],
    pfas: &[f64],
    table: &TracyWidomTable,
) -> Result<ThresholdTable> {
    for &p in pfas {
        check_probability("false-alarm rate must lie in (0, 1)", p)?;
    }
    let mut rows = Vec::with_capacity(configs.len() * pfas.len());
    for config in configs {
        let annotate = |e: Error| Error::ForConfig {
            receivers: config.receivers(),
            samples: config.samples(),
            source: Box::new(e),
        };
        let dist = build_ratio_distribution(config, table).map_err(annotate)?;
        for &pfa in pfas {
            let gamma = gamma_ratio_based(&dist, pfa).map_err(annotate)?;
            rows.push(ThresholdEntry { receivers: config.receivers(), samples: config.samples(), pfa, gamma });
        }
    }
    let meta = ThresholdMeta { tw_tol: table.meta().tol, grid: RATIO_GRID_POINTS };
    ThresholdTable::from_entries(rows, meta)
}
