//! Multi-threaded trial evaluation.
//!
//! Each trial owns its RNG substream, and results are collected in trial
//! order, so output is bit-identical to the sequential functions of
//! `eigensense_core::sim` for any number of workers.

use eigensense_core::sim::{
    roc_from_statistics, simulate_trial, Hypothesis, RocPoint, Scenario, ThresholdSources, TrialStatistics,
};
use eigensense_core::thresholds::ThresholdKind;
use eigensense_core::{Error, Result};
use rayon::prelude::*;

/// Runs `f` on a pool of `workers` threads (`None`: rayon's default).
pub fn with_workers<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        None => f(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool construction")
            .install(f),
    }
}

pub fn simulate_statistics(
    scenario: &Scenario,
    hypothesis: Hypothesis,
    trials: usize,
    master_seed: u64,
) -> Result<Vec<TrialStatistics>> {
    if trials == 0 {
        return Err(Error::Domain { what: "at least one trial is required", value: 0.0 });
    }
    (0..trials as u64)
        .into_par_iter()
        .map(|i| simulate_trial(scenario, hypothesis, master_seed, i))
        .collect()
}

/// Parallel counterpart of `eigensense_core::sim::roc_curve`.
pub fn roc_curve(
    scenario: &Scenario,
    sources: &ThresholdSources<'_>,
    detectors: &[ThresholdKind],
    pfa_grid: &[f64],
    trials_per_point: usize,
    master_seed: u64,
) -> Result<Vec<RocPoint>> {
    let h0 = simulate_statistics(scenario, Hypothesis::H0, trials_per_point, master_seed)?;
    let h1 = simulate_statistics(scenario, Hypothesis::H1, trials_per_point, master_seed)?;
    roc_from_statistics(scenario, sources, detectors, pfa_grid, &h0, &h1)
}
