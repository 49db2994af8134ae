//! Monte-Carlo model of a `K`-receiver cooperative sensing network.
//!
//! Under H0 every entry of the `K × N` observation matrix is CSCG noise of
//! variance `σ_v²`. Under H1 receiver `k` also observes `h_k s(n)`, with
//! `s(n)` CSCG of variance `σ_s²` shared by all receivers and `h` drawn once
//! per trial as CSCG, then rescaled so that `‖h‖² σ_s² / (K σ_v²)` equals
//! the target SNR exactly.
//!
//! Trial `i` of hypothesis `H` draws from its own ChaCha8 stream: the key is
//! built from the master seed and `H`, the stream number is `i`. Outcomes
//! therefore do not depend on the order in which trials are evaluated.

use alloc::vec::Vec;

use num_complex::Complex64;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};

use crate::eigen::hermitian_eigenvalues;
use crate::error::{check_probability, Error, Result};
use crate::matrix::ComplexMatrix;
use crate::normal::normal_upper_quantile;
use crate::ratio::RatioDistribution;
use crate::scaling::SensingConfig;
use crate::thresholds::{
    gamma_asymptotic, gamma_ratio_based, gamma_semi_asymptotic, ThresholdKind, ThresholdPolicy,
};
use crate::tracy_widom::TracyWidomTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Hypothesis {
    H0,
    H1,
}

impl Hypothesis {
    fn tag(self) -> u8 {
        match self {
            Hypothesis::H0 => 0,
            Hypothesis::H1 => 1,
        }
    }
}

/// Noise and primary-signal powers plus the target SNR under H1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignalModel {
    sigma_v2: f64,
    sigma_s2: f64,
    snr_db: f64,
}

impl SignalModel {
    /// `sigma_s2 = 0` is accepted and makes H1 indistinguishable from H0.
    pub fn new(sigma_v2: f64, sigma_s2: f64, snr_db: f64) -> Result<Self> {
        if !(sigma_v2 > 0.0 && sigma_v2.is_finite()) {
            return Err(Error::Domain { what: "noise variance must be positive", value: sigma_v2 });
        }
        if !(sigma_s2 >= 0.0 && sigma_s2.is_finite()) {
            return Err(Error::Domain { what: "signal variance must be non-negative", value: sigma_s2 });
        }
        if sigma_s2 > 0.0 && !snr_db.is_finite() {
            return Err(Error::Domain { what: "SNR must be finite", value: snr_db });
        }
        Ok(SignalModel { sigma_v2, sigma_s2, snr_db })
    }

    /// Noise only, `σ_v² = sigma_v2`.
    pub fn noise_only(sigma_v2: f64) -> Result<Self> {
        Self::new(sigma_v2, 0.0, f64::NEG_INFINITY)
    }

    /// Unit noise and signal powers at the given SNR.
    pub fn unit_at_snr(snr_db: f64) -> Result<Self> {
        Self::new(1.0, 1.0, snr_db)
    }

    pub fn sigma_v2(&self) -> f64 {
        self.sigma_v2
    }

    pub fn sigma_s2(&self) -> f64 {
        self.sigma_s2
    }

    pub fn snr_db(&self) -> f64 {
        self.snr_db
    }

    pub fn has_signal(&self) -> bool {
        self.sigma_s2 > 0.0
    }

    /// `‖h‖²` that realises the target SNR with `K` receivers.
    pub fn channel_norm2(&self, receivers: usize) -> f64 {
        receivers as f64 * self.sigma_v2 * libm::pow(10.0, self.snr_db / 10.0) / self.sigma_s2
    }

    /// `10 log10(‖h‖² σ_s² / (K σ_v²))` for a concrete channel.
    pub fn snr_db_of(&self, channel: &[Complex64]) -> f64 {
        let norm2: f64 = channel.iter().map(|z| z.norm_sqr()).sum();
        10.0 * libm::log10(norm2 * self.sigma_s2 / (channel.len() as f64 * self.sigma_v2))
    }
}

/// How the noise power seen by the energy detector deviates from nominal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UncertaintyMode {
    /// True noise at nominal; the threshold assumes `+uncertainty_db`.
    #[default]
    FixedOffset,
    /// True noise drawn per trial uniformly in `[-u, +u]` dB around nominal;
    /// the threshold assumes the worst case `+u`.
    UniformPerTrial,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseUncertainty {
    pub uncertainty_db: f64,
    pub mode: UncertaintyMode,
}

impl NoiseUncertainty {
    pub fn new(uncertainty_db: f64, mode: UncertaintyMode) -> Result<Self> {
        if !(uncertainty_db >= 0.0 && uncertainty_db.is_finite()) {
            return Err(Error::Domain { what: "noise uncertainty must be non-negative", value: uncertainty_db });
        }
        Ok(NoiseUncertainty { uncertainty_db, mode })
    }

    pub fn none() -> Self {
        NoiseUncertainty { uncertainty_db: 0.0, mode: UncertaintyMode::FixedOffset }
    }
}

/// Everything needed to simulate one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    pub config: SensingConfig,
    pub model: SignalModel,
    pub noise: NoiseUncertainty,
}

fn cscg(rng: &mut ChaCha8Rng, variance: f64) -> Complex64 {
    let sd = libm::sqrt(0.5 * variance);
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(sd * re, sd * im)
}

/// Generator for trial `index` of `hypothesis`.
pub fn trial_rng(master_seed: u64, hypothesis: Hypothesis, index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&master_seed.to_le_bytes());
    key[8] = hypothesis.tag();
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

/// Per-trial channel with `‖h‖²` fixed by the target SNR.
pub fn draw_channel(config: &SensingConfig, model: &SignalModel, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let mut h: Vec<Complex64> = (0..config.receivers()).map(|_| cscg(rng, 1.0)).collect();
    let norm2: f64 = h.iter().map(|z| z.norm_sqr()).sum();
    let scale = libm::sqrt(model.channel_norm2(config.receivers()) / norm2);
    for z in &mut h {
        *z *= scale;
    }
    h
}

/// `K × N` observation matrix drawn from `rng`.
pub fn generate_samples(
    config: &SensingConfig,
    model: &SignalModel,
    hypothesis: Hypothesis,
    rng: &mut ChaCha8Rng,
) -> ComplexMatrix {
    generate_with(config, model, model.sigma_v2, hypothesis, rng)
}

fn generate_with(
    config: &SensingConfig,
    model: &SignalModel,
    noise_power: f64,
    hypothesis: Hypothesis,
    rng: &mut ChaCha8Rng,
) -> ComplexMatrix {
    let (k, n) = (config.receivers(), config.samples());
    let mut y = ComplexMatrix::zeros(k, n);
    if hypothesis == Hypothesis::H1 && model.has_signal() {
        let h = draw_channel(config, model, rng);
        let s: Vec<Complex64> = (0..n).map(|_| cscg(rng, model.sigma_s2)).collect();
        for (i, hi) in h.iter().enumerate() {
            for (j, sj) in s.iter().enumerate() {
                y[(i, j)] = hi * sj;
            }
        }
    }
    for i in 0..k {
        for j in 0..n {
            y[(i, j)] += cscg(rng, noise_power);
        }
    }
    y
}

/// `(1/N) Y Yᴴ`, upper triangle computed and mirrored.
pub fn sample_covariance(y: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (k, n) = (y.rows(), y.cols());
    if n < k {
        return Err(Error::Domain { what: "sample covariance needs at least K samples", value: n as f64 });
    }
    let mut r = ComplexMatrix::zeros(k, k);
    let inv = 1.0 / n as f64;
    for i in 0..k {
        let yi = y.row(i);
        for j in i..k {
            let yj = y.row(j);
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, b) in yi.iter().zip(yj) {
                acc += a * b.conj();
            }
            acc *= inv;
            if i == j {
                acc.im = 0.0;
            }
            r[(i, j)] = acc;
            r[(j, i)] = acc.conj();
        }
    }
    Ok(r)
}

/// `λ_max / λ_min`.
pub fn ratio_statistic(r: &ComplexMatrix) -> Result<f64> {
    let ev = hermitian_eigenvalues(r)?;
    ratio_of(&ev)
}

fn ratio_of(ev: &[f64]) -> Result<f64> {
    let min = ev[0];
    if !(min > 0.0) {
        return Err(Error::Degenerate { min_eigenvalue: min });
    }
    Ok(ev[ev.len() - 1] / min)
}

/// Equal-gain-combined energy `(1/(K N)) Σ |y|²`.
pub fn energy_statistic(y: &ComplexMatrix) -> f64 {
    let total: f64 = y.as_slice().iter().map(|z| z.norm_sqr()).sum();
    total / y.as_slice().len() as f64
}

/// Gaussian-approximation threshold `σ̂²(1 + Q⁻¹(pfa)/√(KN))` with the
/// worst-case assumed noise power `σ̂² = nominal · 10^(u/10)`.
pub fn energy_threshold(config: &SensingConfig, nominal_sigma_v2: f64, pfa: f64, uncertainty_db: f64) -> Result<f64> {
    check_probability("false-alarm rate must lie in (0, 1)", pfa)?;
    if !(uncertainty_db >= 0.0 && uncertainty_db.is_finite()) {
        return Err(Error::Domain { what: "noise uncertainty must be non-negative", value: uncertainty_db });
    }
    let assumed = nominal_sigma_v2 * libm::pow(10.0, uncertainty_db / 10.0);
    let kn = (config.receivers() * config.samples()) as f64;
    Ok(assumed * (1.0 + normal_upper_quantile(pfa)? / libm::sqrt(kn)))
}

/// Both test statistics of one trial, computed from the same observation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialStatistics {
    pub ratio: f64,
    pub energy: f64,
}

impl TrialStatistics {
    pub fn for_detector(&self, kind: ThresholdKind) -> f64 {
        match kind {
            ThresholdKind::Energy => self.energy,
            _ => self.ratio,
        }
    }
}

/// Trial `index` of `hypothesis`, reproducible from `master_seed` alone.
pub fn simulate_trial(scenario: &Scenario, hypothesis: Hypothesis, master_seed: u64, index: u64) -> Result<TrialStatistics> {
    let mut rng = trial_rng(master_seed, hypothesis, index);
    let mut noise_power = scenario.model.sigma_v2;
    if scenario.noise.mode == UncertaintyMode::UniformPerTrial && scenario.noise.uncertainty_db > 0.0 {
        let u = scenario.noise.uncertainty_db;
        let offset = Uniform::new_inclusive(-u, u).map_err(|_| Error::Invariant("empty uncertainty interval"))?;
        noise_power *= libm::pow(10.0, offset.sample(&mut rng) / 10.0);
    }
    let y = generate_with(&scenario.config, &scenario.model, noise_power, hypothesis, &mut rng);
    let r = sample_covariance(&y)?;
    Ok(TrialStatistics { ratio: ratio_statistic(&r)?, energy: energy_statistic(&y) })
}

fn check_trials(trials: usize) -> Result<()> {
    if trials == 0 {
        return Err(Error::Domain { what: "at least one trial is required", value: 0.0 });
    }
    Ok(())
}

/// Statistics of trials `0..trials`, evaluated in order.
pub fn simulate_statistics(
    scenario: &Scenario,
    hypothesis: Hypothesis,
    trials: usize,
    master_seed: u64,
) -> Result<Vec<TrialStatistics>> {
    check_trials(trials)?;
    (0..trials as u64).map(|i| simulate_trial(scenario, hypothesis, master_seed, i)).collect()
}

/// Decision of one detector on one trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub statistic: f64,
    pub hypothesis: Hypothesis,
    pub detector: ThresholdKind,
    pub decision: Hypothesis,
}

/// H1 iff `statistic > gamma`; equality decides H0.
pub fn decide(statistic: f64, gamma: f64) -> Hypothesis {
    if statistic > gamma {
        Hypothesis::H1
    } else {
        Hypothesis::H0
    }
}

pub fn run_trials(
    scenario: &Scenario,
    hypothesis: Hypothesis,
    detector: ThresholdKind,
    gamma: f64,
    trials: usize,
    master_seed: u64,
) -> Result<Vec<TrialOutcome>> {
    let stats = simulate_statistics(scenario, hypothesis, trials, master_seed)?;
    Ok(outcomes(&stats, hypothesis, detector, gamma))
}

pub fn outcomes(stats: &[TrialStatistics], hypothesis: Hypothesis, detector: ThresholdKind, gamma: f64) -> Vec<TrialOutcome> {
    stats
        .iter()
        .map(|s| {
            let statistic = s.for_detector(detector);
            TrialOutcome { statistic, hypothesis, detector, decision: decide(statistic, gamma) }
        })
        .collect()
}

/// Sorted sample with plotting positions `i / n`, `i = 1..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    pub values: Vec<f64>,
    pub levels: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn from_sample(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        let n = values.len() as f64;
        let levels = (1..=values.len()).map(|i| i as f64 / n).collect();
        EmpiricalCdf { values, levels }
    }

    /// Fraction of the sample `<= t`.
    pub fn eval(&self, t: f64) -> f64 {
        self.values.partition_point(|&v| v <= t) as f64 / self.values.len() as f64
    }

    /// Kolmogorov–Smirnov distance to a continuous CDF.
    pub fn ks_distance(&self, cdf: impl Fn(f64) -> f64) -> f64 {
        let n = self.values.len() as f64;
        let mut d: f64 = 0.0;
        for (i, &v) in self.values.iter().enumerate() {
            let f = cdf(v);
            d = d.max(libm::fabs(f - i as f64 / n)).max(libm::fabs((i + 1) as f64 / n - f));
        }
        d
    }
}

pub const MIN_CDF_TRIALS: usize = 100;

/// Empirical CDF of the H0 ratio statistic.
pub fn empirical_ratio_cdf(config: &SensingConfig, model: &SignalModel, trials: usize, master_seed: u64) -> Result<EmpiricalCdf> {
    if trials < MIN_CDF_TRIALS {
        return Err(Error::Domain { what: "an empirical CDF needs at least 100 trials", value: trials as f64 });
    }
    let scenario = Scenario { config: *config, model: *model, noise: NoiseUncertainty::none() };
    let stats = simulate_statistics(&scenario, Hypothesis::H0, trials, master_seed)?;
    Ok(EmpiricalCdf::from_sample(stats.iter().map(|s| s.ratio).collect()))
}

/// Tables the eigenvalue thresholds are derived from.
#[derive(Debug, Clone, Copy)]
pub struct ThresholdSources<'a> {
    pub tracy_widom: &'a TracyWidomTable,
    pub ratio: &'a RatioDistribution,
}

/// Threshold of `policy` for `scenario`.
pub fn threshold_for(policy: &ThresholdPolicy, scenario: &Scenario, sources: &ThresholdSources<'_>) -> Result<f64> {
    let pfa = policy.target_pfa();
    match (policy.kind(), pfa) {
        (ThresholdKind::Asymptotic, _) => Ok(gamma_asymptotic(&scenario.config)),
        (ThresholdKind::SemiAsymptotic, Some(p)) => gamma_semi_asymptotic(&scenario.config, sources.tracy_widom, p),
        (ThresholdKind::RatioBased, Some(p)) => gamma_ratio_based(sources.ratio, p),
        (ThresholdKind::Energy, Some(p)) => {
            energy_threshold(&scenario.config, scenario.model.sigma_v2, p, scenario.noise.uncertainty_db)
        }
        (_, None) => Err(Error::Invariant("threshold policy is missing its target false-alarm rate")),
    }
}

/// One point of a complementary ROC.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RocPoint {
    pub detector: ThresholdKind,
    /// Absent for the asymptotic rule, which cannot be tuned.
    pub target_pfa: Option<f64>,
    pub empirical_pfa: f64,
    pub empirical_pmd: f64,
    pub trials_h0: usize,
    pub trials_h1: usize,
    pub gamma: f64,
}

/// Rates of `stat > gamma` among H0 trials and `stat <= gamma` among H1.
pub fn error_rates(h0: &[TrialStatistics], h1: &[TrialStatistics], kind: ThresholdKind, gamma: f64) -> (f64, f64) {
    let fa = h0.iter().filter(|s| decide(s.for_detector(kind), gamma) == Hypothesis::H1).count();
    let md = h1.iter().filter(|s| decide(s.for_detector(kind), gamma) == Hypothesis::H0).count();
    (fa as f64 / h0.len() as f64, md as f64 / h1.len() as f64)
}

/// ROC points from precomputed statistics. Every detector is evaluated on
/// the same trials; the asymptotic rule contributes one point.
pub fn roc_from_statistics(
    scenario: &Scenario,
    sources: &ThresholdSources<'_>,
    detectors: &[ThresholdKind],
    pfa_grid: &[f64],
    h0: &[TrialStatistics],
    h1: &[TrialStatistics],
) -> Result<Vec<RocPoint>> {
    check_trials(h0.len())?;
    check_trials(h1.len())?;
    for &p in pfa_grid {
        check_probability("target false-alarm rate must lie in (0, 1)", p)?;
    }
    let mut points = Vec::new();
    for &kind in detectors {
        let policies: Vec<ThresholdPolicy> = if kind.takes_target() {
            pfa_grid.iter().map(|&p| ThresholdPolicy::new(kind, Some(p))).collect::<Result<_>>()?
        } else {
            alloc::vec![ThresholdPolicy::asymptotic()]
        };
        for policy in policies {
            let gamma = threshold_for(&policy, scenario, sources)?;
            let (empirical_pfa, empirical_pmd) = error_rates(h0, h1, kind, gamma);
            points.push(RocPoint {
                detector: kind,
                target_pfa: policy.target_pfa(),
                empirical_pfa,
                empirical_pmd,
                trials_h0: h0.len(),
                trials_h1: h1.len(),
                gamma,
            });
        }
    }
    Ok(points)
}

/// Simulates `trials_per_point` trials under each hypothesis (master seeds
/// shared by all points) and evaluates every detector on them.
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
