//! The `eigensense` command-line front-end.
//!
//! Every command validates all of its flags before doing any numerical
//! work. Usage errors exit with status 2, runtime failures with status 1.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use eigensense_core::painleve::MIN_S_RIGHT;
use eigensense_core::ratio::{RatioDistribution, RATIO_GRID_POINTS};
use eigensense_core::scaling::SensingConfig;
use eigensense_core::sim::{
    roc_from_statistics, decide, EmpiricalCdf, Hypothesis, NoiseUncertainty, RocPoint, Scenario, SignalModel,
    ThresholdSources, TrialStatistics, UncertaintyMode,
};
use eigensense_core::thresholds::{
    gamma_asymptotic, gamma_ratio_based, gamma_semi_asymptotic, ThresholdEntry, ThresholdKind, ThresholdMeta,
    ThresholdPolicy, ThresholdTable,
};
use eigensense_core::tracy_widom::{TableMeta, TracyWidomTable, DEFAULT_S_LEFT, DEFAULT_S_RIGHT, DEFAULT_TOL};
use serde::Serialize;

use crate::cache::{self, Cache};
use crate::csv::{cdf_csv, roc_csv, sig12, trials_csv, TrialRow};
use crate::formats::{
    load_ratio, load_threshold_table, load_tw_table, save_ratio, save_threshold_table, save_tw_table, sniff_table,
    TableKind,
};
use crate::parallel;

const DEFAULT_ROC_PFAS: [f64; 10] = [0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5];
const DEFAULT_CDF_PFAS: [f64; 5] = [0.01, 0.05, 0.1, 0.3, 0.5];

#[derive(Debug, Parser)]
#[command(name = "eigensense", version, about = "Eigenvalue-ratio spectrum sensing: tables, thresholds and Monte-Carlo experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the Tracy–Widom (β = 2) distribution and write it as JSON.
    TwTable(TwTableArgs),
    /// Tabulate the limiting eigenvalue-ratio distribution for (K, N).
    RatioDist(RatioDistArgs),
    /// Print detection thresholds, one per line.
    Threshold(ThresholdArgs),
    /// Run Monte-Carlo trials and write one CSV row per trial and detector.
    Simulate(SimulateArgs),
    /// Write empirical complementary-ROC points.
    Roc(RocArgs),
    /// Write the empirical and limiting H0 ratio CDFs.
    Cdf(CdfArgs),
}

#[derive(Debug, Clone, Args)]
pub struct TwBuildOpts {
    /// Relative tolerance of the Painlevé II integration.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    /// Left end of the tabulation domain.
    #[arg(long, default_value_t = DEFAULT_S_LEFT, allow_hyphen_values = true)]
    pub s_left: f64,
    /// Right end of the tabulation domain (at least 6).
    #[arg(long, default_value_t = DEFAULT_S_RIGHT, allow_hyphen_values = true)]
    pub s_right: f64,
}

#[derive(Debug, Clone, Args)]
pub struct TwOpts {
    #[command(flatten)]
    pub build: TwBuildOpts,
    /// Tracy–Widom table JSON to use instead of the cached one.
    #[arg(long)]
    pub tw_table: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SizeOpts {
    /// Number of receivers K.
    #[arg(short = 'K', long = "receivers", default_value_t = 50)]
    pub receivers: usize,
    /// Number of samples per receiver N.
    #[arg(short = 'N', long = "samples", default_value_t = 1000)]
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NoiseModeArg {
    /// Threshold set at the worst-case offset, true noise at nominal.
    Fixed,
    /// True noise power drawn uniformly in dB per trial.
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DetectorArg {
    #[value(name = "as")]
    As,
    #[value(name = "sa")]
    Sa,
    #[value(name = "rd")]
    Rd,
    #[value(name = "ed")]
    Ed,
}

impl DetectorArg {
    fn kind(self) -> ThresholdKind {
        match self {
            DetectorArg::As => ThresholdKind::Asymptotic,
            DetectorArg::Sa => ThresholdKind::SemiAsymptotic,
            DetectorArg::Rd => ThresholdKind::RatioBased,
            DetectorArg::Ed => ThresholdKind::Energy,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    #[value(name = "as")]
    As,
    #[value(name = "sa")]
    Sa,
    #[value(name = "rd")]
    Rd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HypothesisArg {
    H0,
    H1,
    Both,
}

#[derive(Debug, Clone, Args)]
pub struct SimOpts {
    /// Per-receiver SNR in dB.
    #[arg(long, default_value_t = -21.0, allow_hyphen_values = true)]
    pub snr_db: f64,
    /// Trials per hypothesis.
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    /// Master seed of the trial substreams.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Noise-power uncertainty of the energy detector, in dB.
    #[arg(long, default_value_t = 0.25)]
    pub uncertainty_db: f64,
    /// How the noise uncertainty enters the simulation.
    #[arg(long, value_enum, default_value_t = NoiseModeArg::Fixed)]
    pub noise_mode: NoiseModeArg,
    /// Worker threads (default: one per core). Results do not depend on it.
    #[arg(long)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct TwTableArgs {
    #[command(flatten)]
    pub tw: TwBuildOpts,
    /// Output JSON path.
    #[arg(long)]
    pub out: PathBuf,
    /// Ignore cached tables.
    #[arg(long)]
    pub rebuild: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RatioDistArgs {
    #[command(flatten)]
    pub size: SizeOpts,
    #[command(flatten)]
    pub tw: TwOpts,
    /// Output JSON path.
    #[arg(long)]
    pub out: PathBuf,
    /// Ignore cached tables.
    #[arg(long)]
    pub rebuild: bool,
}

#[derive(Debug, Clone, Args)]
pub struct ThresholdArgs {
    #[command(flatten)]
    pub size: SizeOpts,
    /// Threshold rule.
    #[arg(long, value_enum)]
    pub method: MethodArg,
    /// Target false-alarm rates (repeatable or comma-separated); not accepted by `as`.
    #[arg(long, value_delimiter = ',')]
    pub pfa: Vec<f64>,
    /// Ratio-distribution or threshold-table JSON for `rd`.
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[command(flatten)]
    pub tw: TwOpts,
    /// Write the `rd` thresholds as a threshold-table JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Ignore cached tables.
    #[arg(long)]
    pub rebuild: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub size: SizeOpts,
    #[command(flatten)]
    pub sim: SimOpts,
    /// Detectors to evaluate (repeatable or comma-separated).
    #[arg(long = "detector", value_enum, value_delimiter = ',')]
    pub detectors: Vec<DetectorArg>,
    /// Target false-alarm rates of the tunable detectors.
    #[arg(long, value_delimiter = ',', default_values_t = [0.1])]
    pub pfa: Vec<f64>,
    /// Hypotheses to simulate.
    #[arg(long, value_enum, default_value_t = HypothesisArg::Both)]
    pub hypothesis: HypothesisArg,
    /// Ratio-distribution JSON for `rd`.
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[command(flatten)]
    pub tw: TwOpts,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
    /// Ignore cached tables.
    #[arg(long)]
    pub rebuild: bool,
}

#[derive(Debug, Clone, Args)]
pub struct RocArgs {
    #[command(flatten)]
    pub size: SizeOpts,
    #[command(flatten)]
    pub sim: SimOpts,
    /// Detectors to evaluate (repeatable or comma-separated; default all).
    #[arg(long = "detector", value_enum, value_delimiter = ',')]
    pub detectors: Vec<DetectorArg>,
    /// Target false-alarm grid.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_ROC_PFAS)]
    pub pfa: Vec<f64>,
    /// Ratio-distribution JSON for `rd`.
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[command(flatten)]
    pub tw: TwOpts,
    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
    /// Ignore cached tables.
    #[arg(long)]
    pub rebuild: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CdfArgs {
    #[command(flatten)]
    pub size: SizeOpts,
    /// H0 trials (at least 100).
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    /// Master seed of the trial substreams.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Target false-alarm rates of the reference thresholds in the sidecar.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_CDF_PFAS)]
    pub pfa: Vec<f64>,
    /// Ratio-distribution JSON.
    #[arg(long)]
    pub table: Option<PathBuf>,
    #[command(flatten)]
    pub tw: TwOpts,
    /// Output CSV path; reference values go to the same path with extension `refs.json`.
    #[arg(long)]
    pub out: PathBuf,
    /// Worker threads (default: one per core). Results do not depend on it.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Ignore cached tables.
    #[arg(long)]
    pub rebuild: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Runtime(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

pub fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::TwTable(a) => cmd_tw_table(a),
        Command::RatioDist(a) => cmd_ratio_dist(a),
        Command::Threshold(a) => cmd_threshold(a),
        Command::Simulate(a) => cmd_simulate(a),
        Command::Roc(a) => cmd_roc(a),
        Command::Cdf(a) => cmd_cdf(a),
    }
}

fn check_config(size: &SizeOpts) -> CliResult<SensingConfig> {
    SensingConfig::new(size.receivers, size.samples).or_else(|e| usage(e.to_string()))
}

fn check_tw_build(o: &TwBuildOpts) -> CliResult<TableMeta> {
    if !(o.s_left.is_finite() && o.s_right.is_finite()) {
        return usage("--s-left and --s-right must be finite");
    }
    if o.s_right < MIN_S_RIGHT {
        return usage(format!("--s-right must be at least {MIN_S_RIGHT} (got {})", o.s_right));
    }
    if o.s_left >= o.s_right {
        return usage(format!("--s-left ({}) must be below --s-right ({})", o.s_left, o.s_right));
    }
    if !(o.tol > 0.0 && o.tol < 1.0) {
        return usage(format!("--tol must lie in (0, 1) (got {})", o.tol));
    }
    Ok(TableMeta { s_left: o.s_left, s_right: o.s_right, tol: o.tol })
}

fn check_file(path: &Path) -> CliResult<()> {
    if path.as_os_str().is_empty() {
        return usage("table path must not be empty");
    }
    if !path.is_file() {
        return Err(CliError::Runtime(anyhow!("table file {} does not exist", path.display())));
    }
    Ok(())
}

fn check_tw(o: &TwOpts) -> CliResult<TableMeta> {
    let meta = check_tw_build(&o.build)?;
    if let Some(p) = &o.tw_table {
        check_file(p)?;
    }
    Ok(meta)
}

fn check_pfas(pfas: &[f64]) -> CliResult<()> {
    for &p in pfas {
        if !(p > 0.0 && p < 1.0) {
            return usage(format!("--pfa must lie in (0, 1) (got {p})"));
        }
    }
    Ok(())
}

fn check_out(out: &Path) -> CliResult<()> {
    if out.as_os_str().is_empty() {
        return usage("--out must not be empty");
    }
    Ok(())
}

fn check_workers(workers: Option<usize>) -> CliResult<()> {
    if workers == Some(0) {
        return usage("--workers must be at least 1");
    }
    Ok(())
}

fn check_trials(trials: usize, min: usize) -> CliResult<()> {
    if trials < min {
        return usage(format!("--trials must be at least {min} (got {trials})"));
    }
    Ok(())
}

fn check_scenario(config: SensingConfig, o: &SimOpts) -> CliResult<Scenario> {
    check_trials(o.trials, 1)?;
    check_workers(o.workers)?;
    let model = SignalModel::unit_at_snr(o.snr_db).or_else(|e| usage(format!("--snr-db: {e}")))?;
    let mode = match o.noise_mode {
        NoiseModeArg::Fixed => UncertaintyMode::FixedOffset,
        NoiseModeArg::Uniform => UncertaintyMode::UniformPerTrial,
    };
    let noise = NoiseUncertainty::new(o.uncertainty_db, mode).or_else(|e| usage(format!("--uncertainty-db: {e}")))?;
    Ok(Scenario { config, model, noise })
}

fn detector_list(args: &[DetectorArg]) -> Vec<ThresholdKind> {
    if args.is_empty() {
        return ThresholdKind::ALL.to_vec();
    }
    let mut kinds: Vec<ThresholdKind> = Vec::new();
    for a in args {
        if !kinds.contains(&a.kind()) {
            kinds.push(a.kind());
        }
    }
    kinds
}

fn write_text(path: &Path, text: &str) -> anyhow::Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn open_cache(rebuild: bool) -> Cache {
    Cache::new(cache::default_dir(), rebuild)
}

fn tracy_widom(cache: &Cache, opts: &TwOpts, meta: TableMeta) -> anyhow::Result<TracyWidomTable> {
    match &opts.tw_table {
        Some(p) => Ok(load_tw_table(p)?),
        None => Ok(cache.tw_table(meta).context("building the Tracy-Widom table")?),
    }
}

fn ratio_distribution(
    cache: &Cache,
    config: &SensingConfig,
    table: Option<&Path>,
    tw: &TracyWidomTable,
) -> anyhow::Result<RatioDistribution> {
    let dist = match table {
        Some(p) => load_ratio(p)?.dist,
        None => cache.ratio(config, tw).context("building the ratio distribution")?.dist,
    };
    if dist.config() != *config {
        bail!(
            "ratio table is for K={}, N={} but K={}, N={} was requested",
            dist.config().receivers(),
            dist.config().samples(),
            config.receivers(),
            config.samples()
        );
    }
    Ok(dist)
}

fn cmd_tw_table(a: TwTableArgs) -> CliResult<()> {
    let meta = check_tw_build(&a.tw)?;
    check_out(&a.out)?;
    let table = open_cache(a.rebuild).tw_table(meta).context("building the Tracy-Widom table")?;
    save_tw_table(&table, &a.out).map_err(anyhow::Error::from)?;
    println!("grid points: {}", table.grid().len());
    println!("mean: {}", sig12(table.mean()));
    println!("variance: {}", sig12(table.variance()));
    Ok(())
}

fn cmd_ratio_dist(a: RatioDistArgs) -> CliResult<()> {
    let config = check_config(&a.size)?;
    let meta = check_tw(&a.tw)?;
    check_out(&a.out)?;
    let cache = open_cache(a.rebuild);
    let tw = tracy_widom(&cache, &a.tw, meta)?;
    let stored = cache.ratio(&config, &tw).context("building the ratio distribution")?;
    save_ratio(&stored, &a.out).map_err(anyhow::Error::from)?;
    let median = stored.dist.inverse_cdf(0.5).map_err(anyhow::Error::from)?;
    println!("grid points: {}", stored.dist.t_grid().len());
    println!("mean: {}", sig12(stored.dist.mean()));
    println!("median: {}", sig12(median));
    Ok(())
}

fn cmd_threshold(a: ThresholdArgs) -> CliResult<()> {
    let config = check_config(&a.size)?;
    let meta = check_tw(&a.tw)?;
    check_pfas(&a.pfa)?;
    match a.method {
        MethodArg::As if !a.pfa.is_empty() => return usage("--pfa is not accepted by method `as`"),
        MethodArg::Sa | MethodArg::Rd if a.pfa.is_empty() => return usage("methods `sa` and `rd` need --pfa"),
        _ => {}
    }
    if a.method != MethodArg::Rd {
        if a.table.is_some() {
            return usage("--table is only used by method `rd`");
        }
        if a.out.is_some() {
            return usage("--out is only available for method `rd`");
        }
    }
    if let Some(out) = &a.out {
        check_out(out)?;
    }
    if let Some(t) = &a.table {
        check_file(t)?;
    }

    let gammas: Vec<f64> = match a.method {
        MethodArg::As => vec![gamma_asymptotic(&config)],
        MethodArg::Sa => {
            let tw = tracy_widom(&open_cache(a.rebuild), &a.tw, meta)?;
            a.pfa
                .iter()
                .map(|&p| gamma_semi_asymptotic(&config, &tw, p))
                .collect::<Result<_, _>>()
                .map_err(anyhow::Error::from)?
        }
        MethodArg::Rd => {
            let (gammas, table_meta) = rd_thresholds(&a, &config, meta)?;
            if let Some(out) = &a.out {
                let entries = a.pfa.iter().zip(&gammas).map(|(&pfa, &gamma)| ThresholdEntry {
                    receivers: config.receivers(),
                    samples: config.samples(),
                    pfa,
                    gamma,
                });
                let table = ThresholdTable::from_entries(entries, table_meta).map_err(anyhow::Error::from)?;
                save_threshold_table(&table, out).map_err(anyhow::Error::from)?;
            }
            gammas
        }
    };
    for g in gammas {
        println!("{}", sig12(g));
    }
    Ok(())
}

fn rd_thresholds(a: &ThresholdArgs, config: &SensingConfig, meta: TableMeta) -> anyhow::Result<(Vec<f64>, ThresholdMeta)> {
    let from_dist = |dist: &RatioDistribution, tw_tol: f64| -> anyhow::Result<(Vec<f64>, ThresholdMeta)> {
        let gammas = a.pfa.iter().map(|&p| gamma_ratio_based(dist, p)).collect::<Result<Vec<_>, _>>()?;
        Ok((gammas, ThresholdMeta { tw_tol, grid: RATIO_GRID_POINTS }))
    };
    match &a.table {
        Some(path) => match sniff_table(path)? {
            TableKind::Thresholds => {
                let table = load_threshold_table(path)?;
                let gammas = a
                    .pfa
                    .iter()
                    .map(|&p| {
                        table.lookup(config, p).ok_or_else(|| {
                            anyhow!(
                                "{} has no entry for K={}, N={}, pfa={}",
                                path.display(),
                                config.receivers(),
                                config.samples(),
                                p
                            )
                        })
                    })
                    .collect::<anyhow::Result<Vec<_>>>()?;
                Ok((gammas, table.meta()))
            }
            TableKind::Ratio => {
                let stored = load_ratio(path)?;
                if stored.dist.config() != *config {
                    bail!(
                        "{} is for K={}, N={}",
                        path.display(),
                        stored.dist.config().receivers(),
                        stored.dist.config().samples()
                    );
                }
                from_dist(&stored.dist, stored.tw_meta.tol)
            }
            TableKind::TracyWidom => {
                bail!("{} holds a Tracy-Widom table; `rd` needs a ratio or threshold table", path.display())
            }
        },
        None => {
            let cache = open_cache(a.rebuild);
            let tw = tracy_widom(&cache, &a.tw, meta)?;
            let stored = cache.ratio(config, &tw).context("building the ratio distribution")?;
            from_dist(&stored.dist, stored.tw_meta.tol)
        }
    }
}

struct Sources {
    tw: TracyWidomTable,
    ratio: RatioDistribution,
}

impl Sources {
    fn load(
        rebuild: bool,
        config: &SensingConfig,
        tw_opts: &TwOpts,
        meta: TableMeta,
        table: Option<&Path>,
    ) -> anyhow::Result<Self> {
        let cache = open_cache(rebuild);
        let tw = tracy_widom(&cache, tw_opts, meta)?;
        let ratio = ratio_distribution(&cache, config, table, &tw)?;
        Ok(Sources { tw, ratio })
    }

    fn view(&self) -> ThresholdSources<'_> {
        ThresholdSources { tracy_widom: &self.tw, ratio: &self.ratio }
    }
}

fn statistics(
    scenario: &Scenario,
    hypothesis: Hypothesis,
    trials: usize,
    seed: u64,
    workers: Option<usize>,
) -> anyhow::Result<Vec<TrialStatistics>> {
    parallel::with_workers(workers, || parallel::simulate_statistics(scenario, hypothesis, trials, seed))
        .with_context(|| format!("simulating {hypothesis:?} trials"))
}

fn policies(kind: ThresholdKind, pfas: &[f64]) -> anyhow::Result<Vec<ThresholdPolicy>> {
    if kind.takes_target() {
        Ok(pfas.iter().map(|&p| ThresholdPolicy::new(kind, Some(p))).collect::<Result<_, _>>()?)
    } else {
        Ok(vec![ThresholdPolicy::asymptotic()])
    }
}

fn cmd_simulate(a: SimulateArgs) -> CliResult<()> {
    let config = check_config(&a.size)?;
    let scenario = check_scenario(config, &a.sim)?;
    let meta = check_tw(&a.tw)?;
    check_pfas(&a.pfa)?;
    check_out(&a.out)?;
    if let Some(t) = &a.table {
        check_file(t)?;
    }
    let detectors = detector_list(&a.detectors);
    if detectors.iter().any(|k| k.takes_target()) && a.pfa.is_empty() {
        return usage("--pfa is required by the tunable detectors");
    }

    let sources = Sources::load(a.rebuild, &config, &a.tw, meta, a.table.as_deref())?;
    let mut thresholds = Vec::new();
    for &kind in &detectors {
        for policy in policies(kind, &a.pfa)? {
            let gamma = eigensense_core::sim::threshold_for(&policy, &scenario, &sources.view())
                .with_context(|| format!("threshold of detector `{kind}`"))?;
            thresholds.push((kind, policy.target_pfa(), gamma));
        }
    }

    let hypotheses: &[Hypothesis] = match a.hypothesis {
        HypothesisArg::H0 => &[Hypothesis::H0],
        HypothesisArg::H1 => &[Hypothesis::H1],
        HypothesisArg::Both => &[Hypothesis::H0, Hypothesis::H1],
    };
    let mut rows = Vec::new();
    let mut summary = Vec::new();
    for &h in hypotheses {
        let stats = statistics(&scenario, h, a.sim.trials, a.sim.seed, a.sim.workers)?;
        for &(kind, target, gamma) in &thresholds {
            let decided_h1 =
                stats.iter().filter(|s| decide(s.for_detector(kind), gamma) == Hypothesis::H1).count();
            summary.push((h, kind, target, decided_h1 as f64 / stats.len() as f64));
        }
        for (i, s) in stats.iter().enumerate() {
            for &(kind, target_pfa, gamma) in &thresholds {
                let statistic = s.for_detector(kind);
                rows.push(TrialRow {
                    trial: i,
                    hypothesis: h,
                    detector: kind,
                    target_pfa,
                    statistic,
                    gamma,
                    decision: decide(statistic, gamma),
                });
            }
        }
    }
    write_text(&a.out, &trials_csv(&rows))?;
    for (h, kind, target, rate) in summary {
        let target = target.map(sig12).unwrap_or_else(|| "-".into());
        println!("{h:?} {kind} target_pfa={target}: decided H1 in {} of trials", sig12(rate));
    }
    Ok(())
}

fn cmd_roc(a: RocArgs) -> CliResult<()> {
    let config = check_config(&a.size)?;
    let scenario = check_scenario(config, &a.sim)?;
    let meta = check_tw(&a.tw)?;
    check_pfas(&a.pfa)?;
    check_out(&a.out)?;
    if let Some(t) = &a.table {
        check_file(t)?;
    }
    let detectors = detector_list(&a.detectors);
    if detectors.iter().any(|k| k.takes_target()) && a.pfa.is_empty() {
        return usage("--pfa is required by the tunable detectors");
    }

    let sources = Sources::load(a.rebuild, &config, &a.tw, meta, a.table.as_deref())?;
    let h0 = statistics(&scenario, Hypothesis::H0, a.sim.trials, a.sim.seed, a.sim.workers)?;
    let h1 = statistics(&scenario, Hypothesis::H1, a.sim.trials, a.sim.seed, a.sim.workers)?;
    let mut points: Vec<RocPoint> = Vec::new();
    for &kind in &detectors {
        let p = roc_from_statistics(&scenario, &sources.view(), &[kind], &a.pfa, &h0, &h1)
            .with_context(|| format!("detector `{kind}`"))?;
        points.extend(p);
    }
    write_text(&a.out, &roc_csv(&points))?;
    for p in &points {
        let target = p.target_pfa.map(sig12).unwrap_or_else(|| "-".into());
        println!(
            "{} target_pfa={target}: pfa={} pmd={} gamma={}",
            p.detector,
            sig12(p.empirical_pfa),
            sig12(p.empirical_pmd),
            sig12(p.gamma)
        );
    }
    Ok(())
}

#[derive(Serialize)]
struct PfaGamma {
    pfa: f64,
    gamma: f64,
}

#[derive(Serialize)]
struct CdfReferences {
    #[serde(rename = "K")]
    receivers: usize,
    #[serde(rename = "N")]
    samples: usize,
    trials: usize,
    seed: u64,
    gamma_as: f64,
    gamma_sa: Vec<PfaGamma>,
    gamma_rd: Vec<PfaGamma>,
    ks_distance: f64,
}

/// Path of the reference-value file written next to `cdf.csv`.
pub fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("refs.json")
}

fn cmd_cdf(a: CdfArgs) -> CliResult<()> {
    let config = check_config(&a.size)?;
    check_trials(a.trials, eigensense_core::sim::MIN_CDF_TRIALS)?;
    check_workers(a.workers)?;
    let meta = check_tw(&a.tw)?;
    check_pfas(&a.pfa)?;
    check_out(&a.out)?;
    if let Some(t) = &a.table {
        check_file(t)?;
    }

    let sources = Sources::load(a.rebuild, &config, &a.tw, meta, a.table.as_deref())?;
    let model = SignalModel::noise_only(1.0).map_err(anyhow::Error::from)?;
    let scenario = Scenario { config, model, noise: NoiseUncertainty::none() };
    let stats = statistics(&scenario, Hypothesis::H0, a.trials, a.seed, a.workers)?;
    let empirical = EmpiricalCdf::from_sample(stats.iter().map(|s| s.ratio).collect());
    let dist = &sources.ratio;
    let ks_distance = empirical.ks_distance(|t| dist.cdf(t));

    let per_pfa = |f: &dyn Fn(f64) -> eigensense_core::Result<f64>| -> anyhow::Result<Vec<PfaGamma>> {
        a.pfa.iter().map(|&pfa| Ok(PfaGamma { pfa, gamma: f(pfa)? })).collect()
    };
    let refs = CdfReferences {
        receivers: config.receivers(),
        samples: config.samples(),
        trials: a.trials,
        seed: a.seed,
        gamma_as: gamma_asymptotic(&config),
        gamma_sa: per_pfa(&|p| gamma_semi_asymptotic(&config, &sources.tw, p))?,
        gamma_rd: per_pfa(&|p| gamma_ratio_based(dist, p))?,
        ks_distance,
    };

    write_text(&a.out, &cdf_csv(&empirical, |t| dist.cdf(t)))?;
    let sidecar = sidecar_path(&a.out);
    let mut json = serde_json::to_string_pretty(&refs).map_err(anyhow::Error::from)?;
    json.push('\n');
    write_text(&sidecar, &json)?;
    println!("ks distance: {}", sig12(ks_distance));
    println!("references: {}", sidecar.display());
    Ok(())
}
