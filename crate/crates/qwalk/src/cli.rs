//! Command layer behind the `qwalk` binary.
//!
//! Each experiment is a pure function from an [`ExperimentConfig`] to an
//! output file (CSV or JSON) plus a [`RunSummary`] of headline numbers.
//! Keeping the binary a thin argument parser makes every command, including
//! its exact output bytes, testable in-process.
//!
//! Commands:
//! - `dtqw` — Hadamard walk vs. classical binomial after T steps.
//! - `erase-hadamard` — projective erasure steering the multi-coin walk's
//!   binomial marginal onto the single-coin Hadamard distribution.
//! - `erase-uniform` — the optimal momentum-state POVM: uniform conclusive
//!   branch, its failure branch, and their decomposition of the binomial.
//! - `sample` — seeded Monte Carlo shots of that POVM with per-shot records.
//!
//! All probability series a command emits sum to 1 within 1e-9 unless the
//! label carries a `_scaled` suffix, in which case the series is a branch
//! scaled by its branch probability and the scaled branches sum to the
//! unscaled reference series pointwise.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;

use thiserror::Error;

use crate::dicke::DickeDiagonalState;
use crate::dist::{ProbabilityDistribution, NORMALIZATION_TOL};
use crate::erasure::{hadamard_closed_form, pi_state};
use crate::output::{self, Meta, OutputFormat, SampleHistogram, SampleSummary, Series};
use crate::povm::{success_probability, Outcome, PovmSet};
use crate::walk::{classical_distribution, dtqw_distribution, dtqw_evolve, CoinInit};

/// Default step cap for the POVM commands (`erase-uniform`, `sample`).
/// Overridable via the `QWALK_MAX_T` environment variable, which the binary
/// forwards as [`ExperimentConfig::max_steps_override`].
pub const DEFAULT_POVM_CLI_MAX_STEPS: usize = 60;

/// Pointwise tolerance for internal decomposition identities checked before
/// any file is written.
const CONSISTENCY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Dtqw,
    EraseHadamard,
    EraseUniform,
    Sample,
}

impl CommandKind {
    pub fn label(self) -> &'static str {
        match self {
            CommandKind::Dtqw => "dtqw",
            CommandKind::EraseHadamard => "erase-hadamard",
            CommandKind::EraseUniform => "erase-uniform",
            CommandKind::Sample => "sample",
        }
    }
}

/// Fully resolved invocation of one experiment command.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub command: CommandKind,
    pub steps: usize,
    pub coin_init: CoinInit,
    pub seed: u64,
    pub shots: usize,
    pub format: OutputFormat,
    /// Target file; `None` writes the data document to stdout.
    pub output: Option<PathBuf>,
    /// `erase-uniform`: emit each branch normalized instead of scaled by its
    /// branch probability.
    pub normalized: bool,
    /// `erase-hadamard`: sweep `T = min..=max` and emit success probabilities
    /// instead of distributions.
    pub sweep: Option<(usize, usize)>,
    /// Raised/lowered POVM step cap (from `QWALK_MAX_T`).
    pub max_steps_override: Option<usize>,
}

impl ExperimentConfig {
    /// A config with the given command and step count and neutral defaults:
    /// symmetric coin, seed 0, 10 000 shots, CSV to stdout.
    pub fn new(command: CommandKind, steps: usize) -> Self {
        ExperimentConfig {
            command,
            steps,
            coin_init: CoinInit::Symmetric,
            seed: 0,
            shots: 10_000,
            format: OutputFormat::Csv,
            output: None,
            normalized: false,
            sweep: None,
            max_steps_override: None,
        }
    }
}

/// Failure modes of a command, each with a stable machine-parsable code
/// (printed by the binary as `error[{code}]: {message}`).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("steps must be at least 1, got {0}")]
    StepsRange(usize),
    #[error("shots must be at least 1, got {0}")]
    ShotsRange(usize),
    #[error("step count {requested} exceeds the POVM cap {max}; set QWALK_MAX_T to raise it")]
    PovmStepsCap { requested: usize, max: usize },
    #[error("sweep bounds must satisfy 1 <= min <= max, got {min}:{max}")]
    SweepRange { min: usize, max: usize },
    #[error("series '{label}' sums to {sum:.17} instead of 1")]
    SeriesNotNormalized { label: String, sum: f64 },
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
    #[error(transparent)]
    Core(#[from] crate::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::StepsRange(_) => "steps-range",
            CliError::ShotsRange(_) => "shots-range",
            CliError::PovmStepsCap { .. } => "povm-steps-cap",
            CliError::SweepRange { .. } => "sweep-range",
            CliError::SeriesNotNormalized { .. } => "series-normalization",
            CliError::Consistency(_) => "consistency",
            CliError::Core(_) => "core",
            CliError::Io(_) => "io",
        }
    }
}

/// Headline numbers of a finished run, printed by the binary one per line.
#[derive(Debug, Default, Clone)]
pub struct RunSummary {
    pub command: String,
    pub steps: usize,
    pub coin_init: Option<String>,
    pub sigma_hadamard: Option<f64>,
    pub sigma_classical: Option<f64>,
    pub total_variation: Option<f64>,
    pub success_prob: Option<f64>,
    pub eta: Option<f64>,
    pub shots: Option<usize>,
    pub conclusive: Option<usize>,
    pub empirical_success: Option<f64>,
    pub standard_error: Option<f64>,
    pub sweep: Vec<(usize, f64)>,
    pub advisory: Option<String>,
}

impl RunSummary {
    fn new(config: &ExperimentConfig) -> Self {
        RunSummary {
            command: config.command.label().to_string(),
            steps: config.steps,
            ..RunSummary::default()
        }
    }
}

impl fmt::Display for RunSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "command = {}", self.command)?;
        writeln!(f, "T = {}", self.steps)?;
        if let Some(init) = &self.coin_init {
            writeln!(f, "coin_init = {init}")?;
        }
        if let Some(v) = self.sigma_hadamard {
            writeln!(f, "sigma_hadamard = {v:.6}")?;
        }
        if let Some(v) = self.sigma_classical {
            writeln!(f, "sigma_classical = {v:.6}")?;
        }
        if let Some(v) = self.total_variation {
            writeln!(f, "total_variation = {v:.6}")?;
        }
        if let Some(v) = self.success_prob {
            writeln!(f, "success_prob = {v:.12e}")?;
        }
        if let Some(v) = self.eta {
            writeln!(f, "eta = {v:.12e}")?;
        }
        if let Some(v) = self.shots {
            writeln!(f, "shots = {v}")?;
        }
        if let Some(v) = self.conclusive {
            writeln!(f, "conclusive = {v}")?;
        }
        if let (Some(p), Some(se)) = (self.empirical_success, self.standard_error) {
            writeln!(f, "empirical_success = {p:.6} +- {se:.6}")?;
        }
        for &(t, p) in &self.sweep {
            writeln!(f, "sweep T={t} success_prob={p:.12e}")?;
        }
        if let Some(note) = &self.advisory {
            writeln!(f, "advisory: {note}")?;
        }
        Ok(())
    }
}

/// Runs one experiment command end to end: validate, compute, check internal
/// identities, emit the data document, and return the summary.
pub fn run(config: &ExperimentConfig) -> Result<RunSummary, CliError> {
    if config.steps == 0 {
        return Err(CliError::StepsRange(config.steps));
    }
    match config.command {
        CommandKind::Dtqw => cmd_dtqw(config),
        CommandKind::EraseHadamard => cmd_erase_hadamard(config),
        CommandKind::EraseUniform => cmd_erase_uniform(config),
        CommandKind::Sample => cmd_sample(config),
    }
}

/// Validates that a distribution is safe to emit as a probability series.
fn probability_series(label: &str, dist: &ProbabilityDistribution) -> Result<Series, CliError> {
    let sum: f64 = dist.weights().iter().sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOL {
        return Err(CliError::SeriesNotNormalized {
            label: label.to_string(),
            sum,
        });
    }
    Ok(Series::new(label, dist.points().collect()))
}

/// A branch distribution scaled by its branch probability; exempt from the
/// sums-to-1 check by construction and by its `_scaled` label.
fn scaled_series(label: &str, dist: &ProbabilityDistribution, scale: f64) -> Series {
    debug_assert!(label.ends_with("_scaled"));
    Series::new(label, dist.points().map(|(x, p)| (x, p * scale)).collect())
}

fn write_document(config: &ExperimentConfig, bytes: &[u8]) -> Result<(), CliError> {
    match &config.output {
        Some(path) => std::fs::write(path, bytes)?,
        None => io::stdout().lock().write_all(bytes)?,
    }
    Ok(())
}

fn emit_series(config: &ExperimentConfig, meta: &Meta, series: &[Series]) -> Result<(), CliError> {
    let mut buf = Vec::new();
    match config.format {
        OutputFormat::Csv => output::write_series_csv(&mut buf, series)?,
        OutputFormat::Json => output::write_series_json(&mut buf, meta, series)?,
    }
    write_document(config, &buf)
}

fn povm_cap(config: &ExperimentConfig) -> Result<(), CliError> {
    let max = config
        .max_steps_override
        .unwrap_or(DEFAULT_POVM_CLI_MAX_STEPS);
    if config.steps > max {
        return Err(CliError::PovmStepsCap {
            requested: config.steps,
            max,
        });
    }
    Ok(())
}

fn cmd_dtqw(config: &ExperimentConfig) -> Result<RunSummary, CliError> {
    let t = config.steps;
    let quantum = dtqw_distribution(&dtqw_evolve(t, config.coin_init))?;
    let classical = classical_distribution(t);

    let series = vec![
        probability_series("gaussian", &classical)?,
        probability_series("hadamard", &quantum)?,
    ];
    let mut meta = Meta::new(config.command.label(), t);
    meta.coin_init = Some(config.coin_init.label().to_string());
    emit_series(config, &meta, &series)?;

    let mut summary = RunSummary::new(config);
    summary.coin_init = Some(config.coin_init.label().to_string());
    summary.sigma_hadamard = Some(quantum.std_dev());
    summary.sigma_classical = Some(classical.std_dev());
    summary.total_variation = Some(quantum.total_variation(&classical)?);
    Ok(summary)
}

fn cmd_erase_hadamard(config: &ExperimentConfig) -> Result<RunSummary, CliError> {
    if let Some((lo, hi)) = config.sweep {
        return sweep_erase_hadamard(config, lo, hi);
    }
    let t = config.steps;
    let canonical = DickeDiagonalState::canonical(t);
    let marginal = canonical.spatial_marginal()?;
    let projector = pi_state(t, config.coin_init);
    let conditional = projector.conditional_distribution(&canonical)?;
    let failure = projector.complement_distribution(&canonical)?;
    let target = hadamard_closed_form(t, config.coin_init);
    let success = projector.success_prob();

    // Post-selection must reproduce the closed-form walk distribution, and
    // the two branches must reassemble the binomial marginal.
    for k in 0..=t {
        let dev = (conditional.weight(k) - target.weight(k)).abs();
        if dev > CONSISTENCY_TOL {
            return Err(CliError::Consistency(format!(
                "conditional distribution deviates from the walk target by {dev:.3e} at k={k}"
            )));
        }
        let mix = success * conditional.weight(k) + (1.0 - success) * failure.weight(k);
        let dev = (mix - marginal.weight(k)).abs();
        if dev > CONSISTENCY_TOL {
            return Err(CliError::Consistency(format!(
                "branch mixture deviates from the binomial marginal by {dev:.3e} at k={k}"
            )));
        }
    }

    let series = vec![
        probability_series("gaussian", &marginal)?,
        probability_series("hadamard", &conditional)?,
        probability_series("failure", &failure)?,
    ];
    let mut meta = Meta::new(config.command.label(), t);
    meta.coin_init = Some(config.coin_init.label().to_string());
    meta.p_success = Some(success);
    emit_series(config, &meta, &series)?;

    let mut summary = RunSummary::new(config);
    summary.coin_init = Some(config.coin_init.label().to_string());
    summary.success_prob = Some(success);
    summary.total_variation = Some(conditional.total_variation(&marginal)?);
    if t == 1 {
        summary.advisory = Some(
            "at T = 1 the post-selected, failure, and binomial distributions all \
             equal (1/2, 1/2) on x = ±1; erasure first changes the statistics at T = 2"
                .to_string(),
        );
    }
    Ok(summary)
}

fn sweep_erase_hadamard(
    config: &ExperimentConfig,
    lo: usize,
    hi: usize,
) -> Result<RunSummary, CliError> {
    if lo == 0 || lo > hi {
        return Err(CliError::SweepRange { min: lo, max: hi });
    }
    let rows: Vec<(usize, f64)> = (lo..=hi)
        .map(|t| (t, pi_state(t, config.coin_init).success_prob()))
        .collect();

    let mut meta = Meta::new(config.command.label(), config.steps);
    meta.coin_init = Some(config.coin_init.label().to_string());
    let mut buf = Vec::new();
    match config.format {
        OutputFormat::Csv => output::write_sweep_csv(&mut buf, &rows)?,
        OutputFormat::Json => output::write_sweep_json(&mut buf, &meta, &rows)?,
    }
    write_document(config, &buf)?;

    let mut summary = RunSummary::new(config);
    summary.coin_init = Some(config.coin_init.label().to_string());
    summary.sweep = rows;
    Ok(summary)
}

fn cmd_erase_uniform(config: &ExperimentConfig) -> Result<RunSummary, CliError> {
    povm_cap(config)?;
    let t = config.steps;
    let povm = PovmSet::build(t)?;
    let canonical = DickeDiagonalState::canonical(t);
    let marginal = canonical.spatial_marginal()?;
    let p_success = success_probability(t);
    let p_fail = 1.0 - p_success;

    let uniform = povm.post_measurement_distribution(&canonical, Outcome::Conclusive(0))?;
    let failure = if p_fail > CONSISTENCY_TOL {
        Some(povm.post_measurement_distribution(&canonical, Outcome::Inconclusive)?)
    } else {
        None
    };

    // The scaled branches must reassemble the binomial marginal pointwise.
    for k in 0..=t {
        let fail_k = failure.as_ref().map_or(0.0, |f| f.weight(k));
        let mix = p_success * uniform.weight(k) + p_fail * fail_k;
        let dev = (mix - marginal.weight(k)).abs();
        if dev > CONSISTENCY_TOL {
            return Err(CliError::Consistency(format!(
                "POVM branch decomposition deviates from the binomial marginal by {dev:.3e} at k={k}"
            )));
        }
    }

    let mut series = vec![probability_series("gaussian", &marginal)?];
    if config.normalized {
        series.push(probability_series("uniform", &uniform)?);
        if let Some(f) = &failure {
            series.push(probability_series("failure", f)?);
        }
    } else {
        series.push(scaled_series("uniform_scaled", &uniform, p_success));
        if let Some(f) = &failure {
            series.push(scaled_series("failure_scaled", f, p_fail));
        }
    }
    let mut meta = Meta::new(config.command.label(), t);
    meta.p_success = Some(p_success);
    emit_series(config, &meta, &series)?;

    let mut summary = RunSummary::new(config);
    summary.success_prob = Some(p_success);
    summary.eta = Some(povm.eta());
    if failure.is_none() {
        summary.advisory = Some(
            "the conversion succeeds with certainty at T = 1, so there is no failure branch"
                .to_string(),
        );
    }
    Ok(summary)
}

fn cmd_sample(config: &ExperimentConfig) -> Result<RunSummary, CliError> {
    if config.shots == 0 {
        return Err(CliError::ShotsRange(config.shots));
    }
    povm_cap(config)?;
    let t = config.steps;
    let povm = PovmSet::build(t)?;
    let canonical = DickeDiagonalState::canonical(t);
    let records = povm.sample(&canonical, config.seed, config.shots)?;

    let conclusive = records
        .iter()
        .filter(|r| matches!(r.outcome, Outcome::Conclusive(_)))
        .count();
    let n = config.shots as f64;
    let p_hat = conclusive as f64 / n;
    let standard_error = (p_hat * (1.0 - p_hat) / n).sqrt();

    let mut hist_ok: BTreeMap<i64, u64> = BTreeMap::new();
    let mut hist_fail: BTreeMap<i64, u64> = BTreeMap::new();
    for r in &records {
        let bucket = match r.outcome {
            Outcome::Conclusive(_) => &mut hist_ok,
            Outcome::Inconclusive => &mut hist_fail,
        };
        *bucket.entry(r.position).or_insert(0) += 1;
    }

    let summary_block = SampleSummary {
        shots: config.shots,
        conclusive,
        empirical_success: p_hat,
        standard_error,
        analytic_success: success_probability(t),
    };
    let histogram = SampleHistogram {
        conclusive: hist_ok.into_iter().collect(),
        inconclusive: hist_fail.into_iter().collect(),
    };
    let mut meta = Meta::new(config.command.label(), t);
    meta.seed = Some(config.seed);
    meta.shots = Some(config.shots);
    meta.p_success = Some(success_probability(t));

    let mut buf = Vec::new();
    match config.format {
        OutputFormat::Csv => output::write_records_csv(&mut buf, &records)?,
        OutputFormat::Json => {
            output::write_sample_json(&mut buf, &meta, &summary_block, &histogram, &records)?
        }
    }
    write_document(config, &buf)?;

    let mut summary = RunSummary::new(config);
    summary.shots = Some(config.shots);
    summary.conclusive = Some(conclusive);
    summary.empirical_success = Some(p_hat);
    summary.standard_error = Some(standard_error);
    summary.success_prob = Some(success_probability(t));
    Ok(summary)
}
