//! Command-line front end: argument parsing only. All experiment logic and
//! file emission lives in `qwalk::cli`, so every run is reproducible
//! in-process by tests.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qwalk::cli::{run, CliError, CommandKind, ExperimentConfig};
use qwalk::output::OutputFormat;
use qwalk::walk::CoinInit;

#[derive(Parser)]
#[command(
    name = "qwalk",
    version,
    about = "Discrete-time quantum walks via which-way erasure of a multi-coin walk",
    after_help = "Environment:\n  QWALK_MAX_T  raises or lowers the step cap for the POVM commands \
                  (erase-uniform, sample); default 60."
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(clap::Args)]
struct CommonArgs {
    /// Output format.
    #[arg(long, default_value = "csv", value_parser = parse_format)]
    format: OutputFormat,
    /// Write the data document here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Single-coin Hadamard walk after T steps, next to the classical binomial.
    Dtqw {
        /// Number of walk steps T.
        #[arg(long, default_value_t = 100)]
        steps: usize,
        /// Initial coin state: zero, one, or symmetric.
        #[arg(long, default_value = "symmetric", value_parser = parse_coin)]
        coin_init: CoinInit,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Project the multi-coin walk onto one coin state so its binomial
    /// marginal collapses to the Hadamard-walk distribution.
    EraseHadamard {
        /// Number of walk steps T.
        #[arg(long, default_value_t = 5)]
        steps: usize,
        /// Coin state defining the erasure target: zero, one, or symmetric.
        #[arg(long, default_value = "symmetric", value_parser = parse_coin)]
        coin_init: CoinInit,
        /// Emit success probabilities for T = MIN..=MAX (format "MIN:MAX")
        /// instead of distributions.
        #[arg(long, value_parser = parse_sweep, value_name = "MIN:MAX")]
        sweep: Option<(usize, usize)>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Optimal POVM converting the multi-coin walk into the uniform
    /// (momentum-state) walker distribution, with its failure branch.
    EraseUniform {
        /// Number of walk steps T.
        #[arg(long, default_value_t = 6)]
        steps: usize,
        /// Emit each branch normalized instead of scaled by its probability.
        #[arg(long)]
        normalized: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Seeded Monte Carlo shots of that POVM with per-shot records.
    Sample {
        /// Number of walk steps T.
        #[arg(long, default_value_t = 6)]
        steps: usize,
        /// RNG seed; identical seeds reproduce identical records.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of measurement shots.
        #[arg(long, default_value_t = 100_000)]
        shots: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
}

fn parse_coin(s: &str) -> Result<CoinInit, String> {
    s.parse()
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    s.parse()
}

fn parse_sweep(s: &str) -> Result<(usize, usize), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("expected MIN:MAX, got '{s}'"))?;
    let lo = lo
        .trim()
        .parse::<usize>()
        .map_err(|e| format!("bad sweep minimum '{lo}': {e}"))?;
    let hi = hi
        .trim()
        .parse::<usize>()
        .map_err(|e| format!("bad sweep maximum '{hi}': {e}"))?;
    Ok((lo, hi))
}

fn max_steps_from_env() -> Result<Option<usize>, String> {
    match std::env::var("QWALK_MAX_T") {
        Ok(raw) => {
            raw.trim().parse::<usize>().map(Some).map_err(|e| {
                format!("QWALK_MAX_T must be a non-negative integer, got '{raw}': {e}")
            })
        }
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(format!("QWALK_MAX_T is not valid unicode: {e}")),
    }
}

fn build_config(cmd: Cmd, max_steps_override: Option<usize>) -> ExperimentConfig {
    let (kind, steps, common) = match &cmd {
        Cmd::Dtqw { steps, common, .. } => (CommandKind::Dtqw, *steps, common),
        Cmd::EraseHadamard { steps, common, .. } => (CommandKind::EraseHadamard, *steps, common),
        Cmd::EraseUniform { steps, common, .. } => (CommandKind::EraseUniform, *steps, common),
        Cmd::Sample { steps, common, .. } => (CommandKind::Sample, *steps, common),
    };
    let mut config = ExperimentConfig::new(kind, steps);
    config.format = common.format;
    config.output = common.output.clone();
    config.max_steps_override = max_steps_override;
    match cmd {
        Cmd::Dtqw { coin_init, .. } => config.coin_init = coin_init,
        Cmd::EraseHadamard {
            coin_init, sweep, ..
        } => {
            config.coin_init = coin_init;
            config.sweep = sweep;
        }
        Cmd::EraseUniform { normalized, .. } => config.normalized = normalized,
        Cmd::Sample { seed, shots, .. } => {
            config.seed = seed;
            config.shots = shots;
        }
    }
    config
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let max_steps_override = match max_steps_from_env() {
        Ok(v) => v,
        Err(msg) => {
            eprintln!("error[env]: {msg}");
            return ExitCode::FAILURE;
        }
    };
    let config = build_config(cli.command, max_steps_override);
    match run(&config) {
        Ok(summary) => {
            // The data document owns stdout when no --output file is given;
            // route the human-readable summary to stderr in that case.
            if config.output.is_some() {
                print!("{summary}");
            } else {
                eprint!("{summary}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            report(&e);
            ExitCode::FAILURE
        }
    }
}

fn report(e: &CliError) {
    eprintln!("error[{}]: {e}", e.code());
}
