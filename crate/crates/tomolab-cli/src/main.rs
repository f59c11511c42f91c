use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tomolab_cli::commands::{cmd_kicked_top, cmd_rmt_compare, cmd_run, cmd_spectra};
use tomolab_cli::config::{resolve, Command, RawConfig};
use tomolab_cli::error::AppError;

/// Numerical laboratory for continuous-measurement quantum state tomography
/// under random unitary dynamics.
#[derive(Parser)]
#[command(name = "tomolab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Reconstruct states over many trials and report fidelity vs step
    Run(Flags),
    /// Track the inverse-covariance spectrum: Fisher info, entropy, rank
    Spectra(Flags),
    /// Compare pooled spectra against random-matrix reference laws
    #[command(name = "rmt-compare")]
    RmtCompare(Flags),
    /// Regular/chaotic kicked tops and their spectral hybrids
    #[command(name = "kicked-top")]
    KickedTop(Flags),
}

#[derive(Args)]
struct Flags {
    /// Config file with flat key=value lines; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed for all random streams
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory for CSVs, metadata, and plots
    #[arg(long)]
    out: Option<PathBuf>,
    /// Number of trials
    #[arg(long)]
    trials: Option<usize>,
    /// Hilbert-space dimension d
    #[arg(long)]
    dim: Option<usize>,
    /// Measurement steps N
    #[arg(long)]
    steps: Option<usize>,
    /// Measurement noise level
    #[arg(long)]
    sigma: Option<f64>,
    /// Ridge regularization strength
    #[arg(long)]
    epsilon: Option<f64>,
    /// haar | fixed-haar | diagonal | kicked-top
    #[arg(long)]
    ensemble: Option<String>,
    /// Kick strength (required for ensemble=kicked-top)
    #[arg(long)]
    k0: Option<f64>,
    /// random | computational (diagonal-ensemble frame)
    #[arg(long)]
    frame: Option<String>,
    /// jx | jz | rotated
    #[arg(long)]
    observable: Option<String>,
    /// on | off
    #[arg(long)]
    plots: Option<String>,
}

fn flags_to_raw(flags: &Flags) -> Result<RawConfig, AppError> {
    let mut raw = RawConfig::default();
    let mut set = |key: &str, value: Option<String>| -> Result<(), AppError> {
        if let Some(v) = value {
            raw.set(key, &v).map_err(AppError::Config)?;
        }
        Ok(())
    };
    set("seed", flags.seed.map(|v| v.to_string()))?;
    set("out", flags.out.as_ref().map(|p| p.display().to_string()))?;
    set("trials", flags.trials.map(|v| v.to_string()))?;
    set("dim", flags.dim.map(|v| v.to_string()))?;
    set("steps", flags.steps.map(|v| v.to_string()))?;
    set("sigma", flags.sigma.map(|v| v.to_string()))?;
    set("epsilon", flags.epsilon.map(|v| v.to_string()))?;
    set("ensemble", flags.ensemble.clone())?;
    set("k0", flags.k0.map(|v| v.to_string()))?;
    set("frame", flags.frame.clone())?;
    set("observable", flags.observable.clone())?;
    set("plots", flags.plots.clone())?;
    Ok(raw)
}

fn dispatch(cli: Cli) -> Result<(), AppError> {
    let (command, flags) = match &cli.command {
        Cmd::Run(f) => (Command::Run, f),
        Cmd::Spectra(f) => (Command::Spectra, f),
        Cmd::RmtCompare(f) => (Command::RmtCompare, f),
        Cmd::KickedTop(f) => (Command::KickedTop, f),
    };
    let file_layer = match &flags.config {
        Some(path) => RawConfig::from_file(path)?,
        None => RawConfig::default(),
    };
    let cfg = resolve(&file_layer.merge(flags_to_raw(flags)?), command)?;
    match command {
        Command::Run => cmd_run(&cfg).map(|_| ()),
        Command::Spectra => cmd_spectra(&cfg).map(|_| ()),
        Command::RmtCompare => cmd_rmt_compare(&cfg).map(|_| ()),
        Command::KickedTop => cmd_kicked_top(&cfg).map(|_| ()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tomolab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
