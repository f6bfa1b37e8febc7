//! `csaug`: one binary wiring the augmentation stages into subcommands.
//!
//! Summaries go to stdout as JSON (the `score` subcommand prints its TSV
//! report instead), progress and warnings to stderr. Exit codes: 0 on
//! success, 2 for usage and input-validation failures, 1 for failures
//! once processing has started.

mod commands;
mod config;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::config::RunConfig;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config or input files; exit 2.
    Usage(String),
    /// Failure after validation passed; exit 1.
    Runtime(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Runtime(msg) => f.write_str(msg),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

pub fn usage(e: impl fmt::Display) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn runtime(e: impl fmt::Display) -> CliError {
    CliError::Runtime(e.to_string())
}

#[derive(Parser)]
#[command(
    name = "csaug",
    version,
    about = "Mandarin-English code-switching speech data augmentation"
)]
struct Cli {
    /// Flat `key = value` config file; command-line flags take precedence
    #[arg(long, value_name = "FILE", global = true)]
    config: Option<PathBuf>,
    /// Worker thread cap for corpus-scale stages (0 = one per core)
    #[arg(long, value_name = "N", global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply a corpus by splicing same-speaker English segments
    Splice(commands::SpliceArgs),
    /// Turn Mandarin transcripts into code-switching transcripts
    Textgen(commands::TextgenArgs),
    /// Synthesize audio for a text manifest with the stub synthesizer
    Synth(commands::SynthArgs),
    /// Compute log-mel spectrograms from WAV files
    Mel(commands::MelArgs),
    /// Apply SpecAugment to serialized spectrograms
    Specaug(commands::SpecaugArgs),
    /// Reconstruct audio from a spectrogram or WAV via Griffin-Lim
    Griffinlim(commands::GriffinlimArgs),
    /// Change speaking rate by linear resampling
    Speed(commands::SpeedArgs),
    /// Score hypothesis transcripts against references (CER/WER/MER)
    Score(commands::ScoreArgs),
}

/// STFT/mel analysis geometry, shared by the spectrogram commands.
#[derive(Args)]
pub struct FrameArgs {
    /// Analysis window length in samples
    #[arg(long, value_name = "N")]
    win_len: Option<usize>,
    /// Hop between frames in samples
    #[arg(long, value_name = "N")]
    hop: Option<usize>,
    /// FFT size, at least the window length
    #[arg(long, value_name = "N")]
    n_fft: Option<usize>,
    /// Mel band count
    #[arg(long, value_name = "N")]
    n_mels: Option<usize>,
    /// Lowest mel filter edge in Hz
    #[arg(long, value_name = "HZ")]
    fmin: Option<f64>,
    /// Highest mel filter edge in Hz
    #[arg(long, value_name = "HZ")]
    fmax: Option<f64>,
    /// Audio sample rate in Hz
    #[arg(long, value_name = "HZ")]
    sample_rate: Option<u32>,
}

impl FrameArgs {
    fn resolve(&self, config: &RunConfig) -> Result<csaug_core::dsp::FrameParams, CliError> {
        let d = csaug_core::dsp::FrameParams::default();
        let params = csaug_core::dsp::FrameParams {
            win_len: config.resolve(self.win_len, "win_len", d.win_len)?,
            hop: config.resolve(self.hop, "hop", d.hop)?,
            n_fft: config.resolve(self.n_fft, "n_fft", d.n_fft)?,
            n_mels: config.resolve(self.n_mels, "n_mels", d.n_mels)?,
            fmin: config.resolve(self.fmin, "fmin", d.fmin)?,
            fmax: config.resolve(self.fmax, "fmax", d.fmax)?,
            sample_rate: config.resolve(self.sample_rate, "sample_rate", d.sample_rate)?,
        };
        params.validate().map_err(usage)?;
        Ok(params)
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = RunConfig::load(cli.config.as_deref())?;
    csaug_core::exec::configure_jobs(config.resolve(cli.jobs, "jobs", 0)?);
    match cli.command {
        Command::Splice(args) => commands::splice(&args, &config),
        Command::Textgen(args) => commands::textgen(&args, &config),
        Command::Synth(args) => commands::synth(&args, &config),
        Command::Mel(args) => commands::mel(&args, &config),
        Command::Specaug(args) => commands::specaug(&args, &config),
        Command::Griffinlim(args) => commands::griffinlim(&args, &config),
        Command::Speed(args) => commands::speed(&args, &config),
        Command::Score(args) => commands::score(&args, &config),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
