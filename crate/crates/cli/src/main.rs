//! `foecm`: structural identifiability analysis of the two-CPE fractional
//! circuit from the command line.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{exit, AnalyzeInput, Failure};
use config::RunConfig;

#[derive(Parser, Debug)]
#[command(
    name = "foecm",
    version,
    about = "Identifiability analysis of the GL-discretized two-CPE circuit"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

/// Flags shared by every subcommand. Each also reads `FOECM_<NAME>`; flags
/// and environment beat the config file.
#[derive(Args, Debug, Default)]
struct GlobalArgs {
    /// JSON run configuration supplying defaults.
    #[arg(long, global = true, env = "FOECM_CONFIG", value_name = "PATH")]
    config: Option<PathBuf>,
    /// Working precision in decimal digits.
    #[arg(long, global = true, env = "FOECM_DIGITS", value_name = "N")]
    digits: Option<usize>,
    /// GL memory horizon.
    #[arg(long = "T", global = true, env = "FOECM_T", value_name = "N")]
    horizon: Option<usize>,
    /// Sampling period in seconds.
    #[arg(long, global = true, env = "FOECM_TS", value_name = "X")]
    ts: Option<f64>,
    /// Sweep random seed.
    #[arg(long, global = true, env = "FOECM_SEED", value_name = "N")]
    seed: Option<u64>,
    /// Sweep draw count.
    #[arg(long, global = true, env = "FOECM_SAMPLES", value_name = "N")]
    samples: Option<usize>,
    /// Output file; standard output when absent.
    #[arg(long, global = true, env = "FOECM_OUT", value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long, global = true, env = "FOECM_WORKERS", value_name = "N")]
    workers: Option<usize>,
    /// Verification acceptance tolerance.
    #[arg(long, global = true, env = "FOECM_VERIFICATION_TOL", value_name = "X")]
    verification_tol: Option<f64>,
    /// Root-finder update tolerance.
    #[arg(long, global = true, env = "FOECM_ROOT_TOL", value_name = "X")]
    root_tol: Option<f64>,
    /// Root-finder iteration cap.
    #[arg(long, global = true, env = "FOECM_MAX_ITERATIONS", value_name = "N")]
    max_iterations: Option<usize>,
}

impl GlobalArgs {
    fn resolve(&self) -> anyhow::Result<RunConfig> {
        let file = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        Ok(file.overlay(RunConfig {
            digits: self.digits,
            root_tolerance: self.root_tol,
            max_iterations: self.max_iterations,
            verification_tolerance: self.verification_tol,
            horizon: self.horizon,
            ts: self.ts,
            ranges: None,
            samples: self.samples,
            seed: self.seed,
            workers: self.workers,
            out: self.out.clone(),
        }))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Analyze a parameter set or a raw coefficient file and write a report.
    Analyze {
        #[arg(
            long,
            value_name = "PATH",
            conflicts_with = "coefficients",
            required_unless_present = "coefficients"
        )]
        params: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        coefficients: Option<PathBuf>,
        /// Include wall-clock stage timings in the report.
        #[arg(long)]
        timings: bool,
    },
    /// Build the transfer function from parameters, analyze it, and report
    /// recovery errors.
    Roundtrip {
        #[arg(long, value_name = "PATH")]
        params: PathBuf,
        #[arg(long)]
        timings: bool,
    },
    /// Round-trip seeded random draws and write one CSV row per draw.
    Sweep,
    /// Write the impedance spectrum as CSV.
    Spectra {
        #[arg(long, value_name = "PATH")]
        params: PathBuf,
        /// CSV whose first column lists angular frequencies.
        #[arg(long, value_name = "PATH")]
        grid: Option<PathBuf>,
    },
    /// Tabulate the lowest denominator coefficients and their residuals.
    Legacy {
        #[arg(long, value_name = "PATH")]
        params: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "10,20,50,100")]
        horizons: Vec<usize>,
    },
}

fn run(cli: Cli) -> Result<u8, Failure> {
    use commands::Classify;
    let cfg = cli.global.resolve().input()?;
    match cli.command {
        Command::Analyze {
            params,
            coefficients,
            timings,
        } => {
            let input = match (params, coefficients) {
                (Some(p), _) => AnalyzeInput::Params(p),
                (None, Some(c)) => AnalyzeInput::Coefficients(c),
                (None, None) => unreachable!("clap requires one input"),
            };
            commands::analyze_cmd(&cfg, &input, timings)
        }
        Command::Roundtrip { params, timings } => commands::roundtrip_cmd(&cfg, &params, timings),
        Command::Sweep => commands::sweep_cmd(&cfg),
        Command::Spectra { params, grid } => commands::spectra_cmd(&cfg, &params, grid.as_deref()),
        Command::Legacy { params, horizons } => commands::legacy_cmd(&cfg, &params, &horizons),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
