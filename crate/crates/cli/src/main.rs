//! `fplab` command-line entry point.
//!
//! Exit codes: 0 success, 1 failed checks or runtime error, 2 invalid input,
//! 3 game exceeds the size cap (`FPLAB_MAX_DIM`).

mod analyze;
mod batch;
mod game;
mod io;
mod simulate;
mod verify;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};
use fplab_core::diagnostics::VerdictParams;

use crate::game::{max_dim, GameRef};
use crate::simulate::Format;

/// Invalid user input; maps to exit code 2.
#[derive(Debug)]
pub struct InputError(String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

pub fn input_error(e: impl fmt::Display) -> anyhow::Error {
    InputError(e.to_string()).into()
}

#[derive(Parser)]
#[command(name = "fplab", version, about = "Fictitious play on zero-sum matrix games, in exact arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Value, equilibrium sets, A1-A3 and structural checks as JSON.
    Analyze {
        /// Library name or path to a `{"rows": [...]}` file.
        #[arg(long)]
        game: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One fictitious-play run.
    Simulate {
        #[arg(long)]
        game: String,
        #[arg(long, default_value_t = 10_000)]
        steps: u64,
        #[arg(long, default_value = "0")]
        k1: String,
        #[arg(long, default_value = "0")]
        k2: String,
        /// Prior of Player 1, e.g. `3/4,1/8,1/8`.
        #[arg(long)]
        x0: Option<String>,
        #[arg(long)]
        y0: Option<String>,
        /// lowest | highest | uniform | onebit:a,b | parity
        #[arg(long, default_value = "uniform")]
        tiebreak_p1: String,
        #[arg(long, default_value = "uniform")]
        tiebreak_p2: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Trajectory file; `.json` selects JSON unless `--format` is given.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
        /// Keep every s-th state plus best-response changes.
        #[arg(long)]
        decimate: Option<u64>,
        #[arg(long, default_value_t = VerdictParams::default().window_fraction)]
        window_fraction: f64,
        #[arg(long, default_value_t = VerdictParams::default().threshold)]
        threshold: f64,
    },
    /// Sweep games x rules x seeds from a JSON spec file.
    Batch {
        #[arg(long)]
        spec: PathBuf,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
    },
    /// Self-check suite over the built-in library.
    Verify {
        /// Comma-separated groups (library, assumptions, structure, parity,
        /// onebit, lemmas, nonconvergence, discussion).
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        /// Run trajectory groups at 10^6 steps.
        #[arg(long)]
        long: bool,
        /// JSON list of expectation overrides for library entries.
        #[arg(long)]
        library: Option<PathBuf>,
        /// JSON report file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Append the constant column v' 1_n to a game.
    Construct {
        #[arg(long)]
        base: String,
        #[arg(long)]
        vprime: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower envelope of a two-row game sampled on a grid.
    Envelope {
        #[arg(long)]
        game: String,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-run the configuration recorded in a manifest.
    Replay {
        manifest: PathBuf,
        /// Output path (directory for batch); defaults to the recorded one.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code(e: &anyhow::Error) -> u8 {
    use fplab_core::Error as E;
    for cause in e.chain() {
        if cause.downcast_ref::<InputError>().is_some() {
            return 2;
        }
        if let Some(core) = cause.downcast_ref::<E>() {
            return match core {
                E::ScaleCap { .. } => 3,
                E::ParseRational(_)
                | E::InvalidMatrix(_)
                | E::InvalidStrategy(_)
                | E::Json(_)
                | E::Config(_)
                | E::IncompatibleRule { .. }
                | E::DimensionMismatch { .. }
                | E::ActionOutOfRange { .. }
                | E::EmptyActionSet => 2,
                _ => 1,
            };
        }
        if cause.downcast_ref::<serde_json::Error>().is_some() {
            return 2;
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn single_threaded() {
    // Only batch fans out; everything else stays on one thread.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(1).build_global();
}

fn run(cmd: Command) -> Result<bool> {
    if !matches!(cmd, Command::Batch { .. }) && !is_batch_replay(&cmd) {
        single_threaded();
    }
    match cmd {
        Command::Analyze { game, out } => {
            analyze::run_analyze(&analyze::analyze_config(&game)?, out)?;
            Ok(true)
        }
        Command::Simulate {
            game,
            steps,
            k1,
            k2,
            x0,
            y0,
            tiebreak_p1,
            tiebreak_p2,
            seed,
            out,
            format,
            decimate,
            window_fraction,
            threshold,
        } => {
            let format = format.unwrap_or_else(|| out.as_deref().map(Format::for_path).unwrap_or(Format::Csv));
            let cfg = simulate::SimulateConfig {
                game: GameRef::resolve(&game)?,
                steps,
                k1: fplab_core::rational::format(&fplab_core::rational::parse(&k1)?),
                k2: fplab_core::rational::format(&fplab_core::rational::parse(&k2)?),
                x0: x0.as_deref().map(simulate::parse_list).transpose()?,
                y0: y0.as_deref().map(simulate::parse_list).transpose()?,
                tiebreak_p1: tiebreak_p1.parse::<fplab_core::fp::TieRule>()?.to_string(),
                tiebreak_p2: tiebreak_p2.parse::<fplab_core::fp::TieRule>()?.to_string(),
                seed,
                decimate,
                format,
                window_fraction,
                threshold,
                max_dim: max_dim()?,
            };
            simulate::run_simulate(&cfg, out)?;
            Ok(true)
        }
        Command::Batch { spec, out } => {
            let text = std::fs::read_to_string(&spec).map_err(|e| input_error(format!("{}: {e}", spec.display())))?;
            let spec: batch::BatchSpec = serde_json::from_str(&text).map_err(input_error)?;
            let cfg = batch::BatchConfig::resolve(spec, max_dim()?)?;
            report_batch(batch::run_batch(&cfg, &out)?);
            Ok(true)
        }
        Command::Verify {
            only,
            long,
            library,
            out,
        } => {
            let overrides = library.as_deref().map(verify::load_overrides).transpose()?.unwrap_or_default();
            let cfg = verify::VerifyConfig { only, long, overrides };
            verify::run_verify(&cfg, out)
        }
        Command::Construct { base, vprime, out } => {
            let cfg = analyze::ConstructConfig {
                base: GameRef::resolve(&base)?,
                v_prime: fplab_core::rational::format(&fplab_core::rational::parse(&vprime)?),
                max_dim: max_dim()?,
            };
            analyze::run_construct(&cfg, out)?;
            Ok(true)
        }
        Command::Envelope { game, grid, out } => {
            let cfg = analyze::EnvelopeConfig {
                game: GameRef::resolve(&game)?,
                grid,
            };
            analyze::run_envelope(&cfg, out)?;
            Ok(true)
        }
        Command::Replay { manifest, out } => replay(&manifest, out),
    }
}

fn is_batch_replay(cmd: &Command) -> bool {
    match cmd {
        Command::Replay { manifest, .. } => io::RunManifest::load(manifest)
            .map(|m| m.subcommand == "batch")
            .unwrap_or(false),
        _ => false,
    }
}

fn report_batch(failed: usize) {
    if failed > 0 {
        eprintln!("{failed} cell(s) failed; see summary.csv");
    }
}

fn config<T: serde::de::DeserializeOwned>(m: &io::RunManifest) -> Result<T> {
    serde_json::from_value(m.config.clone()).map_err(input_error)
}

fn replay(path: &std::path::Path, out: Option<PathBuf>) -> Result<bool> {
    let m = io::RunManifest::load(path)?;
    let recorded = m.outputs.first().map(PathBuf::from);
    let out = out.or(recorded);
    match m.subcommand.as_str() {
        "analyze" => analyze::run_analyze(&config(&m)?, out)?,
        "construct" => analyze::run_construct(&config(&m)?, out)?,
        "envelope" => analyze::run_envelope(&config(&m)?, out)?,
        "simulate" => simulate::run_simulate(&config(&m)?, out)?,
        "verify" => return verify::run_verify(&config(&m)?, out),
        "batch" => {
            let cfg: batch::BatchConfig = config(&m)?;
            let dir = match out {
                Some(p) if p.file_name().is_some_and(|n| n == "summary.csv") => {
                    p.parent().map(PathBuf::from).unwrap_or_default()
                }
                Some(p) => p,
                None => return Err(input_error("batch replay needs --out")),
            };
            report_batch(batch::run_batch(&cfg, &dir)?);
        }
        other => return Err(input_error(format!("unknown subcommand `{other}` in manifest"))),
    }
    Ok(true)
}
