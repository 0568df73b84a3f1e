//! Command-line front end for the `anisoflow` laboratory.
//!
//! Every subcommand reads a configuration file, writes its CSV outputs to the
//! output directory together with `manifest.txt`, and maps failures to exit
//! codes: 0 success, 1 configuration or other error, 2 numerical divergence,
//! 3 admissibility refusal. Error messages are also written to `error.txt`.

mod commands;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anisoflow::io::{parse_config, Config};
use anisoflow::Error;
use clap::{Parser, Subcommand};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_DIVERGENCE: i32 = 2;
pub const EXIT_ASSUMPTION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "anisoflow", version, about = "Stochastic anisotropic Navier-Stokes laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Subcommand)]
enum Command {
    /// Run one trajectory.
    Simulate(Common),
    /// Noise moments and y_delta -> z sup-differences.
    NoiseCheck(Common),
    /// Paired-path delta -> 0 convergence table.
    Converge(Common),
    /// Smoothing-ratio sweeps over eps.
    Smoothing(Common),
    /// Pullback ensembles, Hausdorff semi-distances and box counting.
    Attractor(Common),
    /// Recompute diagnostics from snapshot files.
    Diag(Common),
    /// Spectral identity property suite.
    Identities(Common),
}

#[derive(Debug, Clone, clap::Args)]
struct Common {
    #[arg(long, value_name = "PATH")]
    config: PathBuf,
    #[arg(long, value_name = "DIR")]
    out: PathBuf,
    /// Override `run.seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Skip the admissibility gate.
    #[arg(long)]
    force: bool,
    #[arg(long)]
    quiet: bool,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Simulate(_) => "simulate",
            Command::NoiseCheck(_) => "noise-check",
            Command::Converge(_) => "converge",
            Command::Smoothing(_) => "smoothing",
            Command::Attractor(_) => "attractor",
            Command::Diag(_) => "diag",
            Command::Identities(_) => "identities",
        }
    }

    fn common(&self) -> &Common {
        match self {
            Command::Simulate(c)
            | Command::NoiseCheck(c)
            | Command::Converge(c)
            | Command::Smoothing(c)
            | Command::Attractor(c)
            | Command::Diag(c)
            | Command::Identities(c) => c,
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Divergence { .. } => EXIT_DIVERGENCE,
        Error::Assumption { .. } => EXIT_ASSUMPTION,
        _ => EXIT_CONFIG,
    }
}

/// Runs the CLI on `argv` (including the program name) and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let command = cli.command;
    let common = command.common();
    init_logging(common.quiet);
    let out = common.out.clone();
    match execute(&command, common, &out) {
        Ok(()) => EXIT_OK,
        Err(err) => {
            let message = match &err {
                Error::Assumption { ratio } => format!(
                    "error: noise intensity fails the admissibility test (ratio {ratio:.6} >= 1); pass --force to run anyway"
                ),
                other => format!("error: {other}"),
            };
            eprintln!("{message}");
            if std::fs::create_dir_all(&out).is_ok() {
                let _ = std::fs::write(out.join("error.txt"), format!("{message}\n"));
            }
            exit_code(&err)
        }
    }
}

fn init_logging(quiet: bool) {
    let level = if quiet { "error" } else { "info" };
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level))
        .format_timestamp(None)
        .try_init();
}

fn execute(command: &Command, common: &Common, out: &Path) -> anisoflow::Result<()> {
    let config_path = common.config.as_path();
    let text = std::fs::read_to_string(config_path).map_err(|source| Error::File {
        path: config_path.to_path_buf(),
        source,
    })?;
    let mut cfg = parse_config(&text)?;
    if let Some(seed) = common.seed {
        cfg.run.seed = seed;
    }
    cfg.run.force |= common.force;
    std::fs::create_dir_all(out).map_err(|source| Error::File {
        path: out.to_path_buf(),
        source,
    })?;
    let _ = std::fs::remove_file(out.join("error.txt"));
    let checksums = match command {
        Command::Simulate(_) => commands::simulate(&cfg, out)?,
        Command::NoiseCheck(_) => commands::noise_check(&cfg, out)?,
        Command::Converge(_) => commands::converge(&cfg, out)?,
        Command::Smoothing(_) => commands::smoothing(&cfg, out)?,
        Command::Attractor(_) => commands::attractor(&cfg, out)?,
        Command::Diag(_) => {
            if cfg.diag.dir.is_none() {
                let dir = out.join("snapshots");
                cfg.diag.dir = Some(std::path::absolute(&dir).unwrap_or(dir).display().to_string());
            }
            commands::diag(&cfg, out)?
        }
        Command::Identities(_) => commands::identities(&cfg, out)?,
    };
    write_manifest(out, command.name(), &cfg, &checksums)
}

/// `manifest.txt`: metadata as comments followed by the full configuration,
/// so the file can be passed back as `--config`.
fn write_manifest(out: &Path, command: &str, cfg: &Config, checksums: &[String]) -> anisoflow::Result<()> {
    let mut text = String::new();
    let _ = writeln!(text, "# anisoflow manifest");
    let _ = writeln!(text, "# command: {command}");
    let _ = writeln!(text, "# version: {}", env!("CARGO_PKG_VERSION"));
    let sums = if checksums.is_empty() {
        "none".to_string()
    } else {
        checksums.join(" ")
    };
    let _ = writeln!(text, "# path_checksum: {sums}");
    text.push_str(&cfg.to_text());
    let path = out.join("manifest.txt");
    std::fs::write(&path, text).map_err(|source| Error::File { path, source })
}
