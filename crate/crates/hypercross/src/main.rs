use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hypercross::config::CommandKind;
use hypercross::{run, CliError, ExperimentConfig};

/// Sparse-grid sampling recovery experiments.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    /// Overrides the `command` key of the config.
    command: Option<CommandKind>,
    /// TOML config; defaults apply to every missing key.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    /// Allowed |alpha_hat - alpha| for sharp atlas entries.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Worker threads; 0 uses all cores.
    #[arg(long)]
    threads: Option<usize>,
}

fn main_inner(args: Args) -> Result<i32, CliError> {
    let mut config = match &args.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(tol) = args.tolerance {
        config.tolerance = tol;
    }
    if let Some(threads) = args.threads {
        config.threads = threads;
    }
    if config.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    let outcome = run(config, args.command, &args.out)?;
    println!("{}", outcome.summary);
    for f in &outcome.files {
        eprintln!("wrote {}", f.display());
    }
    Ok(outcome.exit_code())
}

fn main() -> ExitCode {
    match main_inner(Args::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
