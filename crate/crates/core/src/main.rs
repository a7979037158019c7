use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bcva::cli::config::ConfigError;
use bcva::cli::{run_rows, svg, validate, write_csv, RunConfig, RunError};
use clap::{Parser, Subcommand};

/// Bilateral CVA: first-to-default versus simplified formula.
#[derive(Debug, Parser)]
#[command(name = "bcva", version)]
struct Cli {
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Also write an SVG chart of the difference against the sweep variable.
    #[arg(long, global = true)]
    svg: Option<PathBuf>,
    /// Worker threads for Monte Carlo. Changes speed only, never results.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Value a single configuration (no sweep).
    Price { config: PathBuf },
    /// Value every point of the configured sweep.
    Sweep { config: PathBuf },
    /// Run the invariant suite; exit 1 if any invariant fails.
    Validate,
}

fn load(path: &Path) -> Result<RunConfig, RunError> {
    let text = fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
    RunConfig::from_json(&text).map_err(|e| ConfigError(format!("{}: {}", path.display(), e.0)).into())
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> io::Result<()> {
    match out {
        Some(p) => fs::write(p, bytes),
        None => io::stdout().lock().write_all(bytes),
    }
}

fn price_or_sweep(cli: &Cli, path: &Path, sweep: bool) -> Result<(), RunError> {
    let cfg = load(path)?;
    match (sweep, cfg.sweep.label()) {
        (false, Some(_)) => {
            return Err(ConfigError("sweep: configured; use the `sweep` subcommand".into()).into())
        }
        (true, None) => return Err(ConfigError("sweep: missing; use the `price` subcommand".into()).into()),
        _ => {}
    }
    let rows = run_rows(&cfg)?;
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf)?;
    emit(cli.out.as_deref(), &buf)?;
    if let Some(svg_path) = &cli.svg {
        let label = cfg.sweep.label().unwrap_or("point");
        fs::write(svg_path, svg::render(&rows, label))?;
    }
    Ok(())
}

fn run_validate(cli: &Cli) -> Result<bool, RunError> {
    let results = validate::run_suite();
    let mut buf = Vec::new();
    validate::write_report(&results, &mut buf)?;
    emit(cli.out.as_deref(), &buf)?;
    for r in results.iter().filter(|r| !r.passed) {
        eprintln!("invariant failed: {}", r.name);
    }
    Ok(results.iter().all(|r| r.passed))
}

fn dispatch(cli: &Cli) -> Result<u8, RunError> {
    match &cli.command {
        Command::Price { config } => price_or_sweep(cli, config, false).map(|_| 0),
        Command::Sweep { config } => price_or_sweep(cli, config, true).map(|_| 0),
        Command::Validate => run_validate(cli).map(|ok| if ok { 0 } else { 1 }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.threads {
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| dispatch(&cli)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
