//! Thin command-line front end. Flags mirror the `DISCLOSURE_*` environment
//! variables; all substance lives in the library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use disclosure::cli;
use disclosure::config::RunConfig;

#[derive(Parser)]
#[command(name = "disclosure", version, about = "Equilibrium engine for costly voluntary-disclosure games")]
struct Args {
    #[command(subcommand)]
    command: Command,

    /// Game configuration file (TOML).
    #[arg(long, global = true, env = "DISCLOSURE_CONFIG", default_value = "disclosure.toml")]
    config: PathBuf,

    /// Output directory for reports and CSV artifacts.
    #[arg(long, global = true, env = "DISCLOSURE_OUT", default_value = "out")]
    out: PathBuf,

    /// Master seed override.
    #[arg(long, global = true, env = "DISCLOSURE_SEED")]
    seed: Option<u64>,

    /// Worker threads (0 = machine parallelism).
    #[arg(long, global = true, env = "DISCLOSURE_THREADS")]
    threads: Option<usize>,

    /// Root-refinement tolerance override.
    #[arg(long, global = true, env = "DISCLOSURE_TOLERANCE")]
    tolerance: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the configured game and write the equilibrium report.
    Solve,
    /// Sweep the axes in the [sweep] section and write a CSV.
    Sweep,
    /// Emit the nondisclosure-belief and concealment-payoff curves.
    Curves,
    /// Reproduce the golden worked examples and report pass/fail.
    Examples,
    /// Run the seeded Monte Carlo oracle at the solved equilibrium.
    Simulate,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let mut cfg = match RunConfig::load(&args.config) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    };
    cli::apply_overrides(&mut cfg, args.seed, args.threads, args.tolerance);
    cli::setup_threads(cfg.solver.threads);

    let result = match args.command {
        Command::Solve => cli::cmd_solve(&cfg, &args.out),
        Command::Sweep => cli::cmd_sweep(&cfg, &args.out),
        Command::Curves => cli::cmd_curves(&cfg, &args.out),
        Command::Simulate => cli::cmd_simulate(&cfg, &args.out),
        Command::Examples => {
            return match cli::cmd_examples(&cfg, &args.out) {
                Ok((text, true)) => {
                    print!("{text}");
                    ExitCode::SUCCESS
                }
                Ok((text, false)) => {
                    print!("{text}");
                    ExitCode::from(1)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(cli::exit_code(&e) as u8)
                }
            };
        }
    };
    match result {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(cli::exit_code(&e) as u8)
        }
    }
}
