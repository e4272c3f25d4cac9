use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dipnet::cli::{parse_scenario, run, Scenario};
use dipnet::closedform::{typo_ledger, typo_ledger_report};
use dipnet::scan::Mode;
use dipnet::{Error, Result};

/// Sweeps dipolar-coupled entangled networks and reports correlation events.
#[derive(Parser)]
#[command(name = "dipnet", version)]
struct Cli {
    /// Overrides the scenario's output_dir.
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,

    /// Accepted for forward compatibility; every computation is
    /// deterministic, so the value has no effect.
    #[arg(long, global = true)]
    seed: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file.
    Run { scenario: PathBuf },
    /// Run a scenario with every closed form checked against dense evolution.
    Validate { scenario: PathBuf },
    /// Print every coordinate where a printed closed-form layout was repaired.
    TypoLedger,
}

fn load(path: &PathBuf, output_dir: Option<PathBuf>) -> Result<Scenario> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    let mut s = parse_scenario(&text)?;
    if let Some(dir) = output_dir {
        s.output_dir = dir;
    }
    Ok(s)
}

fn execute(cli: Cli) -> Result<()> {
    if let Some(seed) = cli.seed {
        log::debug!("--seed {seed} ignored: no stochastic components");
    }
    let scenario = match cli.command {
        Command::TypoLedger => {
            print!("{}", typo_ledger_report(&typo_ledger()?));
            return Ok(());
        }
        Command::Run { scenario } => load(&scenario, cli.output_dir)?,
        Command::Validate { scenario } => Scenario {
            mode: Mode::Validate,
            ..load(&scenario, cli.output_dir)?
        },
    };
    let summary = run(&scenario)?;
    for line in summary.lines() {
        println!("{line}");
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
