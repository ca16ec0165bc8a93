use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qsync::mechanisms::classify;
use qsync::operators::STRUCTURAL_TOL;
use qsync::scenario::{attractors_report, parse_matrix4, presets_report, run, ScenarioConfig};
use qsync::{Error, Result};

/// Two-qubit phase-locking scenario runner.
#[derive(Parser)]
#[command(name = "qsync", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a scenario and write the requested artifacts.
    Run {
        config: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Overwrite existing output files.
        #[arg(long)]
        force: bool,
    },
    /// List named initial states and mechanism presets.
    Presets,
    /// Identify the mechanism class of a 4x4 Lindblad operator.
    Classify { matrix: PathBuf },
    /// Print the attractor space of a scenario's generator.
    Attractors { config: PathBuf },
}

fn tolerance() -> Result<f64> {
    match std::env::var("QSYNC_TOL") {
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
            _ => Err(Error::Config(format!("QSYNC_TOL = {s:?} is not a positive number"))),
        },
        Err(_) => Ok(STRUCTURAL_TOL),
    }
}

fn print_lines(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    match writeln!(out, "{text}") {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn print_json(v: &serde_json::Value) -> Result<()> {
    print_lines(&serde_json::to_string_pretty(v)?)
}

fn dispatch(cli: Cli) -> Result<()> {
    let tol = tolerance()?;
    match cli.command {
        Command::Run { config, out, force } => {
            let cfg = ScenarioConfig::load(&config)?;
            let res = run(&cfg, &out, force, tol)?;
            let names: Vec<String> = res.files.iter().map(|f| f.display().to_string()).collect();
            print_lines(&names.join("\n"))
        }
        Command::Presets => print_json(&presets_report()),
        Command::Classify { matrix } => {
            let text = std::fs::read_to_string(&matrix)?;
            let rows: Vec<Vec<[f64; 2]>> =
                serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", matrix.display())))?;
            let spec = classify(&parse_matrix4(&rows)?, tol)?;
            print_json(&serde_json::to_value(spec)?)
        }
        Command::Attractors { config } => print_json(&attractors_report(&ScenarioConfig::load(&config)?)?),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qsync: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
