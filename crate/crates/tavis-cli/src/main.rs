use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use tavis_core::ModelParams;

use tavis_cli::config::parse_config;
use tavis_cli::presets;
use tavis_cli::run;
use tavis_cli::validate::{self, Outcome};

/// Two-atom cavity dynamics: purity, dipole squeezing, and entanglement
/// time series from closed-form or exact propagators.
#[derive(Parser)]
#[command(name = "tavis", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario and emit its observable time series
    Run {
        /// Built-in scenario name (see list-presets)
        #[arg(long, conflicts_with = "config", required_unless_present = "config")]
        preset: Option<String>,
        /// Path to a key-value scenario file
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the series here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare the closed-form sector propagator against exact
    /// diagonalization, entry by entry
    ValidateAppendix {
        /// Coupling of atom 1 (sets the time unit)
        #[arg(long, default_value_t = 1.0)]
        lambda1: f64,
        /// Coupling of atom 2
        #[arg(long, default_value_t = 0.1)]
        lambda2: f64,
        /// Detuning of atom 1
        #[arg(long, default_value_t = 0.0)]
        delta1: f64,
        /// Detuning of atom 2
        #[arg(long, default_value_t = 1.0)]
        delta2: f64,
        /// Sector label: photons next to the doubly excited state
        #[arg(long, default_value_t = 0)]
        n: u32,
        /// Grid horizon
        #[arg(long, default_value_t = 30.0)]
        t_max: f64,
        /// Grid size
        #[arg(long, default_value_t = 121)]
        t_steps: usize,
        /// Per-entry residual budget
        #[arg(long, default_value_t = 1e-6)]
        tolerance: f64,
    },
    /// List the built-in figure presets
    ListPresets,
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    ExitCode::from(dispatch(cli))
}

fn dispatch(cli: Cli) -> u8 {
    match cli.command {
        Command::Run {
            preset,
            config,
            output,
        } => run_command(preset, config, output),
        Command::ValidateAppendix {
            lambda1,
            lambda2,
            delta1,
            delta2,
            n,
            t_max,
            t_steps,
            tolerance,
        } => validate_command(lambda1, lambda2, delta1, delta2, n, t_max, t_steps, tolerance),
        Command::ListPresets => {
            for name in presets::PRESET_NAMES {
                println!("{}", presets::summary(name).expect("known preset"));
            }
            0
        }
    }
}

fn run_command(preset: Option<String>, config: Option<PathBuf>, output: Option<PathBuf>) -> u8 {
    let scenario = if let Some(name) = preset {
        match presets::preset(&name) {
            Some(c) => c,
            None => {
                eprintln!("error: unknown preset '{name}' (see `tavis list-presets`)");
                return 1;
            }
        }
    } else {
        let path = config.expect("clap enforces preset xor config");
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return 1;
            }
        };
        match parse_config(&text) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return 1;
            }
        }
    };
    let rendered = match run::run(&scenario) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match output {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 1;
            }
        }
        None => print!("{rendered}"),
    }
    0
}

#[allow(clippy::too_many_arguments)]
fn validate_command(
    lambda1: f64,
    lambda2: f64,
    delta1: f64,
    delta2: f64,
    n: u32,
    t_max: f64,
    t_steps: usize,
    tolerance: f64,
) -> u8 {
    let params = match ModelParams::new(lambda1, lambda2, delta1, delta2, 0.0) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    if !(t_max.is_finite() && t_max > 0.0) {
        eprintln!("error: invalid t_max = {t_max}: must satisfy t_max > 0");
        return 1;
    }
    if t_steps < 2 {
        eprintln!("error: invalid t_steps = {t_steps}: must satisfy t_steps >= 2");
        return 1;
    }
    if !(tolerance.is_finite() && tolerance > 0.0) {
        eprintln!("error: invalid tolerance = {tolerance}: must satisfy tolerance > 0");
        return 1;
    }
    let report = validate::validate_appendix(&params, n, t_max, t_steps, tolerance);
    print!("{}", validate::render_report(&report));
    match report.outcome {
        Outcome::Pass | Outcome::Skip { .. } => 0,
        Outcome::Fail { .. } => 2,
    }
}
