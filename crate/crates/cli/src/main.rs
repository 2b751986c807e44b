//! `ince-vortex`: batch driver that writes CSV, JSON and PGM artifacts for
//! each pipeline stage.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ince_vortex::Error;
use serde::Serialize;

use commands::{DecomposeArgs, EntropyArgs, IntensityArgs, Output, SelftestArgs, StateArgs, WignerArgs};

#[derive(Debug, Parser)]
#[command(name = "ince-vortex", version, about = "Ince-Gaussian vortex states: modes, Fock states, Wigner slices and entropy")]
struct Cli {
    /// Flat `key = value` file; its entries override command-line flags.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Directory receiving the artifacts.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "snake_case")]
enum Command {
    /// Intensity and field grids of a vortex state.
    #[command(args_override_self = true)]
    Intensity(IntensityArgs),
    /// LG expansion coefficients of a helical Ince-Gauss mode.
    #[command(args_override_self = true)]
    Decompose(DecomposeArgs),
    /// Fock-basis vortex state before and after the mode converter.
    #[command(args_override_self = true)]
    State(StateArgs),
    /// Wigner-function slices.
    #[command(args_override_self = true)]
    Wigner(WignerArgs),
    /// Entanglement-entropy sweep over photon numbers.
    #[command(args_override_self = true)]
    Entropy(EntropyArgs),
    /// Runs every stage at reduced resolution.
    #[command(args_override_self = true)]
    Selftest(SelftestArgs),
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Validation(_) => 2,
        Error::Numerical(_) => 3,
        _ => 1,
    }
}

fn print_json<T: Serialize>(value: &T) -> ince_vortex::Result<()> {
    print!("{}", ince_vortex::export::json_string(value)?);
    Ok(())
}

fn run(cli: Cli) -> ince_vortex::Result<()> {
    let out = Output { dir: &cli.out, config: serde_json::to_value(&cli.command)? };
    match &cli.command {
        Command::Intensity(args) => print_json(&commands::intensity(args, &out)?),
        Command::Decompose(args) => print_json(&commands::decompose(args, &out)?),
        Command::State(args) => {
            let report = commands::state(args, &out)?;
            match report.max_discrepancy {
                Some(d) => println!("closed form vs unitary: max |Δ| = {d:e}"),
                None => println!("closed form not defined at angle {}", report.angle),
            }
            print_json(&report.evolved)
        }
        Command::Wigner(args) => {
            for s in commands::wigner(args, &out)? {
                println!("{}: min {:.6e} max {:.6e}", s.axes.label(), s.min(), s.max());
            }
            Ok(())
        }
        Command::Entropy(args) => {
            let sweep = commands::entropy(args, &out)?;
            println!("N,m,entropy");
            for r in &sweep.records {
                println!("{},{},{:.12}", r.n_total, r.m, r.entropy);
            }
            for c in &sweep.comparisons {
                println!(
                    "N={} above lower neighbour: {:?}, above upper neighbour: {:?}",
                    c.n_total, c.above_lower, c.above_upper
                );
            }
            Ok(())
        }
        Command::Selftest(args) => print_json(&commands::selftest(args, &out)?),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).format_timestamp(None).init();
    let args = match config::expand(std::env::args_os().collect()) {
        Ok(args) => args,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(exit_code(&err));
        }
    };
    let cli = Cli::parse_from(args);
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
