use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gzb_cli::pipeline::{cmd_check, DEFAULT_CONIC_BOUND};
use gzb_cli::reports::{cmd_hilbert, cmd_inp, cmd_ulm};
use gzb_cli::selftest::{run_selected, Fault, Options};
use gzb_cli::{CliError, CliResult};
use gzb_core::exact_algebra::{parse_rational, PlaceQ};
use gzb_core::par::Exec;
use gzb_core::torsion_core::DEFAULT_TOWER_DEPTH;

/// Brauer groups of genus zero extensions: verdicts, Ulm invariants and checks.
#[derive(Parser)]
#[command(name = "gzb", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the verdict for the conic c x² + d y² = 1.
    Check {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        /// Print the full certificate as JSON.
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_CONIC_BOUND)]
        conic_bound: u64,
    },
    /// Ulm invariants of a group descriptor such as "C1+C3+P".
    Ulm {
        #[arg(long)]
        group: String,
        /// Recompute each invariant by truncation (level from GZB_TRUNCATION).
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// I ⊕ N ⊕ P decomposition of an integer involution matrix.
    Inp {
        /// JSON matrix, e.g. '[[0,1],[1,0]]'.
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value_t = DEFAULT_TOWER_DEPTH)]
        depth: usize,
        #[arg(long)]
        json: bool,
    },
    /// Hilbert symbols (a, b)_v at one place or at every relevant place.
    Hilbert {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// A prime or "inf".
        #[arg(long)]
        place: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run the acceptance suite.
    Selftest {
        #[arg(long)]
        json: bool,
        /// Run suites on the calling thread only.
        #[arg(long)]
        sequential: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run only these criteria (repeatable, 1 to 10).
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=10))]
        criterion: Vec<u8>,
        #[arg(long, hide = true)]
        inject_fault: Option<Fault>,
    },
}

/// Writes a line to stdout; a closed pipe (`gzb ... | head`) is not an error.
fn out(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn emit<T: serde::Serialize + std::fmt::Display>(value: &T, json: bool) -> CliResult<()> {
    if json {
        out(&serde_json::to_string_pretty(value)?);
    } else {
        out(&value.to_string());
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Check {
            c,
            d,
            json,
            conic_bound,
        } => {
            let v = cmd_check(&parse_rational(&c)?, &parse_rational(&d)?, conic_bound)?;
            if json {
                out(&serde_json::to_string_pretty(&v.certificate)?);
            } else {
                out(&v.to_string());
            }
            Ok(())
        }
        Command::Ulm { group, verify, json } => emit(&cmd_ulm(&group, verify)?, json),
        Command::Inp { matrix, depth, json } => emit(&cmd_inp(&matrix, depth)?, json),
        Command::Hilbert { a, b, place, json } => {
            let place = place.as_deref().map(PlaceQ::parse).transpose()?;
            emit(&cmd_hilbert(&parse_rational(&a)?, &parse_rational(&b)?, place)?, json)
        }
        Command::Selftest {
            json,
            sequential,
            seed,
            criterion,
            inject_fault,
        } => {
            let exec = if sequential { Exec::Sequential } else { Exec::Auto };
            let report = run_selected(
                &Options {
                    exec,
                    fault: inject_fault,
                    seed,
                },
                &criterion,
            );
            emit(&report, json)?;
            if report.pass {
                Ok(())
            } else {
                Err(CliError::Failed("acceptance suite failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
