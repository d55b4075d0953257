//! `covex` — covering-extension decisions from the command line.
//!
//! Every subcommand reads one input file (`-` for stdin), prints a
//! line-oriented report to stdout, and exits with: `0` extends / success,
//! `1` does not extend / check failed, `2` unknown or no constructive
//! witness, `3` input error, `4` budget exhausted.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use covex::run::{run_command, Command, EXIT_INPUT};

#[derive(Parser)]
#[command(
    name = "covex",
    version,
    about = "Decide whether a covering of a surface boundary extends over the surface"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether the covering described by the problem file extends.
    Decide {
        problem: PathBuf,
        /// Write the witness file here when one is constructed.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count boundary tuples with identity product (orientable genus 0).
    Count { problem: PathBuf },
    /// Decide, insisting on a constructive witness file.
    Witness {
        problem: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Produce a commutator pair realizing a single boundary class.
    Ore {
        problem: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-verify a witness file using nothing but the file.
    Verify { witness: PathBuf },
    /// Glue the square complex determined by `sigma` and `tau` lines.
    BuildStrip { problem: PathBuf },
    /// Search for a regular (Galois) covering witness.
    Regular {
        problem: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read_input(path: &Path) -> std::io::Result<String> {
    if path == Path::new("-") {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, path, out) = match &cli.command {
        Cmd::Decide { problem, out } => (Command::Decide, problem, out.clone()),
        Cmd::Count { problem } => (Command::Count, problem, None),
        Cmd::Witness { problem, out } => (Command::Witness, problem, out.clone()),
        Cmd::Ore { problem, out } => (Command::Ore, problem, out.clone()),
        Cmd::Verify { witness } => (Command::Verify, witness, None),
        Cmd::BuildStrip { problem } => (Command::BuildStrip, problem, None),
        Cmd::Regular { problem, out } => (Command::Regular, problem, out.clone()),
    };
    let input = match read_input(path) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let outcome = run_command(command, &input);
    print!("{}", outcome.report);
    match (outcome.witness, out) {
        (Some(text), Some(dest)) => {
            if let Err(e) = fs::write(&dest, text) {
                eprintln!("error: cannot write {}: {e}", dest.display());
                return ExitCode::from(EXIT_INPUT as u8);
            }
            println!("witness-file: {}", dest.display());
        }
        (Some(_), None) => println!("witness: available; pass --out FILE to save"),
        _ => {}
    }
    ExitCode::from(outcome.exit_code as u8)
}
