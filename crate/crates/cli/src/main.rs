//! `qudit`: encode qutrit/ququad states onto two-photon polarization.
//!
//! Exit status: 0 when every verification passes, 1 when a residual misses
//! its threshold, 2 on usage or input errors.

mod commands;
mod files;

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "qudit", version, about = "Two-photon polarization qudit encoder")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute seed amplitude and local unitaries for a state file and write a plan file.
    Encode {
        input: PathBuf,
        output: PathBuf,
        /// Use the explicit decomposition for (|HH> + e^(i psi)|VV> + e^(i phi)|psi+>)/sqrt(3) qutrits.
        #[arg(long)]
        closed_form: bool,
    },
    /// Factorize the plan's unitaries and print waveplate sequences.
    Synthesize { plan: PathBuf },
    /// Build and verify the mutually unbiased bases for d = 3 or d = 4.
    Mub {
        #[arg(short, long, value_parser = clap::value_parser!(u8).range(3..=4))]
        dimension: u8,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Print every basis state as a one-line state file.
        #[arg(long)]
        emit_states: bool,
    },
    /// Pump waveplate setting for a seed amplitude x in [0, 1].
    Pump {
        #[arg(allow_negative_numbers = true)]
        x: f64,
    },
    /// Simulate the two-basis (IV, V) key exchange.
    Qkd {
        #[arg(long, default_value_t = 100_000)]
        rounds: u64,
        /// Enable an intercept-resend eavesdropper.
        #[arg(long)]
        eve: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let passed = match cli.command {
        Command::Encode {
            input,
            output,
            closed_form,
        } => commands::cmd_encode(&input, &output, closed_form, &mut out, &mut io::stderr())?,
        Command::Synthesize { plan } => commands::cmd_synthesize(&plan, &mut out)?,
        Command::Mub {
            dimension,
            tol,
            emit_states,
        } => commands::cmd_mub(usize::from(dimension), tol, emit_states, &mut out)?,
        Command::Pump { x } => commands::cmd_pump(x, &mut out)?,
        Command::Qkd { rounds, eve, seed } => commands::cmd_qkd(rounds, eve, seed, &mut out)?,
    };
    out.flush()?;
    Ok(passed)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
