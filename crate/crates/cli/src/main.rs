mod args;
mod commands;
mod input;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(a) => commands::analyze(a),
        Command::Sweep(a) => commands::sweep(a),
        Command::Verify(a) => commands::verify(a),
        Command::Persistence(a) => commands::persistence(a),
        Command::Torsion(a) => commands::torsion(a),
        Command::Trajectory(a) => commands::trajectory(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tensegrity: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
