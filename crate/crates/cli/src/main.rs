//! `bethe`: batch front end for the bethe-core verification suites.
//!
//! Exits with 0 when every expectation holds. A violated scientific
//! expectation exits with 1; usage and configuration errors exit with 2.

mod args;
mod commands;
mod config;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, CommonArgs, VerifyCommand};
use config::{Failure, RunConfig};
use report::Report;

fn run(cli: Cli) -> Result<Report, Failure> {
    let (name, args, default_n, max_n): (&str, &CommonArgs, usize, Option<usize>) =
        match &cli.command {
            Command::Consistency(a) => ("consistency", a, 3, None),
            Command::Build(a) => ("build", a, 2, None),
            Command::Verify { check } => match check {
                VerifyCommand::Boundary(a) => ("verify boundary", a, 2, None),
                VerifyCommand::Eigen(a) => ("verify eigen", a, 2, None),
                VerifyCommand::Duality(a) => ("verify duality", a, 2, None),
                VerifyCommand::Halfline(a) => ("verify halfline", a, 1, None),
            },
            Command::Scatter(a) => ("scatter", a, 1, Some(1)),
            Command::Reps(a) => ("reps", a, 3, Some(commands::REPS_MAX_RANK)),
        };
    let mut cfg = RunConfig::new(name, args, default_n, max_n)?;
    let report = match &cli.command {
        Command::Consistency(_) => commands::consistency(&mut cfg)?,
        Command::Build(a) => commands::build(&mut cfg, a)?,
        Command::Verify { check } => match check {
            VerifyCommand::Boundary(a) => commands::verify_boundary(&mut cfg, a)?,
            VerifyCommand::Eigen(a) => commands::verify_eigen(&mut cfg, a)?,
            VerifyCommand::Duality(a) => commands::verify_duality(&mut cfg, a)?,
            VerifyCommand::Halfline(a) => commands::verify_halfline(&mut cfg, a)?,
        },
        Command::Scatter(a) => commands::scatter(&mut cfg, a)?,
        Command::Reps(_) => commands::reps(&mut cfg)?,
    };
    report::emit(&cfg, &report)?;
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(report) => {
            for line in &report.summary {
                eprintln!("{line}");
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
