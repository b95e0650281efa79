use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use redpow::dsl;
use redpow::oracle::FiniteModel;

#[derive(Parser)]
#[command(
    name = "redpow",
    version,
    about = "Exact computation in reduced power algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a program and print its report.
    Run {
        file: PathBuf,
        /// Seed for the samples drawn by `commutes` queries.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON report here instead of printing it.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Verify the ideal/filter correspondence on a finite index set.
    Oracle {
        #[arg(long)]
        n: usize,
    },
    /// Parse a program without evaluating it.
    Check { file: PathBuf },
}

const USAGE_ERROR: u8 = 2;

fn load(file: &PathBuf) -> Result<dsl::Program, ExitCode> {
    let source = fs::read_to_string(file).map_err(|e| {
        eprintln!("redpow: cannot read {}: {e}", file.display());
        ExitCode::from(USAGE_ERROR)
    })?;
    dsl::parse(&source).map_err(|e| {
        eprintln!("{}:{e}", file.display());
        ExitCode::from(USAGE_ERROR)
    })
}

fn run(cli: Cli) -> Result<ExitCode, ExitCode> {
    match cli.command {
        Command::Run { file, seed, json } => {
            let program = load(&file)?;
            let report = dsl::evaluate(&program, seed);
            match json {
                Some(path) => {
                    fs::write(&path, report.to_json()).map_err(|e| {
                        eprintln!("redpow: cannot write {}: {e}", path.display());
                        ExitCode::from(USAGE_ERROR)
                    })?;
                    print!("{}", report.summary());
                }
                None => print!("{}", report.to_json()),
            }
            Ok(if report.failed() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Oracle { n } => {
            let model = FiniteModel::new(n).map_err(|e| {
                eprintln!("redpow: {e}");
                ExitCode::from(USAGE_ERROR)
            })?;
            let report = model.verify_correspondence();
            println!("{report}");
            Ok(if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Check { file } => {
            let program = load(&file)?;
            println!("{}: {} statements ok", file.display(), program.stmts.len());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE_ERROR)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    run(cli).unwrap_or_else(|code| code)
}
