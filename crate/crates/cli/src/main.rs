//! Command-line front end: parse a group spec, run the analysis, and print
//! the report.
//!
//! Exit codes: 0 = verdict produced, 2 = input error, 3 = cap exceeded.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use hh1_core::catalog::parse_spec;
use hh1_core::report::{analyze, emit_json, emit_text, write_dot_files, AnalyzeOptions};

#[derive(Parser)]
#[command(
    name = "hh1",
    version,
    about = "Solvability of HH^1(kG) via transfer graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a group spec at a prime
    Analyze {
        /// Path to a JSON group spec
        #[arg(long)]
        input: PathBuf,
        /// The prime p of the coefficient field
        #[arg(long)]
        prime: u32,
        /// Also run the derivation-algebra oracle (order <= 32)
        #[arg(long)]
        full_oracle: bool,
        /// Write gamma.dot / gamma_reduced.dot / gamma2.dot into a directory
        #[arg(long)]
        emit_dot: Option<PathBuf>,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Analyze {
            input,
            prime,
            full_oracle,
            emit_dot,
            format,
        } => {
            let text = match std::fs::read_to_string(&input) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: cannot read {}: {e}", input.display());
                    return ExitCode::from(EXIT_INPUT);
                }
            };
            let spec = match parse_spec(&text) {
                Ok(s) => s,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_INPUT);
                }
            };
            let options = AnalyzeOptions { full_oracle };
            let analysis = match analyze(&spec, prime, &options) {
                Ok(a) => a,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(if e.is_cap() { EXIT_CAP } else { EXIT_INPUT });
                }
            };
            if let Some(dir) = emit_dot {
                if let Err(e) = write_dot_files(&analysis, &dir) {
                    eprintln!("error: cannot write DOT files: {e}");
                    return ExitCode::from(EXIT_INPUT);
                }
            }
            match format {
                Format::Json => print!("{}", emit_json(&analysis.report)),
                Format::Text => print!("{}", emit_text(&analysis.report)),
            }
            ExitCode::SUCCESS
        }
    }
}
