//! Certifier for conic-line arrangements: exact singular points, weak
//! combinatorics, Jacobian-syzygy invariants, and the numerical constraints
//! an arrangement must satisfy to hit the maximal Jacobian-ideal degree.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mcurves::syzygy::RankMode;
use mcurves_cli::commands::{self, Options, Outcome};
use mcurves_cli::report;

#[derive(Parser)]
#[command(
    name = "mcurves",
    about = "Certify conic-line arrangements and their Jacobian syzygies",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Common {
    /// Emit the full JSON report instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Seed for shears and modular primes (echoed in reports)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Unconditionally exact ranks everywhere (slower)
    #[arg(long, global = true, conflicts_with = "modular")]
    exact: bool,
    /// Modular-certified ranks (default): three random primes, verdict
    /// ranks re-verified exactly
    #[arg(long, global = true)]
    modular: bool,
}

impl Common {
    fn options(&self) -> Options {
        Options {
            seed: self.seed,
            mode: if self.exact {
                RankMode::Exact
            } else {
                RankMode::ModularCertified
            },
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline: combinatorics, syzygies, certification, constraints
    Certify {
        /// Arrangement file
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Weak combinatorics and singular points only
    Combinatorics {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Constraint checks on a weak-combinatorics vector
    Check {
        /// Vector in the form `d,k;n2,n3,...`
        #[arg(long)]
        wc: String,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate admissible one-conic weak combinatorics
    Enumerate {
        /// Number of lines
        #[arg(long)]
        lines: usize,
        /// Restrict to one conic (the only supported enumeration)
        #[arg(long, default_value_t = true)]
        one_conic: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Delete a conic and analyze the deletion arrangement
    DeleteConic {
        file: PathBuf,
        /// Index of the conic to delete
        #[arg(long, default_value_t = 0)]
        conic: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn read_file(path: &PathBuf) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| Outcome {
        report: report::Report::new("read", 0),
        exit: commands::EXIT_PARSE,
        error: Some(format!("cannot read {}: {e}", path.display())),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (outcome, common) = match &cli.command {
        Command::Certify { file, common } => (
            read_file(file).map(|text| commands::cmd_certify(&text, common.options())),
            *common,
        ),
        Command::Combinatorics { file, common } => (
            read_file(file).map(|text| commands::cmd_combinatorics(&text, common.options())),
            *common,
        ),
        Command::Check { wc, common } => {
            (Ok(commands::cmd_check(wc, common.options())), *common)
        }
        Command::Enumerate {
            lines,
            one_conic,
            common,
        } => {
            if !one_conic {
                (
                    Err(Outcome {
                        report: report::Report::new("enumerate", common.seed),
                        exit: commands::EXIT_PARSE,
                        error: Some("only --one-conic enumeration is supported".into()),
                    }),
                    *common,
                )
            } else {
                (Ok(commands::cmd_enumerate(*lines, common.options())), *common)
            }
        }
        Command::DeleteConic {
            file,
            conic,
            common,
        } => (
            read_file(file)
                .map(|text| commands::cmd_delete_conic(&text, *conic, common.options())),
            *common,
        ),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(o) => o,
    };
    if common.json {
        let mut value = serde_json::to_value(&outcome.report).expect("serializable report");
        if let Some(err) = &outcome.error {
            value["error"] = serde_json::Value::String(err.clone());
        }
        value["exit_code"] = serde_json::Value::from(outcome.exit);
        println!("{}", serde_json::to_string_pretty(&value).expect("printable"));
    } else {
        commands::print_human(&outcome);
    }
    ExitCode::from(outcome.exit as u8)
}
