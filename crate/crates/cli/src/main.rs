use std::process::ExitCode;

use chromobruhat::report::{analyze, golden};
use chromobruhat::verify::{run_check, Check, ExprRule, VerifyOptions, DEFAULT_COUNTEREXAMPLE_CAP};
use chromobruhat::{Error, Permutation};
use clap::{Parser, Subcommand, ValueEnum};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "chromobruhat", version, about = "Bruhat intervals, inversion arrangements and chromatic polynomials")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Report every statistic of one permutation, given in one-line notation.
    Analyze {
        /// e.g. 4132, or 10,1,2,3,4,5,6,7,8,9 for n > 9
        permutation: String,
    },
    /// Run one exhaustive check over all of S_n.
    Verify {
        /// conjectureA, conjectureB, phi-injective, phi-surjective-iff, going-down,
        /// characterization, betti, chromatic-identity, opy, recurrences,
        /// hull-vs-standard or weak-chain
        #[arg(long)]
        check: Check,
        #[arg(long)]
        n: usize,
        /// Worker threads (defaults to one per core).
        #[arg(long)]
        jobs: Option<usize>,
        /// Reduced expressions used for the lattice.
        #[arg(long, default_value = "canonical")]
        expr: ExprRule,
        /// Report every counterexample instead of the first ten.
        #[arg(long)]
        all_counterexamples: bool,
        /// Skip the per-chain invariant checks.
        #[arg(long)]
        no_phi_checks: bool,
        /// Include elapsed time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Compare the worked example for 4132 against the embedded fixtures.
    Golden,
}

fn emit<T: serde::Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).expect("reports serialize")),
        Format::Text => print!("{}", text()),
    }
}

fn usage_error(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(EXIT_USAGE)
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Analyze { permutation } => {
            let w: Permutation = match permutation.parse() {
                Ok(w) => w,
                Err(e) => return usage_error(&e),
            };
            match analyze(&w) {
                Ok(a) => {
                    emit(cli.format, &a, || a.to_text());
                    ExitCode::SUCCESS
                }
                Err(e @ Error::CeilingExceeded { .. }) => usage_error(&e),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_FAIL)
                }
            }
        }
        Command::Verify {
            check,
            n,
            jobs,
            expr,
            all_counterexamples,
            no_phi_checks,
            timing,
        } => {
            let options = VerifyOptions {
                jobs,
                expr,
                counterexample_cap: (!all_counterexamples).then_some(DEFAULT_COUNTEREXAMPLE_CAP),
                timing,
                phi_checks: !no_phi_checks,
            };
            match run_check(check, n, &options) {
                Ok(report) => {
                    emit(cli.format, &report, || report.to_text());
                    if report.pass {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(EXIT_FAIL)
                    }
                }
                Err(e @ (Error::CeilingExceeded { .. } | Error::UnsupportedSize(_))) => usage_error(&e),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(EXIT_FAIL)
                }
            }
        }
        Command::Golden => match golden() {
            Ok(report) => {
                emit(cli.format, &report, || report.to_text());
                if report.pass {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(EXIT_FAIL)
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_FAIL)
            }
        },
    }
}

fn main() -> ExitCode {
    match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}
