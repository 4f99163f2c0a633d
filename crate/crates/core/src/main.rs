use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use surfcat::cli::{self, Format, DEFAULT_ITERS, DEFAULT_SEED};

/// Labeled cobordisms and A-Frobenius algebras, evaluated exactly.
#[derive(Parser)]
#[command(name = "surfcat", version)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Matrix,
    Components,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Frobenius and action axioms of an algebra file.
    Check { algebra: PathBuf },
    /// Evaluate a cobordism expression over an algebra.
    Eval {
        algebra: PathBuf,
        expr: String,
        #[arg(long, value_enum, default_value = "matrix")]
        format: FormatArg,
    },
    /// Print the canonical component list of an expression.
    Canon { group: String, expr: String },
    /// Run FIRST then SECOND and print the canonical composite.
    Compose {
        group: String,
        first: String,
        second: String,
    },
    /// Extract the algebra back from its evaluator and run the seeded
    /// functoriality, slicing and monoidality suites.
    Roundtrip {
        algebra: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_ITERS)]
        iters: usize,
    },
    /// Check and round-trip every shipped fixture.
    Selftest {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        iters: usize,
    },
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match args.command {
        Command::Check { algebra } => cli::check(&algebra),
        Command::Eval {
            algebra,
            expr,
            format,
        } => {
            let format = match format {
                FormatArg::Matrix => Format::Matrix,
                FormatArg::Components => Format::Components,
            };
            cli::eval(&algebra, &expr, format)
        }
        Command::Canon { group, expr } => cli::canon(&group, &expr),
        Command::Compose {
            group,
            first,
            second,
        } => cli::compose(&group, &first, &second),
        Command::Roundtrip {
            algebra,
            seed,
            iters,
        } => cli::roundtrip(&algebra, seed, iters),
        Command::Selftest { seed, iters } => cli::selftest(seed, iters),
    };
    println!("{}", outcome.output);
    ExitCode::from(outcome.code as u8)
}
