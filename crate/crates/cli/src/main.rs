use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nichols_cli::{execute, Command, Options, EXIT_PARSE};

#[derive(Parser)]
#[command(
    name = "nichols",
    version,
    about = "Quotient towers of braided tensor bialgebras and truncated Nichols algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Validate a braiding (invertibility and the Yang-Baxter equation)
    Check(Common),
    /// Iterate the tower and report the rank at the degree cutoff
    Rank(Common),
    /// Compare the stabilized tower with the symmetrizer construction
    Nichols(Common),
    /// Print a basis of the primitives of one stage and degree
    Primitives {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        stage: usize,
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Args)]
struct Common {
    /// Job document; read from stdin when absent
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    cutoff: Option<usize>,
    #[arg(long)]
    max_iter: Option<usize>,
    /// Also compare with the symmetrizer construction
    #[arg(long)]
    oracle: bool,
    /// Directory for cached tower stages
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Print the JSON report instead of a table
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE as u8 } else { 0 });
        }
    };
    let (command, common) = match cli.command {
        Sub::Check(c) => (Command::Check, c),
        Sub::Rank(c) => (Command::Rank, c),
        Sub::Nichols(c) => (Command::Nichols, c),
        Sub::Primitives { common, stage, degree } => (Command::Primitives { stage, degree }, common),
    };
    let input = match &common.input {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    };
    let input = match input {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: cannot read input: {e}");
            return ExitCode::from(EXIT_PARSE as u8);
        }
    };
    let opts = Options {
        cutoff: common.cutoff,
        max_iter: common.max_iter,
        oracle: common.oracle,
        cache: common.cache,
        json: common.json,
    };
    let outcome = execute(command, &input, &opts);
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
