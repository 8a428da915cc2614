//! `padic-cauchy`: solve and verify p-adic Cauchy problems from JSON files.
//!
//! Exit codes: 0 success, 2 a verification failed, 3 precision exhausted,
//! 4 invalid input or I/O error.

mod commands;
mod problem;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use padic_cauchy::Error;

use commands::{Outcome, Overrides};
use problem::{FactorialProblem, ProblemFile, SCHEMA_VERSION};

#[derive(Parser, Debug)]
#[command(name = "padic-cauchy", version, about = "Mittag-Leffler series solutions of p-adic Cauchy problems")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Override the prime of the problem file.
    #[arg(long, global = true)]
    p: Option<u32>,
    /// Initial precision cap in p-adic digits (doubled up to twice on exhaustion).
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Override the number of series terms.
    #[arg(long, global = true)]
    truncation: Option<usize>,
    /// Override the exact total degree of PDE output.
    #[arg(long, global = true)]
    degree: Option<usize>,
    /// Write the JSON report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// No summary on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
    /// Worker threads for the per-k series (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve y^(m) = A y on Q_p^d.
    SolveOde { file: PathBuf },
    /// Solve d^m u/dt^m = A u for a differential operator A.
    SolvePde { file: PathBuf },
    /// Certify the type of a vector with respect to a matrix.
    Type { file: PathBuf },
    /// Expand (and optionally evaluate) F_k(z; A) x.
    Ml { file: PathBuf },
    /// Re-check the recurrence of a stored solve-ode or solve-pde report.
    Verify { file: PathBuf },
    /// Tabulate the factorial norm bounds.
    FactorialBounds {
        file: Option<PathBuf>,
        #[arg(long)]
        n_max: Option<u64>,
    },
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn parse_problem(text: &str, expect: &str) -> Result<ProblemFile, Failure> {
    let problem: ProblemFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if problem.kind() != expect {
        return Err(Error::Parse(format!("expected a {expect:?} problem, got {:?}", problem.kind())).into());
    }
    Ok(problem)
}

fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let g = &cli.global;
    let o =
        Overrides { p: g.p, precision: g.precision, truncation: g.truncation, degree: g.degree, threads: g.threads };
    let (file, kind) = match &cli.command {
        Command::SolveOde { file } => (file, "ode"),
        Command::SolvePde { file } => (file, "pde"),
        Command::Type { file } => (file, "type"),
        Command::Ml { file } => (file, "ml"),
        Command::Verify { file } => return Ok(commands::verify_report(&read(file)?)?),
        Command::FactorialBounds { file, n_max } => {
            let mut x = match file {
                Some(f) => match parse_problem(&read(f)?, "factorial-bounds")? {
                    ProblemFile::FactorialBounds(x) => x,
                    _ => unreachable!(),
                },
                None => FactorialProblem {
                    schema_version: SCHEMA_VERSION,
                    p: g.p.ok_or_else(|| Error::InvalidProblem("factorial-bounds needs --p or a file".into()))?,
                    n_max: n_max.unwrap_or(100),
                },
            };
            if let Some(n) = n_max {
                x.n_max = *n;
            }
            return Ok(commands::factorial_cmd(x, &o)?);
        }
    };
    Ok(commands::run_problem(parse_problem(&read(file)?, kind)?, &o)?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            if let Some(path) = &cli.global.output {
                if let Err(e) = std::fs::write(path, &out.json) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(4);
                }
            } else {
                print!("{}", out.json);
            }
            if !cli.global.quiet {
                eprintln!("{}", out.summary);
            }
            ExitCode::from(if out.verified { 0 } else { 2 })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(4)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::PrecisionExhausted(_)) { 3 } else { 4 })
        }
    }
}
