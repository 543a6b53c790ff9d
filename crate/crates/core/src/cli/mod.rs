//! Command-line front end: `analyze`, `solve`, `region` and `montecarlo`.
//!
//! Exit codes: 0 success or converged, 2 input error, 3 diverged,
//! 4 iteration limit reached, 5 internal disagreement between routes.

mod commands;
pub mod matrix_file;
pub mod region_data;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use commands::{analyze, parse_n_range};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DIVERGED: i32 = 3;
pub const EXIT_MAX_ITER: i32 = 4;
pub const EXIT_DISAGREEMENT: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "jgconv", version, about = "Convergence of the Jacobi and Gauss-Seidel iterations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Jacobi,
    GaussSeidel,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolveMethodArg {
    Jacobi,
    GaussSeidel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendArg {
    Roots,
    Hurwitz,
    Region,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Jacobi3,
    Gs3,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide convergence of both methods for a matrix file.
    Analyze {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
        #[arg(long, value_enum, default_value = "all")]
        backend: BackendArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run an iteration on a matrix file with a right-hand side.
    Solve {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "jacobi")]
        method: SolveMethodArg,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 100_000)]
        max_iter: usize,
        /// Initial guess, comma separated reals (default zero).
        #[arg(long, allow_hyphen_values = true)]
        x0: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Emit boundary polylines and a classified grid in the qOp plane.
    Region {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<f64>,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// Also sample the complex boundaries at this root argument.
        #[arg(long, allow_hyphen_values = true)]
        phi1: Option<f64>,
        /// Directory receiving the data files (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo comparison of both methods on random matrices.
    Montecarlo {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        /// Orders as `lo..hi` (inclusive), a single order, or a comma list.
        #[arg(long, default_value = "2..5")]
        n_range: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Worker threads; does not affect the report.
        #[arg(long)]
        workers: Option<usize>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => commands::dispatch(cli.command, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            code
        }
    }
}
