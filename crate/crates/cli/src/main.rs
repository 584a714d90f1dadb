mod commands;
mod input;
mod record;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use dirac_core::Coupling;

#[derive(Parser)]
#[command(
    name = "dirac-liouville",
    version,
    about = "Decide Liouvillian solvability of the 1D Dirac equation with polynomial potentials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce, solve, verify and complete the spinor for one problem.
    Solve {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Predict solvability from the classification alone.
    Classify {
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compare solver verdicts with the classification over a grid.
    Sweep {
        #[command(flatten)]
        grid: SweepArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Tabulate the Dirac oscillator levels E² = 2kλ.
    Hermite {
        #[command(flatten)]
        family: HermiteArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check a candidate component "P * exp(W)" exactly.
    Verify {
        /// Candidate solution, e.g. "x * exp(-x^2/2)".
        #[arg(long, allow_hyphen_values = true)]
        solution: String,
        #[command(flatten)]
        problem: ProblemArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate "P * exp(W)" at a rational point.
    Eval {
        #[arg(long, allow_hyphen_values = true)]
        solution: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        #[arg(long, default_value_t = 10)]
        digits: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ProblemArgs {
    #[arg(long, default_value = "scalar")]
    pub coupling: Coupling,
    #[arg(long, allow_hyphen_values = true)]
    pub potential: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub mass: String,
    /// Give m through m² (m may then lie outside Q(i)).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "mass")]
    pub mass_squared: Option<String>,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub energy: String,
    /// Give E through E² (E may then lie outside Q(i)).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "energy")]
    pub energy_squared: Option<String>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub component: u8,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    /// Degree range `a..b` (inclusive) or a single degree.
    #[arg(long, default_value = "2..5")]
    pub degrees: String,
    /// Leading coefficients of the potential.
    #[arg(long, allow_hyphen_values = true, default_value = "-2,-1,1,2")]
    pub coeff_set: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0,1,3/2")]
    pub masses: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0,1,5/2")]
    pub energies: String,
    #[arg(long, default_value = "scalar,vector")]
    pub couplings: String,
    #[arg(long, default_value = "1,2")]
    pub components: String,
    /// Seed for the random lower-order term added to each potential.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sweep pure monomials.
    #[arg(long)]
    pub no_lower_term: bool,
    /// Worker threads; defaults to the number of available cores.
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Args, Debug, Clone)]
pub struct HermiteArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub lambda: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub mass: String,
    #[arg(long, default_value_t = 5)]
    pub kmax: u32,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (result, format) = match cli.command {
        Command::Solve { problem, output } => (commands::solve(&problem), output.format),
        Command::Classify { problem, output } => (commands::classify(&problem), output.format),
        Command::Sweep { grid, output } => (commands::sweep(&grid), output.format),
        Command::Hermite { family, output } => (commands::hermite(&family), output.format),
        Command::Verify {
            solution,
            problem,
            output,
        } => (commands::verify(&solution, &problem), output.format),
        Command::Eval {
            solution,
            at,
            digits,
            output,
        } => (commands::eval(&solution, &at, digits), output.format),
    };
    match result {
        Ok(outcome) => {
            let ms = start.elapsed().as_millis() as u64;
            print!("{}", record::render(&outcome, format, ms));
            ExitCode::from(outcome.status.code())
        }
        Err(err) => {
            eprintln!("{}", err);
            ExitCode::from(err.status().code())
        }
    }
}
