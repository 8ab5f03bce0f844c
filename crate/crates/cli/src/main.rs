//! `slotflow` — slot assignment, queueing baseline, capacity optimization,
//! and compliance simulation for airport security screening.
//!
//! Exit codes: 0 success, 2 invalid arguments or inputs, 3 infeasible
//! scenario, 4 solver failure, 5 I/O error.

mod pipeline;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "slotflow",
    version,
    about = "Optimal passenger-to-slot assignment for security screening",
    propagate_version = true
)]
pub(crate) struct Cli {
    /// Scenario configuration file (TOML).
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    /// Directory result files are written to.
    #[arg(
        long,
        global = true,
        value_name = "DIR",
        env = "SLOTFLOW_OUT_DIR",
        default_value = "."
    )]
    pub out_dir: PathBuf,

    /// Master seed for synthetic schedules and Monte Carlo trials.
    #[arg(long, global = true, value_name = "SEED")]
    pub seed: Option<u64>,

    /// Print progress diagnostics to standard error.
    #[arg(long, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub(crate) enum Command {
    /// Solve the optimal reassignment and compare it with the FCFS baseline.
    Solve(SolveArgs),
    /// Simulate the first-come-first-served baseline queue.
    Simulate(SimulateArgs),
    /// Jointly optimize per-slot screening capacity and the assignment.
    Capacity(CapacityArgs),
    /// Evaluate a plan's robustness under one non-compliance model.
    Comply(ComplyArgs),
    /// Sweep a non-compliance parameter grid.
    Sweep(SweepArgs),
    /// Generate a synthetic flight schedule CSV.
    Generate(GenerateArgs),
}

/// Scenario inputs shared by every evaluating subcommand. Flags override the
/// config file; built-in defaults fill whatever remains.
#[derive(Args)]
pub(crate) struct ScenarioArgs {
    /// Flight schedule CSV; omitted, a deterministic synthetic day is used.
    #[arg(long, value_name = "PATH")]
    pub schedule: Option<PathBuf>,

    /// Slot length in minutes (default 15).
    #[arg(long, value_name = "MIN")]
    pub delta: Option<u32>,

    /// Number of slots in the operating day (default 96).
    #[arg(long, value_name = "N")]
    pub slots: Option<usize>,

    /// Minute of day the first slot starts at (default 0).
    #[arg(long, value_name = "MIN")]
    pub day_start: Option<u32>,

    /// Linear cost per hour a passenger is pushed later than their preferred
    /// slot, exact decimal (default 4).
    #[arg(long, value_name = "DEC")]
    pub alpha: Option<String>,

    /// Quadratic cost coefficient for arriving earlier than preferred, exact
    /// decimal (default 1).
    #[arg(long, value_name = "DEC")]
    pub beta: Option<String>,

    /// Flat cost for pushes of more than one hour late, i.e. past departure,
    /// exact decimal (default 200).
    #[arg(long, value_name = "DEC")]
    pub gamma: Option<String>,

    /// Seats-to-passengers factor, exact decimal (default 1).
    #[arg(long, value_name = "DEC")]
    pub load_factor: Option<String>,
}

/// A fixed screening-capacity profile (as opposed to an optimized one).
#[derive(Args)]
pub(crate) struct FixedCapacityArgs {
    /// Uniform per-slot screening capacity (default 900).
    #[arg(long, value_name = "N", conflicts_with = "capacity_file")]
    pub capacity: Option<u64>,

    /// Per-slot capacity profile CSV (`slot,capacity`).
    #[arg(long, value_name = "PATH")]
    pub capacity_file: Option<PathBuf>,
}

#[derive(Args)]
pub(crate) struct SolveArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[command(flatten)]
    pub capacity: FixedCapacityArgs,
}

#[derive(Args)]
pub(crate) struct SimulateArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[command(flatten)]
    pub capacity: FixedCapacityArgs,
}

#[derive(Args)]
pub(crate) struct CapacityArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,

    /// Weight on total staffed capacity, exact decimal (default 0).
    #[arg(long, value_name = "DEC")]
    pub lambda1: Option<String>,

    /// Weight on slot-to-slot capacity changes, exact decimal (default 10).
    #[arg(long, value_name = "DEC")]
    pub lambda2: Option<String>,

    /// Upper bound on every slot's capacity.
    #[arg(long, value_name = "N")]
    pub max_capacity: Option<u64>,
}

#[derive(Args)]
pub(crate) struct ComplyArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[command(flatten)]
    pub capacity: FixedCapacityArgs,

    /// Non-compliance model: `gaussian` or `bernoulli`.
    #[arg(long, value_name = "NAME")]
    pub model: Option<String>,

    /// Arrival jitter standard deviation in minutes (gaussian model).
    #[arg(long, value_name = "MIN", conflicts_with = "p")]
    pub sigma: Option<f64>,

    /// Probability a passenger accepts the assigned slot (bernoulli model).
    #[arg(long, value_name = "PROB")]
    pub p: Option<f64>,

    /// Monte Carlo trials (default 200).
    #[arg(long, value_name = "N")]
    pub trials: Option<usize>,
}

#[derive(Args)]
pub(crate) struct SweepArgs {
    #[command(flatten)]
    pub scenario: ScenarioArgs,
    #[command(flatten)]
    pub capacity: FixedCapacityArgs,

    /// Non-compliance model: `gaussian` or `bernoulli`.
    #[arg(long, value_name = "NAME")]
    pub model: Option<String>,

    /// Comma-separated parameter values, e.g. `0,0.25,0.5,0.75,1`.
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    pub points: Option<Vec<f64>>,

    /// Monte Carlo trials per point (default 200).
    #[arg(long, value_name = "N")]
    pub trials: Option<usize>,
}

#[derive(Args)]
pub(crate) struct GenerateArgs {
    /// Number of departing flights.
    #[arg(long, value_name = "N", default_value_t = 260)]
    pub flights: u32,

    /// Total seats across all flights.
    #[arg(long, value_name = "N", default_value_t = 49_034)]
    pub seats: u64,

    /// Departure-time shape: `morning` or `uniform`.
    #[arg(long, value_name = "SHAPE", default_value = "morning")]
    pub peak: String,

    /// Center of the morning peak, minutes after midnight.
    #[arg(long, value_name = "MIN")]
    pub peak_center: Option<u32>,

    /// Standard deviation of the morning peak, minutes.
    #[arg(long, value_name = "MIN")]
    pub peak_spread: Option<f64>,

    /// Fraction of flights drawn from the peak.
    #[arg(long, value_name = "FRAC")]
    pub peak_weight: Option<f64>,

    /// Output path (default `<out-dir>/schedule.csv`).
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match pipeline::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
