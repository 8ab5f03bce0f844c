//! Scenario resolution (flags over config over defaults) and subcommand
//! execution. Every effective parameter ends up echoed in `summary.json`.

use std::fmt;
use std::fs;
use std::path::Path;

use slotflow_core::config::{ConfigError, NumOrStr, ScenarioConfig};
use slotflow_core::numeric::{exact_string, parse_decimal};
use slotflow_core::queue::flight_departure_increments;
use slotflow_core::report::{
    write_capacity_csv, write_curves_csv, write_plan_csv, write_summary, write_sweep_csv,
    write_trials_csv, CapacityOptSummary, CapacitySummary, ComplianceSummary, CostSummary,
    GridSummary, ImprovementSummary, PlanSummary, QueueSummary, ReportError, ScenarioSummary,
    Summary,
};
use slotflow_core::{
    build_demand_profile, fcfs_metrics, generate_synthetic, grouped_baseline, optimize_capacity,
    parse_schedule, plan_arrivals, read_capacity_profile, run_trials, simulate_queue,
    solve_assignment, sweep, CapacityError, CapacityOptConfig, CapacityProfile, ComplianceConfig,
    ComplianceError, ComplianceModel, CostParams, DemandProfile, ModelError, PeakSpec, QueueError,
    Rational, Schedule, ScheduleError, SimMetrics, SlotGrid,
};

use crate::{
    CapacityArgs, Cli, Command, ComplyArgs, FixedCapacityArgs, GenerateArgs, ScenarioArgs,
    SimulateArgs, SolveArgs, SweepArgs,
};

/// Fatal CLI error, carrying the process exit code.
#[derive(Debug)]
pub(crate) enum CliError {
    /// Arguments or input files fail validation (exit 2).
    Validation(String),
    /// The scenario is well-formed but has no feasible answer (exit 3).
    Infeasible(String),
    /// A solver failed to produce a trustworthy answer (exit 4).
    Solver(String),
    /// Reading or writing a file failed (exit 5).
    Io(String),
}

impl CliError {
    pub(crate) fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::Solver(_) => 4,
            CliError::Io(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m)
            | CliError::Infeasible(m)
            | CliError::Solver(m)
            | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<ConfigError> for CliError {
    fn from(err: ConfigError) -> Self {
        match err {
            ConfigError::Io { .. } => CliError::Io(err.to_string()),
            _ => CliError::Validation(err.to_string()),
        }
    }
}

impl From<ScheduleError> for CliError {
    fn from(err: ScheduleError) -> Self {
        match err {
            ScheduleError::Io(_) => CliError::Io(err.to_string()),
            _ => CliError::Validation(err.to_string()),
        }
    }
}

impl From<ModelError> for CliError {
    fn from(err: ModelError) -> Self {
        match err {
            ModelError::Infeasible { .. } => CliError::Infeasible(err.to_string()),
            _ => CliError::Validation(err.to_string()),
        }
    }
}

impl From<CapacityError> for CliError {
    fn from(err: CapacityError) -> Self {
        match err {
            CapacityError::LpInfeasible => CliError::Infeasible(err.to_string()),
            CapacityError::LpFailed { .. } | CapacityError::VariableOutOfRange { .. } => {
                CliError::Solver(err.to_string())
            }
            CapacityError::InvalidWeights(_) => CliError::Validation(err.to_string()),
            CapacityError::Model(inner) => inner.into(),
        }
    }
}

impl From<QueueError> for CliError {
    fn from(err: QueueError) -> Self {
        match err {
            QueueError::RelationInvalid { .. } => CliError::Infeasible(err.to_string()),
            _ => CliError::Solver(err.to_string()),
        }
    }
}

impl From<ComplianceError> for CliError {
    fn from(err: ComplianceError) -> Self {
        match err {
            ComplianceError::Queue(inner) => inner.into(),
            _ => CliError::Validation(err.to_string()),
        }
    }
}

impl From<ReportError> for CliError {
    fn from(err: ReportError) -> Self {
        CliError::Io(err.to_string())
    }
}

/// Everything an evaluating subcommand needs, after flag/config/default
/// resolution.
struct Scenario {
    grid: SlotGrid,
    params: CostParams,
    load_factor: Rational,
    schedule: Schedule,
    profile: DemandProfile,
    seed: u64,
}

pub(crate) fn run(cli: Cli) -> Result<(), CliError> {
    let config = match &cli.config {
        Some(path) => ScenarioConfig::from_path(path)?,
        None => ScenarioConfig::default(),
    };
    fs::create_dir_all(&cli.out_dir).map_err(|e| {
        CliError::Io(format!(
            "cannot create output directory {}: {e}",
            cli.out_dir.display()
        ))
    })?;
    match &cli.command {
        Command::Solve(args) => run_solve(&cli, &config, args),
        Command::Simulate(args) => run_simulate(&cli, &config, args),
        Command::Capacity(args) => run_capacity(&cli, &config, args),
        Command::Comply(args) => run_comply(&cli, &config, args),
        Command::Sweep(args) => run_sweep(&cli, &config, args),
        Command::Generate(args) => run_generate(&cli, &config, args),
    }
}

/// Flag string > config value > built-in default, all parsed exactly.
fn resolve_decimal(
    field: &str,
    flag: &Option<String>,
    config_value: &Option<NumOrStr>,
    default: &str,
) -> Result<Rational, CliError> {
    if let Some(text) = flag {
        return parse_decimal(text).map_err(|e| {
            CliError::Validation(format!(
                "invalid --{} `{text}`: {e}",
                field.replace('_', "-")
            ))
        });
    }
    if let Some(value) = config_value {
        return Ok(value.to_rational(field)?);
    }
    Ok(parse_decimal(default).expect("built-in defaults parse"))
}

fn resolve_scenario(
    cli: &Cli,
    config: &ScenarioConfig,
    args: &ScenarioArgs,
) -> Result<Scenario, CliError> {
    let delta = args.delta.or(config.grid.delta_minutes).unwrap_or(15);
    let slots = args.slots.or(config.grid.num_slots).unwrap_or(96);
    let day_start = args.day_start.or(config.grid.day_start_minute).unwrap_or(0);
    let grid = SlotGrid::new(delta, slots, day_start)?;

    let alpha = resolve_decimal("alpha", &args.alpha, &config.costs.alpha, "4")?;
    let beta = resolve_decimal("beta", &args.beta, &config.costs.beta, "1")?;
    let gamma = resolve_decimal("gamma", &args.gamma, &config.costs.gamma, "200")?;
    let params = CostParams::new(alpha, beta, gamma)?;

    let load_factor = resolve_decimal(
        "load_factor",
        &args.load_factor,
        &config.demand.load_factor,
        "1",
    )?;
    let seed = cli.seed.or(config.seed).unwrap_or(42);

    let schedule = match &args.schedule {
        Some(path) => parse_schedule(path).map_err(|e| match e {
            ScheduleError::Io(io) => {
                CliError::Io(format!("cannot read schedule {}: {io}", path.display()))
            }
            other => CliError::Validation(format!("{}: {other}", path.display())),
        })?,
        None => generate_synthetic(seed, 260, 49_034, &PeakSpec::default_morning()),
    };
    let profile = build_demand_profile(&schedule, &grid, load_factor)?;
    if cli.verbose {
        eprintln!(
            "scenario `{}`: {} flights, {} passengers in {} groups",
            schedule.label,
            schedule.flights.len(),
            profile.total_passengers(),
            profile.groups().len()
        );
    }
    Ok(Scenario {
        grid,
        params,
        load_factor,
        schedule,
        profile,
        seed,
    })
}

fn capacity_file_error(path: &Path, err: ScheduleError) -> CliError {
    match err {
        ScheduleError::Io(io) => CliError::Io(format!(
            "cannot read capacity file {}: {io}",
            path.display()
        )),
        other => CliError::Validation(format!("{}: {other}", path.display())),
    }
}

fn resolve_capacity(
    config: &ScenarioConfig,
    args: &FixedCapacityArgs,
    grid: &SlotGrid,
) -> Result<(CapacityProfile, String), CliError> {
    if let Some(n) = args.capacity {
        return Ok((
            CapacityProfile::uniform(n, grid.num_slots()),
            format!("uniform({n})"),
        ));
    }
    if let Some(path) = &args.capacity_file {
        let profile = read_capacity_profile(path, grid.num_slots())
            .map_err(|e| capacity_file_error(path, e))?;
        return Ok((profile, format!("profile({})", path.display())));
    }
    if let Some(n) = config.capacity.uniform {
        return Ok((
            CapacityProfile::uniform(n, grid.num_slots()),
            format!("uniform({n})"),
        ));
    }
    if let Some(path) = &config.capacity.file {
        let profile = read_capacity_profile(Path::new(path), grid.num_slots())
            .map_err(|e| capacity_file_error(Path::new(path), e))?;
        return Ok((profile, format!("profile({path})")));
    }
    Ok((
        CapacityProfile::uniform(900, grid.num_slots()),
        "uniform(900)".to_string(),
    ))
}

fn scenario_summary(
    scenario: &Scenario,
    capacity_source: &str,
    capacity: &CapacityProfile,
) -> ScenarioSummary {
    ScenarioSummary {
        label: scenario.schedule.label.clone(),
        num_flights: scenario.schedule.flights.len(),
        total_passengers: scenario.profile.total_passengers(),
        load_factor: exact_string(scenario.load_factor),
        grid: GridSummary::new(&scenario.grid),
        capacity: CapacitySummary::new(capacity_source, capacity),
    }
}

/// FCFS baseline metrics, or `None` (with a warning) when the baseline queue
/// fails the linear-cost relation, which would make its cost meaningless.
fn baseline_metrics(
    scenario: &Scenario,
    capacity: &CapacityProfile,
) -> Result<Option<SimMetrics>, CliError> {
    let grouped = grouped_baseline(&scenario.profile, scenario.grid.num_slots());
    match fcfs_metrics(&grouped, capacity, &scenario.params, &scenario.grid) {
        Ok(metrics) => Ok(Some(metrics)),
        Err(QueueError::RelationInvalid { missed }) => {
            eprintln!(
                "warning: the FCFS baseline leaves {missed} passengers unscreened before \
                 departure; baseline cost omitted from the summary"
            );
            Ok(None)
        }
        Err(other) => Err(other.into()),
    }
}

fn run_solve(cli: &Cli, config: &ScenarioConfig, args: &SolveArgs) -> Result<(), CliError> {
    let scenario = resolve_scenario(cli, config, &args.scenario)?;
    let (capacity, source) = resolve_capacity(config, &args.capacity, &scenario.grid)?;
    let plan = solve_assignment(
        &scenario.profile,
        &capacity,
        &scenario.params,
        &scenario.grid,
    )?;
    if cli.verbose {
        eprintln!("assignment objective {}", exact_string(plan.objective));
    }

    let num_slots = scenario.grid.num_slots();
    let departures = flight_departure_increments(&scenario.profile, num_slots);
    let baseline = baseline_metrics(&scenario, &capacity)?;
    let plan_curves = simulate_queue(&plan_arrivals(&plan, num_slots), &capacity, &scenario.grid)?
        .with_flight_departures(&departures)?;

    let mut summary = Summary {
        scenario: scenario_summary(&scenario, &source, &capacity),
        costs: CostSummary::new(&scenario.params),
        baseline: None,
        plan: Some(PlanSummary::new(&plan)),
        improvement: None,
        capacity_optimization: None,
        compliance: None,
    };
    if let Some(metrics) = &baseline {
        summary.baseline = Some(QueueSummary::new(metrics));
        summary.improvement = Some(ImprovementSummary::new(metrics.total_cost, plan.objective));
        let curves = metrics.curves.clone().with_flight_departures(&departures)?;
        write_curves_csv(
            &cli.out_dir.join("curves_baseline.csv"),
            &curves,
            &capacity,
            &scenario.grid,
        )?;
    }
    write_curves_csv(
        &cli.out_dir.join("curves_plan.csv"),
        &plan_curves,
        &capacity,
        &scenario.grid,
    )?;
    write_plan_csv(
        &cli.out_dir.join("plan.csv"),
        &plan,
        &scenario.params,
        &scenario.grid,
    )?;
    write_summary(&cli.out_dir.join("summary.json"), &summary)?;

    match (&baseline, &summary.improvement) {
        (Some(metrics), Some(improvement)) => println!(
            "baseline cost {} -> plan cost {} ({:.2}% saved); results in {}",
            exact_string(metrics.total_cost),
            exact_string(plan.objective),
            improvement.savings_percent_approx,
            cli.out_dir.display()
        ),
        _ => println!(
            "plan cost {}; results in {}",
            exact_string(plan.objective),
            cli.out_dir.display()
        ),
    }
    Ok(())
}

fn run_simulate(cli: &Cli, config: &ScenarioConfig, args: &SimulateArgs) -> Result<(), CliError> {
    let scenario = resolve_scenario(cli, config, &args.scenario)?;
    let (capacity, source) = resolve_capacity(config, &args.capacity, &scenario.grid)?;
    let grouped = grouped_baseline(&scenario.profile, scenario.grid.num_slots());
    let metrics = fcfs_metrics(&grouped, &capacity, &scenario.params, &scenario.grid)?;
    let departures = flight_departure_increments(&scenario.profile, scenario.grid.num_slots());
    let curves = metrics.curves.clone().with_flight_departures(&departures)?;

    let summary = Summary {
        scenario: scenario_summary(&scenario, &source, &capacity),
        costs: CostSummary::new(&scenario.params),
        baseline: Some(QueueSummary::new(&metrics)),
        plan: None,
        improvement: None,
        capacity_optimization: None,
        compliance: None,
    };
    write_curves_csv(
        &cli.out_dir.join("curves_baseline.csv"),
        &curves,
        &capacity,
        &scenario.grid,
    )?;
    write_summary(&cli.out_dir.join("summary.json"), &summary)?;
    println!(
        "baseline wait {} passenger-hours, cost {}; results in {}",
        exact_string(metrics.total_wait_hours),
        exact_string(metrics.total_cost),
        cli.out_dir.display()
    );
    Ok(())
}

fn run_capacity(cli: &Cli, config: &ScenarioConfig, args: &CapacityArgs) -> Result<(), CliError> {
    let scenario = resolve_scenario(cli, config, &args.scenario)?;
    let lambda1 = resolve_decimal("lambda1", &args.lambda1, &config.optimize.lambda1, "0")?;
    let lambda2 = resolve_decimal("lambda2", &args.lambda2, &config.optimize.lambda2, "10")?;
    let max_capacity = args.max_capacity.or(config.optimize.max_capacity);
    let opt = CapacityOptConfig {
        lambda1,
        lambda2,
        max_capacity,
    };
    let outcome = optimize_capacity(&scenario.profile, &scenario.params, &scenario.grid, &opt)?;
    if cli.verbose {
        eprintln!(
            "capacity LP solved in {} iterations",
            outcome.diagnostics.lp_iterations
        );
    }

    let served = outcome.plan.slot_totals(scenario.grid.num_slots());
    let summary = Summary {
        scenario: scenario_summary(&scenario, "optimized", &outcome.capacities),
        costs: CostSummary::new(&scenario.params),
        baseline: None,
        plan: Some(PlanSummary::new(&outcome.plan)),
        improvement: None,
        capacity_optimization: Some(CapacityOptSummary::new(
            lambda1,
            lambda2,
            max_capacity,
            &outcome.diagnostics,
        )),
        compliance: None,
    };
    write_capacity_csv(
        &cli.out_dir.join("capacity.csv"),
        &outcome.capacities,
        &served,
    )?;
    write_plan_csv(
        &cli.out_dir.join("plan.csv"),
        &outcome.plan,
        &scenario.params,
        &scenario.grid,
    )?;
    write_summary(&cli.out_dir.join("summary.json"), &summary)?;
    println!(
        "optimized capacity: total {}, variation {}, combined objective {}; results in {}",
        outcome.diagnostics.total_capacity,
        outcome.diagnostics.total_variation,
        exact_string(outcome.diagnostics.integral_objective),
        cli.out_dir.display()
    );
    Ok(())
}

fn build_model(name: &str, parameter: f64) -> Result<ComplianceModel, CliError> {
    match name {
        "gaussian" => Ok(ComplianceModel::GaussianJitter {
            sigma_minutes: parameter,
        }),
        "bernoulli" => Ok(ComplianceModel::Bernoulli {
            compliance_probability: parameter,
        }),
        other => Err(CliError::Validation(format!(
            "unknown model `{other}` (expected `gaussian` or `bernoulli`)"
        ))),
    }
}

fn resolve_model_name(flag: &Option<String>, config: &ScenarioConfig) -> Result<String, CliError> {
    flag.clone()
        .or_else(|| config.compliance.model.clone())
        .ok_or_else(|| {
            CliError::Validation(
                "a non-compliance model is required: pass --model gaussian|bernoulli or set \
                 `model` in the [compliance] config section"
                    .to_string(),
            )
        })
}

fn resolve_comply_model(
    args: &ComplyArgs,
    config: &ScenarioConfig,
) -> Result<ComplianceModel, CliError> {
    let name = resolve_model_name(&args.model, config)?;
    let parameter = match name.as_str() {
        "gaussian" => {
            if args.p.is_some() {
                return Err(CliError::Validation(
                    "the gaussian model takes --sigma, not --p".to_string(),
                ));
            }
            args.sigma.or(config.compliance.parameter).ok_or_else(|| {
                CliError::Validation(
                    "the gaussian model needs --sigma or a [compliance] parameter".to_string(),
                )
            })?
        }
        "bernoulli" => {
            if args.sigma.is_some() {
                return Err(CliError::Validation(
                    "the bernoulli model takes --p, not --sigma".to_string(),
                ));
            }
            args.p.or(config.compliance.parameter).ok_or_else(|| {
                CliError::Validation(
                    "the bernoulli model needs --p or a [compliance] parameter".to_string(),
                )
            })?
        }
        other => {
            return Err(CliError::Validation(format!(
                "unknown model `{other}` (expected `gaussian` or `bernoulli`)"
            )))
        }
    };
    build_model(&name, parameter)
}

fn run_comply(cli: &Cli, config: &ScenarioConfig, args: &ComplyArgs) -> Result<(), CliError> {
    let scenario = resolve_scenario(cli, config, &args.scenario)?;
    let (capacity, source) = resolve_capacity(config, &args.capacity, &scenario.grid)?;
    let model = resolve_comply_model(args, config)?;
    let trials = args.trials.or(config.compliance.trials).unwrap_or(200);

    let plan = solve_assignment(
        &scenario.profile,
        &capacity,
        &scenario.params,
        &scenario.grid,
    )?;
    let trial_config = ComplianceConfig {
        model,
        num_trials: trials,
        seed: scenario.seed,
    };
    let result = run_trials(&plan, &capacity, &scenario.grid, &trial_config)?;
    let baseline = baseline_metrics(&scenario, &capacity)?;

    let mut compliance_summary = ComplianceSummary::new(&result);
    let mut summary = Summary {
        scenario: scenario_summary(&scenario, &source, &capacity),
        costs: CostSummary::new(&scenario.params),
        baseline: None,
        plan: Some(PlanSummary::new(&plan)),
        improvement: None,
        capacity_optimization: None,
        compliance: None,
    };
    if let Some(metrics) = &baseline {
        summary.baseline = Some(QueueSummary::new(metrics));
        summary.improvement = Some(ImprovementSummary::new(metrics.total_cost, plan.objective));
        compliance_summary =
            compliance_summary.with_baseline_wait(metrics.total_wait_hours, result.mean_wait_hours);
    }
    summary.compliance = Some(compliance_summary);

    write_trials_csv(&cli.out_dir.join("trials.csv"), &result)?;
    write_plan_csv(
        &cli.out_dir.join("plan.csv"),
        &plan,
        &scenario.params,
        &scenario.grid,
    )?;
    write_summary(&cli.out_dir.join("summary.json"), &summary)?;
    println!(
        "{} {}: mean wait {} passenger-hours (sd {:.4}), missed fraction {:.6}; results in {}",
        result.model.label(),
        result.model.parameter(),
        exact_string(result.mean_wait_hours),
        result.sd_wait_hours,
        result.mean_missed_fraction(),
        cli.out_dir.display()
    );
    Ok(())
}

fn default_points(model: &str) -> Vec<f64> {
    match model {
        "bernoulli" => vec![0.0, 0.25, 0.5, 0.75, 1.0],
        _ => vec![0.0, 5.0, 10.0, 15.0, 30.0, 60.0],
    }
}

fn run_sweep(cli: &Cli, config: &ScenarioConfig, args: &SweepArgs) -> Result<(), CliError> {
    let scenario = resolve_scenario(cli, config, &args.scenario)?;
    let (capacity, source) = resolve_capacity(config, &args.capacity, &scenario.grid)?;
    let name = resolve_model_name(&args.model, config)?;
    let points = args
        .points
        .clone()
        .or_else(|| config.compliance.points.clone())
        .unwrap_or_else(|| default_points(&name));
    if points.is_empty() {
        return Err(CliError::Validation("the sweep grid is empty".to_string()));
    }
    let models = points
        .iter()
        .map(|&value| build_model(&name, value))
        .collect::<Result<Vec<_>, _>>()?;
    let trials = args.trials.or(config.compliance.trials).unwrap_or(200);

    let plan = solve_assignment(
        &scenario.profile,
        &capacity,
        &scenario.params,
        &scenario.grid,
    )?;
    let results = sweep(
        &plan,
        &capacity,
        &scenario.grid,
        &models,
        trials,
        scenario.seed,
    )?;

    let summary = Summary {
        scenario: scenario_summary(&scenario, &source, &capacity),
        costs: CostSummary::new(&scenario.params),
        baseline: None,
        plan: Some(PlanSummary::new(&plan)),
        improvement: None,
        capacity_optimization: None,
        compliance: None,
    };
    write_sweep_csv(&cli.out_dir.join("sweep.csv"), &results)?;
    write_plan_csv(
        &cli.out_dir.join("plan.csv"),
        &plan,
        &scenario.params,
        &scenario.grid,
    )?;
    write_summary(&cli.out_dir.join("summary.json"), &summary)?;
    println!(
        "swept {} {} points x {} trials; results in {}",
        results.len(),
        name,
        trials,
        cli.out_dir.display()
    );
    Ok(())
}

fn run_generate(cli: &Cli, config: &ScenarioConfig, args: &GenerateArgs) -> Result<(), CliError> {
    if args.flights == 0 {
        return Err(CliError::Validation(
            "--flights must be at least 1".to_string(),
        ));
    }
    if args.seats < args.flights as u64 {
        return Err(CliError::Validation(
            "--seats must be at least --flights (every flight needs a seat)".to_string(),
        ));
    }
    let seed = cli.seed.or(config.seed).unwrap_or(42);
    let peak = match args.peak.as_str() {
        "uniform" => {
            if args.peak_center.is_some()
                || args.peak_spread.is_some()
                || args.peak_weight.is_some()
            {
                return Err(CliError::Validation(
                    "--peak-center/--peak-spread/--peak-weight only apply to --peak morning"
                        .to_string(),
                ));
            }
            PeakSpec::Uniform
        }
        "morning" => {
            let (default_center, default_spread, default_weight) = match PeakSpec::default_morning()
            {
                PeakSpec::MorningPeak {
                    center_minute,
                    spread_minutes,
                    weight,
                } => (center_minute, spread_minutes, weight),
                PeakSpec::Uniform => unreachable!("default morning peak is a peak"),
            };
            let center_minute = args.peak_center.unwrap_or(default_center);
            let spread_minutes = args.peak_spread.unwrap_or(default_spread);
            let weight = args.peak_weight.unwrap_or(default_weight);
            if center_minute >= 1440 {
                return Err(CliError::Validation(
                    "--peak-center must be below 1440 (minutes in a day)".to_string(),
                ));
            }
            if !spread_minutes.is_finite() || spread_minutes < 0.0 {
                return Err(CliError::Validation(
                    "--peak-spread must be a finite non-negative number".to_string(),
                ));
            }
            if !(0.0..=1.0).contains(&weight) {
                return Err(CliError::Validation(
                    "--peak-weight must lie in [0, 1]".to_string(),
                ));
            }
            PeakSpec::MorningPeak {
                center_minute,
                spread_minutes,
                weight,
            }
        }
        other => {
            return Err(CliError::Validation(format!(
                "unknown peak shape `{other}` (expected `morning` or `uniform`)"
            )))
        }
    };

    let path = args
        .out
        .clone()
        .unwrap_or_else(|| cli.out_dir.join("schedule.csv"));
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .map_err(|e| CliError::Io(format!("cannot create {}: {e}", parent.display())))?;
        }
    }
    let schedule = generate_synthetic(seed, args.flights, args.seats, &peak);
    slotflow_core::write_schedule(&schedule, &path)?;
    println!(
        "wrote {} flights with {} seats to {}",
        schedule.flights.len(),
        schedule.total_seats(),
        path.display()
    );
    Ok(())
}
