//! Deterministic output files: a JSON summary plus CSV tables for plans,
//! queue curves, capacity profiles, and Monte Carlo results.
//!
//! Exact quantities are written as exact decimal-or-fraction strings (see
//! [`exact_string`](crate::numeric::exact_string)) alongside `_approx` double
//! fields for plotting. Field order, row order, and float formatting are all
//! fixed, so reruns produce byte-identical files.

use std::fs::File;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;

use crate::assignment::{AssignmentPlan, CapacityProfile, CostParams, SlotGrid};
use crate::capacity::CapacityDiagnostics;
use crate::compliance::ComplianceResult;
use crate::numeric::{exact_string, rational_to_f64, Rational};
use crate::queue::{CumulativeCurves, SimMetrics};
use crate::reassignment_cost;

/// Errors from report writing.
#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot serialize summary: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot write csv: {0}")]
    Csv(#[from] csv::Error),
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> ReportError + '_ {
    move |source| ReportError::Io {
        path: path.display().to_string(),
        source,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GridSummary {
    pub delta_minutes: u32,
    pub num_slots: usize,
    pub day_start_minute: u32,
}

impl GridSummary {
    pub fn new(grid: &SlotGrid) -> Self {
        GridSummary {
            delta_minutes: grid.delta_minutes(),
            num_slots: grid.num_slots(),
            day_start_minute: grid.day_start_minute(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CostSummary {
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
}

impl CostSummary {
    pub fn new(params: &CostParams) -> Self {
        CostSummary {
            alpha: exact_string(params.alpha()),
            beta: exact_string(params.beta()),
            gamma: exact_string(params.gamma()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CapacitySummary {
    /// Where the profile came from: `"uniform"`, `"file"`, or `"optimized"`.
    pub source: String,
    pub total: u64,
    pub min_slot: u64,
    pub max_slot: u64,
}

impl CapacitySummary {
    pub fn new(source: &str, capacity: &CapacityProfile) -> Self {
        CapacitySummary {
            source: source.to_string(),
            total: capacity.per_slot().iter().sum(),
            min_slot: capacity.per_slot().iter().copied().min().unwrap_or(0),
            max_slot: capacity.per_slot().iter().copied().max().unwrap_or(0),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScenarioSummary {
    pub label: String,
    pub num_flights: usize,
    pub total_passengers: u64,
    pub load_factor: String,
    pub grid: GridSummary,
    pub capacity: CapacitySummary,
}

#[derive(Debug, Clone, Serialize)]
pub struct QueueSummary {
    pub total_wait_hours: String,
    pub total_wait_hours_approx: f64,
    pub total_cost: String,
    pub total_cost_approx: f64,
    pub spillover: u64,
    pub max_backlog: u64,
    pub missed_flights: u64,
}

impl QueueSummary {
    pub fn new(metrics: &SimMetrics) -> Self {
        QueueSummary {
            total_wait_hours: exact_string(metrics.total_wait_hours),
            total_wait_hours_approx: rational_to_f64(metrics.total_wait_hours),
            total_cost: exact_string(metrics.total_cost),
            total_cost_approx: rational_to_f64(metrics.total_cost),
            spillover: metrics.spillover,
            max_backlog: metrics.max_backlog,
            missed_flights: metrics.missed_flights,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PlanSummary {
    pub objective: String,
    pub objective_approx: f64,
    pub total_passengers: u64,
    /// Passengers assigned away from their preferred slot.
    pub moved_passengers: u64,
    /// Passengers assigned past their departure slot.
    pub assigned_past_departure: u64,
}

impl PlanSummary {
    pub fn new(plan: &AssignmentPlan) -> Self {
        let mut moved = 0u64;
        let mut past_departure = 0u64;
        for entry in &plan.entries {
            for (&slot, &count) in &entry.by_slot {
                if slot != entry.group.preferred_slot {
                    moved += count;
                }
                if slot > entry.group.departure_slot {
                    past_departure += count;
                }
            }
        }
        PlanSummary {
            objective: exact_string(plan.objective),
            objective_approx: rational_to_f64(plan.objective),
            total_passengers: plan.total_passengers(),
            moved_passengers: moved,
            assigned_past_departure: past_departure,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ImprovementSummary {
    pub baseline_cost: String,
    pub plan_cost: String,
    pub savings: String,
    pub savings_percent_approx: f64,
}

impl ImprovementSummary {
    pub fn new(baseline_cost: Rational, plan_cost: Rational) -> Self {
        let savings = baseline_cost - plan_cost;
        let percent = if baseline_cost == Rational::from_integer(0) {
            0.0
        } else {
            100.0 * rational_to_f64(savings) / rational_to_f64(baseline_cost)
        };
        ImprovementSummary {
            baseline_cost: exact_string(baseline_cost),
            plan_cost: exact_string(plan_cost),
            savings: exact_string(savings),
            savings_percent_approx: percent,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CapacityOptSummary {
    pub lambda1: String,
    pub lambda2: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_capacity: Option<u64>,
    pub lp_objective_approx: f64,
    pub lp_iterations: usize,
    pub assignment_cost: String,
    pub integral_objective: String,
    pub total_capacity: u64,
    pub total_variation: u64,
}

impl CapacityOptSummary {
    pub fn new(
        lambda1: Rational,
        lambda2: Rational,
        max_capacity: Option<u64>,
        diagnostics: &CapacityDiagnostics,
    ) -> Self {
        CapacityOptSummary {
            lambda1: exact_string(lambda1),
            lambda2: exact_string(lambda2),
            max_capacity,
            lp_objective_approx: diagnostics.lp_objective,
            lp_iterations: diagnostics.lp_iterations,
            assignment_cost: exact_string(diagnostics.assignment_cost),
            integral_objective: exact_string(diagnostics.integral_objective),
            total_capacity: diagnostics.total_capacity,
            total_variation: diagnostics.total_variation,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplianceSummary {
    pub model: String,
    pub parameter: f64,
    pub trials: usize,
    pub seed: u64,
    pub mean_wait_hours: String,
    pub mean_wait_hours_approx: f64,
    pub sd_wait_hours: f64,
    pub mean_missed: String,
    pub mean_missed_fraction: f64,
    pub sd_missed: f64,
    /// Percent reduction of mean waiting time relative to the FCFS baseline,
    /// present only when the baseline was evaluated in the same run.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tw_reduction_vs_baseline_percent_approx: Option<f64>,
}

impl ComplianceSummary {
    pub fn new(result: &ComplianceResult) -> Self {
        ComplianceSummary {
            model: result.model.label().to_string(),
            parameter: result.model.parameter(),
            trials: result.num_trials,
            seed: result.seed,
            mean_wait_hours: exact_string(result.mean_wait_hours),
            mean_wait_hours_approx: rational_to_f64(result.mean_wait_hours),
            sd_wait_hours: result.sd_wait_hours,
            mean_missed: exact_string(result.mean_missed),
            mean_missed_fraction: result.mean_missed_fraction(),
            sd_missed: result.sd_missed,
            tw_reduction_vs_baseline_percent_approx: None,
        }
    }

    /// Records how much the mean wait improves on the baseline's total wait.
    pub fn with_baseline_wait(mut self, baseline_wait_hours: Rational, mean: Rational) -> Self {
        if baseline_wait_hours > Rational::from_integer(0) {
            let ratio = rational_to_f64(mean) / rational_to_f64(baseline_wait_hours);
            self.tw_reduction_vs_baseline_percent_approx = Some(100.0 * (1.0 - ratio));
        }
        self
    }
}

/// The top-level summary document. Sections a command does not produce stay
/// out of the file entirely.
#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub scenario: ScenarioSummary,
    pub costs: CostSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline: Option<QueueSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<PlanSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub improvement: Option<ImprovementSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub capacity_optimization: Option<CapacityOptSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub compliance: Option<ComplianceSummary>,
}

/// Writes the summary as pretty JSON with a trailing newline.
pub fn write_summary(path: &Path, summary: &Summary) -> Result<(), ReportError> {
    let mut text = serde_json::to_string_pretty(summary)?;
    text.push('\n');
    let mut file = File::create(path).map_err(io_err(path))?;
    file.write_all(text.as_bytes()).map_err(io_err(path))?;
    Ok(())
}

/// Writes the plan as CSV: one row per (group, assigned slot) with the exact
/// per-passenger cost.
pub fn write_plan_csv(
    path: &Path,
    plan: &AssignmentPlan,
    params: &CostParams,
    grid: &SlotGrid,
) -> Result<(), ReportError> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut writer = csv::Writer::from_writer(file);
    writer.write_record([
        "group",
        "preferred_slot",
        "departure_slot",
        "assigned_slot",
        "count",
        "unit_cost",
    ])?;
    for (g, entry) in plan.entries.iter().enumerate() {
        for (&slot, &count) in &entry.by_slot {
            writer.write_record([
                g.to_string(),
                entry.group.preferred_slot.to_string(),
                entry.group.departure_slot.to_string(),
                slot.to_string(),
                count.to_string(),
                exact_string(reassignment_cost(&entry.group, slot, params, grid)),
            ])?;
        }
    }
    writer.flush().map_err(io_err(path))?;
    Ok(())
}

/// Writes cumulative queue curves as CSV, one row per slot. The
/// flight-departure column is empty when the curve was not attached.
pub fn write_curves_csv(
    path: &Path,
    curves: &CumulativeCurves,
    capacity: &CapacityProfile,
    grid: &SlotGrid,
) -> Result<(), ReportError> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut writer = csv::Writer::from_writer(file);
    writer.write_record([
        "slot",
        "start_minute",
        "cum_arrivals",
        "cum_processed",
        "cum_flight_departures",
        "capacity",
    ])?;
    for t in 0..curves.num_slots() {
        let departures = curves
            .cumulative_flight_departures
            .as_ref()
            .map(|d| d[t].to_string())
            .unwrap_or_default();
        writer.write_record([
            t.to_string(),
            grid.slot_start_minute(t).to_string(),
            curves.cumulative_arrivals[t].to_string(),
            curves.cumulative_processed[t].to_string(),
            departures,
            capacity.get(t).to_string(),
        ])?;
    }
    writer.flush().map_err(io_err(path))?;
    Ok(())
}

/// Writes a capacity profile with the passengers actually routed to each
/// slot.
pub fn write_capacity_csv(
    path: &Path,
    capacity: &CapacityProfile,
    served: &[u64],
) -> Result<(), ReportError> {
    assert_eq!(capacity.num_slots(), served.len());
    let file = File::create(path).map_err(io_err(path))?;
    let mut writer = csv::Writer::from_writer(file);
    writer.write_record(["slot", "capacity", "served"])?;
    for (t, (&staffed, &used)) in capacity.per_slot().iter().zip(served).enumerate() {
        writer.write_record([t.to_string(), staffed.to_string(), used.to_string()])?;
    }
    writer.flush().map_err(io_err(path))?;
    Ok(())
}

/// Writes one sweep row per model point.
pub fn write_sweep_csv(path: &Path, results: &[ComplianceResult]) -> Result<(), ReportError> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut writer = csv::Writer::from_writer(file);
    writer.write_record([
        "model",
        "parameter",
        "mean_wait_hours",
        "sd_wait_hours",
        "mean_missed_fraction",
        "sd_missed",
        "trials",
        "seed",
    ])?;
    for result in results {
        writer.write_record([
            result.model.label().to_string(),
            result.model.parameter().to_string(),
            exact_string(result.mean_wait_hours),
            result.sd_wait_hours.to_string(),
            result.mean_missed_fraction().to_string(),
            result.sd_missed.to_string(),
            result.num_trials.to_string(),
            result.seed.to_string(),
        ])?;
    }
    writer.flush().map_err(io_err(path))?;
    Ok(())
}

/// Writes the per-trial outcomes of one Monte Carlo run.
pub fn write_trials_csv(path: &Path, result: &ComplianceResult) -> Result<(), ReportError> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut writer = csv::Writer::from_writer(file);
    writer.write_record(["trial", "total_wait_hours", "missed", "spillover"])?;
    for outcome in &result.outcomes {
        writer.write_record([
            outcome.trial.to_string(),
            exact_string(outcome.total_wait_hours),
            outcome.missed.to_string(),
            outcome.spillover.to_string(),
        ])?;
    }
    writer.flush().map_err(io_err(path))?;
    Ok(())
}
