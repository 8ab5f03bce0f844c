//! Core library for slotflow: assigning airport passengers to security-screening
//! time slots so that nobody queues, and measuring what happens when they do.
//!
//! The crate is organised around a small pipeline:
//!
//! * [`schedule`] — flight-schedule parsing and synthetic-schedule generation.
//! * [`assignment`] — the slot grid, the piecewise reassignment-cost function,
//!   demand aggregation, and the min-cost-flow formulation of the assignment
//!   problem.
//! * [`flow`] — an exact integral minimum-cost network-flow solver plus a
//!   brute-force reference implementation used as a test oracle.
//! * [`queue`] — a slot-granular FIFO queue simulation producing cumulative
//!   arrival/processing curves and total-wait metrics.
//! * [`capacity`] — joint optimization of time-varying screening capacity via a
//!   self-contained revised-simplex LP solver, with integral restoration.
//! * [`compliance`] — seeded Monte Carlo perturbation of an assignment plan
//!   (arrival jitter, probabilistic acceptance) and sweep statistics.
//! * [`config`] — scenario configuration shared by the CLI.
//! * [`report`] — summary JSON and CSV writers for plans, curves, and sweeps.
//!
//! All cost arithmetic is exact: costs are `Ratio<i64>` rationals end to end,
//! and the flow solver works on pre-scaled integers internally. Every
//! randomised component draws from seeded ChaCha streams so that identical
//! inputs produce identical outputs, byte for byte.

pub mod assignment;
pub mod capacity;
pub mod compliance;
pub mod config;
pub mod flow;
pub mod numeric;
pub mod queue;
pub mod report;
pub mod schedule;

pub use assignment::{
    build_demand_profile, critical_capacity, preferred_slot, reassignment_cost, solve_assignment,
    AssignmentPlan, CapacityProfile, CostParams, DemandGroup, DemandProfile, ModelError, PlanEntry,
    SlotGrid,
};
pub use capacity::{
    build_capacity_lp, optimize_capacity, solve_lp, CapacityDiagnostics, CapacityError,
    CapacityOptConfig, CapacityOutcome, LinearProgram, LpRow, LpScalar, LpSolution, LpStatus, Rel,
};
pub use compliance::{
    run_trials, sweep, ComplianceConfig, ComplianceError, ComplianceModel, ComplianceResult,
    TrialOutcome,
};
pub use flow::{
    brute_force_min_cost, solve_min_cost_flow, validate_flow, BruteForceError, FlowArc,
    FlowNetwork, FlowNode, FlowSolution, FlowStatus, NetworkError, ValidationReport,
};
pub use numeric::Rational;
pub use queue::{
    baseline_arrivals, check_fcfs_relation, fcfs_metrics, fcfs_total_cost, grouped_baseline,
    grouped_plan, missed_by_completion, missed_flights, plan_arrivals, simulate_queue, total_wait,
    ArrivalSeries, CumulativeCurves, GroupedArrivals, Provenance, QueueError, SimMetrics,
};
pub use schedule::{
    generate_synthetic, parse_schedule, read_capacity_profile, write_schedule, Flight, PeakSpec,
    Schedule, ScheduleError,
};
