//! Joint optimization of per-slot screening capacity and the assignment.
//!
//! The linear program relaxes the integral assignment: fractional passenger
//! flows `x[g][t]` (group to slot), a fractional capacity `C[t]` per slot, and
//! auxiliary variables `tau[t] >= |C[t+1] - C[t]|` for the capacity's total
//! variation. It minimizes
//!
//! ```text
//! sum reassignment_cost(g, t) * x[g][t]
//!   + lambda1 * sum C[t]          (total staffed capacity)
//!   + lambda2 * sum tau[t]        (slot-to-slot staffing churn)
//! ```
//!
//! subject to each group being fully placed and each slot's arrivals fitting
//! under its capacity. The float solution is rounded up to integers (values
//! within 1e-6 of an integer snap to it first) and the integral assignment is
//! re-solved exactly under the rounded profile, so the reported plan is a real
//! feasible assignment, not a relaxation artifact.

mod simplex;

pub use simplex::{solve_lp, LinearProgram, LpRow, LpScalar, LpSolution, LpStatus, Rel};

use num_traits::Zero;

use crate::assignment::{
    reassignment_cost, solve_assignment, AssignmentPlan, CapacityProfile, CostParams,
    DemandProfile, ModelError, SlotGrid,
};
use crate::numeric::{exact_string, Rational};

/// Weights and bounds for the capacity optimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapacityOptConfig {
    /// Cost per staffed unit of capacity, summed over slots.
    pub lambda1: Rational,
    /// Cost per unit of slot-to-slot capacity change.
    pub lambda2: Rational,
    /// Optional hard ceiling on every slot's capacity.
    pub max_capacity: Option<u64>,
}

impl Default for CapacityOptConfig {
    fn default() -> Self {
        CapacityOptConfig {
            lambda1: Rational::zero(),
            lambda2: Rational::from_integer(10),
            max_capacity: None,
        }
    }
}

/// Variable indexing of the capacity LP (see [`build_capacity_lp`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapacityLpLayout {
    pub num_groups: usize,
    pub num_slots: usize,
}

impl CapacityLpLayout {
    /// Flow of group `g` into slot `t`.
    pub fn x_index(&self, g: usize, t: usize) -> usize {
        debug_assert!(g < self.num_groups && t < self.num_slots);
        g * self.num_slots + t
    }

    /// Capacity of slot `t`.
    pub fn capacity_index(&self, t: usize) -> usize {
        debug_assert!(t < self.num_slots);
        self.num_groups * self.num_slots + t
    }

    /// Variation bound between slots `t` and `t + 1` (`t < num_slots - 1`).
    pub fn variation_index(&self, t: usize) -> usize {
        debug_assert!(t + 1 < self.num_slots);
        self.num_groups * self.num_slots + self.num_slots + t
    }

    pub fn num_vars(&self) -> usize {
        self.num_groups * self.num_slots + self.num_slots + self.num_slots.saturating_sub(1)
    }
}

/// Diagnostics from one capacity optimization.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityDiagnostics {
    /// Objective of the fractional relaxation (a lower bound on the integral
    /// objective when the weights are nonnegative).
    pub lp_objective: f64,
    pub lp_iterations: usize,
    /// Exact reassignment cost of the re-solved integral plan.
    pub assignment_cost: Rational,
    /// Exact integral objective: assignment cost plus weighted capacity and
    /// variation of the rounded profile.
    pub integral_objective: Rational,
    pub total_capacity: u64,
    pub total_variation: u64,
}

/// Result of the joint optimization: an integral capacity profile and the
/// exact optimal assignment under it.
#[derive(Debug, Clone, PartialEq)]
pub struct CapacityOutcome {
    pub capacities: CapacityProfile,
    pub plan: AssignmentPlan,
    pub diagnostics: CapacityDiagnostics,
}

/// Errors from LP construction and the capacity optimization.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CapacityError {
    #[error("row references variable {var}, but the program has {num_vars}")]
    VariableOutOfRange { var: usize, num_vars: usize },
    #[error("invalid capacity weights: {0}")]
    InvalidWeights(String),
    #[error("no capacity profile can satisfy the constraints")]
    LpInfeasible,
    #[error("capacity relaxation did not solve: {status}")]
    LpFailed { status: LpStatus },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Builds the capacity LP. Variables are laid out per [`CapacityLpLayout`]:
/// the `num_groups * num_slots` flows, then the `num_slots` capacities, then
/// the `num_slots - 1` variation bounds. Rows are the per-group placement
/// equalities, the per-slot capacity bounds, and the two-sided variation
/// bounds.
pub fn build_capacity_lp(
    profile: &DemandProfile,
    params: &CostParams,
    grid: &SlotGrid,
    config: &CapacityOptConfig,
) -> Result<(LinearProgram, CapacityLpLayout), CapacityError> {
    if config.lambda1 < Rational::zero() {
        return Err(CapacityError::InvalidWeights(format!(
            "lambda1 must be nonnegative, got {}",
            exact_string(config.lambda1)
        )));
    }
    if config.lambda2 < Rational::zero() {
        return Err(CapacityError::InvalidWeights(format!(
            "lambda2 must be nonnegative, got {}",
            exact_string(config.lambda2)
        )));
    }
    let layout = CapacityLpLayout {
        num_groups: profile.groups().len(),
        num_slots: grid.num_slots(),
    };
    let num_slots = layout.num_slots;
    let mut lp = LinearProgram::new(layout.num_vars());
    for (g, group) in profile.groups().iter().enumerate() {
        for t in 0..num_slots {
            lp.set_objective(
                layout.x_index(g, t),
                reassignment_cost(group, t, params, grid),
            );
        }
    }
    for t in 0..num_slots {
        lp.set_objective(layout.capacity_index(t), config.lambda1);
        if let Some(bound) = config.max_capacity {
            let bound = i64::try_from(bound)
                .map_err(|_| CapacityError::InvalidWeights("max capacity too large".to_string()))?;
            lp.set_upper_bound(layout.capacity_index(t), Rational::from_integer(bound));
        }
    }
    for t in 0..num_slots.saturating_sub(1) {
        lp.set_objective(layout.variation_index(t), config.lambda2);
    }
    let one = Rational::from_integer(1);
    for (g, group) in profile.groups().iter().enumerate() {
        let coeffs = (0..num_slots)
            .map(|t| (layout.x_index(g, t), one))
            .collect();
        lp.add_row(coeffs, Rel::Eq, Rational::from_integer(group.count as i64));
    }
    for t in 0..num_slots {
        let mut coeffs: Vec<(usize, Rational)> = (0..layout.num_groups)
            .map(|g| (layout.x_index(g, t), one))
            .collect();
        coeffs.push((layout.capacity_index(t), -one));
        lp.add_row(coeffs, Rel::Le, Rational::zero());
    }
    for t in 0..num_slots.saturating_sub(1) {
        let c_now = layout.capacity_index(t);
        let c_next = layout.capacity_index(t + 1);
        let tau = layout.variation_index(t);
        lp.add_row(
            vec![(c_next, one), (c_now, -one), (tau, -one)],
            Rel::Le,
            Rational::zero(),
        );
        lp.add_row(
            vec![(c_now, one), (c_next, -one), (tau, -one)],
            Rel::Le,
            Rational::zero(),
        );
    }
    Ok((lp, layout))
}

/// Rounds fractional capacities to integers: values within 1e-6 of an integer
/// snap to it, everything else rounds up, so the rounded profile can never
/// undercut the fractional one by more than the snap tolerance.
pub fn round_capacities(values: &[f64]) -> Vec<u64> {
    values
        .iter()
        .map(|&v| {
            let nearest = v.round();
            let snapped = if (v - nearest).abs() <= 1e-6 {
                nearest
            } else {
                v.ceil()
            };
            if snapped <= 0.0 {
                0
            } else {
                snapped as u64
            }
        })
        .collect()
}

/// Optimizes capacity and assignment jointly: solves the fractional
/// relaxation, rounds the capacities up to integers, and re-solves the
/// integral assignment exactly under the rounded profile.
pub fn optimize_capacity(
    profile: &DemandProfile,
    params: &CostParams,
    grid: &SlotGrid,
    config: &CapacityOptConfig,
) -> Result<CapacityOutcome, CapacityError> {
    let (lp, layout) = build_capacity_lp(profile, params, grid, config)?;
    let relaxation = solve_lp::<f64>(&lp)?;
    match relaxation.status {
        LpStatus::Optimal => {}
        LpStatus::Infeasible => return Err(CapacityError::LpInfeasible),
        status => return Err(CapacityError::LpFailed { status }),
    }
    let fractional: Vec<f64> = (0..layout.num_slots)
        .map(|t| relaxation.values[layout.capacity_index(t)])
        .collect();
    let capacities = CapacityProfile::new(round_capacities(&fractional));
    let plan = solve_assignment(profile, &capacities, params, grid)?;
    let total_capacity: u64 = capacities.per_slot().iter().sum();
    let total_variation = capacities.total_variation();
    let integral_objective = plan.objective
        + config.lambda1 * Rational::from_integer(total_capacity as i64)
        + config.lambda2 * Rational::from_integer(total_variation as i64);
    Ok(CapacityOutcome {
        diagnostics: CapacityDiagnostics {
            lp_objective: relaxation.objective,
            lp_iterations: relaxation.iterations,
            assignment_cost: plan.objective,
            integral_objective,
            total_capacity,
            total_variation,
        },
        capacities,
        plan,
    })
}
