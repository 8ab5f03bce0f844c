//! The slot-assignment model: discretised day, piecewise reassignment costs,
//! demand aggregation, and the reduction to minimum-cost flow.
//!
//! Passengers are modelled at the granularity of *demand groups*: everyone who
//! prefers the same screening slot and departs in the same slot is
//! interchangeable, so one network arc per (group, slot) pair carries them
//! all. Solving the grouped network is exactly equivalent to solving one node
//! per passenger (the tests check this), just much smaller.
//!
//! A passenger's preferred slot is the one containing their departure minus
//! one hour — the classic show-up rule — clamped to the first slot when a
//! red-eye departure would put it before the day starts. Moving a passenger
//! from preferred slot `p` to assigned slot `j`, with `h` the signed offset in
//! hours, costs
//!
//! * `0` when `h = 0` (kept in place),
//! * `alpha * h` when `0 < h <= 1` (delayed, still at or before departure),
//! * `beta * h^2` when `h < 0` (arriving early, mildly inconvenient),
//! * `gamma` when `h > 1` (pushed past departure: a missed flight),
//!
//! all in exact rational arithmetic.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::flow::{solve_min_cost_flow, FlowNetwork, FlowStatus, NetworkError};
use crate::numeric::{exact_string, Rational};
use crate::schedule::Schedule;

/// How long before departure passengers aim to reach screening, in minutes.
pub const ARRIVAL_LEAD_MINUTES: u32 = 60;

/// The discretised day: `num_slots` slots of `delta_minutes` each, starting at
/// `day_start_minute` after midnight.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlotGrid {
    delta_minutes: u32,
    num_slots: usize,
    day_start_minute: u32,
}

impl SlotGrid {
    pub fn new(
        delta_minutes: u32,
        num_slots: usize,
        day_start_minute: u32,
    ) -> Result<Self, ModelError> {
        if delta_minutes == 0 {
            return Err(ModelError::InvalidGrid(
                "slot length must be positive".into(),
            ));
        }
        if num_slots == 0 {
            return Err(ModelError::InvalidGrid("need at least one slot".into()));
        }
        let span = num_slots as u64 * delta_minutes as u64;
        if day_start_minute as u64 + span > 1440 {
            return Err(ModelError::InvalidGrid(format!(
                "grid covers minutes {day_start_minute}..{}, beyond a 1440-minute day",
                day_start_minute as u64 + span
            )));
        }
        Ok(SlotGrid {
            delta_minutes,
            num_slots,
            day_start_minute,
        })
    }

    /// The default grid: 96 quarter-hour slots covering a full day.
    pub fn standard() -> Self {
        SlotGrid::new(15, 96, 0).expect("standard grid is valid")
    }

    pub fn delta_minutes(&self) -> u32 {
        self.delta_minutes
    }

    pub fn num_slots(&self) -> usize {
        self.num_slots
    }

    pub fn day_start_minute(&self) -> u32 {
        self.day_start_minute
    }

    /// First minute after the covered span.
    pub fn horizon_end_minute(&self) -> u32 {
        self.day_start_minute + self.num_slots as u32 * self.delta_minutes
    }

    /// The slot containing `minute`, or `None` outside the covered span.
    pub fn slot_of_minute(&self, minute: u32) -> Option<usize> {
        if minute < self.day_start_minute {
            return None;
        }
        let slot = ((minute - self.day_start_minute) / self.delta_minutes) as usize;
        (slot < self.num_slots).then_some(slot)
    }

    pub fn slot_start_minute(&self, slot: usize) -> u32 {
        debug_assert!(slot < self.num_slots);
        self.day_start_minute + slot as u32 * self.delta_minutes
    }

    /// Signed offset from slot `from` to slot `to`, in exact hours.
    pub fn slot_offset_hours(&self, from: usize, to: usize) -> Rational {
        Rational::new((to as i64 - from as i64) * self.delta_minutes as i64, 60)
    }
}

impl Default for SlotGrid {
    fn default() -> Self {
        SlotGrid::standard()
    }
}

/// Cost weights for the piecewise reassignment cost (see module docs).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostParams {
    alpha: Rational,
    beta: Rational,
    gamma: Rational,
}

impl CostParams {
    /// Validates `alpha > 0`, `beta > 0`, and `gamma` above the worst linear
    /// delay cost `alpha * 1h` — otherwise missing a flight could be "cheaper"
    /// than an hour's delay and the γ branch would be meaningless.
    pub fn new(alpha: Rational, beta: Rational, gamma: Rational) -> Result<Self, ModelError> {
        if alpha <= Rational::zero() {
            return Err(ModelError::InvalidCostParams(format!(
                "alpha must be positive, got {}",
                exact_string(alpha)
            )));
        }
        if beta <= Rational::zero() {
            return Err(ModelError::InvalidCostParams(format!(
                "beta must be positive, got {}",
                exact_string(beta)
            )));
        }
        if gamma <= alpha {
            return Err(ModelError::InvalidCostParams(format!(
                "gamma ({}) must exceed alpha ({}), the cost of a full hour's delay",
                exact_string(gamma),
                exact_string(alpha)
            )));
        }
        Ok(CostParams { alpha, beta, gamma })
    }

    pub fn alpha(&self) -> Rational {
        self.alpha
    }

    pub fn beta(&self) -> Rational {
        self.beta
    }

    pub fn gamma(&self) -> Rational {
        self.gamma
    }
}

impl Default for CostParams {
    /// The reference weights: 4 per delayed hour, 1 per squared early hour,
    /// 200 for a missed flight.
    fn default() -> Self {
        CostParams::new(
            Rational::from_integer(4),
            Rational::from_integer(1),
            Rational::from_integer(200),
        )
        .expect("default cost params are valid")
    }
}

/// Passengers sharing a preferred slot and a departure slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DemandGroup {
    pub preferred_slot: usize,
    pub departure_slot: usize,
    pub count: u64,
}

/// Aggregated demand for a day: groups keyed uniquely by
/// `(preferred_slot, departure_slot)`, in ascending key order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DemandProfile {
    groups: Vec<DemandGroup>,
    total: u64,
}

impl DemandProfile {
    /// Builds a profile from raw groups, enforcing uniqueness of
    /// `(preferred_slot, departure_slot)`, positive counts, and
    /// `preferred_slot <= departure_slot`.
    pub fn from_groups(mut groups: Vec<DemandGroup>) -> Result<Self, ModelError> {
        groups.sort_by_key(|g| (g.preferred_slot, g.departure_slot));
        let mut total: u64 = 0;
        for (i, group) in groups.iter().enumerate() {
            if group.count == 0 {
                return Err(ModelError::EmptyGroup {
                    preferred_slot: group.preferred_slot,
                    departure_slot: group.departure_slot,
                });
            }
            if group.preferred_slot > group.departure_slot {
                return Err(ModelError::PreferredAfterDeparture {
                    preferred_slot: group.preferred_slot,
                    departure_slot: group.departure_slot,
                });
            }
            if i > 0 {
                let prev = &groups[i - 1];
                if (prev.preferred_slot, prev.departure_slot)
                    == (group.preferred_slot, group.departure_slot)
                {
                    return Err(ModelError::DuplicateGroup {
                        preferred_slot: group.preferred_slot,
                        departure_slot: group.departure_slot,
                    });
                }
            }
            total = total
                .checked_add(group.count)
                .ok_or(ModelError::DemandOverflow)?;
        }
        Ok(DemandProfile { groups, total })
    }

    pub fn groups(&self) -> &[DemandGroup] {
        &self.groups
    }

    pub fn total_passengers(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    /// Passengers preferring each slot, as a dense per-slot vector.
    pub fn preferred_demand(&self, num_slots: usize) -> Vec<u64> {
        let mut demand = vec![0u64; num_slots];
        for group in &self.groups {
            demand[group.preferred_slot] += group.count;
        }
        demand
    }
}

/// Per-slot screening throughput.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacityProfile {
    per_slot: Vec<u64>,
}

impl CapacityProfile {
    pub fn new(per_slot: Vec<u64>) -> Self {
        CapacityProfile { per_slot }
    }

    pub fn uniform(capacity: u64, num_slots: usize) -> Self {
        CapacityProfile {
            per_slot: vec![capacity; num_slots],
        }
    }

    pub fn per_slot(&self) -> &[u64] {
        &self.per_slot
    }

    pub fn num_slots(&self) -> usize {
        self.per_slot.len()
    }

    pub fn get(&self, slot: usize) -> u64 {
        self.per_slot[slot]
    }

    pub fn total(&self) -> u128 {
        self.per_slot.iter().map(|&c| c as u128).sum()
    }

    /// Sum of absolute slot-to-slot capacity changes.
    pub fn total_variation(&self) -> u64 {
        self.per_slot.windows(2).map(|w| w[0].abs_diff(w[1])).sum()
    }
}

/// One group's assignment: how many of its passengers go to each slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanEntry {
    pub group: DemandGroup,
    pub by_slot: BTreeMap<usize, u64>,
}

/// A system-optimal assignment of every passenger to a slot, with its exact
/// total cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssignmentPlan {
    pub entries: Vec<PlanEntry>,
    pub objective: Rational,
}

impl AssignmentPlan {
    pub fn total_passengers(&self) -> u64 {
        self.entries
            .iter()
            .map(|e| e.by_slot.values().sum::<u64>())
            .sum()
    }

    /// Passengers assigned to each slot, as a dense per-slot vector.
    pub fn slot_totals(&self, num_slots: usize) -> Vec<u64> {
        let mut totals = vec![0u64; num_slots];
        for entry in &self.entries {
            for (&slot, &count) in &entry.by_slot {
                totals[slot] += count;
            }
        }
        totals
    }

    /// Re-derives every invariant from scratch, independently of the solver:
    /// group totals preserved, slot capacities respected, and the stored
    /// objective equal to the recomputed cost.
    pub fn verify(
        &self,
        profile: &DemandProfile,
        capacity: &CapacityProfile,
        params: &CostParams,
        grid: &SlotGrid,
    ) -> Result<(), PlanViolation> {
        if self.entries.len() != profile.groups().len() {
            return Err(PlanViolation::GroupCountMismatch {
                expected: profile.groups().len(),
                found: self.entries.len(),
            });
        }
        let mut objective = Rational::zero();
        for (entry, group) in self.entries.iter().zip(profile.groups()) {
            if entry.group != *group {
                return Err(PlanViolation::GroupMismatch {
                    expected: *group,
                    found: entry.group,
                });
            }
            let assigned: u64 = entry.by_slot.values().sum();
            if assigned != group.count {
                return Err(PlanViolation::GroupTotal {
                    group: *group,
                    assigned,
                });
            }
            for (&slot, &count) in &entry.by_slot {
                objective += reassignment_cost(group, slot, params, grid)
                    * Rational::from_integer(count as i64);
            }
        }
        let totals = self.slot_totals(grid.num_slots());
        for (slot, &total) in totals.iter().enumerate() {
            if total > capacity.get(slot) {
                return Err(PlanViolation::SlotOverCapacity {
                    slot,
                    assigned: total,
                    capacity: capacity.get(slot),
                });
            }
        }
        if objective != self.objective {
            return Err(PlanViolation::ObjectiveMismatch {
                stored: self.objective,
                recomputed: objective,
            });
        }
        Ok(())
    }
}

/// Ways an [`AssignmentPlan`] can fail independent verification.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlanViolation {
    #[error("plan has {found} entries for {expected} groups")]
    GroupCountMismatch { expected: usize, found: usize },
    #[error("plan entry group {found:?} does not match profile group {expected:?}")]
    GroupMismatch {
        expected: DemandGroup,
        found: DemandGroup,
    },
    #[error("group {group:?} has {assigned} passengers assigned")]
    GroupTotal { group: DemandGroup, assigned: u64 },
    #[error("slot {slot} holds {assigned} passengers over capacity {capacity}")]
    SlotOverCapacity {
        slot: usize,
        assigned: u64,
        capacity: u64,
    },
    #[error("stored objective {stored} differs from recomputed {recomputed}")]
    ObjectiveMismatch {
        stored: Rational,
        recomputed: Rational,
    },
}

/// Errors from the assignment model.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("invalid slot grid: {0}")]
    InvalidGrid(String),
    #[error("invalid cost parameters: {0}")]
    InvalidCostParams(String),
    #[error("load factor must lie in (0, 1], got {0}")]
    InvalidLoadFactor(String),
    #[error("schedule has no flights")]
    EmptySchedule,
    #[error("departure minute {minute} lies outside the slot grid")]
    DepartureOutsideGrid { minute: u32 },
    #[error("flight {flight}: departure minute {minute} lies outside the slot grid")]
    FlightOutsideGrid { flight: String, minute: u32 },
    #[error("demand group ({preferred_slot}, {departure_slot}) appears twice")]
    DuplicateGroup {
        preferred_slot: usize,
        departure_slot: usize,
    },
    #[error("demand group ({preferred_slot}, {departure_slot}) has zero passengers")]
    EmptyGroup {
        preferred_slot: usize,
        departure_slot: usize,
    },
    #[error("group prefers slot {preferred_slot} after its departure slot {departure_slot}")]
    PreferredAfterDeparture {
        preferred_slot: usize,
        departure_slot: usize,
    },
    #[error("total demand does not fit in 64 bits")]
    DemandOverflow,
    #[error("capacity profile has {found} slots, grid has {expected}")]
    CapacityLengthMismatch { expected: usize, found: usize },
    #[error(
        "capacity cannot absorb demand: {deficit} of {demand} passengers unplaceable; \
         uniform capacity of at least {critical_capacity} per slot would be feasible"
    )]
    Infeasible {
        deficit: i64,
        demand: u64,
        critical_capacity: u64,
    },
    #[error("flow network error: {0}")]
    Network(#[from] NetworkError),
}

/// The slot a passenger on `departure_minute` aims for: the slot containing
/// departure minus one hour, clamped to the first slot when that time falls
/// before the grid starts.
pub fn preferred_slot(departure_minute: u32, grid: &SlotGrid) -> Result<usize, ModelError> {
    if grid.slot_of_minute(departure_minute).is_none() {
        return Err(ModelError::DepartureOutsideGrid {
            minute: departure_minute,
        });
    }
    if departure_minute < grid.day_start_minute() + ARRIVAL_LEAD_MINUTES {
        return Ok(0);
    }
    let lead_minute = departure_minute - ARRIVAL_LEAD_MINUTES;
    Ok(grid
        .slot_of_minute(lead_minute)
        .expect("lead minute within grid because departure is"))
}

/// Exact cost of assigning one passenger of `group` to `assigned_slot`.
/// See the module docs for the piecewise definition.
pub fn reassignment_cost(
    group: &DemandGroup,
    assigned_slot: usize,
    params: &CostParams,
    grid: &SlotGrid,
) -> Rational {
    assert!(
        assigned_slot < grid.num_slots(),
        "assigned slot {assigned_slot} outside grid of {} slots",
        grid.num_slots()
    );
    let offset_hours = grid.slot_offset_hours(group.preferred_slot, assigned_slot);
    let one = Rational::from_integer(1);
    if offset_hours.is_zero() {
        Rational::zero()
    } else if offset_hours > one {
        params.gamma()
    } else if offset_hours > Rational::zero() {
        params.alpha() * offset_hours
    } else {
        params.beta() * offset_hours * offset_hours
    }
}

/// Aggregates a schedule into demand groups. Each flight contributes
/// `round(seats * load_factor)` passengers (half rounds up, exactly), and
/// flights sharing a (preferred, departure) slot pair merge into one group.
/// Flights whose rounded passenger count is zero drop out.
pub fn build_demand_profile(
    schedule: &Schedule,
    grid: &SlotGrid,
    load_factor: Rational,
) -> Result<DemandProfile, ModelError> {
    if schedule.flights.is_empty() {
        return Err(ModelError::EmptySchedule);
    }
    if load_factor <= Rational::zero() || load_factor > Rational::from_integer(1) {
        return Err(ModelError::InvalidLoadFactor(exact_string(load_factor)));
    }
    let half = Rational::new(1, 2);
    let mut counts: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for flight in &schedule.flights {
        let departure_slot =
            grid.slot_of_minute(flight.departure_minute)
                .ok_or(ModelError::FlightOutsideGrid {
                    flight: flight.id.clone(),
                    minute: flight.departure_minute,
                })?;
        let preferred = preferred_slot(flight.departure_minute, grid).map_err(|_| {
            ModelError::FlightOutsideGrid {
                flight: flight.id.clone(),
                minute: flight.departure_minute,
            }
        })?;
        let passengers = (Rational::from_integer(flight.seats as i64) * load_factor + half)
            .floor()
            .to_integer() as u64;
        if passengers == 0 {
            continue;
        }
        *counts.entry((preferred, departure_slot)).or_insert(0) += passengers;
    }
    let groups = counts
        .into_iter()
        .map(|((preferred_slot, departure_slot), count)| DemandGroup {
            preferred_slot,
            departure_slot,
            count,
        })
        .collect();
    DemandProfile::from_groups(groups)
}

/// Builds the assignment network: one supply node per group, one zero-supply
/// node per slot, and a sink demanding every passenger. Group→slot arcs carry
/// the piecewise reassignment cost with capacity equal to the group size;
/// slot→sink arcs carry zero cost with the slot's screening capacity.
///
/// Node ids: groups `0..G`, slots `G..G+T`, sink `G+T`. Arc ids: group-major
/// (`g * T + t`), then the `T` slot→sink arcs.
pub fn build_network(
    profile: &DemandProfile,
    capacity: &CapacityProfile,
    params: &CostParams,
    grid: &SlotGrid,
) -> Result<FlowNetwork, ModelError> {
    let num_slots = grid.num_slots();
    if capacity.num_slots() != num_slots {
        return Err(ModelError::CapacityLengthMismatch {
            expected: num_slots,
            found: capacity.num_slots(),
        });
    }
    let total = profile.total_passengers();
    let supply = i64::try_from(total).map_err(|_| ModelError::DemandOverflow)?;
    let mut network = FlowNetwork::new();
    for group in profile.groups() {
        let count = i64::try_from(group.count).map_err(|_| ModelError::DemandOverflow)?;
        network.add_node(count);
    }
    let slot_base = network.num_nodes();
    for _ in 0..num_slots {
        network.add_node(0);
    }
    let sink = network.add_node(-supply);
    for (g, group) in profile.groups().iter().enumerate() {
        debug_assert!(group.departure_slot < num_slots);
        let count = group.count as i64;
        for t in 0..num_slots {
            network.add_arc(
                g,
                slot_base + t,
                0,
                count,
                reassignment_cost(group, t, params, grid),
            );
        }
    }
    for t in 0..num_slots {
        let cap = i64::try_from(capacity.get(t)).unwrap_or(i64::MAX);
        network.add_arc(slot_base + t, sink, 0, cap, Rational::zero());
    }
    Ok(network)
}

/// Minimum per-slot uniform capacity that can absorb `total_passengers` in
/// `num_slots` slots: the ceiling of their ratio.
pub fn critical_capacity(total_passengers: u64, num_slots: usize) -> u64 {
    assert!(num_slots > 0, "capacity of an empty grid is undefined");
    total_passengers.div_ceil(num_slots as u64)
}

/// Solves the assignment problem exactly. On success the plan routes every
/// passenger within capacity at minimum total reassignment cost; if capacity
/// cannot absorb demand the error reports how many passengers are unplaceable
/// and the minimum uniform capacity that would work.
pub fn solve_assignment(
    profile: &DemandProfile,
    capacity: &CapacityProfile,
    params: &CostParams,
    grid: &SlotGrid,
) -> Result<AssignmentPlan, ModelError> {
    let network = build_network(profile, capacity, params, grid)?;
    let solution = solve_min_cost_flow(&network)?;
    match solution.status {
        FlowStatus::Optimal => {}
        FlowStatus::Infeasible { deficit } => {
            return Err(ModelError::Infeasible {
                deficit,
                demand: profile.total_passengers(),
                critical_capacity: critical_capacity(profile.total_passengers(), grid.num_slots()),
            });
        }
    }
    let num_slots = grid.num_slots();
    let entries = profile
        .groups()
        .iter()
        .enumerate()
        .map(|(g, group)| {
            let mut by_slot = BTreeMap::new();
            for t in 0..num_slots {
                let flow = solution.flows[g * num_slots + t];
                if flow > 0 {
                    by_slot.insert(t, flow as u64);
                }
            }
            PlanEntry {
                group: *group,
                by_slot,
            }
        })
        .collect();
    Ok(AssignmentPlan {
        entries,
        objective: solution.objective,
    })
}
