//! First-come-first-served screening-queue simulation and its exact wait
//! accounting.
//!
//! The queue is slot-granular and fluid: all passengers arriving in a slot
//! join the queue at that slot, the lane processes up to its capacity per
//! slot, and leftovers carry over. With `v(t)` the cumulative arrivals and
//! `C_t` the slot capacity, cumulative completions follow
//!
//! ```text
//! d(0) = min(v(0), C_0)
//! d(t) = min(v(t), d(t-1) + C_t)
//! ```
//!
//! and the backlog `v(t) - d(t)` waits one slot, so the total passenger wait
//! is `sum_t (v(t) - d(t)) * delta / 60` hours, computed exactly. The
//! baseline-cost relation `cost = alpha * total_wait` prices every waiting
//! hour at the linear delay rate; it is only meaningful when no passenger is
//! still in the queue when their flight leaves, which [`check_fcfs_relation`]
//! verifies by walking the queue in FIFO order.

use crate::assignment::{AssignmentPlan, CapacityProfile, CostParams, DemandProfile, SlotGrid};
use crate::numeric::Rational;

/// Which scenario produced a set of arrivals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Everyone shows up at their preferred slot.
    Baseline,
    /// Arrivals follow an assignment plan (possibly perturbed).
    Plan,
}

impl Provenance {
    pub fn label(&self) -> &'static str {
        match self {
            Provenance::Baseline => "baseline",
            Provenance::Plan => "plan",
        }
    }
}

/// Arrivals per slot with queue order preserved: within a slot, passengers
/// line up by departure slot (earliest flights first), ties keeping insertion
/// order. Each item is `(departure_slot, count)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupedArrivals {
    provenance: Provenance,
    per_slot: Vec<Vec<(usize, u64)>>,
}

impl GroupedArrivals {
    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn num_slots(&self) -> usize {
        self.per_slot.len()
    }

    pub fn entries(&self, slot: usize) -> &[(usize, u64)] {
        &self.per_slot[slot]
    }

    pub fn total_passengers(&self) -> u64 {
        self.per_slot
            .iter()
            .flatten()
            .map(|&(_, count)| count)
            .sum()
    }

    /// Collapses queue order into plain per-slot counts.
    pub fn series(&self) -> ArrivalSeries {
        ArrivalSeries {
            provenance: self.provenance,
            counts: self
                .per_slot
                .iter()
                .map(|entries| entries.iter().map(|&(_, count)| count).sum())
                .collect(),
        }
    }

    /// Builds arrivals from `(arrival_slot, departure_slot, count)` items,
    /// establishing the FIFO order within each slot.
    pub(crate) fn from_items(
        provenance: Provenance,
        num_slots: usize,
        items: impl Iterator<Item = (usize, usize, u64)>,
    ) -> Self {
        let mut per_slot: Vec<Vec<(usize, u64)>> = vec![Vec::new(); num_slots];
        for (arrival_slot, departure_slot, count) in items {
            debug_assert!(arrival_slot < num_slots);
            per_slot[arrival_slot].push((departure_slot, count));
        }
        for entries in &mut per_slot {
            entries.sort_by_key(|&(departure_slot, _)| departure_slot);
        }
        GroupedArrivals {
            provenance,
            per_slot,
        }
    }
}

/// Plain arrival counts per slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrivalSeries {
    provenance: Provenance,
    counts: Vec<u64>,
}

impl ArrivalSeries {
    pub fn new(provenance: Provenance, counts: Vec<u64>) -> Self {
        ArrivalSeries { provenance, counts }
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn num_slots(&self) -> usize {
        self.counts.len()
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Baseline arrivals in queue order: every group shows up at its preferred
/// slot.
pub fn grouped_baseline(profile: &DemandProfile, num_slots: usize) -> GroupedArrivals {
    GroupedArrivals::from_items(
        Provenance::Baseline,
        num_slots,
        profile
            .groups()
            .iter()
            .map(|g| (g.preferred_slot, g.departure_slot, g.count)),
    )
}

/// Baseline per-slot arrival counts.
pub fn baseline_arrivals(profile: &DemandProfile, num_slots: usize) -> ArrivalSeries {
    grouped_baseline(profile, num_slots).series()
}

/// Plan arrivals in queue order: every passenger shows up at their assigned
/// slot.
pub fn grouped_plan(plan: &AssignmentPlan, num_slots: usize) -> GroupedArrivals {
    GroupedArrivals::from_items(
        Provenance::Plan,
        num_slots,
        plan.entries.iter().flat_map(|entry| {
            let departure_slot = entry.group.departure_slot;
            entry
                .by_slot
                .iter()
                .map(move |(&slot, &count)| (slot, departure_slot, count))
        }),
    )
}

/// Plan per-slot arrival counts.
pub fn plan_arrivals(plan: &AssignmentPlan, num_slots: usize) -> ArrivalSeries {
    grouped_plan(plan, num_slots).series()
}

/// Passengers whose flight departs in each slot — the same under baseline and
/// plan arrivals, since reassignment never moves a departure.
pub fn flight_departure_increments(profile: &DemandProfile, num_slots: usize) -> Vec<u64> {
    let mut departures = vec![0u64; num_slots];
    for group in profile.groups() {
        departures[group.departure_slot] += group.count;
    }
    departures
}

/// Cumulative arrival and completion curves from one queue simulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CumulativeCurves {
    pub provenance: Provenance,
    /// `v(t)`: passengers arrived through slot `t`.
    pub cumulative_arrivals: Vec<u64>,
    /// `d(t)`: passengers screened through slot `t`.
    pub cumulative_processed: Vec<u64>,
    /// Passengers whose flight has departed by the end of slot `t`, when
    /// attached via [`CumulativeCurves::with_flight_departures`].
    pub cumulative_flight_departures: Option<Vec<u64>>,
}

impl CumulativeCurves {
    pub fn num_slots(&self) -> usize {
        self.cumulative_arrivals.len()
    }

    /// Queue length at the end of slot `t`.
    pub fn backlog(&self, slot: usize) -> u64 {
        self.cumulative_arrivals[slot] - self.cumulative_processed[slot]
    }

    pub fn max_backlog(&self) -> u64 {
        (0..self.num_slots())
            .map(|t| self.backlog(t))
            .max()
            .unwrap_or(0)
    }

    /// Passengers still unscreened when the day ends.
    pub fn spillover(&self) -> u64 {
        match self.num_slots() {
            0 => 0,
            n => self.backlog(n - 1),
        }
    }

    /// Attaches a cumulative flight-departure curve built from per-slot
    /// departure counts.
    pub fn with_flight_departures(
        mut self,
        increments: &[u64],
    ) -> Result<CumulativeCurves, QueueError> {
        if increments.len() != self.num_slots() {
            return Err(QueueError::LengthMismatch {
                expected: self.num_slots(),
                found: increments.len(),
            });
        }
        let mut cumulative = Vec::with_capacity(increments.len());
        let mut running = 0u64;
        for &inc in increments {
            running += inc;
            cumulative.push(running);
        }
        self.cumulative_flight_departures = Some(cumulative);
        Ok(self)
    }
}

/// Everything measured from one FIFO simulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimMetrics {
    pub provenance: Provenance,
    /// Exact total passenger waiting time, in passenger-hours.
    pub total_wait_hours: Rational,
    /// `alpha * total_wait_hours` — valid because the FCFS relation held.
    pub total_cost: Rational,
    /// Passengers left unscreened at the end of the day.
    pub spillover: u64,
    /// Largest end-of-slot queue length.
    pub max_backlog: u64,
    /// Passengers arriving after their departure slot.
    pub missed_flights: u64,
    pub curves: CumulativeCurves,
}

/// Errors from queue simulation and wait accounting.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QueueError {
    #[error("expected {expected} slots, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error(
        "the linear waiting-cost relation needs every passenger screened before \
         departure, but {missed} finish too late under FIFO"
    )]
    RelationInvalid { missed: u64 },
    #[error("total wait exceeds the representable range")]
    Overflow,
}

/// Runs the fluid FIFO recurrence and returns the cumulative curves.
pub fn simulate_queue(
    arrivals: &ArrivalSeries,
    capacity: &CapacityProfile,
    grid: &SlotGrid,
) -> Result<CumulativeCurves, QueueError> {
    let num_slots = grid.num_slots();
    if arrivals.num_slots() != num_slots {
        return Err(QueueError::LengthMismatch {
            expected: num_slots,
            found: arrivals.num_slots(),
        });
    }
    if capacity.num_slots() != num_slots {
        return Err(QueueError::LengthMismatch {
            expected: num_slots,
            found: capacity.num_slots(),
        });
    }
    let mut cumulative_arrivals = Vec::with_capacity(num_slots);
    let mut cumulative_processed = Vec::with_capacity(num_slots);
    let mut arrived = 0u64;
    let mut processed = 0u64;
    for (t, &a) in arrivals.counts().iter().enumerate() {
        arrived += a;
        processed = arrived.min(processed.saturating_add(capacity.get(t)));
        cumulative_arrivals.push(arrived);
        cumulative_processed.push(processed);
    }
    Ok(CumulativeCurves {
        provenance: arrivals.provenance(),
        cumulative_arrivals,
        cumulative_processed,
        cumulative_flight_departures: None,
    })
}

/// Exact total passenger wait in hours: each slot's end-of-slot backlog waits
/// one slot of `delta` minutes.
pub fn total_wait(curves: &CumulativeCurves, grid: &SlotGrid) -> Result<Rational, QueueError> {
    let mut backlog_sum: u128 = 0;
    for t in 0..curves.num_slots() {
        backlog_sum += curves.backlog(t) as u128;
    }
    let scaled = backlog_sum
        .checked_mul(grid.delta_minutes() as u128)
        .ok_or(QueueError::Overflow)?;
    let numer = i64::try_from(scaled).map_err(|_| QueueError::Overflow)?;
    Ok(Rational::new(numer, 60))
}

/// The baseline cost relation: total cost equals the linear delay rate times
/// the total wait. Pure arithmetic — validity of the relation is checked
/// separately.
pub fn fcfs_total_cost(total_wait_hours: Rational, params: &CostParams) -> Rational {
    params.alpha() * total_wait_hours
}

/// Passengers who, processed in FIFO order, finish screening after their
/// departure slot (including those never screened at all).
///
/// Passengers within a slot queue in `grouped`'s entry order. An entry's
/// passengers occupy consecutive queue positions, and position `p` completes
/// in the first slot `s` with `d(s) >= p`, so the entry's passengers missing
/// their flight are exactly its positions above `d(departure_slot)`.
pub fn missed_by_completion(grouped: &GroupedArrivals, curves: &CumulativeCurves) -> u64 {
    assert_eq!(
        grouped.num_slots(),
        curves.num_slots(),
        "arrivals and curves cover different horizons"
    );
    let processed = &curves.cumulative_processed;
    let mut missed = 0u64;
    let mut before = 0u64; // queue positions ahead of the current entry
    for slot in 0..grouped.num_slots() {
        for &(departure_slot, count) in grouped.entries(slot) {
            let end = before + count;
            let done_by_departure = processed[departure_slot];
            missed += end.saturating_sub(done_by_departure.max(before));
            before = end;
        }
    }
    missed
}

/// Passengers arriving strictly after their departure slot. With floor
/// bucketing this is exactly "arrives after the flight has left", since a
/// later slot starts after the departure slot ends.
pub fn missed_flights(grouped: &GroupedArrivals) -> u64 {
    let mut missed = 0u64;
    for slot in 0..grouped.num_slots() {
        for &(departure_slot, count) in grouped.entries(slot) {
            if slot > departure_slot {
                missed += count;
            }
        }
    }
    missed
}

/// Verifies the precondition of the linear waiting-cost relation: under FIFO,
/// nobody may still be queued (or unscreened) when their flight departs.
pub fn check_fcfs_relation(
    grouped: &GroupedArrivals,
    curves: &CumulativeCurves,
) -> Result<(), QueueError> {
    match missed_by_completion(grouped, curves) {
        0 => Ok(()),
        missed => Err(QueueError::RelationInvalid { missed }),
    }
}

/// Simulates the queue, verifies the cost relation holds, and prices the
/// total wait at the linear delay rate.
pub fn fcfs_metrics(
    grouped: &GroupedArrivals,
    capacity: &CapacityProfile,
    params: &CostParams,
    grid: &SlotGrid,
) -> Result<SimMetrics, QueueError> {
    let series = grouped.series();
    let curves = simulate_queue(&series, capacity, grid)?;
    check_fcfs_relation(grouped, &curves)?;
    let total_wait_hours = total_wait(&curves, grid)?;
    let total_cost = fcfs_total_cost(total_wait_hours, params);
    Ok(SimMetrics {
        provenance: grouped.provenance(),
        total_wait_hours,
        total_cost,
        spillover: curves.spillover(),
        max_backlog: curves.max_backlog(),
        missed_flights: missed_flights(grouped),
        curves,
    })
}
