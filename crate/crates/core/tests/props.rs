//! Property tests for the model invariants: cost-function branches, schedule
//! round-trips, queue-simulation sanity, capacity respect, and the
//! feasibility threshold.

use std::sync::atomic::{AtomicU64, Ordering};

use proptest::prelude::*;
use slotflow_core::{
    critical_capacity, parse_schedule, reassignment_cost, simulate_queue, solve_assignment,
    total_wait, write_schedule, ArrivalSeries, CapacityProfile, CostParams, DemandGroup,
    DemandProfile, Flight, ModelError, Provenance, Rational, Schedule, SlotGrid,
};

static FILE_COUNTER: AtomicU64 = AtomicU64::new(0);

/// (preferred, departure, count) triples with preferred <= departure < 5.
fn group_strategy() -> impl Strategy<Value = Vec<DemandGroup>> {
    prop::collection::vec((0usize..5, 0usize..5, 1u64..6), 1..5).prop_map(|raw| {
        let mut seen = std::collections::BTreeMap::new();
        for (a, b, count) in raw {
            let preferred = a.min(b);
            let departure = a.max(b);
            seen.entry((preferred, departure)).or_insert(count);
        }
        seen.into_iter()
            .map(|((preferred_slot, departure_slot), count)| DemandGroup {
                preferred_slot,
                departure_slot,
                count,
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn cost_is_zero_iff_assigned_equals_preferred(
        delta in prop::sample::select(vec![5u32, 10, 15, 20, 30, 60]),
        slots in 2usize..9,
        raw_pref in 0usize..9,
        raw_dep in 0usize..9,
        raw_assigned in 0usize..9,
    ) {
        let grid = SlotGrid::new(delta, slots, 0).unwrap();
        let preferred = raw_pref % slots;
        let departure = preferred.max(raw_dep % slots);
        let assigned = raw_assigned % slots;
        let group = DemandGroup { preferred_slot: preferred, departure_slot: departure, count: 1 };
        let cost = reassignment_cost(&group, assigned, &CostParams::default(), &grid);
        prop_assert_eq!(cost == Rational::from_integer(0), assigned == preferred);
    }

    #[test]
    fn cost_branches_follow_the_shift_direction(
        delta in prop::sample::select(vec![5u32, 10, 15, 20, 30, 60]),
        slots in 2usize..9,
        raw_pref in 0usize..9,
        raw_assigned in 0usize..9,
    ) {
        let grid = SlotGrid::new(delta, slots, 0).unwrap();
        let preferred = raw_pref % slots;
        let assigned = raw_assigned % slots;
        let group = DemandGroup {
            preferred_slot: preferred,
            departure_slot: slots - 1,
            count: 1,
        };
        let params = CostParams::default();
        let cost = reassignment_cost(&group, assigned, &params, &grid);
        let shift_hours = Rational::new(
            (assigned as i64 - preferred as i64) * delta as i64,
            60,
        );
        let one = Rational::from_integer(1);
        if assigned > preferred {
            if shift_hours <= one {
                prop_assert_eq!(cost, params.alpha() * shift_hours);
            } else {
                prop_assert_eq!(cost, params.gamma());
            }
        } else if assigned < preferred {
            prop_assert_eq!(cost, params.beta() * shift_hours * shift_hours);
        }
    }

    #[test]
    fn schedules_round_trip_through_csv(
        raw in prop::collection::vec((0u32..1440, 1u32..500), 1..30)
    ) {
        let flights: Vec<Flight> = raw
            .into_iter()
            .enumerate()
            .map(|(i, (departure_minute, seats))| Flight {
                id: format!("F{i:03}"),
                departure_minute,
                seats,
            })
            .collect();
        let schedule = Schedule { flights, label: "prop".to_string() };
        let path = std::env::temp_dir().join(format!(
            "slotflow-props-{}-{}.csv",
            std::process::id(),
            FILE_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        write_schedule(&schedule, &path).unwrap();
        let parsed = parse_schedule(&path).unwrap();
        std::fs::remove_file(&path).ok();
        prop_assert_eq!(parsed.flights, schedule.flights);
    }

    #[test]
    fn queue_simulation_keeps_its_books_straight(
        pairs in prop::collection::vec((0u64..50, 0u64..30), 2..20)
    ) {
        let arrivals: Vec<u64> = pairs.iter().map(|p| p.0).collect();
        let caps: Vec<u64> = pairs.iter().map(|p| p.1).collect();
        let slots = arrivals.len();
        let grid = SlotGrid::new(15, slots, 0).unwrap();
        let series = ArrivalSeries::new(Provenance::Baseline, arrivals.clone());
        let capacity = CapacityProfile::new(caps.clone());
        let curves = simulate_queue(&series, &capacity, &grid).unwrap();

        let processed = &curves.cumulative_processed;
        let cumulative = &curves.cumulative_arrivals;
        let mut running = 0u64;
        for t in 0..slots {
            running += arrivals[t];
            prop_assert_eq!(cumulative[t], running);
            prop_assert!(processed[t] <= cumulative[t], "slot {}", t);
            let step = processed[t] - if t == 0 { 0 } else { processed[t - 1] };
            prop_assert!(step <= caps[t], "slot {}: processed {} above capacity {}", t, step, caps[t]);
            if t > 0 {
                prop_assert!(processed[t] >= processed[t - 1]);
            }
        }
        prop_assert_eq!(curves.spillover(), running - processed[slots - 1]);
        prop_assert!(total_wait(&curves, &grid).unwrap() >= Rational::from_integer(0));
    }

    #[test]
    fn plans_respect_capacity_and_conserve_passengers(
        groups in group_strategy(),
        caps in prop::collection::vec(0u64..6, 5),
    ) {
        let grid = SlotGrid::new(15, 5, 0).unwrap();
        let params = CostParams::default();
        let profile = DemandProfile::from_groups(groups).unwrap();
        let capacity = CapacityProfile::new(caps.clone());
        match solve_assignment(&profile, &capacity, &params, &grid) {
            Ok(plan) => {
                prop_assert!(plan.verify(&profile, &capacity, &params, &grid).is_ok());
                prop_assert_eq!(plan.total_passengers(), profile.total_passengers());
                let totals = plan.slot_totals(grid.num_slots());
                for (t, &n) in totals.iter().enumerate() {
                    prop_assert!(n <= capacity.get(t), "slot {} over capacity", t);
                }
            }
            Err(ModelError::Infeasible { deficit, .. }) => {
                let shortfall =
                    profile.total_passengers() as i64 - caps.iter().sum::<u64>() as i64;
                prop_assert_eq!(deficit, shortfall);
                prop_assert!(shortfall > 0);
            }
            Err(other) => prop_assert!(false, "unexpected error: {}", other),
        }
    }

    #[test]
    fn critical_capacity_is_the_feasibility_threshold(
        groups in group_strategy(),
    ) {
        let grid = SlotGrid::new(15, 5, 0).unwrap();
        let params = CostParams::default();
        let profile = DemandProfile::from_groups(groups).unwrap();
        let critical = critical_capacity(profile.total_passengers(), grid.num_slots());

        let enough = CapacityProfile::uniform(critical, grid.num_slots());
        prop_assert!(solve_assignment(&profile, &enough, &params, &grid).is_ok());

        if critical > 0 {
            let short = CapacityProfile::uniform(critical - 1, grid.num_slots());
            let infeasible = matches!(
                solve_assignment(&profile, &short, &params, &grid),
                Err(ModelError::Infeasible { .. })
            );
            prop_assert!(infeasible, "one below critical capacity must be infeasible");
        }
    }
}
