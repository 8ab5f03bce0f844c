//! Acceptance gate: nine end-to-end criteria covering the exact flow solver,
//! the feasibility threshold, zero-wait plans, the FIFO cost relation,
//! capacity monotonicity, the joint capacity optimizer, compliance Monte
//! Carlo, pinned regression values for the reference day, and byte-level
//! determinism of the command-line tool.
//!
//! Each test prints one `ACCEPTANCE Cn PASS` line (visible under
//! `--nocapture`); the per-test pass/fail lines of the harness serve as the
//! criterion checklist otherwise.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

use slotflow_core::numeric::rational_to_f64;
use slotflow_core::queue::grouped_plan;
use slotflow_core::{
    brute_force_min_cost, build_capacity_lp, build_demand_profile, critical_capacity, fcfs_metrics,
    generate_synthetic, grouped_baseline, optimize_capacity, solve_assignment, solve_lp,
    solve_min_cost_flow, sweep, total_wait, validate_flow, AssignmentPlan, BruteForceError,
    CapacityOptConfig, CapacityProfile, ComplianceModel, ComplianceResult, CostParams, DemandGroup,
    DemandProfile, FlowNetwork, FlowStatus, LpStatus, ModelError, PeakSpec, Rational, SlotGrid,
};

type Exact = num_rational::BigRational;

// ---------------------------------------------------------------------------
// Shared scenario helpers
// ---------------------------------------------------------------------------

/// The standard day grid: 96 slots of 15 minutes from midnight.
fn standard_grid() -> SlotGrid {
    SlotGrid::new(15, 96, 0).expect("standard grid is valid")
}

/// The reference synthetic day the tool ships as its default scenario:
/// 260 flights, 49,034 passengers, morning-peaked departures, seed 42.
fn reference_profile(grid: &SlotGrid) -> DemandProfile {
    let schedule = generate_synthetic(42, 260, 49_034, &PeakSpec::default_morning());
    build_demand_profile(&schedule, grid, Rational::one()).expect("reference day builds")
}

fn small_profile(seed: u64, flights: u32, seats: u64, grid: &SlotGrid) -> DemandProfile {
    let schedule = generate_synthetic(seed, flights, seats, &PeakSpec::default_morning());
    build_demand_profile(&schedule, grid, Rational::one()).expect("synthetic day builds")
}

fn exact(value: Rational) -> Exact {
    Exact::new(BigInt::from(*value.numer()), BigInt::from(*value.denom()))
}

fn assigned_past_departure(plan: &AssignmentPlan) -> u64 {
    plan.entries
        .iter()
        .map(|e| {
            e.by_slot
                .iter()
                .filter(|&(&slot, _)| slot > e.group.departure_slot)
                .map(|(_, &count)| count)
                .sum::<u64>()
        })
        .sum()
}

/// Standard error of a Monte Carlo mean.
fn standard_error(sd: f64, trials: usize) -> f64 {
    sd / (trials as f64).sqrt()
}

// ---------------------------------------------------------------------------
// C1: the network solver agrees exactly with brute-force enumeration
// ---------------------------------------------------------------------------

/// A random circulation network: at most 6 nodes besides the implicit
/// balancing structure, arc bounds within [0, 4], rational costs in [-6, 6]
/// with denominators up to 4 — small enough that every integral flow vector
/// can be enumerated outright.
fn random_network(rng: &mut ChaCha8Rng) -> FlowNetwork {
    let num_nodes = rng.gen_range(2..=6);
    let mut network = FlowNetwork::new();
    for _ in 0..num_nodes {
        network.add_node(0);
    }
    for _ in 0..rng.gen_range(0..=6) {
        let from = rng.gen_range(0..num_nodes);
        let to = rng.gen_range(0..num_nodes);
        network.nodes[from].supply += 1;
        network.nodes[to].supply -= 1;
    }
    for _ in 0..rng.gen_range(1..=8) {
        let tail = rng.gen_range(0..num_nodes);
        let mut head = rng.gen_range(0..num_nodes);
        if head == tail {
            head = (head + 1) % num_nodes;
        }
        let lower = rng.gen_range(0..=2);
        let upper = rng.gen_range(lower..=4);
        let cost = Rational::new(rng.gen_range(-6..=6), rng.gen_range(1..=4));
        network.add_arc(tail, head, lower, upper, cost);
    }
    network
}

#[test]
fn criterion_1_flow_solver_matches_brute_force_enumeration() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut optimal = 0usize;
    let mut infeasible = 0usize;
    for case in 0..230 {
        let network = random_network(&mut rng);
        let solved = solve_min_cost_flow(&network).expect("generated networks are valid");
        let brute = match brute_force_min_cost(&network, 1_000_000) {
            Ok(solution) => solution,
            Err(BruteForceError::TooLarge { .. }) => {
                panic!("case {case}: generator exceeded the enumeration cap")
            }
            Err(other) => panic!("case {case}: {other}"),
        };
        match (&solved.status, &brute.status) {
            (FlowStatus::Optimal, FlowStatus::Optimal) => {
                assert_eq!(
                    solved.objective,
                    brute.objective,
                    "case {case}: objectives differ\n{}",
                    network.to_arc_list()
                );
                let report = validate_flow(&network, &solved);
                assert!(report.is_valid(), "case {case}: invalid flow: {report:?}");
                optimal += 1;
            }
            (FlowStatus::Infeasible { deficit: a }, FlowStatus::Infeasible { deficit: b }) => {
                assert_eq!(a, b, "case {case}: deficits differ");
                infeasible += 1;
            }
            (s, b) => panic!("case {case}: status mismatch solver={s:?} brute={b:?}"),
        }
    }
    let total = optimal + infeasible;
    assert!(total >= 200, "only {total} instances ran");
    assert!(optimal >= 40, "too few optimal cases: {optimal}");
    assert!(infeasible >= 10, "too few infeasible cases: {infeasible}");
    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 60.0, "oracle comparison took {elapsed:.1}s");
    println!(
        "ACCEPTANCE C1 PASS: solver matched brute force on {total} random networks \
         ({optimal} optimal, {infeasible} infeasible) in {elapsed:.1}s"
    );
}

// ---------------------------------------------------------------------------
// C2: the uniform-capacity feasibility threshold is exactly ceil(N / T)
// ---------------------------------------------------------------------------

fn random_day(rng: &mut ChaCha8Rng) -> (DemandProfile, usize) {
    let num_slots = rng.gen_range(1..=96);
    let total: u64 = rng.gen_range(1..=120_000);
    let num_groups = rng.gen_range(1..=6).min(total as usize);
    // Split the total into positive group counts, merging duplicate keys.
    let mut remaining = total;
    let mut by_key: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    for i in 0..num_groups {
        let count = if i + 1 == num_groups {
            remaining
        } else {
            let max_take = remaining - (num_groups - i - 1) as u64;
            rng.gen_range(1..=max_take)
        };
        remaining -= count;
        let preferred = rng.gen_range(0..num_slots);
        let departure = rng.gen_range(preferred..num_slots);
        *by_key.entry((preferred, departure)).or_insert(0) += count;
    }
    let groups = by_key
        .into_iter()
        .map(|((preferred_slot, departure_slot), count)| DemandGroup {
            preferred_slot,
            departure_slot,
            count,
        })
        .collect();
    (DemandProfile::from_groups(groups).unwrap(), num_slots)
}

#[test]
fn criterion_2_critical_capacity_is_exactly_the_demand_ceiling() {
    let started = Instant::now();
    assert_eq!(critical_capacity(49_034, 96), 511);

    let params = CostParams::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7_919);
    for case in 0..20 {
        let (profile, num_slots) = random_day(&mut rng);
        let grid = SlotGrid::new(1440 / num_slots as u32, num_slots, 0).unwrap();
        let total = profile.total_passengers();
        let critical = critical_capacity(total, num_slots);

        if critical > 0 {
            let below = CapacityProfile::uniform(critical - 1, num_slots);
            match solve_assignment(&profile, &below, &params, &grid) {
                Err(ModelError::Infeasible {
                    deficit,
                    demand,
                    critical_capacity: reported,
                }) => {
                    assert_eq!(demand, total, "case {case}");
                    assert_eq!(reported, critical, "case {case}");
                    assert_eq!(
                        deficit,
                        (total - (critical - 1) * num_slots as u64) as i64,
                        "case {case}: deficit should be the uncovered remainder"
                    );
                }
                other => panic!("case {case}: expected infeasible below threshold, got {other:?}"),
            }
        }

        let at = CapacityProfile::uniform(critical, num_slots);
        let plan = solve_assignment(&profile, &at, &params, &grid)
            .unwrap_or_else(|e| panic!("case {case}: threshold capacity must be feasible: {e}"));
        assert_eq!(plan.total_passengers(), total, "case {case}");
    }
    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 5.0, "threshold checks took {elapsed:.2}s");
    println!(
        "ACCEPTANCE C2 PASS: uniform capacity ceil(N/T) is feasible and ceil(N/T)-1 is not, \
         on 20 random day shapes; 49,034 passengers over 96 slots need 511 ({elapsed:.2}s)"
    );
}

// ---------------------------------------------------------------------------
// C3: every feasible optimized plan simulates to exactly zero waiting
// ---------------------------------------------------------------------------

#[test]
fn criterion_3_optimized_plans_simulate_to_zero_wait() {
    let grid = standard_grid();
    let params = CostParams::default();

    let mut checked = 0usize;
    for seed in [1, 7, 13] {
        let profile = small_profile(seed, 40, 2_000, &grid);
        let critical = critical_capacity(profile.total_passengers(), grid.num_slots());
        for capacity_level in [critical, critical + 5, 900] {
            let capacity = CapacityProfile::uniform(capacity_level, grid.num_slots());
            let plan = solve_assignment(&profile, &capacity, &params, &grid).unwrap();
            let grouped = grouped_plan(&plan, grid.num_slots());
            let curves =
                slotflow_core::simulate_queue(&grouped.series(), &capacity, &grid).unwrap();
            let wait = total_wait(&curves, &grid).unwrap();
            assert!(
                wait.is_zero(),
                "seed {seed} capacity {capacity_level}: wait {wait} is not zero"
            );
            assert_eq!(
                curves.spillover(),
                0,
                "seed {seed} capacity {capacity_level}"
            );
            checked += 1;
        }
    }

    // The full-size reference day, timed.
    let started = Instant::now();
    let profile = reference_profile(&grid);
    let capacity = CapacityProfile::uniform(900, grid.num_slots());
    let plan = solve_assignment(&profile, &capacity, &params, &grid).unwrap();
    let grouped = grouped_plan(&plan, grid.num_slots());
    let curves = slotflow_core::simulate_queue(&grouped.series(), &capacity, &grid).unwrap();
    let wait = total_wait(&curves, &grid).unwrap();
    let elapsed = started.elapsed().as_secs_f64();
    assert!(wait.is_zero(), "reference day wait {wait} is not zero");
    assert_eq!(curves.spillover(), 0);
    assert_eq!(assigned_past_departure(&plan), 0);
    assert!(
        elapsed < 60.0,
        "reference solve+simulate took {elapsed:.1}s"
    );
    checked += 1;

    println!(
        "ACCEPTANCE C3 PASS: {checked} optimized plans all simulate to zero total wait \
         (reference day solve+simulate {elapsed:.2}s)"
    );
}

// ---------------------------------------------------------------------------
// C4: under FIFO with no missed departures, cost = alpha * total wait
// ---------------------------------------------------------------------------

#[test]
fn criterion_4_fifo_cost_equals_delay_rate_times_total_wait() {
    let grid = standard_grid();
    let params = CostParams::default();

    let scenarios: Vec<(DemandProfile, u64)> = vec![
        (reference_profile(&grid), 900),
        (small_profile(2, 50, 4_000, &grid), 300),
        (small_profile(5, 80, 9_000, &grid), 400),
        (small_profile(8, 30, 1_000, &grid), 100),
    ];

    for (i, (profile, capacity_level)) in scenarios.iter().enumerate() {
        let capacity = CapacityProfile::uniform(*capacity_level, grid.num_slots());
        let grouped = grouped_baseline(profile, grid.num_slots());
        let metrics = fcfs_metrics(&grouped, &capacity, &params, &grid)
            .unwrap_or_else(|e| panic!("scenario {i}: baseline must finish in time: {e}"));

        // Recompute the wait from the cumulative curves: each slot's
        // end-of-slot backlog waits one slot length.
        let slot_hours = Rational::new(grid.delta_minutes() as i64, 60);
        let mut recomputed = Rational::zero();
        for t in 0..grid.num_slots() {
            recomputed += Rational::from_integer(metrics.curves.backlog(t) as i64) * slot_hours;
        }
        assert_eq!(
            metrics.total_wait_hours, recomputed,
            "scenario {i}: wait recompute"
        );
        assert_eq!(
            metrics.total_cost,
            params.alpha() * metrics.total_wait_hours,
            "scenario {i}: cost must be the delay rate times the wait"
        );
        assert_eq!(metrics.missed_flights, 0, "scenario {i}");
    }

    println!(
        "ACCEPTANCE C4 PASS: FIFO total cost equals alpha times total wait, exactly, \
         on {} scenarios with no missed departures",
        scenarios.len()
    );
}

// ---------------------------------------------------------------------------
// C5: the optimal objective never rises as uniform capacity grows
// ---------------------------------------------------------------------------

#[test]
fn criterion_5_optimal_cost_is_non_increasing_in_capacity() {
    let grid = standard_grid();
    let params = CostParams::default();
    let profile = reference_profile(&grid);

    let levels = [511u64, 550, 600, 700, 800, 900, 1_100];
    let mut objectives = Vec::new();
    for &level in &levels {
        let capacity = CapacityProfile::uniform(level, grid.num_slots());
        let plan = solve_assignment(&profile, &capacity, &params, &grid)
            .unwrap_or_else(|e| panic!("capacity {level} must be feasible: {e}"));
        objectives.push(plan.objective);
    }
    for window in objectives.windows(2) {
        assert!(
            window[1] <= window[0],
            "objective rose with more capacity: {} then {}",
            window[0],
            window[1]
        );
    }
    assert!(
        objectives.first() > objectives.last(),
        "the sweep should show a strict improvement overall"
    );

    println!(
        "ACCEPTANCE C5 PASS: optimal objective non-increasing over uniform capacities \
         {levels:?} on the reference day"
    );
}

// ---------------------------------------------------------------------------
// C6: the joint capacity optimizer dominates fixed staffing; its variation
//     variables are tight; and on toy instances the LP value equals
//     exhaustive search over integer capacity vectors
// ---------------------------------------------------------------------------

fn capacity_variation(caps: &[u64]) -> u64 {
    caps.windows(2).map(|w| w[0].abs_diff(w[1])).sum()
}

/// Exhaustive search over integer capacity vectors in {0..=5}^T.
fn best_capacity_on_grid(
    profile: &DemandProfile,
    params: &CostParams,
    grid: &SlotGrid,
    lambda1: Rational,
    lambda2: Rational,
) -> Option<Rational> {
    let slots = grid.num_slots();
    let mut caps = vec![0u64; slots];
    let mut best: Option<Rational> = None;
    loop {
        if let Ok(plan) =
            solve_assignment(profile, &CapacityProfile::new(caps.clone()), params, grid)
        {
            let total: u64 = caps.iter().sum();
            let combined = plan.objective
                + lambda1 * Rational::from_integer(total as i64)
                + lambda2 * Rational::from_integer(capacity_variation(&caps) as i64);
            if best.as_ref().is_none_or(|b| combined < *b) {
                best = Some(combined);
            }
        }
        let mut i = 0;
        loop {
            if i == slots {
                return best;
            }
            caps[i] += 1;
            if caps[i] <= 5 {
                break;
            }
            caps[i] = 0;
            i += 1;
        }
    }
}

struct Toy {
    name: &'static str,
    groups: Vec<DemandGroup>,
    slots: usize,
    lambda1: Rational,
    lambda2: Rational,
}

fn group(preferred_slot: usize, departure_slot: usize, count: u64) -> DemandGroup {
    DemandGroup {
        preferred_slot,
        departure_slot,
        count,
    }
}

fn toys() -> Vec<Toy> {
    vec![
        Toy {
            name: "capacity cost only",
            groups: vec![group(0, 1, 4)],
            slots: 2,
            lambda1: Rational::from_integer(1),
            lambda2: Rational::zero(),
        },
        Toy {
            name: "smoothness only",
            groups: vec![group(1, 2, 3)],
            slots: 3,
            lambda1: Rational::zero(),
            lambda2: Rational::from_integer(2),
        },
        Toy {
            name: "both weights, balanced demand",
            groups: vec![group(0, 1, 4)],
            slots: 2,
            lambda1: Rational::from_integer(1),
            lambda2: Rational::from_integer(1),
        },
        Toy {
            name: "two groups, strong smoothing",
            groups: vec![group(0, 1, 2), group(1, 2, 2)],
            slots: 3,
            lambda1: Rational::zero(),
            lambda2: Rational::from_integer(10),
        },
    ]
}

#[test]
fn criterion_6_capacity_optimizer_dominates_and_matches_exhaustive_search() {
    let started = Instant::now();
    let params = CostParams::default();

    // (a) With free capacity (both weights zero) the optimizer's assignment
    // cost can never exceed the cost under the fixed default staffing.
    let grid = standard_grid();
    let profile = small_profile(5, 20, 30_000, &grid);
    let fixed = solve_assignment(
        &profile,
        &CapacityProfile::uniform(900, grid.num_slots()),
        &params,
        &grid,
    )
    .expect("fixed staffing is feasible");
    assert!(
        fixed.objective > Rational::zero(),
        "the dominance check needs a scenario where fixed staffing actually costs something"
    );
    let free = CapacityOptConfig {
        lambda1: Rational::zero(),
        lambda2: Rational::zero(),
        max_capacity: None,
    };
    let outcome = optimize_capacity(&profile, &params, &grid, &free).unwrap();
    outcome
        .plan
        .verify(&profile, &outcome.capacities, &params, &grid)
        .expect("optimizer plan verifies");
    assert!(
        outcome.diagnostics.assignment_cost <= fixed.objective,
        "optimized assignment cost {} exceeds fixed-staffing cost {}",
        outcome.diagnostics.assignment_cost,
        fixed.objective
    );

    // (b) With a positive smoothing weight, each variation variable sits
    // exactly on |C[t+1] - C[t]| at the optimum.
    for (slots, lambda1, lambda2) in [
        (8usize, Rational::new(1, 2), Rational::from_integer(3)),
        (12usize, Rational::zero(), Rational::from_integer(10)),
    ] {
        let small_grid = SlotGrid::new(15, slots, 0).unwrap();
        let tight_profile = DemandProfile::from_groups(vec![
            group(1, 3, 9),
            group(2, 5, 5),
            group(slots - 2, slots - 1, 7),
        ])
        .unwrap();
        let config = CapacityOptConfig {
            lambda1,
            lambda2,
            max_capacity: None,
        };
        let (lp, layout) =
            build_capacity_lp(&tight_profile, &params, &small_grid, &config).unwrap();
        let solution = solve_lp::<f64>(&lp).unwrap();
        assert_eq!(solution.status, LpStatus::Optimal);
        for t in 0..slots - 1 {
            let tau = solution.values[layout.variation_index(t)];
            let step = (solution.values[layout.capacity_index(t + 1)]
                - solution.values[layout.capacity_index(t)])
            .abs();
            assert!(
                (tau - step).abs() <= 1e-9,
                "slots {slots}, t {t}: tau {tau} vs |step| {step}"
            );
        }
    }

    // (c) On toy instances the exact LP value and the rounded integral
    // outcome both equal exhaustive search over integer capacity vectors.
    for toy in toys() {
        let toy_grid = SlotGrid::new(15, toy.slots, 0).unwrap();
        let toy_profile = DemandProfile::from_groups(toy.groups.clone()).unwrap();
        let best =
            best_capacity_on_grid(&toy_profile, &params, &toy_grid, toy.lambda1, toy.lambda2)
                .unwrap_or_else(|| {
                    panic!("toy '{}' has no feasible capacity in the grid", toy.name)
                });
        let config = CapacityOptConfig {
            lambda1: toy.lambda1,
            lambda2: toy.lambda2,
            max_capacity: Some(5),
        };
        let (lp, _) = build_capacity_lp(&toy_profile, &params, &toy_grid, &config).unwrap();
        let lp_solution = solve_lp::<Exact>(&lp).unwrap();
        assert_eq!(lp_solution.status, LpStatus::Optimal, "toy '{}'", toy.name);
        assert_eq!(
            lp_solution.objective,
            exact(best),
            "toy '{}': LP value differs from exhaustive search",
            toy.name
        );
        let outcome = optimize_capacity(&toy_profile, &params, &toy_grid, &config).unwrap();
        assert_eq!(
            outcome.diagnostics.integral_objective, best,
            "toy '{}': rounded outcome differs from exhaustive search",
            toy.name
        );
    }

    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 120.0, "capacity checks took {elapsed:.1}s");
    println!(
        "ACCEPTANCE C6 PASS: free-capacity optimum dominates fixed staffing, variation \
         variables are tight at optimality, toy LP values match exhaustive search ({elapsed:.1}s)"
    );
}

// ---------------------------------------------------------------------------
// C7: compliance endpoints are bit-exact and the Monte Carlo trends hold
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_compliance_endpoints_and_monotone_trends() {
    let started = Instant::now();
    let grid = standard_grid();
    let params = CostParams::default();
    let profile = reference_profile(&grid);
    let capacity = CapacityProfile::uniform(900, grid.num_slots());
    let plan = solve_assignment(&profile, &capacity, &params, &grid).unwrap();

    let grouped = grouped_plan(&plan, grid.num_slots());
    let curves = slotflow_core::simulate_queue(&grouped.series(), &capacity, &grid).unwrap();
    let plan_wait = total_wait(&curves, &grid).unwrap();

    let baseline = fcfs_metrics(
        &grouped_baseline(&profile, grid.num_slots()),
        &capacity,
        &params,
        &grid,
    )
    .unwrap();

    const TRIALS: usize = 200;

    // Follow-probability sweep, including both endpoints.
    let p_values = [0.0, 0.25, 0.5, 0.75, 1.0];
    let p_models: Vec<ComplianceModel> = p_values
        .iter()
        .map(|&p| ComplianceModel::Bernoulli {
            compliance_probability: p,
        })
        .collect();
    let p_results = sweep(&plan, &capacity, &grid, &p_models, TRIALS, 42).unwrap();

    // p = 1 reproduces the optimized plan bit-exactly.
    let full = p_results.last().unwrap();
    assert_eq!(
        full.mean_wait_hours, plan_wait,
        "full compliance must equal the plan"
    );
    assert_eq!(full.sd_wait_hours, 0.0);
    // p = 0 reproduces the baseline bit-exactly.
    let refusal = &p_results[0];
    assert_eq!(
        refusal.mean_wait_hours, baseline.total_wait_hours,
        "zero compliance must equal the FIFO baseline"
    );
    assert_eq!(refusal.sd_wait_hours, 0.0);

    // Mean wait is non-increasing in p, within two standard errors.
    assert_monotone(&p_results, &p_values, Trend::NonIncreasing, |r| {
        (
            rational_to_f64(r.mean_wait_hours),
            standard_error(r.sd_wait_hours, r.num_trials),
        )
    });

    // Arrival-jitter sweep: sigma = 0 reproduces the plan bit-exactly and the
    // missed fraction grows with the jitter.
    let sigma_values = [0.0, 5.0, 10.0, 15.0, 30.0, 60.0];
    let sigma_models: Vec<ComplianceModel> = sigma_values
        .iter()
        .map(|&s| ComplianceModel::GaussianJitter { sigma_minutes: s })
        .collect();
    let sigma_results = sweep(&plan, &capacity, &grid, &sigma_models, TRIALS, 42).unwrap();

    let still = &sigma_results[0];
    assert_eq!(
        still.mean_wait_hours, plan_wait,
        "zero jitter must equal the plan"
    );
    assert_eq!(still.sd_wait_hours, 0.0);

    let n = profile.total_passengers() as f64;
    assert_monotone(&sigma_results, &sigma_values, Trend::NonDecreasing, |r| {
        (
            r.mean_missed_fraction(),
            standard_error(r.sd_missed, r.num_trials) / n,
        )
    });

    let elapsed = started.elapsed().as_secs_f64();
    assert!(elapsed < 600.0, "compliance checks took {elapsed:.1}s");
    println!(
        "ACCEPTANCE C7 PASS: endpoints reproduce plan and baseline bit-exactly; mean wait \
         falls with the follow probability and misses rise with jitter, within two standard \
         errors at {TRIALS} trials ({elapsed:.1}s)"
    );
}

enum Trend {
    NonIncreasing,
    NonDecreasing,
}

/// Checks a Monte Carlo trend pointwise: each step may violate monotonicity
/// by at most twice the combined standard error of the two estimates.
fn assert_monotone<F>(results: &[ComplianceResult], labels: &[f64], trend: Trend, stat: F)
where
    F: Fn(&ComplianceResult) -> (f64, f64),
{
    for i in 0..results.len() - 1 {
        let (a, se_a) = stat(&results[i]);
        let (b, se_b) = stat(&results[i + 1]);
        let slack = 2.0 * (se_a * se_a + se_b * se_b).sqrt();
        let ok = match trend {
            Trend::NonIncreasing => b <= a + slack,
            Trend::NonDecreasing => b + slack >= a,
        };
        assert!(
            ok,
            "trend violated between {} ({a}±{se_a}) and {} ({b}±{se_b})",
            labels[i],
            labels[i + 1]
        );
    }
}

// ---------------------------------------------------------------------------
// C8: pinned regression values for the reference day, via the real binary
// ---------------------------------------------------------------------------

fn run_binary(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slotflow"))
        .env_remove("SLOTFLOW_OUT_DIR")
        .args(args)
        .output()
        .expect("binary runs")
}

fn read_summary(dir: &Path) -> serde_json::Value {
    let text = std::fs::read_to_string(dir.join("summary.json")).expect("summary exists");
    serde_json::from_str(&text).expect("summary parses")
}

#[test]
fn criterion_8_reference_day_regression_values() {
    // Deterministic part: the full solve on the reference day. These values
    // were produced by the first verified run and are pinned exactly; any
    // drift in solver, simulator, or scenario generation shows up here.
    let solve_dir = TempDir::new().unwrap();
    let out = run_binary(&["solve", "--out-dir", solve_dir.path().to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary = read_summary(solve_dir.path());
    assert_eq!(summary["improvement"]["baseline_cost"], "36131");
    assert_eq!(summary["improvement"]["plan_cost"], "4837");
    assert_eq!(summary["improvement"]["savings"], "31294");
    let percent = summary["improvement"]["savings_percent_approx"]
        .as_f64()
        .unwrap();
    assert!(
        (percent - 86.61260413495336).abs() < 1e-9,
        "cost reduction drifted: {percent}"
    );

    // Monte Carlo part: total wait under half compliance, 200 trials. The
    // pinned mean comes from the first verified run; the tolerance is twice
    // the standard error reported by the run itself. With fixed seeds the
    // distance is actually zero — the band is the contract, not the
    // expectation.
    let comply_dir = TempDir::new().unwrap();
    let out = run_binary(&[
        "comply",
        "--out-dir",
        comply_dir.path().to_str().unwrap(),
        "--model",
        "bernoulli",
        "--p",
        "0.5",
        "--trials",
        "200",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let summary = read_summary(comply_dir.path());
    let compliance = &summary["compliance"];
    assert_eq!(compliance["trials"], 200);
    let mean = compliance["mean_wait_hours_approx"].as_f64().unwrap();
    let sd = compliance["sd_wait_hours"].as_f64().unwrap();
    let se = standard_error(sd, 200);
    assert!(
        (mean - 4235.28875).abs() <= 2.0 * se,
        "half-compliance mean wait drifted: {mean} (se {se})"
    );
    let reduction = compliance["tw_reduction_vs_baseline_percent_approx"]
        .as_f64()
        .unwrap();
    let baseline_wait = 9032.75;
    let reduction_band = 2.0 * se / baseline_wait * 100.0;
    assert!(
        (reduction - 53.111856854224904).abs() <= reduction_band,
        "half-compliance wait reduction drifted: {reduction}"
    );

    println!(
        "ACCEPTANCE C8 PASS: reference day cost 36131 -> 4837 (86.61% saved); \
         half-compliance mean wait {mean} passenger-hours, {reduction:.2}% below the baseline"
    );
}

// ---------------------------------------------------------------------------
// C9: byte-identical outputs on re-runs of every subcommand
// ---------------------------------------------------------------------------

fn dir_snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut snapshot = BTreeMap::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let entry = entry.unwrap();
        if entry.file_type().unwrap().is_file() {
            snapshot.insert(
                entry.file_name().to_string_lossy().into_owned(),
                std::fs::read(entry.path()).unwrap(),
            );
        }
    }
    snapshot
}

#[test]
fn criterion_9_every_subcommand_is_deterministic() {
    // A small schedule shared by the capacity runs, itself produced twice to
    // check the generator.
    let schedule_dir = TempDir::new().unwrap();
    let small_a = schedule_dir.path().join("a.csv");
    let small_b = schedule_dir.path().join("b.csv");
    for path in [&small_a, &small_b] {
        let out = run_binary(&[
            "generate",
            "--out-dir",
            schedule_dir.path().to_str().unwrap(),
            "--flights",
            "12",
            "--seats",
            "400",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    assert_eq!(
        std::fs::read(&small_a).unwrap(),
        std::fs::read(&small_b).unwrap(),
        "generate is not deterministic"
    );

    let small = small_a.to_str().unwrap().to_string();
    let commands: Vec<(&str, Vec<String>)> = vec![
        ("solve", vec!["solve".into()]),
        ("simulate", vec!["simulate".into()]),
        (
            "capacity",
            vec![
                "capacity".into(),
                "--schedule".into(),
                small.clone(),
                "--lambda1".into(),
                "1".into(),
                "--lambda2".into(),
                "10".into(),
            ],
        ),
        (
            "comply",
            vec![
                "comply".into(),
                "--model".into(),
                "gaussian".into(),
                "--sigma".into(),
                "10".into(),
                "--trials".into(),
                "3".into(),
            ],
        ),
        (
            "sweep",
            vec![
                "sweep".into(),
                "--model".into(),
                "bernoulli".into(),
                "--points".into(),
                "0,0.5,1".into(),
                "--trials".into(),
                "2".into(),
            ],
        ),
    ];

    for (name, args) in &commands {
        let mut snapshots = Vec::new();
        for _ in 0..2 {
            let dir = TempDir::new().unwrap();
            let mut full: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
            let dir_str = dir.path().to_str().unwrap().to_string();
            full.extend(["--out-dir", &dir_str]);
            let out = run_binary(&full);
            assert!(
                out.status.success(),
                "{name}: {}",
                String::from_utf8_lossy(&out.stderr)
            );
            snapshots.push(dir_snapshot(dir.path()));
        }
        assert!(!snapshots[0].is_empty(), "{name} wrote no files");
        assert_eq!(snapshots[0], snapshots[1], "{name} is not deterministic");
    }

    println!(
        "ACCEPTANCE C9 PASS: generate and all five analysis subcommands produce \
         byte-identical outputs on re-runs"
    );
}
