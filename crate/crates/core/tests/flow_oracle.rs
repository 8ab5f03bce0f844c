//! Exhaustive-oracle checks for the min-cost-flow solver: on hundreds of
//! random small instances the solver must agree exactly with brute-force
//! enumeration of every integral flow vector.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slotflow_core::{
    brute_force_min_cost, solve_min_cost_flow, validate_flow, BruteForceError, FlowNetwork,
    FlowStatus, Rational,
};

const ENUMERATION_CAP: u64 = 1_000_000;

/// A random network with at most 6 nodes, 8 arcs, bounds within [0, 4], and
/// rational costs in [-6, 6] with denominators up to 4.
fn random_network(rng: &mut ChaCha8Rng) -> FlowNetwork {
    let num_nodes = rng.gen_range(2..=6);
    let mut network = FlowNetwork::new();
    for _ in 0..num_nodes {
        network.add_node(0);
    }
    // Move supply units between random node pairs so supplies always net out.
    for _ in 0..rng.gen_range(0..=6) {
        let from = rng.gen_range(0..num_nodes);
        let to = rng.gen_range(0..num_nodes);
        network.nodes[from].supply += 1;
        network.nodes[to].supply -= 1;
    }
    let num_arcs = rng.gen_range(1..=8);
    for _ in 0..num_arcs {
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
fn solver_matches_brute_force_on_at_least_200_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240);
    let mut optimal = 0usize;
    let mut infeasible = 0usize;
    for case in 0..250 {
        let network = random_network(&mut rng);
        let solved = solve_min_cost_flow(&network).expect("generated networks are valid");
        let brute = match brute_force_min_cost(&network, ENUMERATION_CAP) {
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
                assert!(
                    report.is_valid(),
                    "case {case}: solver flow fails validation: {report:?}"
                );
                optimal += 1;
            }
            (FlowStatus::Infeasible { deficit: a }, FlowStatus::Infeasible { deficit: b }) => {
                assert_eq!(
                    a,
                    b,
                    "case {case}: deficits differ\n{}",
                    network.to_arc_list()
                );
                infeasible += 1;
            }
            (s, b) => panic!(
                "case {case}: status mismatch solver={s:?} brute={b:?}\n{}",
                network.to_arc_list()
            ),
        }
    }
    assert!(
        optimal + infeasible >= 200,
        "only {} cases ran",
        optimal + infeasible
    );
    assert!(
        optimal >= 40,
        "too few optimal cases ({optimal}) to be convincing"
    );
    assert!(
        infeasible >= 10,
        "too few infeasible cases ({infeasible}) to be convincing"
    );
}

#[test]
fn scaling_every_cost_scales_the_objective() {
    let mut rng = ChaCha8Rng::seed_from_u64(7_341);
    let factor = Rational::new(7, 3);
    let mut checked = 0;
    while checked < 40 {
        let network = random_network(&mut rng);
        let base = solve_min_cost_flow(&network).unwrap();
        if !base.is_optimal() {
            continue;
        }
        let mut scaled = network.clone();
        for arc in &mut scaled.arcs {
            arc.cost *= factor;
        }
        let solved = solve_min_cost_flow(&scaled).unwrap();
        assert!(solved.is_optimal());
        assert_eq!(solved.objective, base.objective * factor);
        checked += 1;
    }
}

#[test]
fn repeated_solves_return_identical_flow_vectors() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..25 {
        let network = random_network(&mut rng);
        let first = solve_min_cost_flow(&network).unwrap();
        let second = solve_min_cost_flow(&network).unwrap();
        assert_eq!(first.status, second.status);
        assert_eq!(first.flows, second.flows);
        assert_eq!(first.objective, second.objective);
    }
}

#[test]
fn bipartite_assignment_networks_are_feasible_iff_capacity_covers_demand() {
    let mut rng = ChaCha8Rng::seed_from_u64(4_812);
    for case in 0..60 {
        let groups = rng.gen_range(1..=3);
        let slots = rng.gen_range(1..=3);
        let counts: Vec<i64> = (0..groups).map(|_| rng.gen_range(1..=4)).collect();
        let caps: Vec<i64> = (0..slots).map(|_| rng.gen_range(0..=4)).collect();
        let demand: i64 = counts.iter().sum();
        let capacity: i64 = caps.iter().sum();

        let mut network = FlowNetwork::new();
        for &count in &counts {
            network.add_node(count);
        }
        for _ in 0..slots {
            network.add_node(0);
        }
        let sink = network.add_node(-demand);
        for (g, &count) in counts.iter().enumerate() {
            for t in 0..slots {
                network.add_arc(g, groups + t, 0, count, Rational::new((g + t) as i64, 1));
            }
        }
        for (t, &cap) in caps.iter().enumerate() {
            network.add_arc(groups + t, sink, 0, cap, Rational::zero());
        }

        let solution = solve_min_cost_flow(&network).unwrap();
        match solution.status {
            FlowStatus::Optimal => {
                assert!(capacity >= demand, "case {case}: optimal despite shortfall")
            }
            FlowStatus::Infeasible { deficit } => {
                assert!(capacity < demand, "case {case}: infeasible despite cover");
                assert_eq!(deficit, demand - capacity, "case {case}");
            }
        }
    }
}

#[test]
fn arc_list_fixtures_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(314);
    for _ in 0..10 {
        let network = random_network(&mut rng);
        let text = network.to_arc_list();
        let parsed = FlowNetwork::from_arc_list(&text).expect("fixture text parses");
        assert_eq!(parsed.to_arc_list(), text);
        let a = solve_min_cost_flow(&network).unwrap();
        let b = solve_min_cost_flow(&parsed).unwrap();
        assert_eq!(a.status, b.status);
        assert_eq!(a.flows, b.flows);
        assert_eq!(a.objective, b.objective);
    }
}
