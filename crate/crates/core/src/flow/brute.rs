//! Brute-force reference solver: enumerates every integral bound-respecting
//! flow vector. Exponential, deliberately simple, and independent of the
//! shortest-path machinery — this is the oracle the real solver is checked
//! against on small instances.

use super::{FlowNetwork, FlowSolution, FlowStatus, NetworkError};
use crate::numeric::Rational;

/// Errors from [`brute_force_min_cost`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BruteForceError {
    #[error("network is invalid: {0}")]
    Invalid(#[from] NetworkError),
    #[error("instance has {combinations} flow vectors, above the enumeration cap {cap}")]
    TooLarge { combinations: u128, cap: u64 },
}

/// Enumerates all integral flow vectors within the arc bounds and returns the
/// cheapest one satisfying conservation, mirroring [`super::solve_min_cost_flow`]'s
/// status semantics. On infeasible instances the reported deficit is the
/// minimum total imbalance over all enumerated vectors (half the sum of
/// absolute conservation violations), which matches the solver's max-flow
/// deficit exactly.
///
/// `enumeration_cap` bounds the number of vectors visited; larger instances
/// return [`BruteForceError::TooLarge`].
pub fn brute_force_min_cost(
    network: &FlowNetwork,
    enumeration_cap: u64,
) -> Result<FlowSolution, BruteForceError> {
    network.validate().map_err(BruteForceError::Invalid)?;

    let mut combinations: u128 = 1;
    for arc in &network.arcs {
        let choices = (arc.upper - arc.lower) as u128 + 1;
        combinations = combinations.saturating_mul(choices);
        if combinations > enumeration_cap as u128 {
            return Err(BruteForceError::TooLarge {
                combinations,
                cap: enumeration_cap,
            });
        }
    }

    let mut flows: Vec<i64> = network.arcs.iter().map(|arc| arc.lower).collect();
    let mut best: Option<(Rational, Vec<i64>)> = None;
    let mut min_imbalance = i128::MAX;
    let mut net_out = vec![0i128; network.nodes.len()];
    loop {
        net_out.fill(0);
        for (arc, &flow) in network.arcs.iter().zip(&flows) {
            net_out[arc.tail] += flow as i128;
            net_out[arc.head] -= flow as i128;
        }
        let imbalance: i128 = network
            .nodes
            .iter()
            .zip(&net_out)
            .map(|(node, &out)| (out - node.supply as i128).abs())
            .sum();
        min_imbalance = min_imbalance.min(imbalance);
        if imbalance == 0 {
            let cost: Rational = network
                .arcs
                .iter()
                .zip(&flows)
                .map(|(arc, &flow)| arc.cost * Rational::from_integer(flow))
                .sum();
            let better = match &best {
                Some((incumbent, _)) => cost < *incumbent,
                None => true,
            };
            if better {
                best = Some((cost, flows.clone()));
            }
        }

        // Odometer increment over the arc flows, earliest arc fastest.
        let mut position = 0;
        loop {
            if position == flows.len() {
                // Wrapped all the way around: enumeration complete.
                return Ok(match best {
                    Some((objective, flows)) => FlowSolution {
                        status: FlowStatus::Optimal,
                        flows,
                        objective,
                    },
                    None => FlowSolution::infeasible((min_imbalance / 2) as i64),
                });
            }
            if flows[position] < network.arcs[position].upper {
                flows[position] += 1;
                break;
            }
            flows[position] = network.arcs[position].lower;
            position += 1;
        }
    }
}
