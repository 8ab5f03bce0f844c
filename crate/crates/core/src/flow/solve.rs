//! Successive shortest paths with node potentials.
//!
//! Costs are scaled to a common integer denominator up front, so every
//! arithmetic step in the solve is integral. Lower bounds are folded into the
//! node balances, negative-cost arcs are pre-saturated (their residual twins
//! then carry positive cost), and a super source/sink pair turns the supply
//! problem into repeated shortest augmenting paths. Dijkstra runs on reduced
//! costs, which the pre-processing keeps non-negative throughout.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_integer::Integer;
use num_traits::Zero;

use super::{FlowNetwork, FlowSolution, FlowStatus, NetworkError};
use crate::numeric::Rational;

const UNREACHED: i128 = i128::MAX;

/// Ceiling on the common cost denominator and on scaled cost magnitudes,
/// chosen so shortest-path sums stay far from i128 overflow.
const MAX_COST_SCALE: i128 = 1 << 40;

/// Solves the minimum-cost flow problem exactly.
///
/// Returns a structural [`NetworkError`] if the network is malformed (that is
/// never reported as infeasibility). Otherwise the result is either an optimal
/// integral flow, or [`FlowStatus::Infeasible`] carrying the max-flow deficit:
/// the number of supply units that cannot reach demand under the arc bounds.
///
/// The solve is deterministic: equal-cost ties are resolved by arc insertion
/// order and node index, so identical networks yield identical flow vectors.
pub fn solve_min_cost_flow(network: &FlowNetwork) -> Result<FlowSolution, NetworkError> {
    network.validate()?;
    let n = network.nodes.len();
    let m = network.arcs.len();

    // Scale all arc costs to one integer denominator.
    let mut scale: i128 = 1;
    for arc in &network.arcs {
        scale = scale.lcm(&(*arc.cost.denom() as i128));
        if scale > MAX_COST_SCALE {
            return Err(NetworkError::CostScaleOverflow);
        }
    }
    let scaled_cost = |cost: Rational| -> Result<i128, NetworkError> {
        let c = *cost.numer() as i128 * (scale / *cost.denom() as i128);
        if c.abs() > MAX_COST_SCALE * MAX_COST_SCALE {
            return Err(NetworkError::CostScaleOverflow);
        }
        Ok(c)
    };

    // Residual graph: arcs 2i / 2i+1 are forward/backward twins of input arc i;
    // super-source and super-sink arcs follow, also paired. `cap[2i+1]` is
    // always the current flow above the lower bound on arc i.
    let source = n;
    let sink = n + 1;
    let mut balance: Vec<i128> = network
        .nodes
        .iter()
        .map(|node| node.supply as i128)
        .collect();
    let mut head: Vec<u32> = Vec::with_capacity(2 * m + 2 * n);
    let mut cap: Vec<i128> = Vec::with_capacity(2 * m + 2 * n);
    let mut cost: Vec<i128> = Vec::with_capacity(2 * m + 2 * n);
    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); n + 2];
    let mut push_pair = |adjacency: &mut Vec<Vec<u32>>,
                         tail: usize,
                         to: usize,
                         forward_cap: i128,
                         backward_cap: i128,
                         unit_cost: i128| {
        let id = head.len() as u32;
        head.push(to as u32);
        cap.push(forward_cap);
        cost.push(unit_cost);
        head.push(tail as u32);
        cap.push(backward_cap);
        cost.push(-unit_cost);
        adjacency[tail].push(id);
        adjacency[to].push(id + 1);
    };

    for arc in &network.arcs {
        let span = (arc.upper - arc.lower) as i128;
        let c = scaled_cost(arc.cost)?;
        balance[arc.tail] -= arc.lower as i128;
        balance[arc.head] += arc.lower as i128;
        if c >= 0 {
            push_pair(&mut adjacency, arc.tail, arc.head, span, 0, c);
        } else {
            // Pre-saturate: the backward twin (cost -c > 0) can undo it later.
            balance[arc.tail] -= span;
            balance[arc.head] += span;
            push_pair(&mut adjacency, arc.tail, arc.head, 0, span, c);
        }
    }

    let mut target: i128 = 0;
    for (v, &b) in balance.iter().enumerate() {
        if b > 0 {
            target += b;
            push_pair(&mut adjacency, source, v, b, 0, 0);
        } else if b < 0 {
            push_pair(&mut adjacency, v, sink, -b, 0, 0);
        }
    }

    // Successive shortest paths on reduced costs.
    let node_count = n + 2;
    let mut potential = vec![0i128; node_count];
    let mut dist = vec![UNREACHED; node_count];
    let mut parent = vec![u32::MAX; node_count];
    let mut heap: BinaryHeap<Reverse<(i128, u32)>> = BinaryHeap::new();
    let mut pushed: i128 = 0;
    while pushed < target {
        dist.fill(UNREACHED);
        parent.fill(u32::MAX);
        dist[source] = 0;
        heap.clear();
        heap.push(Reverse((0, source as u32)));
        while let Some(Reverse((d, v))) = heap.pop() {
            let v = v as usize;
            if d > dist[v] {
                continue;
            }
            for &e in &adjacency[v] {
                let e = e as usize;
                if cap[e] <= 0 {
                    continue;
                }
                let w = head[e] as usize;
                let next = d + cost[e] + potential[v] - potential[w];
                if next < dist[w] {
                    dist[w] = next;
                    parent[w] = e as u32;
                    heap.push(Reverse((next, w as u32)));
                }
            }
        }
        if dist[sink] == UNREACHED {
            break;
        }
        let sink_dist = dist[sink];
        for v in 0..node_count {
            potential[v] += dist[v].min(sink_dist);
        }
        let mut bottleneck = i128::MAX;
        let mut v = sink;
        while v != source {
            let e = parent[v] as usize;
            bottleneck = bottleneck.min(cap[e]);
            v = head[e ^ 1] as usize;
        }
        let mut v = sink;
        while v != source {
            let e = parent[v] as usize;
            cap[e] -= bottleneck;
            cap[e ^ 1] += bottleneck;
            v = head[e ^ 1] as usize;
        }
        pushed += bottleneck;
    }

    if pushed < target {
        return Ok(FlowSolution::infeasible((target - pushed) as i64));
    }

    let mut flows = Vec::with_capacity(m);
    let mut objective = Rational::zero();
    for (i, arc) in network.arcs.iter().enumerate() {
        let flow = arc.lower + cap[2 * i + 1] as i64;
        objective += arc.cost * Rational::from_integer(flow);
        flows.push(flow);
    }
    Ok(FlowSolution {
        status: FlowStatus::Optimal,
        flows,
        objective,
    })
}
