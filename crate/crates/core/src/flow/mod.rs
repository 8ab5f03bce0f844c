//! Exact integral minimum-cost network flow.
//!
//! A [`FlowNetwork`] is a directed graph with per-node net supplies, per-arc
//! flow bounds, and exact rational arc costs. [`solve_min_cost_flow`] finds an
//! integral flow of minimum total cost using successive shortest paths with
//! node potentials: costs are scaled to integers by the least common multiple
//! of their denominators, a super source/sink pair absorbs the supplies, and
//! each augmentation runs Dijkstra on reduced costs. No floating point is
//! involved anywhere in the solve, so for integral data the result is exact
//! and integral, and repeated runs return identical flow vectors (ties are
//! broken by arc insertion order and node index).
//!
//! [`brute_force_min_cost`] enumerates every integral bound-respecting flow
//! vector and is the independent oracle the solver is tested against.
//!
//! # Fixture format
//!
//! Networks serialize to a plain-text arc list for debugging and fixtures:
//!
//! ```text
//! nodes 3
//! node 0 2
//! node 1 0
//! node 2 -2
//! arc 0 1 0 2 1 2
//! arc 1 2 0 2 0 1
//! ```
//!
//! `node <id> <supply>` lines appear once per node in id order; each
//! `arc` line carries tail, head, lower, upper, cost-numerator and
//! cost-denominator. Blank lines and `#` comments are ignored.

mod brute;
mod solve;

pub use brute::{brute_force_min_cost, BruteForceError};
pub use solve::solve_min_cost_flow;

use crate::numeric::Rational;
use num_traits::Zero;

/// A node in a flow network: positive `supply` injects flow, negative demands it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowNode {
    pub supply: i64,
}

/// A directed arc with integral flow bounds `lower..=upper` and an exact
/// rational cost per unit of flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowArc {
    pub tail: usize,
    pub head: usize,
    pub lower: i64,
    pub upper: i64,
    pub cost: Rational,
}

/// A directed network with node supplies and bounded, costed arcs.
///
/// Nodes are identified by their insertion index. The struct is plain data;
/// [`FlowNetwork::validate`] (run automatically by the solvers) checks that
/// supplies balance, bounds satisfy `0 <= lower <= upper`, and every arc
/// endpoint exists.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlowNetwork {
    pub nodes: Vec<FlowNode>,
    pub arcs: Vec<FlowArc>,
}

/// Why a network is structurally unusable (distinct from being infeasible).
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NetworkError {
    #[error("node supplies sum to {0}, expected 0")]
    UnbalancedSupply(i64),
    #[error("arc {arc}: lower bound {lower} exceeds upper bound {upper}")]
    BoundsReversed { arc: usize, lower: i64, upper: i64 },
    #[error("arc {arc}: negative lower bound {lower}")]
    NegativeLower { arc: usize, lower: i64 },
    #[error("arc {arc}: endpoint {node} does not exist (network has {count} nodes)")]
    DanglingArc {
        arc: usize,
        node: usize,
        count: usize,
    },
    #[error("arc costs cannot be scaled to a common integer denominator without overflow")]
    CostScaleOverflow,
    #[error("fixture line {line}: {message}")]
    Fixture { line: usize, message: String },
}

/// Outcome of a solve: either an optimal integral flow or a certificate of
/// infeasibility carrying the max-flow deficit (total supply that cannot be
/// routed under the arc bounds).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlowStatus {
    Optimal,
    Infeasible { deficit: i64 },
}

/// An integral flow vector (indexed like `network.arcs`) and its exact cost.
///
/// `flows` and `objective` are meaningful only when `status` is
/// [`FlowStatus::Optimal`]; on infeasibility `flows` is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowSolution {
    pub status: FlowStatus,
    pub flows: Vec<i64>,
    pub objective: Rational,
}

impl FlowSolution {
    pub fn is_optimal(&self) -> bool {
        matches!(self.status, FlowStatus::Optimal)
    }

    pub(crate) fn infeasible(deficit: i64) -> Self {
        FlowSolution {
            status: FlowStatus::Infeasible { deficit },
            flows: Vec::new(),
            objective: Rational::zero(),
        }
    }
}

impl FlowNetwork {
    pub fn new() -> Self {
        FlowNetwork::default()
    }

    /// Adds a node with the given net supply and returns its id.
    pub fn add_node(&mut self, supply: i64) -> usize {
        self.nodes.push(FlowNode { supply });
        self.nodes.len() - 1
    }

    /// Adds an arc and returns its id. Bounds and endpoints are checked by
    /// [`FlowNetwork::validate`], not here, so tests can build bad networks.
    pub fn add_arc(
        &mut self,
        tail: usize,
        head: usize,
        lower: i64,
        upper: i64,
        cost: Rational,
    ) -> usize {
        self.arcs.push(FlowArc {
            tail,
            head,
            lower,
            upper,
            cost,
        });
        self.arcs.len() - 1
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    /// Checks structural soundness: every arc endpoint exists, bounds satisfy
    /// `0 <= lower <= upper`, and node supplies sum to zero.
    pub fn validate(&self) -> Result<(), NetworkError> {
        let count = self.nodes.len();
        for (i, arc) in self.arcs.iter().enumerate() {
            if arc.tail >= count {
                return Err(NetworkError::DanglingArc {
                    arc: i,
                    node: arc.tail,
                    count,
                });
            }
            if arc.head >= count {
                return Err(NetworkError::DanglingArc {
                    arc: i,
                    node: arc.head,
                    count,
                });
            }
            if arc.lower < 0 {
                return Err(NetworkError::NegativeLower {
                    arc: i,
                    lower: arc.lower,
                });
            }
            if arc.lower > arc.upper {
                return Err(NetworkError::BoundsReversed {
                    arc: i,
                    lower: arc.lower,
                    upper: arc.upper,
                });
            }
        }
        let total: i64 = self.nodes.iter().map(|n| n.supply).sum();
        if total != 0 {
            return Err(NetworkError::UnbalancedSupply(total));
        }
        Ok(())
    }

    /// Serializes the network in the fixture format described in the module docs.
    pub fn to_arc_list(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("nodes {}\n", self.nodes.len()));
        for (id, node) in self.nodes.iter().enumerate() {
            out.push_str(&format!("node {} {}\n", id, node.supply));
        }
        for arc in &self.arcs {
            out.push_str(&format!(
                "arc {} {} {} {} {} {}\n",
                arc.tail,
                arc.head,
                arc.lower,
                arc.upper,
                arc.cost.numer(),
                arc.cost.denom()
            ));
        }
        out
    }

    /// Parses the fixture format produced by [`FlowNetwork::to_arc_list`].
    pub fn from_arc_list(text: &str) -> Result<Self, NetworkError> {
        let mut network = FlowNetwork::new();
        let mut declared_nodes: Option<usize> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let fixture = |message: String| NetworkError::Fixture { line, message };
            match fields[0] {
                "nodes" => {
                    if fields.len() != 2 {
                        return Err(fixture("expected `nodes <count>`".into()));
                    }
                    let count = fields[1]
                        .parse::<usize>()
                        .map_err(|e| fixture(format!("bad node count: {e}")))?;
                    declared_nodes = Some(count);
                }
                "node" => {
                    if fields.len() != 3 {
                        return Err(fixture("expected `node <id> <supply>`".into()));
                    }
                    let id = fields[1]
                        .parse::<usize>()
                        .map_err(|e| fixture(format!("bad node id: {e}")))?;
                    if id != network.nodes.len() {
                        return Err(fixture(format!(
                            "node ids must be consecutive; expected {}, found {id}",
                            network.nodes.len()
                        )));
                    }
                    let supply = fields[2]
                        .parse::<i64>()
                        .map_err(|e| fixture(format!("bad supply: {e}")))?;
                    network.add_node(supply);
                }
                "arc" => {
                    if fields.len() != 7 {
                        return Err(fixture(
                            "expected `arc <tail> <head> <lower> <upper> <num> <den>`".into(),
                        ));
                    }
                    let mut ints = [0i64; 6];
                    for (slot, field) in ints.iter_mut().zip(&fields[1..]) {
                        *slot = field
                            .parse::<i64>()
                            .map_err(|e| fixture(format!("bad integer `{field}`: {e}")))?;
                    }
                    if ints[5] == 0 {
                        return Err(fixture("cost denominator must be nonzero".into()));
                    }
                    network.add_arc(
                        ints[0] as usize,
                        ints[1] as usize,
                        ints[2],
                        ints[3],
                        Rational::new(ints[4], ints[5]),
                    );
                }
                other => return Err(fixture(format!("unknown directive `{other}`"))),
            }
        }
        if let Some(count) = declared_nodes {
            if count != network.nodes.len() {
                return Err(NetworkError::Fixture {
                    line: 0,
                    message: format!(
                        "header declares {count} nodes but {} were listed",
                        network.nodes.len()
                    ),
                });
            }
        }
        Ok(network)
    }
}

/// A conservation violation: the node's net outflow differs from its supply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConservationViolation {
    pub node: usize,
    /// Net outflow minus the node's declared supply.
    pub imbalance: i64,
}

/// A bound violation: the arc's flow lies outside `lower..=upper`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundViolation {
    pub arc: usize,
    pub flow: i64,
}

/// Independent re-check of a solution against its network, constraint family
/// by constraint family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// Solution has one flow entry per arc.
    pub shape_ok: bool,
    pub conservation: Vec<ConservationViolation>,
    pub bounds: Vec<BoundViolation>,
    /// Recomputed `flows . costs` equals the reported objective.
    pub objective_consistent: bool,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.shape_ok
            && self.conservation.is_empty()
            && self.bounds.is_empty()
            && self.objective_consistent
    }
}

/// Re-derives conservation, bounds, and the objective from scratch for an
/// optimal solution. Call only on solutions with [`FlowStatus::Optimal`];
/// for infeasible solutions the report is trivially clean.
pub fn validate_flow(network: &FlowNetwork, solution: &FlowSolution) -> ValidationReport {
    if !solution.is_optimal() {
        return ValidationReport {
            shape_ok: true,
            conservation: Vec::new(),
            bounds: Vec::new(),
            objective_consistent: true,
        };
    }
    if solution.flows.len() != network.arcs.len() {
        return ValidationReport {
            shape_ok: false,
            conservation: Vec::new(),
            bounds: Vec::new(),
            objective_consistent: false,
        };
    }
    let mut net_out = vec![0i64; network.nodes.len()];
    let mut bounds = Vec::new();
    let mut objective = Rational::zero();
    for (i, (arc, &flow)) in network.arcs.iter().zip(&solution.flows).enumerate() {
        if flow < arc.lower || flow > arc.upper {
            bounds.push(BoundViolation { arc: i, flow });
        }
        net_out[arc.tail] += flow;
        net_out[arc.head] -= flow;
        objective += arc.cost * Rational::from_integer(flow);
    }
    let conservation = net_out
        .iter()
        .enumerate()
        .filter(|(node, &out)| out != network.nodes[*node].supply)
        .map(|(node, &out)| ConservationViolation {
            node,
            imbalance: out - network.nodes[node].supply,
        })
        .collect();
    ValidationReport {
        shape_ok: true,
        conservation,
        bounds,
        objective_consistent: objective == solution.objective,
    }
}
