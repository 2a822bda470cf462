//! Per-step controllers: leaderless dispersion and the phased line
//! formation with interim leaders.
//!
//! A controller inspects the current world and decides the step's control
//! topology plus any external leader forces. The line controller is a small
//! state machine — Pairing, then Chaining, then Stretching — that emits the
//! output for its current phase and only then evaluates its gate on the
//! same snapshot, so every run walks the phases in order without skips.

use std::collections::BTreeMap;

use crate::dynamics::{LinkSet, World, COINCIDENT_EPS};
use crate::topology::{
    chain_endpoints, dispersion_links, greedy_pairing, line_links, pair_centroid, pair_graph,
    Pair, PairGraph,
};
use crate::vec2::Vec2;

/// Every agent tracks this many nearest neighbors while dispersing.
pub const DISPERSION_NEIGHBOR_COUNT: usize = 3;

/// One step's control decision: the links to apply and any leader forces.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlOutput {
    pub links: LinkSet,
    /// Nonzero entries only for designated leaders; ordered by agent id.
    pub external_forces: BTreeMap<usize, Vec2>,
    /// Human-readable stage tag for logs and metrics.
    pub phase_label: String,
}

impl ControlOutput {
    /// Flattens the force map for [`crate::dynamics::integrate_step`].
    pub fn forces_vec(&self) -> Vec<(usize, Vec2)> {
        self.external_forces.iter().map(|(&id, &f)| (id, f)).collect()
    }
}

/// Trigonal dispersion: every agent pulls toward rest length `l_d` against
/// its three nearest in-range neighbors. Stateless and leaderless — the
/// external-force map is always empty.
pub fn dispersion_controller(
    world: &World,
    l_d: f64,
    range: Option<f64>,
    gain_k: f64,
    gain_b: f64,
) -> ControlOutput {
    ControlOutput {
        links: dispersion_links(world, l_d, DISPERSION_NEIGHBOR_COUNT, range, gain_k, gain_b),
        external_forces: BTreeMap::new(),
        phase_label: "dispersion".to_string(),
    }
}

/// Stages of the line algorithm, in the only order they can occur.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub enum LinePhase {
    #[default]
    Pairing,
    Chaining,
    Stretching,
}

/// Tunables for the line controller.
#[derive(Debug, Clone, PartialEq)]
pub struct LineParams {
    /// Inter-pair spacing target (also the leftover attachment rest).
    pub l_d: f64,
    /// Intra-pair rest length.
    pub epsilon: f64,
    /// Magnitude of each interim-leader stretch force.
    pub leader_force: f64,
    pub range: Option<f64>,
    pub gain_k: f64,
    pub gain_b: f64,
}

/// Carry-over state between line-controller calls. The matching is frozen
/// on the first call, the chain graph and leftover attachments when Pairing
/// completes, and the leader designation when Chaining completes.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LineControllerState {
    pub phase: LinePhase,
    pub pairs: Option<Vec<Pair>>,
    pub leftovers: Vec<usize>,
    pub graph: Option<PairGraph>,
    /// `(leftover agent, end-pair index)` attachments, in leftover id order.
    pub attachments: Vec<(usize, usize)>,
    pub leaders: Option<(usize, usize)>,
}

impl LineControllerState {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Runs one line-controller step: freeze the matching if this is the first
/// call, emit the current phase's output, then evaluate the phase gate on
/// this same snapshot so the next call may act one stage further.
pub fn line_controller(
    world: &World,
    mut state: LineControllerState,
    params: &LineParams,
) -> (ControlOutput, LineControllerState) {
    if state.pairs.is_none() {
        let (pairs, leftovers) = greedy_pairing(world, params.range);
        state.pairs = Some(pairs);
        state.leftovers = leftovers;
    }

    let output = match state.phase {
        LinePhase::Pairing => pairing_output(world, &state, params),
        LinePhase::Chaining | LinePhase::Stretching => chained_output(world, &state, params),
    };

    advance_phase(world, &mut state, params);
    (output, state)
}

fn pairing_output(world: &World, state: &LineControllerState, params: &LineParams) -> ControlOutput {
    let _ = world;
    let mut links = LinkSet::new();
    for pair in state.pairs.as_ref().unwrap() {
        links.push_mirrored(pair.a, pair.b, params.epsilon, params.gain_k, params.gain_b);
    }
    ControlOutput {
        links,
        external_forces: BTreeMap::new(),
        phase_label: "pairing".to_string(),
    }
}

fn chained_output(world: &World, state: &LineControllerState, params: &LineParams) -> ControlOutput {
    let graph = state.graph.as_ref().unwrap();
    let mut links =
        line_links(world, graph, params.epsilon, params.l_d, params.gain_k, params.gain_b);
    for &(id, pair_idx) in &state.attachments {
        let pair = &graph.pairs[pair_idx];
        links.push_mirrored(id, pair.a, params.l_d, params.gain_k, params.gain_b);
        links.push_mirrored(id, pair.b, params.l_d, params.gain_k, params.gain_b);
    }

    let mut external_forces = BTreeMap::new();
    let mut phase_label = if graph.is_single_path() {
        "chaining".to_string()
    } else {
        format!("chaining(components={})", graph.component_count())
    };
    if state.phase == LinePhase::Stretching {
        phase_label = "stretching".to_string();
        let (left, right) = state.leaders.expect("stretching requires designated leaders");
        for leader in [left, right] {
            let force = leader_stretch_force(world, leader, graph, params.leader_force);
            if force != Vec2::ZERO {
                external_forces.insert(leader, force);
            }
        }
    }
    ControlOutput { links, external_forces, phase_label }
}

/// Evaluates the current phase's completion gate and advances at most one
/// stage, freezing the structures the next stage needs.
fn advance_phase(world: &World, state: &mut LineControllerState, params: &LineParams) {
    match state.phase {
        LinePhase::Pairing => {
            let pairs = state.pairs.as_ref().unwrap();
            let closed = pairs.iter().all(|p| {
                let gap = (world.agents[p.a].position - world.agents[p.b].position).norm();
                gap <= 2.0 * params.epsilon
            });
            if closed {
                let graph = pair_graph(world, pairs, params.range);
                state.attachments = attach_leftovers(world, &graph, &state.leftovers);
                state.graph = Some(graph);
                state.phase = LinePhase::Chaining;
            }
        }
        LinePhase::Chaining => {
            let graph = state.graph.as_ref().unwrap();
            if cross_links_settled(world, graph, params.l_d) {
                if let Some(leaders) = chain_endpoints(world, graph) {
                    state.leaders = Some(leaders);
                    state.phase = LinePhase::Stretching;
                }
            }
        }
        LinePhase::Stretching => {}
    }
}

/// True once every chain cross distance is within 20% of the spacing
/// target. Leftover attachments are not cross links and do not gate.
fn cross_links_settled(world: &World, graph: &PairGraph, l_d: f64) -> bool {
    graph.edges.iter().all(|&(p, q)| {
        let (lhs, rhs) = (&graph.pairs[p], &graph.pairs[q]);
        [lhs.a, lhs.b].iter().all(|&u| {
            [rhs.a, rhs.b].iter().all(|&v| {
                let gap = (world.agents[u].position - world.agents[v].position).norm();
                (gap - l_d).abs() <= 0.2 * l_d
            })
        })
    })
}

/// Assigns each unmatched agent to its nearest open chain end (a pair of
/// degree ≤ 1, by centroid distance, ties toward the smaller pair index).
fn attach_leftovers(
    world: &World,
    graph: &PairGraph,
    leftovers: &[usize],
) -> Vec<(usize, usize)> {
    let open_ends: Vec<usize> =
        (0..graph.pairs.len()).filter(|&idx| graph.degree(idx) <= 1).collect();
    if open_ends.is_empty() {
        return Vec::new();
    }
    leftovers
        .iter()
        .map(|&id| {
            let at = world.agents[id].position;
            let best = open_ends
                .iter()
                .copied()
                .min_by(|&p, &q| {
                    let dp = (pair_centroid(world, &graph.pairs[p]) - at).norm_sq();
                    let dq = (pair_centroid(world, &graph.pairs[q]) - at).norm_sq();
                    dp.total_cmp(&dq).then(p.cmp(&q))
                })
                .unwrap();
            (id, best)
        })
        .collect()
}

/// Constant-magnitude stretch force for one interim leader: `magnitude`
/// along the unit vector from the adjacent pair's centroid toward the
/// leader's own pair centroid — outward along the local chain axis. The two
/// leaders' forces point in locally opposite directions by construction.
/// Coincident centroids yield zero force for the step.
pub fn leader_stretch_force(
    world: &World,
    leader: usize,
    graph: &PairGraph,
    magnitude: f64,
) -> Vec2 {
    let own_idx = match graph.pairs.iter().position(|p| p.contains(leader)) {
        Some(idx) => idx,
        None => return Vec2::ZERO,
    };
    let adjacent = graph.neighbors(own_idx);
    let Some(&adj_idx) = adjacent.first() else {
        return Vec2::ZERO;
    };
    let axis = pair_centroid(world, &graph.pairs[own_idx])
        - pair_centroid(world, &graph.pairs[adj_idx]);
    let norm = axis.norm();
    if norm < COINCIDENT_EPS {
        return Vec2::ZERO;
    }
    axis * (magnitude / norm)
}
