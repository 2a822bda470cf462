//! Spring–damper force computation and discrete-time integration.
//!
//! Every control edge is a virtual spring with a rest length plus a damper
//! acting on the relative velocity of its endpoints. Agents integrate under
//! semi-implicit Euler: velocity first, then position with the new velocity.
//! All forces for a step are computed from the time-`t` state before any
//! agent is written (double buffering), and each agent's force sum is
//! accumulated in link-list order so reruns are bit-identical.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::vec2::Vec2;

/// Two positions closer than this are treated as coincident and separated
/// along a deterministic direction instead of dividing by a ~zero norm.
pub const COINCIDENT_EPS: f64 = 1e-9;

/// One point-mass agent. `id` doubles as the index into `World::agents`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AgentState {
    pub id: usize,
    pub position: Vec2,
    /// Distance units per step.
    pub velocity: Vec2,
    /// Dimensionless weight; all shipped scenarios use 1.
    pub mass: f64,
}

/// A directed control edge: the force it produces acts on `from` only.
/// Symmetric interactions are represented by a mirrored pair of links.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpringLink {
    pub from: usize,
    pub to: usize,
    pub rest_length: f64,
    /// Spring constant.
    pub k: f64,
    /// Damping coefficient on the relative velocity of the endpoints.
    pub b: f64,
}

impl SpringLink {
    pub fn new(from: usize, to: usize, rest_length: f64, k: f64, b: f64) -> Self {
        debug_assert!(from != to, "a link must join two distinct agents");
        SpringLink { from, to, rest_length, k, b }
    }
}

/// The per-step control topology. Agent `i`'s neighbor set is the set of
/// `to` endpoints of the links with `from == i`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LinkSet {
    pub links: Vec<SpringLink>,
}

impl LinkSet {
    pub fn new() -> Self {
        LinkSet { links: Vec::new() }
    }

    pub fn push(&mut self, link: SpringLink) {
        self.links.push(link);
    }

    /// Adds the link and its mirror image in one call.
    pub fn push_mirrored(&mut self, a: usize, b: usize, rest_length: f64, k: f64, bb: f64) {
        self.push(SpringLink::new(a, b, rest_length, k, bb));
        self.push(SpringLink::new(b, a, rest_length, k, bb));
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SpringLink> {
        self.links.iter()
    }
}

/// The full agent population plus the step counter.
#[derive(Debug, Clone, PartialEq)]
pub struct World {
    /// Ordered so that `agents[i].id == i`.
    pub agents: Vec<AgentState>,
    pub time: u64,
}

impl World {
    /// Builds a world from bare positions: ids 0..n in order, zero
    /// velocities, unit masses, time 0.
    pub fn from_positions(positions: &[Vec2]) -> Self {
        let agents = positions
            .iter()
            .enumerate()
            .map(|(id, &position)| AgentState {
                id,
                position,
                velocity: Vec2::ZERO,
                mass: 1.0,
            })
            .collect();
        World { agents, time: 0 }
    }

    pub fn len(&self) -> usize {
        self.agents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.agents.is_empty()
    }
}

/// Integration-level knobs. Defaults match the shipped scenario defaults;
/// see `config` for where they come from.
#[derive(Debug, Clone, PartialEq)]
pub struct SimParams {
    /// Step size; 1 reproduces the unit-step recurrences exactly.
    pub dt: f64,
    /// `None` means unlimited sensing.
    pub sensing_range: Option<f64>,
    pub default_k: f64,
    pub default_b: f64,
    /// Optional speed cap applied after the velocity update.
    pub max_speed: Option<f64>,
}

#[derive(Debug, Error, PartialEq)]
pub enum DynamicsError {
    #[error("non-finite state for agent {agent_id} during integration")]
    NonFinite { agent_id: usize },
}

/// Deterministic unit separation direction for two coincident agents.
///
/// The direction depends only on the unordered id pair; the reversed
/// orientation gets the exact negation, so mirrored links keep exact
/// Newton's-third-law symmetry even in the degenerate case.
pub fn coincident_direction(from: usize, to: usize) -> Vec2 {
    fn mix(mut z: u64) -> u64 {
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
    let (lo, hi) = if from < to { (from, to) } else { (to, from) };
    let h = mix(((lo as u64) << 32) ^ (hi as u64) ^ 0x9E37_79B9_7F4A_7C15);
    let angle = std::f64::consts::TAU * ((h >> 11) as f64 * 2f64.powi(-53));
    let dir = Vec2::new(angle.cos(), angle.sin());
    if from < to { dir } else { -dir }
}

/// Hookean displacement from rest: `(‖x_ij‖ − L)·x̂_ij` with
/// `x_ij = pos_i − pos_j`.
///
/// Positive stretch points from `j` toward `i`, so `−k·d` pulls `i` back
/// toward `j`; compression pushes apart. When the positions are closer than
/// [`COINCIDENT_EPS`], `coincident_dir` stands in for the undefined unit
/// vector (see [`coincident_direction`]).
pub fn displacement_vector(
    pos_i: Vec2,
    pos_j: Vec2,
    rest_length: f64,
    coincident_dir: Vec2,
) -> Vec2 {
    let x_ij = pos_i - pos_j;
    let dist = x_ij.norm();
    if dist < COINCIDENT_EPS {
        // Treat the pair as fully compressed along the fallback direction.
        return (dist - rest_length) * coincident_dir;
    }
    (dist - rest_length) * (x_ij * (1.0 / dist))
}

/// Force on `state_i` from one link: `−k·d_ij − b·(v_i − v_j)`.
pub fn pair_force(link: &SpringLink, state_i: &AgentState, state_j: &AgentState) -> Vec2 {
    debug_assert_eq!(link.from, state_i.id);
    debug_assert_eq!(link.to, state_j.id);
    let d = displacement_vector(
        state_i.position,
        state_j.position,
        link.rest_length,
        coincident_direction(link.from, link.to),
    );
    let v_rel = state_i.velocity - state_j.velocity;
    -(link.k * d) - (link.b * v_rel)
}

/// Net link force on one agent: the sum of [`pair_force`] over its incident
/// links in link-list order. Agents with no incident links get zero.
pub fn net_force(agent_id: usize, world: &World, links: &LinkSet) -> Vec2 {
    let mut sum = Vec2::ZERO;
    for link in links.iter().filter(|l| l.from == agent_id) {
        sum += pair_force(link, &world.agents[link.from], &world.agents[link.to]);
    }
    sum
}

/// Accumulates every agent's link force in a single pass over the link list.
///
/// For each agent this visits its links in the same relative order as
/// [`net_force`], so the two agree bit-for-bit.
fn accumulate_forces(world: &World, links: &LinkSet) -> Vec<Vec2> {
    let mut forces = vec![Vec2::ZERO; world.len()];
    for link in links.iter() {
        forces[link.from] += pair_force(link, &world.agents[link.from], &world.agents[link.to]);
    }
    forces
}

/// Advances the world one step under semi-implicit Euler:
/// `v[t+1] = v[t] + dt·(net + external)/m`, then `x[t+1] = x[t] + dt·v[t+1]`.
///
/// `external_forces` is indexed by agent id (zero where absent). If
/// `max_speed` is set, the new speed is clamped preserving direction. A
/// non-finite result aborts with the offending agent's id.
pub fn integrate_step(
    world: &World,
    links: &LinkSet,
    params: &SimParams,
    external_forces: &[(usize, Vec2)],
) -> Result<World, DynamicsError> {
    let mut forces = accumulate_forces(world, links);
    for &(id, f) in external_forces {
        forces[id] += f;
    }
    let mut agents = Vec::with_capacity(world.len());
    for (state, force) in world.agents.iter().zip(&forces) {
        let mut velocity = state.velocity + *force * (params.dt / state.mass);
        if let Some(cap) = params.max_speed {
            let speed = velocity.norm();
            if speed > cap {
                velocity = velocity * (cap / speed);
            }
        }
        let position = state.position + velocity * params.dt;
        if !position.is_finite() || !velocity.is_finite() {
            return Err(DynamicsError::NonFinite { agent_id: state.id });
        }
        agents.push(AgentState { position, velocity, ..*state });
    }
    Ok(World { agents, time: world.time + 1 })
}

/// `Σ ½·m·‖v‖²` over all agents.
pub fn kinetic_energy(world: &World) -> f64 {
    world
        .agents
        .iter()
        .map(|a| 0.5 * a.mass * a.velocity.norm_sq())
        .sum()
}
