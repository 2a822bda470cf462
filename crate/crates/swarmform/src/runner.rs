//! Seeded world initialization and the run loop.
//!
//! A run is: draw the initial world from the config's seed, then repeat
//! controller → integrate → measure until the swarm is at rest or the step
//! budget is spent. The loop is the only thing that mutates the world or
//! the controller state, and every piece of randomness comes from the one
//! seeded stream, so a config determines a run completely.

use serde::Serialize;
use thiserror::Error;

use crate::behaviors::{
    dispersion_controller, line_controller, ControlOutput, LineControllerState,
};
use crate::config::{Behavior, ConfigError, ScenarioConfig};
use crate::dynamics::{integrate_step, AgentState, DynamicsError, World};
use crate::metrics::{collinearity, component_count, is_converged, neighbor_distance_error};
use crate::rng::{seeded, u01};
use crate::vec2::Vec2;

/// One sampled measurement row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricsRecord {
    pub step: u64,
    /// Largest absolute agent speed at this step.
    pub max_speed: f64,
    /// Mean |link length − rest|; absent when the step had no links.
    pub mean_abs_error: Option<f64>,
    pub eigen_ratio: f64,
    /// Components of the proximity graph at the configured sensing range.
    pub component_count: usize,
    pub phase_label: String,
}

/// Agent states captured at one sampled step, for trajectory output.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryFrame {
    pub step: u64,
    pub agents: Vec<AgentState>,
}

/// Final-state digest of a run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub converged: bool,
    pub steps: u64,
    pub final_mean_abs_error: Option<f64>,
    pub final_eigen_ratio: f64,
    pub final_component_count: usize,
}

/// Everything a finished run produced.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    /// Echo of the scenario that produced this result.
    pub config: ScenarioConfig,
    pub final_world: World,
    pub steps_executed: u64,
    pub converged: bool,
    pub series: Vec<MetricsRecord>,
    pub frames: Vec<TrajectoryFrame>,
    pub summary: RunSummary,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("numerical divergence at step {step}: {source}")]
    Divergence { step: u64, source: DynamicsError },
}

/// Draws the initial world: positions uniform over the config region in
/// the fixed order agent 0 x, agent 0 y, agent 1 x, …; velocities zero,
/// masses 1, time 0.
pub fn init_world(config: &ScenarioConfig) -> World {
    let mut rng = seeded(config.seed);
    let (width, height) = config.region;
    let positions: Vec<Vec2> = (0..config.n_agents)
        .map(|_| {
            let x = u01(&mut rng) * width;
            let y = u01(&mut rng) * height;
            Vec2::new(x, y)
        })
        .collect();
    World::from_positions(&positions)
}

/// A stepping simulation: the run loop's state, exposed so embedders can
/// advance it incrementally instead of running to completion.
#[derive(Debug, Clone)]
pub struct Simulation {
    config: ScenarioConfig,
    world: World,
    line_state: Option<LineControllerState>,
    cached_output: Option<ControlOutput>,
    /// Per-step max speed relative to the mean velocity. The converged
    /// lattice can glide as a whole (directed links don't conserve
    /// momentum), so rest detection must ignore the common drift.
    drift_speeds: Vec<f64>,
    series: Vec<MetricsRecord>,
    frames: Vec<TrajectoryFrame>,
    converged: bool,
    finished: bool,
}

impl Simulation {
    pub fn new(config: ScenarioConfig) -> Result<Self, ConfigError> {
        config.validate()?;
        let world = init_world(&config);
        let line_state = match config.behavior {
            Behavior::Dispersion => None,
            Behavior::Line => Some(LineControllerState::new()),
        };
        Ok(Simulation {
            config,
            world,
            line_state,
            cached_output: None,
            drift_speeds: Vec::new(),
            series: Vec::new(),
            frames: Vec::new(),
            converged: false,
            finished: false,
        })
    }

    pub fn config(&self) -> &ScenarioConfig {
        &self.config
    }

    pub fn world(&self) -> &World {
        &self.world
    }

    pub fn steps_executed(&self) -> u64 {
        self.world.time
    }

    pub fn converged(&self) -> bool {
        self.converged
    }

    /// True once the run stopped, by convergence or by step budget.
    pub fn finished(&self) -> bool {
        self.finished
    }

    pub fn series(&self) -> &[MetricsRecord] {
        &self.series
    }

    /// Summary of the state right now; matches the last series record once
    /// one exists.
    pub fn summary(&self) -> RunSummary {
        match self.series.last() {
            Some(record) => RunSummary {
                converged: self.converged,
                steps: self.world.time,
                final_mean_abs_error: record.mean_abs_error,
                final_eigen_ratio: record.eigen_ratio,
                final_component_count: record.component_count,
            },
            None => RunSummary {
                converged: false,
                steps: self.world.time,
                final_mean_abs_error: None,
                final_eigen_ratio: collinearity(&self.world).eigen_ratio,
                final_component_count: component_count(&self.world, self.config.sensing_range),
            },
        }
    }

    /// Advances one step. Finished simulations stay put and return Ok.
    pub fn advance(&mut self) -> Result<(), RunError> {
        if self.finished {
            return Ok(());
        }
        // Refresh the control decision on schedule (always at time 0),
        // otherwise keep applying the cached one.
        if self.world.time % self.config.topology_refresh_every == 0 || self.cached_output.is_none()
        {
            let output = match self.config.behavior {
                Behavior::Dispersion => dispersion_controller(
                    &self.world,
                    self.config.l_d,
                    self.config.sensing_range,
                    self.config.k,
                    self.config.b,
                ),
                Behavior::Line => {
                    let state = self.line_state.take().expect("line behavior carries state");
                    let (output, next) =
                        line_controller(&self.world, state, &self.config.line_params());
                    self.line_state = Some(next);
                    output
                }
            };
            self.cached_output = Some(output);
        }

        let output = self.cached_output.as_ref().unwrap();
        let params = self.config.sim_params();
        let next = integrate_step(&self.world, &output.links, &params, &output.forces_vec())
            .map_err(|source| RunError::Divergence { step: self.world.time + 1, source })?;
        self.world = next;

        let n = self.world.len() as f64;
        let mean_v = self
            .world
            .agents
            .iter()
            .fold(Vec2::ZERO, |acc, a| acc + a.velocity)
            * (1.0 / n);
        let mut max_speed = 0.0f64;
        let mut max_drift_speed = 0.0f64;
        for agent in &self.world.agents {
            max_speed = max_speed.max(agent.velocity.norm());
            max_drift_speed = max_drift_speed.max((agent.velocity - mean_v).norm());
        }
        self.drift_speeds.push(max_drift_speed);

        let converged_now =
            is_converged(&self.drift_speeds, self.config.v_tol(), self.config.window);
        let done = converged_now || self.world.time >= self.config.max_steps;
        if self.world.time % self.config.sample_every == 0 || done {
            self.series.push(MetricsRecord {
                step: self.world.time,
                max_speed,
                mean_abs_error: neighbor_distance_error(&self.world, &output.links)
                    .ok()
                    .map(|stats| stats.mean_abs_error),
                eigen_ratio: collinearity(&self.world).eigen_ratio,
                component_count: component_count(&self.world, self.config.sensing_range),
                phase_label: output.phase_label.clone(),
            });
            self.frames
                .push(TrajectoryFrame { step: self.world.time, agents: self.world.agents.clone() });
        }
        if done {
            self.converged = converged_now;
            self.finished = true;
        }
        Ok(())
    }

    /// Consumes the simulation into its result record.
    pub fn into_result(self) -> RunResult {
        let summary = self.summary();
        RunResult {
            config: self.config,
            final_world: self.world,
            steps_executed: summary.steps,
            converged: self.converged,
            series: self.series,
            frames: self.frames,
            summary,
        }
    }
}

/// Runs a scenario to completion.
pub fn run(config: &ScenarioConfig) -> Result<RunResult, RunError> {
    let mut sim = Simulation::new(config.clone())?;
    while !sim.finished() {
        sim.advance()?;
    }
    Ok(sim.into_result())
}
