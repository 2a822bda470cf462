//! Scenario configuration: JSON schema, defaults, and validation.
//!
//! A scenario is fully described by one `ScenarioConfig`; identical configs
//! produce identical runs, so the config file doubles as the experiment's
//! reproducibility record. Unknown keys are rejected rather than ignored —
//! a typo'd parameter name should fail loudly, not silently fall back to a
//! default.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::behaviors::LineParams;
use crate::dynamics::SimParams;

/// Which controller drives the run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Behavior {
    Dispersion,
    Line,
}

impl fmt::Display for Behavior {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Behavior::Dispersion => write!(f, "dispersion"),
            Behavior::Line => write!(f, "line"),
        }
    }
}

/// Where result files go and which ones get written.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    /// Directory for trajectory/metrics files; created if missing.
    #[serde(default = "defaults::out_dir")]
    pub dir: String,
    #[serde(default = "defaults::yes")]
    pub trajectory: bool,
    #[serde(default = "defaults::yes")]
    pub metrics: bool,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { dir: defaults::out_dir(), trajectory: true, metrics: true }
    }
}

/// One complete experiment description. Optional fields fall back to
/// documented defaults at access time, so a serialized config round-trips
/// exactly as written.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub behavior: Behavior,
    pub n_agents: usize,
    /// Initial placement rectangle (width, height); positions are drawn
    /// uniformly over it.
    #[serde(default = "defaults::region")]
    pub region: (f64, f64),
    #[serde(default = "defaults::seed")]
    pub seed: u64,
    /// Desired inter-agent distance: dispersion rest length and line
    /// cross-link spacing.
    #[serde(default = "defaults::l_d")]
    pub l_d: f64,
    /// Intra-pair rest length for line formation; `None` means 0.05·l_d.
    #[serde(default)]
    pub epsilon: Option<f64>,
    /// `None` (or JSON null) means unlimited sensing.
    #[serde(default)]
    pub sensing_range: Option<f64>,
    /// Spring gain. The defaults for k and b are overdamped for an isolated
    /// pair (b² ≥ 2k) and keep chain topologies stable at unit step, which
    /// needs b·dt·λ < 2 for velocity-mode eigenvalues λ that approach 8 on
    /// long chains.
    #[serde(default = "defaults::k")]
    pub k: f64,
    /// Damping gain on relative velocity.
    #[serde(default = "defaults::b")]
    pub b: f64,
    #[serde(default = "defaults::dt")]
    pub dt: f64,
    /// Interim-leader stretch magnitude; `None` means k·l_d.
    #[serde(default)]
    pub leader_force: Option<f64>,
    /// Optional per-step speed cap; `None` leaves speeds unbounded.
    #[serde(default)]
    pub max_speed: Option<f64>,
    #[serde(default = "defaults::max_steps")]
    pub max_steps: u64,
    /// Convergence speed tolerance; `None` means 1e-3·l_d.
    #[serde(default)]
    pub v_tol: Option<f64>,
    /// Steps the swarm must stay below v_tol to count as converged.
    #[serde(default = "defaults::window")]
    pub window: usize,
    /// Recompute the control topology every this many steps.
    #[serde(default = "defaults::one")]
    pub topology_refresh_every: u64,
    /// Record metrics and trajectory frames every this many steps.
    #[serde(default = "defaults::one")]
    pub sample_every: u64,
    #[serde(default)]
    pub output: OutputConfig,
}

/// Default values, kept in one place so docs, tests, and the schema agree.
pub mod defaults {
    pub const K: f64 = 0.01;
    pub const B: f64 = 0.2;
    pub const L_D: f64 = 10.0;

    pub fn region() -> (f64, f64) {
        (100.0, 100.0)
    }
    pub fn seed() -> u64 {
        1
    }
    pub fn l_d() -> f64 {
        L_D
    }
    pub fn k() -> f64 {
        K
    }
    pub fn b() -> f64 {
        B
    }
    pub fn dt() -> f64 {
        1.0
    }
    pub fn max_steps() -> u64 {
        5000
    }
    pub fn window() -> usize {
        50
    }
    pub fn one() -> u64 {
        1
    }
    pub fn yes() -> bool {
        true
    }
    pub fn out_dir() -> String {
        "out".to_string()
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("config: {0}")]
    Invalid(String),
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

impl ScenarioConfig {
    /// A minimal valid config for the given behavior and population; every
    /// other knob at its default.
    pub fn new(behavior: Behavior, n_agents: usize) -> Self {
        serde_json::from_value(serde_json::json!({
            "behavior": behavior.to_string(),
            "n_agents": n_agents,
        }))
        .expect("the two-field config is valid by construction")
    }

    /// Effective intra-pair rest length.
    pub fn epsilon(&self) -> f64 {
        self.epsilon.unwrap_or(0.05 * self.l_d)
    }

    /// Effective leader stretch magnitude.
    pub fn leader_force(&self) -> f64 {
        self.leader_force.unwrap_or(self.k * self.l_d)
    }

    /// Effective convergence speed tolerance.
    pub fn v_tol(&self) -> f64 {
        self.v_tol.unwrap_or(1e-3 * self.l_d)
    }

    /// Checks every invariant; the error text names the offending field.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n_agents < 1 {
            return Err(invalid("n_agents must be at least 1"));
        }
        if self.behavior == Behavior::Line && self.n_agents < 2 {
            return Err(invalid("line behavior needs at least 2 agents"));
        }
        let (w, h) = self.region;
        if !(w > 0.0 && h > 0.0 && w.is_finite() && h.is_finite()) {
            return Err(invalid("region dimensions must be positive and finite"));
        }
        if !(self.l_d > 0.0 && self.l_d.is_finite()) {
            return Err(invalid("l_d must be positive and finite"));
        }
        let eps = self.epsilon();
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(invalid("epsilon must be positive and finite"));
        }
        if eps >= self.l_d {
            return Err(invalid("epsilon must be smaller than l_d"));
        }
        if let Some(r) = self.sensing_range {
            if !(r > 0.0 && r.is_finite()) {
                return Err(invalid("sensing_range must be positive and finite when set"));
            }
        }
        if !(self.k > 0.0 && self.k.is_finite()) {
            return Err(invalid("k must be positive and finite"));
        }
        if !(self.b >= 0.0 && self.b.is_finite()) {
            return Err(invalid("b must be non-negative and finite"));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(invalid("dt must be positive and finite"));
        }
        let lf = self.leader_force();
        if !(lf > 0.0 && lf.is_finite()) {
            return Err(invalid("leader_force must be positive and finite"));
        }
        if let Some(cap) = self.max_speed {
            if !(cap > 0.0 && cap.is_finite()) {
                return Err(invalid("max_speed must be positive and finite when set"));
            }
        }
        if self.max_steps < 1 {
            return Err(invalid("max_steps must be at least 1"));
        }
        let v_tol = self.v_tol();
        if !(v_tol > 0.0 && v_tol.is_finite()) {
            return Err(invalid("v_tol must be positive and finite"));
        }
        if self.window < 1 {
            return Err(invalid("window must be at least 1"));
        }
        if self.topology_refresh_every < 1 {
            return Err(invalid("topology_refresh_every must be at least 1"));
        }
        if self.sample_every < 1 {
            return Err(invalid("sample_every must be at least 1"));
        }
        Ok(())
    }

    /// Integration-level view of this config.
    pub fn sim_params(&self) -> SimParams {
        SimParams {
            dt: self.dt,
            sensing_range: self.sensing_range,
            default_k: self.k,
            default_b: self.b,
            max_speed: self.max_speed,
        }
    }

    /// Line-controller view of this config.
    pub fn line_params(&self) -> LineParams {
        LineParams {
            l_d: self.l_d,
            epsilon: self.epsilon(),
            leader_force: self.leader_force(),
            range: self.sensing_range,
            gain_k: self.k,
            gain_b: self.b,
        }
    }
}

/// Parses a JSON config document, rejecting unknown keys.
pub fn parse_config(text: &str) -> Result<ScenarioConfig, ConfigError> {
    serde_json::from_str(text).map_err(|e| invalid(e.to_string()))
}
