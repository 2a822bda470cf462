//! Deterministic 2-D multi-agent formation simulator.
//!
//! Agents are point masses coupled by virtual spring–damper links and
//! advanced with semi-implicit Euler. Two controllers choose the links:
//!
//! * **dispersion** — every agent pulls toward a common rest length against
//!   its three nearest neighbors, spreading the swarm into an even lattice;
//! * **line** — agents are greedily matched into tight pairs, the pairs are
//!   chained nearest-first into a path, and two interim leaders at the chain
//!   ends stretch the result into a straight line.
//!
//! Runs are reproducible end to end: a scenario config (JSON) fixes the
//! seed, gains, and schedule, and identical configs yield byte-identical
//! trajectory and metrics files on any platform. The `swarmform` binary
//! wraps [`runner::run`] with `run`, `sweep`, and `validate` subcommands.

pub mod behaviors;
pub mod config;
pub mod dynamics;
pub mod metrics;
pub mod output;
pub mod rng;
pub mod runner;
pub mod topology;
pub mod vec2;
