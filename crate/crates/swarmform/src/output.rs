//! Result serialization: trajectory CSV and metrics JSON.
//!
//! Output is a pure function of the run result — no timestamps, no
//! environment — so identical runs produce byte-identical files. Floats in
//! the CSV carry 9 significant digits, enough to reconstruct positions to
//! 1e-8 relative.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::config::ScenarioConfig;
use crate::runner::{MetricsRecord, RunResult, RunSummary};

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("failed to write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

fn write_file(path: &Path, contents: &str) -> Result<(), OutputError> {
    fs::write(path, contents)
        .map_err(|source| OutputError::Io { path: path.display().to_string(), source })
}

/// Renders the sampled frames as CSV: header `step,agent_id,x,y,vx,vy`,
/// one row per agent per frame, ordered by (step, agent_id).
pub fn trajectory_csv(result: &RunResult) -> String {
    let mut out = String::from("step,agent_id,x,y,vx,vy\n");
    for frame in &result.frames {
        for agent in &frame.agents {
            let _ = writeln!(
                out,
                "{},{},{:.8e},{:.8e},{:.8e},{:.8e}",
                frame.step,
                agent.id,
                agent.position.x,
                agent.position.y,
                agent.velocity.x,
                agent.velocity.y,
            );
        }
    }
    out
}

pub fn write_trajectory(result: &RunResult, path: &Path) -> Result<(), OutputError> {
    write_file(path, &trajectory_csv(result))
}

#[derive(Serialize)]
struct MetricsDocument<'a> {
    config: &'a ScenarioConfig,
    summary: &'a RunSummary,
    series: &'a [MetricsRecord],
}

/// Renders the metrics document: the config echo, the summary, and the
/// sampled series, as pretty-printed JSON with a trailing newline.
pub fn metrics_json(
    config: &ScenarioConfig,
    summary: &RunSummary,
    series: &[MetricsRecord],
) -> String {
    let document = MetricsDocument { config, summary, series };
    let mut text = serde_json::to_string_pretty(&document)
        .expect("metrics document serialization cannot fail");
    text.push('\n');
    text
}

pub fn write_metrics(result: &RunResult, path: &Path) -> Result<(), OutputError> {
    write_file(path, &metrics_json(&result.config, &result.summary, &result.series))
}
