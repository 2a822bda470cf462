//! C ABI for the swarmform simulator.
//!
//! The surface is a handle API: parse a JSON scenario into an opaque
//! simulation, advance it step by step, and read agent state or rendered
//! metrics back out. Every fallible call returns a [`SwarmformStatus`];
//! after a failure, [`swarmform_last_error`] holds a per-thread message
//! describing what went wrong.
//!
//! Ownership is explicit: handles come from [`swarmform_sim_new`] and go to
//! [`swarmform_sim_free`]; strings come from the `*_json` calls and go to
//! [`swarmform_string_free`]. A handle is not synchronized — share it across
//! threads only behind a lock. The committed `include/swarmform.h` header is
//! regenerated from this file on every build.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::ptr;

use swarmform::config::parse_config;
use swarmform::dynamics::AgentState;
use swarmform::output::{self, write_metrics, write_trajectory};
use swarmform::runner::{run, RunError, Simulation};
use swarmform::vec2::Vec2;

/// Result of a swarmform call. Anything other than `OK` leaves a
/// description in `swarmform_last_error()`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SwarmformStatus {
    /// The call succeeded.
    Ok = 0,
    /// The scenario JSON failed to parse or failed validation.
    ConfigError = 1,
    /// Integration produced a non-finite agent state; the handle still
    /// exposes the last finite state.
    Divergence = 2,
    /// A result file could not be written.
    IoError = 3,
    /// A required pointer was NULL, a buffer was too small, or a string
    /// was not UTF-8.
    InvalidArgument = 4,
    /// An unexpected internal failure; the handle should only be freed.
    InternalError = 5,
}

/// An in-progress simulation run. Opaque: create with `swarmform_sim_new`,
/// inspect through the accessor calls, release with `swarmform_sim_free`.
pub struct SwarmformSim {
    inner: Simulation,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn fail(status: SwarmformStatus, message: impl Into<String>) -> SwarmformStatus {
    set_last_error(message.into());
    status
}

fn status_of(err: &RunError) -> SwarmformStatus {
    match err {
        RunError::Config(_) => SwarmformStatus::ConfigError,
        RunError::Divergence { .. } => SwarmformStatus::Divergence,
    }
}

/// Runs a fallible body under a panic guard so unwinding never crosses the
/// C boundary.
fn guarded(body: impl FnOnce() -> SwarmformStatus) -> SwarmformStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => fail(SwarmformStatus::InternalError, "internal panic in swarmform"),
    }
}

unsafe fn cstr_to_str<'a>(text: *const c_char) -> Option<&'a str> {
    if text.is_null() {
        return None;
    }
    CStr::from_ptr(text).to_str().ok()
}

/// Hands a rendered string to the caller as a malloc-style allocation.
fn export_string(text: String, out: *mut *mut c_char) -> SwarmformStatus {
    match CString::new(text) {
        Ok(text) => {
            unsafe { *out = text.into_raw() };
            SwarmformStatus::Ok
        }
        Err(_) => fail(SwarmformStatus::InternalError, "rendered text contained a NUL byte"),
    }
}

fn parse_or_fail(
    json: Option<&str>,
    what: &str,
) -> Result<swarmform::config::ScenarioConfig, SwarmformStatus> {
    let Some(json) = json else {
        return Err(fail(SwarmformStatus::InvalidArgument, format!("{what} is NULL or not UTF-8")));
    };
    parse_config(json).map_err(|err| fail(SwarmformStatus::ConfigError, err.to_string()))
}

/// Returns the message for the most recent failure on this thread, or NULL
/// if nothing has failed yet. The pointer stays valid until the next
/// failing swarmform call on the same thread; copy it if you need to keep
/// it.
#[no_mangle]
pub extern "C" fn swarmform_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |text| text.as_ptr()))
}

/// Parses `config_json` (a NUL-terminated UTF-8 scenario document) and
/// allocates a simulation in its initial state. On success writes the new
/// handle to `out_sim`; on failure writes NULL. Release the handle with
/// `swarmform_sim_free`.
#[no_mangle]
pub unsafe extern "C" fn swarmform_sim_new(
    config_json: *const c_char,
    out_sim: *mut *mut SwarmformSim,
) -> SwarmformStatus {
    guarded(|| {
        if out_sim.is_null() {
            return fail(SwarmformStatus::InvalidArgument, "out_sim is NULL");
        }
        *out_sim = ptr::null_mut();
        let config = match parse_or_fail(cstr_to_str(config_json), "config_json") {
            Ok(config) => config,
            Err(status) => return status,
        };
        match Simulation::new(config) {
            Ok(inner) => {
                *out_sim = Box::into_raw(Box::new(SwarmformSim { inner }));
                SwarmformStatus::Ok
            }
            Err(err) => fail(SwarmformStatus::ConfigError, err.to_string()),
        }
    })
}

/// Releases a handle from `swarmform_sim_new`. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn swarmform_sim_free(sim: *mut SwarmformSim) {
    if !sim.is_null() {
        drop(Box::from_raw(sim));
    }
}

/// Advances the simulation by up to `max_steps` steps, stopping early once
/// the run finishes (convergence or exhausted step budget). Pass a large
/// `max_steps` to run to completion — the scenario's own budget bounds the
/// work. When `out_finished` is non-NULL it receives the finished flag,
/// on failure as well as on success; `max_steps` of 0 just polls it.
#[no_mangle]
pub unsafe extern "C" fn swarmform_sim_step(
    sim: *mut SwarmformSim,
    max_steps: u64,
    out_finished: *mut bool,
) -> SwarmformStatus {
    guarded(|| {
        let Some(handle) = sim.as_mut() else {
            return fail(SwarmformStatus::InvalidArgument, "sim is NULL");
        };
        let mut status = SwarmformStatus::Ok;
        for _ in 0..max_steps {
            if handle.inner.finished() {
                break;
            }
            if let Err(err) = handle.inner.advance() {
                status = fail(status_of(&err), err.to_string());
                break;
            }
        }
        if !out_finished.is_null() {
            *out_finished = handle.inner.finished();
        }
        status
    })
}

/// Number of agents in the scenario, or 0 for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn swarmform_sim_agent_count(sim: *const SwarmformSim) -> usize {
    sim.as_ref().map_or(0, |handle| handle.inner.world().len())
}

/// Steps executed so far, or 0 for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn swarmform_sim_time(sim: *const SwarmformSim) -> u64 {
    sim.as_ref().map_or(0, |handle| handle.inner.steps_executed())
}

/// True once the swarm has converged. False for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn swarmform_sim_converged(sim: *const SwarmformSim) -> bool {
    sim.as_ref().is_some_and(|handle| handle.inner.converged())
}

/// True once the run has stopped, by convergence or by spending the step
/// budget. False for a NULL handle.
#[no_mangle]
pub unsafe extern "C" fn swarmform_sim_finished(sim: *const SwarmformSim) -> bool {
    sim.as_ref().is_some_and(|handle| handle.inner.finished())
}

fn copy_planar(
    handle: &SwarmformSim,
    out_xy: *mut f64,
    capacity: usize,
    component: impl Fn(&AgentState) -> Vec2,
) -> SwarmformStatus {
    if out_xy.is_null() {
        return fail(SwarmformStatus::InvalidArgument, "output buffer is NULL");
    }
    let agents = &handle.inner.world().agents;
    let needed = agents.len() * 2;
    if capacity < needed {
        return fail(
            SwarmformStatus::InvalidArgument,
            format!("buffer holds {capacity} doubles, need {needed}"),
        );
    }
    for (i, agent) in agents.iter().enumerate() {
        let value = component(agent);
        unsafe {
            *out_xy.add(2 * i) = value.x;
            *out_xy.add(2 * i + 1) = value.y;
        }
    }
    SwarmformStatus::Ok
}

/// Copies current agent positions into `out_xy`, interleaved as
/// x0, y0, x1, y1, … in agent-id order. `capacity` is the number of doubles
/// the buffer holds and must be at least 2 × agent count.
#[no_mangle]
pub unsafe extern "C" fn swarmform_sim_positions(
    sim: *const SwarmformSim,
    out_xy: *mut f64,
    capacity: usize,
) -> SwarmformStatus {
    guarded(|| {
        let Some(handle) = sim.as_ref() else {
            return fail(SwarmformStatus::InvalidArgument, "sim is NULL");
        };
        copy_planar(handle, out_xy, capacity, |agent| agent.position)
    })
}

/// Copies current agent velocities into `out_xy`, interleaved as
/// vx0, vy0, vx1, vy1, … in agent-id order. `capacity` is the number of
/// doubles the buffer holds and must be at least 2 × agent count.
#[no_mangle]
pub unsafe extern "C" fn swarmform_sim_velocities(
    sim: *const SwarmformSim,
    out_xy: *mut f64,
    capacity: usize,
) -> SwarmformStatus {
    guarded(|| {
        let Some(handle) = sim.as_ref() else {
            return fail(SwarmformStatus::InvalidArgument, "sim is NULL");
        };
        copy_planar(handle, out_xy, capacity, |agent| agent.velocity)
    })
}

/// Renders the metrics document for the simulation's state so far — the
/// config echo, a summary of the current state, and the sampled series —
/// as pretty-printed JSON. On success writes a NUL-terminated string to
/// `out_json`; release it with `swarmform_string_free`.
#[no_mangle]
pub unsafe extern "C" fn swarmform_sim_metrics_json(
    sim: *const SwarmformSim,
    out_json: *mut *mut c_char,
) -> SwarmformStatus {
    guarded(|| {
        let Some(handle) = sim.as_ref() else {
            return fail(SwarmformStatus::InvalidArgument, "sim is NULL");
        };
        if out_json.is_null() {
            return fail(SwarmformStatus::InvalidArgument, "out_json is NULL");
        }
        let text = output::metrics_json(
            handle.inner.config(),
            &handle.inner.summary(),
            handle.inner.series(),
        );
        export_string(text, out_json)
    })
}

/// Runs a scenario from `config_json` to completion and returns its metrics
/// document as JSON, without touching the filesystem. On success writes a
/// NUL-terminated string to `out_json`; release it with
/// `swarmform_string_free`.
#[no_mangle]
pub unsafe extern "C" fn swarmform_run_to_json(
    config_json: *const c_char,
    out_json: *mut *mut c_char,
) -> SwarmformStatus {
    guarded(|| {
        if out_json.is_null() {
            return fail(SwarmformStatus::InvalidArgument, "out_json is NULL");
        }
        *out_json = ptr::null_mut();
        let config = match parse_or_fail(cstr_to_str(config_json), "config_json") {
            Ok(config) => config,
            Err(status) => return status,
        };
        let result = match run(&config) {
            Ok(result) => result,
            Err(err) => return fail(status_of(&err), err.to_string()),
        };
        export_string(output::metrics_json(&result.config, &result.summary, &result.series), out_json)
    })
}

/// Runs a scenario from `config_json` to completion and writes the result
/// files its config enables (trajectory.csv and/or metrics.json) into
/// `out_dir`, creating the directory if needed.
#[no_mangle]
pub unsafe extern "C" fn swarmform_run_to_dir(
    config_json: *const c_char,
    out_dir: *const c_char,
) -> SwarmformStatus {
    guarded(|| {
        let config = match parse_or_fail(cstr_to_str(config_json), "config_json") {
            Ok(config) => config,
            Err(status) => return status,
        };
        let Some(dir) = cstr_to_str(out_dir) else {
            return fail(SwarmformStatus::InvalidArgument, "out_dir is NULL or not UTF-8");
        };
        let result = match run(&config) {
            Ok(result) => result,
            Err(err) => return fail(status_of(&err), err.to_string()),
        };
        let dir = Path::new(dir);
        if let Err(err) = std::fs::create_dir_all(dir) {
            return fail(
                SwarmformStatus::IoError,
                format!("failed to create {}: {err}", dir.display()),
            );
        }
        if result.config.output.trajectory {
            if let Err(err) = write_trajectory(&result, &dir.join("trajectory.csv")) {
                return fail(SwarmformStatus::IoError, err.to_string());
            }
        }
        if result.config.output.metrics {
            if let Err(err) = write_metrics(&result, &dir.join("metrics.json")) {
                return fail(SwarmformStatus::IoError, err.to_string());
            }
        }
        SwarmformStatus::Ok
    })
}

/// Releases a string returned by this library. NULL is a no-op.
#[no_mangle]
pub unsafe extern "C" fn swarmform_string_free(text: *mut c_char) {
    if !text.is_null() {
        drop(CString::from_raw(text));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(text: &str) -> CString {
        CString::new(text).unwrap()
    }

    /// Small, fast scenario: two agents in a 20×20 box settle quickly.
    const TWO_BODY: &str = r#"{"behavior": "dispersion", "n_agents": 2,
        "region": [20.0, 20.0], "k": 0.05, "b": 0.4}"#;

    unsafe fn new_sim(json: &str) -> *mut SwarmformSim {
        let config = c(json);
        let mut sim = ptr::null_mut();
        let status = swarmform_sim_new(config.as_ptr(), &mut sim);
        assert_eq!(status, SwarmformStatus::Ok);
        assert!(!sim.is_null());
        sim
    }

    unsafe fn take_string(text: *mut c_char) -> String {
        assert!(!text.is_null());
        let owned = CStr::from_ptr(text).to_str().unwrap().to_string();
        swarmform_string_free(text);
        owned
    }

    fn last_error_text() -> String {
        let text = swarmform_last_error();
        assert!(!text.is_null(), "a failing call must leave a message");
        unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_string()
    }

    #[test]
    fn stepping_reaches_the_finished_state() {
        unsafe {
            let sim = new_sim(TWO_BODY);
            assert_eq!(swarmform_sim_agent_count(sim), 2);
            assert_eq!(swarmform_sim_time(sim), 0);
            assert!(!swarmform_sim_finished(sim));

            let mut finished = false;
            // Poll without advancing, then run to completion in chunks.
            assert_eq!(swarmform_sim_step(sim, 0, &mut finished), SwarmformStatus::Ok);
            assert!(!finished);
            while !finished {
                assert_eq!(swarmform_sim_step(sim, 64, &mut finished), SwarmformStatus::Ok);
            }
            assert!(swarmform_sim_finished(sim));
            assert!(swarmform_sim_converged(sim));
            assert!(swarmform_sim_time(sim) > 0);

            // Extra stepping on a finished run is a no-op.
            let time = swarmform_sim_time(sim);
            assert_eq!(swarmform_sim_step(sim, 100, &mut finished), SwarmformStatus::Ok);
            assert_eq!(swarmform_sim_time(sim), time);

            swarmform_sim_free(sim);
        }
    }

    #[test]
    fn handle_state_matches_a_native_run() {
        let config = parse_config(TWO_BODY).unwrap();
        let expected = run(&config).unwrap();
        unsafe {
            let sim = new_sim(TWO_BODY);
            let mut finished = false;
            assert_eq!(swarmform_sim_step(sim, u64::MAX, &mut finished), SwarmformStatus::Ok);
            assert!(finished);
            assert_eq!(swarmform_sim_time(sim), expected.steps_executed);

            let mut xy = [0.0f64; 4];
            assert_eq!(swarmform_sim_positions(sim, xy.as_mut_ptr(), 4), SwarmformStatus::Ok);
            for (i, agent) in expected.final_world.agents.iter().enumerate() {
                assert_eq!(xy[2 * i], agent.position.x);
                assert_eq!(xy[2 * i + 1], agent.position.y);
            }
            assert_eq!(swarmform_sim_velocities(sim, xy.as_mut_ptr(), 4), SwarmformStatus::Ok);
            for (i, agent) in expected.final_world.agents.iter().enumerate() {
                assert_eq!(xy[2 * i], agent.velocity.x);
                assert_eq!(xy[2 * i + 1], agent.velocity.y);
            }
            swarmform_sim_free(sim);
        }
    }

    #[test]
    fn metrics_json_parses_and_echoes_the_scenario() {
        unsafe {
            let sim = new_sim(TWO_BODY);
            let mut finished = false;
            swarmform_sim_step(sim, u64::MAX, &mut finished);

            let mut text = ptr::null_mut();
            assert_eq!(swarmform_sim_metrics_json(sim, &mut text), SwarmformStatus::Ok);
            let document: serde_json::Value =
                serde_json::from_str(&take_string(text)).unwrap();
            assert_eq!(document["config"]["n_agents"], 2);
            assert_eq!(document["summary"]["converged"], true);
            assert_eq!(
                document["summary"]["steps"].as_u64().unwrap(),
                swarmform_sim_time(sim)
            );
            assert!(!document["series"].as_array().unwrap().is_empty());
            swarmform_sim_free(sim);
        }
    }

    #[test]
    fn one_shot_run_matches_the_streaming_handle() {
        unsafe {
            let config = c(TWO_BODY);
            let mut first = ptr::null_mut();
            assert_eq!(
                swarmform_run_to_json(config.as_ptr(), &mut first),
                SwarmformStatus::Ok
            );
            let first = take_string(first);

            let mut second = ptr::null_mut();
            swarmform_run_to_json(config.as_ptr(), &mut second);
            assert_eq!(first, take_string(second), "identical configs, identical bytes");

            let sim = new_sim(TWO_BODY);
            let mut finished = false;
            swarmform_sim_step(sim, u64::MAX, &mut finished);
            let mut streamed = ptr::null_mut();
            swarmform_sim_metrics_json(sim, &mut streamed);
            assert_eq!(first, take_string(streamed));
            swarmform_sim_free(sim);
        }
    }

    #[test]
    fn config_errors_name_the_problem() {
        unsafe {
            let mut sim = ptr::null_mut();

            let bad_key = c(r#"{"behavior": "dispersion", "n_agents": 2, "stiffness": 1}"#);
            assert_eq!(
                swarmform_sim_new(bad_key.as_ptr(), &mut sim),
                SwarmformStatus::ConfigError
            );
            assert!(sim.is_null());
            assert!(last_error_text().contains("stiffness"));

            let invalid = c(r#"{"behavior": "line", "n_agents": 1}"#);
            assert_eq!(
                swarmform_sim_new(invalid.as_ptr(), &mut sim),
                SwarmformStatus::ConfigError
            );
            assert!(last_error_text().contains("line behavior needs at least 2 agents"));

            let mut text = ptr::null_mut();
            assert_eq!(
                swarmform_run_to_json(invalid.as_ptr(), &mut text),
                SwarmformStatus::ConfigError
            );
            assert!(text.is_null());
        }
    }

    #[test]
    fn null_arguments_are_reported_not_dereferenced() {
        unsafe {
            let mut sim = ptr::null_mut();
            assert_eq!(
                swarmform_sim_new(ptr::null(), &mut sim),
                SwarmformStatus::InvalidArgument
            );
            let config = c(TWO_BODY);
            assert_eq!(
                swarmform_sim_new(config.as_ptr(), ptr::null_mut()),
                SwarmformStatus::InvalidArgument
            );

            assert_eq!(
                swarmform_sim_step(ptr::null_mut(), 10, ptr::null_mut()),
                SwarmformStatus::InvalidArgument
            );
            assert_eq!(swarmform_sim_agent_count(ptr::null()), 0);
            assert_eq!(swarmform_sim_time(ptr::null()), 0);
            assert!(!swarmform_sim_converged(ptr::null()));
            assert!(!swarmform_sim_finished(ptr::null()));

            let mut xy = [0.0f64; 4];
            assert_eq!(
                swarmform_sim_positions(ptr::null(), xy.as_mut_ptr(), 4),
                SwarmformStatus::InvalidArgument
            );
            let sim = new_sim(TWO_BODY);
            assert_eq!(
                swarmform_sim_positions(sim, ptr::null_mut(), 4),
                SwarmformStatus::InvalidArgument
            );
            assert_eq!(
                swarmform_sim_metrics_json(sim, ptr::null_mut()),
                SwarmformStatus::InvalidArgument
            );
            swarmform_sim_free(sim);

            // Free functions shrug off NULL.
            swarmform_sim_free(ptr::null_mut());
            swarmform_string_free(ptr::null_mut());
        }
    }

    #[test]
    fn undersized_buffers_are_rejected_with_the_required_size() {
        unsafe {
            let sim = new_sim(TWO_BODY);
            let mut xy = [0.0f64; 4];
            assert_eq!(
                swarmform_sim_positions(sim, xy.as_mut_ptr(), 3),
                SwarmformStatus::InvalidArgument
            );
            assert!(last_error_text().contains("need 4"));
            assert_eq!(
                swarmform_sim_velocities(sim, xy.as_mut_ptr(), 4),
                SwarmformStatus::Ok
            );
            assert_eq!(xy, [0.0; 4], "agents start at rest");
            swarmform_sim_free(sim);
        }
    }

    #[test]
    fn divergence_keeps_the_last_finite_state_readable() {
        // Gains far outside the stable band blow up within a few steps.
        let explosive = r#"{"behavior": "dispersion", "n_agents": 2,
            "region": [20.0, 20.0], "k": 10.0, "b": 0.0}"#;
        unsafe {
            let sim = new_sim(explosive);
            let mut finished = false;
            assert_eq!(
                swarmform_sim_step(sim, u64::MAX, &mut finished),
                SwarmformStatus::Divergence
            );
            assert!(!finished);
            assert!(last_error_text().contains("divergence"));

            let mut xy = [0.0f64; 4];
            assert_eq!(swarmform_sim_positions(sim, xy.as_mut_ptr(), 4), SwarmformStatus::Ok);
            assert!(xy.iter().all(|value| value.is_finite()));
            swarmform_sim_free(sim);
        }
    }

    #[test]
    fn run_to_dir_writes_the_enabled_files() {
        let dir = std::env::temp_dir().join(format!("swarmform-ffi-{}", std::process::id()));
        let json = r#"{"behavior": "dispersion", "n_agents": 2, "region": [20.0, 20.0],
            "k": 0.05, "b": 0.4,
            "output": {"dir": "ignored", "trajectory": false, "metrics": true}}"#;
        unsafe {
            let config = c(json);
            let out_dir = c(dir.to_str().unwrap());
            assert_eq!(
                swarmform_run_to_dir(config.as_ptr(), out_dir.as_ptr()),
                SwarmformStatus::Ok
            );
            assert!(!dir.join("trajectory.csv").exists());
            let metrics = std::fs::read_to_string(dir.join("metrics.json")).unwrap();
            assert!(serde_json::from_str::<serde_json::Value>(&metrics).is_ok());
            std::fs::remove_dir_all(&dir).unwrap();

            // A directory that cannot be created surfaces as an I/O error.
            let blocker = std::env::temp_dir()
                .join(format!("swarmform-ffi-file-{}", std::process::id()));
            std::fs::write(&blocker, "not a directory").unwrap();
            let nested = c(blocker.join("sub").to_str().unwrap());
            assert_eq!(
                swarmform_run_to_dir(config.as_ptr(), nested.as_ptr()),
                SwarmformStatus::IoError
            );
            std::fs::remove_file(&blocker).unwrap();
        }
    }

    #[test]
    fn committed_header_covers_the_exported_surface() {
        let header = std::fs::read_to_string(
            Path::new(env!("CARGO_MANIFEST_DIR")).join("include").join("swarmform.h"),
        )
        .expect("the generated header is committed next to the crate");
        assert!(header.contains("#ifndef SWARMFORM_H"));
        assert!(header.contains("SWARMFORM_STATUS_OK"));
        assert!(header.contains("SWARMFORM_STATUS_DIVERGENCE"));
        assert!(header.contains("struct SwarmformSim"));
        for symbol in [
            "swarmform_last_error",
            "swarmform_sim_new",
            "swarmform_sim_free",
            "swarmform_sim_step",
            "swarmform_sim_agent_count",
            "swarmform_sim_time",
            "swarmform_sim_converged",
            "swarmform_sim_finished",
            "swarmform_sim_positions",
            "swarmform_sim_velocities",
            "swarmform_sim_metrics_json",
            "swarmform_run_to_json",
            "swarmform_run_to_dir",
            "swarmform_string_free",
        ] {
            assert!(header.contains(symbol), "header must declare {symbol}");
        }
    }
}
