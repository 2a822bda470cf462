#ifndef SWARMFORM_H
#define SWARMFORM_H

/* Generated by cbindgen from the swarmform-ffi crate; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of a swarmform call. Anything other than `OK` leaves a
 * description in `swarmform_last_error()`.
 */
typedef enum SwarmformStatus {
  /**
   * The call succeeded.
   */
  SWARMFORM_STATUS_OK = 0,
  /**
   * The scenario JSON failed to parse or failed validation.
   */
  SWARMFORM_STATUS_CONFIG_ERROR = 1,
  /**
   * Integration produced a non-finite agent state; the handle still
   * exposes the last finite state.
   */
  SWARMFORM_STATUS_DIVERGENCE = 2,
  /**
   * A result file could not be written.
   */
  SWARMFORM_STATUS_IO_ERROR = 3,
  /**
   * A required pointer was NULL, a buffer was too small, or a string
   * was not UTF-8.
   */
  SWARMFORM_STATUS_INVALID_ARGUMENT = 4,
  /**
   * An unexpected internal failure; the handle should only be freed.
   */
  SWARMFORM_STATUS_INTERNAL_ERROR = 5,
} SwarmformStatus;

/**
 * An in-progress simulation run. Opaque: create with `swarmform_sim_new`,
 * inspect through the accessor calls, release with `swarmform_sim_free`.
 */
typedef struct SwarmformSim SwarmformSim;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Returns the message for the most recent failure on this thread, or NULL
 * if nothing has failed yet. The pointer stays valid until the next
 * failing swarmform call on the same thread; copy it if you need to keep
 * it.
 */
const char *swarmform_last_error(void);

/**
 * Parses `config_json` (a NUL-terminated UTF-8 scenario document) and
 * allocates a simulation in its initial state. On success writes the new
 * handle to `out_sim`; on failure writes NULL. Release the handle with
 * `swarmform_sim_free`.
 */
enum SwarmformStatus swarmform_sim_new(const char *config_json, struct SwarmformSim **out_sim);

/**
 * Releases a handle from `swarmform_sim_new`. NULL is a no-op.
 */
void swarmform_sim_free(struct SwarmformSim *sim);

/**
 * Advances the simulation by up to `max_steps` steps, stopping early once
 * the run finishes (convergence or exhausted step budget). Pass a large
 * `max_steps` to run to completion — the scenario's own budget bounds the
 * work. When `out_finished` is non-NULL it receives the finished flag,
 * on failure as well as on success; `max_steps` of 0 just polls it.
 */
enum SwarmformStatus swarmform_sim_step(struct SwarmformSim *sim,
                                        uint64_t max_steps,
                                        bool *out_finished);

/**
 * Number of agents in the scenario, or 0 for a NULL handle.
 */
size_t swarmform_sim_agent_count(const struct SwarmformSim *sim);

/**
 * Steps executed so far, or 0 for a NULL handle.
 */
uint64_t swarmform_sim_time(const struct SwarmformSim *sim);

/**
 * True once the swarm has converged. False for a NULL handle.
 */
bool swarmform_sim_converged(const struct SwarmformSim *sim);

/**
 * True once the run has stopped, by convergence or by spending the step
 * budget. False for a NULL handle.
 */
bool swarmform_sim_finished(const struct SwarmformSim *sim);

/**
 * Copies current agent positions into `out_xy`, interleaved as
 * x0, y0, x1, y1, … in agent-id order. `capacity` is the number of doubles
 * the buffer holds and must be at least 2 × agent count.
 */
enum SwarmformStatus swarmform_sim_positions(const struct SwarmformSim *sim,
                                             double *out_xy,
                                             size_t capacity);

/**
 * Copies current agent velocities into `out_xy`, interleaved as
 * vx0, vy0, vx1, vy1, … in agent-id order. `capacity` is the number of
 * doubles the buffer holds and must be at least 2 × agent count.
 */
enum SwarmformStatus swarmform_sim_velocities(const struct SwarmformSim *sim,
                                              double *out_xy,
                                              size_t capacity);

/**
 * Renders the metrics document for the simulation's state so far — the
 * config echo, a summary of the current state, and the sampled series —
 * as pretty-printed JSON. On success writes a NUL-terminated string to
 * `out_json`; release it with `swarmform_string_free`.
 */
enum SwarmformStatus swarmform_sim_metrics_json(const struct SwarmformSim *sim, char **out_json);

/**
 * Runs a scenario from `config_json` to completion and returns its metrics
 * document as JSON, without touching the filesystem. On success writes a
 * NUL-terminated string to `out_json`; release it with
 * `swarmform_string_free`.
 */
enum SwarmformStatus swarmform_run_to_json(const char *config_json, char **out_json);

/**
 * Runs a scenario from `config_json` to completion and writes the result
 * files its config enables (trajectory.csv and/or metrics.json) into
 * `out_dir`, creating the directory if needed.
 */
enum SwarmformStatus swarmform_run_to_dir(const char *config_json, const char *out_dir);

/**
 * Releases a string returned by this library. NULL is a no-op.
 */
void swarmform_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SWARMFORM_H */
