#ifndef CAPWAVE_H
#define CAPWAVE_H

/* Generated by cbindgen from crates/capwave-ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CwStatus {
  CW_STATUS_OK = 0,
  CW_STATUS_NULL_POINTER = 1,
  CW_STATUS_INVALID_ARGUMENT = 2,
  CW_STATUS_CONFIG = 3,
  CW_STATUS_IO = 4,
  CW_STATUS_NUMERICAL = 5,
  CW_STATUS_CHECKPOINT = 6,
  CW_STATUS_PANIC = 7,
} CwStatus;

/**
 * Opaque run configuration.
 */
typedef struct CwConfig CwConfig;

/**
 * Opaque evolving state: grid, integrator and current profile.
 */
typedef struct CwSim CwSim;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the message of the last failure on this thread into `buf`
 * (NUL-terminated, truncated to `len`). Returns the full message length
 * without the terminator, or 0 if there is none.
 */
size_t cw_last_error(char *buf, size_t len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *cw_version(void);

/**
 * Default configuration. Never null.
 */
struct CwConfig *cw_config_new(void);

/**
 * Reads a `key = value` config file into a new handle.
 */
enum CwStatus cw_config_load(const char *path, struct CwConfig **out);

/**
 * Sets one key; the config is left unchanged on failure.
 */
enum CwStatus cw_config_set(struct CwConfig *cfg, const char *key, const char *value);

void cw_config_free(struct CwConfig *cfg);

/**
 * Builds the initial data of `cfg` and an integrator at `t = 0`.
 */
enum CwStatus cw_sim_new(const struct CwConfig *cfg, struct CwSim **out);

/**
 * Grid size `n`, or 0 for a null handle.
 */
size_t cw_sim_len(const struct CwSim *sim);

/**
 * Current time, or NaN for a null handle.
 */
double cw_sim_time(const struct CwSim *sim);

/**
 * Advances `count` IF-RK4 steps. On failure the state is the last good one.
 */
enum CwStatus cw_sim_step(struct CwSim *sim, uint64_t count);

/**
 * Copies `û` at the current time (centered frequency order) into `re`/`im` of length `len = n`.
 */
enum CwStatus cw_sim_spectrum(const struct CwSim *sim, double *re, double *im, size_t len);

/**
 * Copies the grid samples of `u` at the current time.
 */
enum CwStatus cw_sim_samples(const struct CwSim *sim, double *re, double *im, size_t len);

void cw_sim_free(struct CwSim *sim);

/**
 * Full run into `out_dir`. `*aborted` is set to 1 when a monitor stopped the run, else 0.
 */
enum CwStatus cw_run(const struct CwConfig *cfg, const char *out_dir, int *aborted);

/**
 * Runs a verification suite with default options and writes `report_<suite>.json`
 * into `out_dir`. `*passed` is set to 1 or 0.
 */
enum CwStatus cw_verify(const char *suite, const char *out_dir, uint64_t seed, int *passed);

/**
 * Evaluates a named bilinear symbol (`chi`, `q0`, `qN`, `mN`, ...) at `(ξ, η)`.
 */
enum CwStatus cw_symbol(const char *name, double xi, double eta, double *re, double *im);

/**
 * `c̃(ξ)`, the coefficient of the logarithmic phase.
 */
double cw_ctilde(double xi);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CAPWAVE_H */
