#ifndef TAILBOUND_H
#define TAILBOUND_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes. `TB_OK` is zero; everything else is a failure.
 */
typedef enum TbStatus {
  TB_OK = 0,
  TB_INVALID_INPUT = 1,
  TB_INVARIANT = 2,
  TB_DEGENERATE = 3,
  TB_CAP_EXCEEDED = 4,
  TB_PRECONDITION = 5,
  TB_PARSE = 6,
  TB_IO = 7,
  TB_NULL_POINTER = 8,
  TB_PANIC = 9,
} TbStatus;

/**
 * Opaque system handle.
 */
typedef struct TbSystem TbSystem;

typedef struct TbBoundParams {
  double v;
  double w;
  double lambda;
  double p;
  double c;
  /**
   * Fixed `y` for `P2`/`P3`; zero or negative selects it automatically.
   */
  double y;
  /**
   * 0 winsorize, 1 truncate.
   */
  int32_t mode;
} TbBoundParams;

/**
 * Bound values at one `z`. Quantities that are not available are NaN.
 */
typedef struct TbBounds {
  double z;
  double delta_w;
  double p1;
  double p2;
  double p3;
  double p4;
  double p5;
  double best;
  double theorem;
  double corollary;
  double bikelis;
} TbBounds;

typedef struct TbGauss {
  double phi;
  double cdf;
  double mills;
} TbGauss;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *tb_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *tb_version(void);

/**
 * Parses a system from NUL-terminated JSON text.
 *
 * # Safety
 * `json` must be NULL or a valid C string; `out_system` must be NULL or
 * writable.
 */
enum TbStatus tb_system_from_json(const char *json, struct TbSystem **out_system);

/**
 * Releases a handle. NULL is ignored.
 *
 * # Safety
 * `system` must be NULL or a handle not yet freed.
 */
void tb_system_free(struct TbSystem *system);

/**
 * Number of summands.
 *
 * # Safety
 * Pointers must be NULL or valid.
 */
enum TbStatus tb_system_len(const struct TbSystem *system, size_t *out_len);

/**
 * 1 if the system uses exact rational arithmetic, 0 for floats.
 *
 * # Safety
 * Pointers must be NULL or valid.
 */
enum TbStatus tb_system_is_exact(const struct TbSystem *system, int32_t *out_exact);

/**
 * `β_v = Σ E g(ξ_i/v)`.
 *
 * # Safety
 * Pointers must be NULL or valid.
 */
enum TbStatus tb_beta_v(const struct TbSystem *system, double v, double *out_beta);

/**
 * `μ_p = Σ E|ξ_i|^p`.
 *
 * # Safety
 * Pointers must be NULL or valid.
 */
enum TbStatus tb_mu_p(const struct TbSystem *system, double p, double *out_mu);

/**
 * Defaults: `v = w = 1`, `λ = 1/2`, `p = 2`, `c = 1`, automatic `y`,
 * winsorization.
 *
 * # Safety
 * `out_params` must be NULL or writable.
 */
enum TbStatus tb_bound_params_default(struct TbBoundParams *out_params);

/**
 * All bounds at `z`. Unsupplied constants are taken as 1. `params` may be
 * NULL for the defaults.
 *
 * # Safety
 * Pointers must be NULL or valid.
 */
enum TbStatus tb_p_bounds(const struct TbSystem *system,
                          double z,
                          const struct TbBoundParams *params,
                          struct TbBounds *out_bounds);

/**
 * `(e/((z−y)y))^{(z−y)/y}` capped at 1, for `z > y > 0`.
 *
 * # Safety
 * `out_value` must be NULL or writable.
 */
enum TbStatus tb_bh_bound(double z, double y, double *out_value);

/**
 * Standard normal density, distribution function and Mills ratio at `s`.
 *
 * # Safety
 * `out_gauss` must be NULL or writable.
 */
enum TbStatus tb_std_normal(double s, struct TbGauss *out_gauss);

/**
 * Stein function `f_z(s)`.
 *
 * # Safety
 * `out_value` must be NULL or writable.
 */
enum TbStatus tb_stein_f(double z, double s, double *out_value);

/**
 * `2k/3 + g(u)/(3k²) − u`.
 *
 * # Safety
 * `out_value` must be NULL or writable.
 */
enum TbStatus tb_young_delta(double k, double u, double *out_value);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TAILBOUND_H */
