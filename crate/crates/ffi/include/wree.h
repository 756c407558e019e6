#ifndef WREE_H
#define WREE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Engine selector for [`wree_delta`] and [`wree_sweep_new`].
 */
#define WREE_ENGINE_CLOSED_FORM 0

#define WREE_ENGINE_RESTRICTED_NUMERIC 1

/**
 * Log-base selector for [`wree_sweep_write_csv`].
 */
#define WREE_LOG_BASE_E 0

#define WREE_LOG_BASE_2 1

typedef enum WreeStatus {
  WREE_STATUS_OK = 0,
  WREE_STATUS_NULL_POINTER = 1,
  WREE_STATUS_INVALID_INPUT = 2,
  WREE_STATUS_DEGENERATE_INPUT = 3,
  WREE_STATUS_NOT_CONVERGED = 4,
  WREE_STATUS_IO = 5,
  WREE_STATUS_PANIC = 6,
} WreeStatus;

/**
 * Opaque result of a simplex sweep.
 */
typedef struct WreeSweep WreeSweep;

/**
 * Auxiliary quantities of the closed form at an interior point.
 */
typedef struct WreeClosedFormParts {
  double delta;
  double m;
  double n;
} WreeClosedFormParts;

/**
 * One point of the monogamy audit.
 */
typedef struct WreeMonogamyRecord {
  double alpha_sq;
  double beta_sq;
  double gamma_sq;
  double e_ab;
  double e_ac;
  double e_abc;
  double delta;
} WreeMonogamyRecord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer stays
 * valid until the next call into this library on the same thread.
 */
const char *wree_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *wree_version(void);

/**
 * Closed-form REE of the rank-2 state with populations `(a, b, c)`.
 *
 * # Safety
 * `out` must be valid for writing one `double`.
 */
enum WreeStatus wree_ree_closed_form(double a, double b, double c, double *out);

/**
 * Δ, M and N at an interior point; `WREE_STATUS_DEGENERATE_INPUT` if any of
 * `a`, `b`, `c` vanishes.
 *
 * # Safety
 * `out` must be valid for writing one `WreeClosedFormParts`.
 */
enum WreeStatus wree_closed_form_parts(double a,
                                       double b,
                                       double c,
                                       struct WreeClosedFormParts *out);

/**
 * REE of `(1-λ)|00><00| + λ|Ψ+><Ψ+|`.
 *
 * # Safety
 * `out` must be valid for writing one `double`.
 */
enum WreeStatus wree_ree_vedral_plenio(double lambda, double *out);

/**
 * Numerical REE over the invariant separable family.
 *
 * # Safety
 * `out` must be valid for writing one `double`.
 */
enum WreeStatus wree_ree_numeric_restricted(double a, double b, double c, double *out);

/**
 * Numerical REE of an arbitrary two-qubit density matrix given as row-major
 * real and imaginary parts (16 entries each). `restarts` and `seed` select the
 * multi-start schedule; zero restarts picks the default.
 *
 * The best value found is written even when the result is
 * `WREE_STATUS_NOT_CONVERGED`. An infinite value means no product mixture
 * with finite relative entropy was found.
 *
 * # Safety
 * `re` and `im` must point to 16 readable doubles; `out` must be valid for
 * writing one `double`.
 */
enum WreeStatus wree_ree_numeric_general(const double *re,
                                         const double *im,
                                         size_t restarts,
                                         uint64_t seed,
                                         double *out);

/**
 * Monogamy record for `α|001> + β|010> + γ|100>`; the amplitudes must have
 * unit norm.
 *
 * # Safety
 * `out` must be valid for writing one `WreeMonogamyRecord`.
 */
enum WreeStatus wree_delta(double alpha,
                           double beta,
                           double gamma,
                           int32_t engine,
                           struct WreeMonogamyRecord *out);

/**
 * Evaluates δ on the `(β², γ²)` grid of the given resolution (at least 2).
 * Release the handle with [`wree_sweep_free`].
 *
 * # Safety
 * `out` must be valid for writing one pointer.
 */
enum WreeStatus wree_sweep_new(size_t resolution, int32_t engine, struct WreeSweep **out);

/**
 * Number of grid points, or 0 for a null handle.
 *
 * # Safety
 * `sweep` must be null or a live handle from [`wree_sweep_new`].
 */
size_t wree_sweep_len(const struct WreeSweep *sweep);

/**
 * Record `index` in row-major `(β², γ²)` order.
 *
 * # Safety
 * `sweep` must be null or a live handle; `out` must be valid for writing one
 * `WreeMonogamyRecord`.
 */
enum WreeStatus wree_sweep_get(const struct WreeSweep *sweep,
                               size_t index,
                               struct WreeMonogamyRecord *out);

/**
 * Writes the sweep as CSV to the UTF-8 path `path`, replacing any existing
 * file atomically.
 *
 * # Safety
 * `sweep` must be null or a live handle; `path` must be null or a
 * NUL-terminated string.
 */
enum WreeStatus wree_sweep_write_csv(const struct WreeSweep *sweep,
                                     const char *path,
                                     int32_t log_base,
                                     uint64_t seed);

/**
 * Releases a sweep handle; null is ignored.
 *
 * # Safety
 * `sweep` must be null or a live handle not used afterwards.
 */
void wree_sweep_free(struct WreeSweep *sweep);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* WREE_H */
