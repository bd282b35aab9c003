#ifndef ZKSYM_H
#define ZKSYM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Dimension of m.
 */
#define ZKSYM_FRAME_DIM 8

typedef enum ZksymStatus {
  ZKSYM_STATUS_OK = 0,
  ZKSYM_STATUS_INVALID_INPUT = 1,
  ZKSYM_STATUS_NUMERICAL = 2,
  ZKSYM_STATUS_NULL_POINTER = 3,
  ZKSYM_STATUS_BUFFER_TOO_SMALL = 4,
  ZKSYM_STATUS_PANIC = 5,
} ZksymStatus;

typedef enum ZksymBranch {
  ZKSYM_BRANCH_U_ZERO = 0,
  ZKSYM_BRANCH_U_NONZERO = 1,
} ZksymBranch;

/**
 * Opaque handle holding a metric and its precomputed geometry.
 */
typedef struct ZksymGeometry ZksymGeometry;

typedef struct ZksymParams {
  double t;
  double u;
  double v;
  double w;
} ZksymParams;

typedef struct ZksymSolution {
  enum ZksymBranch branch;
  double s;
  double v_ratio;
  double w_ratio;
  double usq;
  struct ZksymParams params;
  double ledger_residual;
  double star_residual;
  double gram_residual;
  bool naturally_reductive;
} ZksymSolution;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *zksym_version(void);

/**
 * Copies the calling thread's last error message into `buf` (truncated,
 * always NUL-terminated when `len > 0`). Returns the full message length
 * without the terminator, or 0 if the last call succeeded.
 *
 * # Safety
 * `buf` must be null or point to at least `len` writable bytes.
 */
size_t zksym_last_error(char *buf, size_t len);

/**
 * Builds the geometry of the metric `params`. On success `*out` owns a
 * handle that must be released with [`zksym_geometry_free`].
 *
 * # Safety
 * `out` must be null or valid for writing one pointer.
 */
enum ZksymStatus zksym_geometry_new(struct ZksymParams params, struct ZksymGeometry **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `g` must be null or a handle from [`zksym_geometry_new`] not yet freed.
 */
void zksym_geometry_free(struct ZksymGeometry *g);

/**
 * Writes the 64 Ricci entries.
 *
 * # Safety
 * `g` must be a live handle and `out` must hold `len` doubles.
 */
enum ZksymStatus zksym_geometry_ricci(const struct ZksymGeometry *g, double *out, size_t len);

/**
 * Writes the 512 coefficients of `[ , ]_m` in the frame.
 *
 * # Safety
 * `g` must be a live handle and `out` must hold `len` doubles.
 */
enum ZksymStatus zksym_geometry_bracket_table(const struct ZksymGeometry *g,
                                              double *out,
                                              size_t len);

/**
 * Writes the 512 coefficients of the U map in the frame.
 *
 * # Safety
 * `g` must be a live handle and `out` must hold `len` doubles.
 */
enum ZksymStatus zksym_geometry_u_table(const struct ZksymGeometry *g, double *out, size_t len);

/**
 * `L(x, y, z)` for frame-coordinate vectors of length 8.
 *
 * # Safety
 * `g` must be a live handle, `x`, `y`, `z` must each point to 8 doubles
 * and `out` must be valid for one double.
 */
enum ZksymStatus zksym_geometry_ledger(const struct ZksymGeometry *g,
                                       const double *x,
                                       const double *y,
                                       const double *z,
                                       double *out);

/**
 * Max `|L|` over frame triples and the maximizing triple.
 *
 * # Safety
 * `g` must be a live handle, `value` valid for one double and `triple`
 * null or valid for three `size_t`.
 */
enum ZksymStatus zksym_geometry_max_ledger(const struct ZksymGeometry *g,
                                           double *value,
                                           size_t *triple);

/**
 * Whether every `<U(X,Y),Z>` over frame triples is within `tol`.
 *
 * # Safety
 * `g` must be a live handle and `out` valid for one bool.
 */
enum ZksymStatus zksym_geometry_is_naturally_reductive(const struct ZksymGeometry *g,
                                                       double tol,
                                                       bool *out);

/**
 * Dimension of the space of infinitesimal isometries in m.
 *
 * # Safety
 * `g` must be a live handle and `out` valid for one `size_t`.
 */
enum ZksymStatus zksym_geometry_isometry_dim(const struct ZksymGeometry *g,
                                             double tol,
                                             size_t *out);

/**
 * Solves the first Ledger condition at `s` on `branch` (2 solutions for
 * `u = 0`, 4 otherwise). `*written` receives the number of solutions; if
 * `cap` is too small nothing is copied and `BUFFER_TOO_SMALL` is returned.
 *
 * # Safety
 * `out` must hold `cap` solutions and `written` must be valid for one `size_t`.
 */
enum ZksymStatus zksym_solve(enum ZksymBranch branch,
                             double s,
                             double tol,
                             struct ZksymSolution *out,
                             size_t cap,
                             size_t *written);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZKSYM_H */
