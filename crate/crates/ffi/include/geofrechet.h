#ifndef GEOFRECHET_H
#define GEOFRECHET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every `gf_*` call.
 */
typedef enum {
  GF_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  GF_STATUS_NULL_POINTER = 1,
  /**
   * The polygon is degenerate, self-intersecting or too small.
   */
  GF_STATUS_INVALID_POLYGON = 2,
  /**
   * A curve or point set is empty, non-finite or has repeated vertices.
   */
  GF_STATUS_INVALID_CURVE = 3,
  /**
   * A point or segment lies outside the polygon.
   */
  GF_STATUS_OUTSIDE_POLYGON = 4,
  /**
   * A scalar argument is out of range.
   */
  GF_STATUS_INVALID_ARGUMENT = 5,
  /**
   * The optimizer gave up; see the error message.
   */
  GF_STATUS_OPTIMIZER_FAILURE = 6,
  /**
   * A Rust panic was caught at the boundary.
   */
  GF_STATUS_PANIC = 7,
} GfStatus;

/**
 * Opaque polygonal curve.
 */
typedef struct GfCurve GfCurve;

/**
 * Opaque polygon together with its triangulation.
 */
typedef struct GfSpace GfSpace;

/**
 * Summary of one Fréchet optimization.
 */
typedef struct {
  double epsilon_star;
  size_t iterations;
  size_t decision_calls;
} GfFrechetResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next `gf_*` call on the thread.
 */
const char *gf_last_error_message(void);

/**
 * Builds a polygon from `n` vertices in either orientation.
 *
 * # Safety
 * `xy` must point to `2 * n` doubles and `out` to a writable handle slot.
 */
GfStatus gf_space_new(const double *xy, size_t n, GfSpace **out);

/**
 * Releases a polygon handle. Null is ignored.
 *
 * # Safety
 * `space` must come from [`gf_space_new`] and not be used afterwards.
 */
void gf_space_free(GfSpace *space);

/**
 * Builds a curve from `n >= 1` vertices.
 *
 * # Safety
 * `xy` must point to `2 * n` doubles and `out` to a writable handle slot.
 */
GfStatus gf_curve_new(const double *xy, size_t n, GfCurve **out);

/**
 * Releases a curve handle. Null is ignored.
 *
 * # Safety
 * `curve` must come from [`gf_curve_new`] and not be used afterwards.
 */
void gf_curve_free(GfCurve *curve);

/**
 * Length of the shortest path from `(ax, ay)` to `(bx, by)` inside the
 * polygon.
 *
 * # Safety
 * `space` must be a live handle and `out` writable.
 */
GfStatus gf_shortest_path_length(const GfSpace *space,
                                 double ax,
                                 double ay,
                                 double bx,
                                 double by,
                                 double *out);

/**
 * Whether the Fréchet distance of `a` and `b` is at most `eps`.
 *
 * # Safety
 * Handles must be live (`space` may be null) and `out` writable.
 */
GfStatus gf_decide(const GfSpace *space, const GfCurve *a, const GfCurve *b, double eps, bool *out);

/**
 * Fréchet distance of `a` and `b`. `tol` is the root tolerance of the
 * optimizer; pass 0 for the default.
 *
 * # Safety
 * Handles must be live (`space` may be null) and `out` writable.
 */
GfStatus gf_frechet(const GfSpace *space,
                    const GfCurve *a,
                    const GfCurve *b,
                    uint64_t seed,
                    double tol,
                    GfFrechetResult *out);

/**
 * Hausdorff distance between the point sets `xy_a` (`na` points) and
 * `xy_b` (`nb` points).
 *
 * # Safety
 * `space` may be null or live; arrays must hold `2 * na` and `2 * nb`
 * doubles; `out` must be writable.
 */
GfStatus gf_hausdorff(const GfSpace *space,
                      const double *xy_a,
                      size_t na,
                      const double *xy_b,
                      size_t nb,
                      double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GEOFRECHET_H */
