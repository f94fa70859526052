#ifndef LATPOLY_H
#define LATPOLY_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every call.
 */
typedef enum LatpolyStatus {
  LATPOLY_STATUS_OK = 0,
  /**
   * invalid argument or parameter
   */
  LATPOLY_STATUS_USAGE = 1,
  /**
   * malformed input or not a full-dimensional lattice polytope
   */
  LATPOLY_STATUS_INVALID_POLYTOPE = 2,
  /**
   * an internal invariant failed
   */
  LATPOLY_STATUS_INTERNAL = 3,
  LATPOLY_STATUS_NULL_POINTER = 4,
  /**
   * the operation needs a smooth polytope
   */
  LATPOLY_STATUS_NOT_SMOOTH = 5,
  /**
   * a panic was caught at the boundary
   */
  LATPOLY_STATUS_PANIC = 6,
} LatpolyStatus;

/**
 * Opaque polytope handle.
 */
typedef struct LatpolyPolytope LatpolyPolytope;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a `latpoly/1` JSON document into a new handle.
 *
 * # Safety
 * `json` is a NUL-terminated string; `out` is valid for writes.
 */
enum LatpolyStatus latpoly_polytope_from_json(const char *json, struct LatpolyPolytope **out);

/**
 * Generates a family member: `simplex` (d, n), `blowup` (d, lambda, n),
 * `cube` (n) or `lawrence` (lengths...).
 *
 * # Safety
 * `family` is a NUL-terminated string; `params` points to `n_params`
 * integers (or is null when `n_params` is 0); `out` is valid for writes.
 */
enum LatpolyStatus latpoly_generate(const char *family,
                                    const int64_t *params,
                                    size_t n_params,
                                    struct LatpolyPolytope **out);

/**
 * Releases a handle; null is ignored.
 *
 * # Safety
 * `p` is null or a handle from this library that has not been freed.
 */
void latpoly_polytope_free(struct LatpolyPolytope *p);

/**
 * # Safety
 * `p` is a live handle; `out` is valid for writes.
 */
enum LatpolyStatus latpoly_polytope_dim(const struct LatpolyPolytope *p, size_t *out);

/**
 * Both presentations as a `latpoly/1` JSON document.
 *
 * # Safety
 * `p` is a live handle; `out` is valid for writes.
 */
enum LatpolyStatus latpoly_polytope_to_json(const struct LatpolyPolytope *p, char **out);

/**
 * # Safety
 * `p` is a live handle; `out` is valid for writes.
 */
enum LatpolyStatus latpoly_codegree(const struct LatpolyPolytope *p, uint64_t *out);

/**
 * # Safety
 * `p` is a live handle; `out` is valid for writes.
 */
enum LatpolyStatus latpoly_degree(const struct LatpolyPolytope *p, uint64_t *out);

/**
 * Rational codegree as `"p/q"`.
 *
 * # Safety
 * `p` is a live handle; `out` is valid for writes.
 */
enum LatpolyStatus latpoly_qcodegree(const struct LatpolyPolytope *p, char **out);

/**
 * Nef value as `"p/q"`; `LATPOLY_STATUS_NOT_SMOOTH` for non-smooth input.
 *
 * # Safety
 * `p` is a live handle; `out` is valid for writes.
 */
enum LatpolyStatus latpoly_nef_value(const struct LatpolyPolytope *p, char **out);

/**
 * # Safety
 * `p` is a live handle; `out` is valid for writes.
 */
enum LatpolyStatus latpoly_is_smooth(const struct LatpolyPolytope *p, bool *out);

/**
 * # Safety
 * `p` is a live handle; `out` is valid for writes.
 */
enum LatpolyStatus latpoly_is_q_normal(const struct LatpolyPolytope *p, bool *out);

/**
 * The full invariant report as JSON.
 *
 * # Safety
 * `p` is a live handle; `out` is valid for writes.
 */
enum LatpolyStatus latpoly_analyze_json(const struct LatpolyPolytope *p, char **out);

/**
 * A maximal Cayley structure of order `s` as JSON, or `null`.
 *
 * # Safety
 * `p` is a live handle; `out` is valid for writes.
 */
enum LatpolyStatus latpoly_cayley_detect_json(const struct LatpolyPolytope *p,
                                              uint64_t s,
                                              char **out);

/**
 * Order-`s` Cayley polytope of `n` summands given as `latpoly/1` JSON.
 *
 * # Safety
 * `summands` points to `n` NUL-terminated strings; `out` is valid for writes.
 */
enum LatpolyStatus latpoly_cayley_build_json(const char *const *summands,
                                             size_t n,
                                             uint64_t s,
                                             struct LatpolyPolytope **out);

/**
 * Message of the last failed call on this thread; empty after success.
 * Valid until the next call on the same thread.
 */
const char *latpoly_last_error(void);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` is null or a string from this library that has not been freed.
 */
void latpoly_string_free(char *s);

/**
 * Library version; static storage.
 */
const char *latpoly_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LATPOLY_H */
