#ifndef ADHM_H
#define ADHM_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes.
 */
typedef enum AdhmStatus {
  ADHM_STATUS_OK = 0,
  ADHM_STATUS_NULL_POINTER = 1,
  ADHM_STATUS_INVALID_UTF8 = 2,
  ADHM_STATUS_PARSE = 3,
  ADHM_STATUS_DIMENSION_MISMATCH = 4,
  ADHM_STATUS_COMMON_EIGENVALUE = 5,
  ADHM_STATUS_NOT_SPLIT_OVER_BASE = 6,
  ADHM_STATUS_NOT_STABLE = 7,
  ADHM_STATUS_UNSUPPORTED = 8,
  ADHM_STATUS_SET_MISMATCH = 9,
  /**
   * Any other library error; see `adhm_last_error`.
   */
  ADHM_STATUS_FAILED = 10,
  ADHM_STATUS_PANIC = 11,
} AdhmStatus;

/**
 * Opaque datum handle.
 */
typedef struct AdhmDatum AdhmDatum;

/**
 * Last error message on this thread; empty after a successful call.  The
 * pointer stays valid until the next call into the library on this thread.
 */
const char *adhm_last_error(void);

/**
 * Library version as a static NUL-terminated string.
 */
const char *adhm_version(void);

/**
 * # Safety
 * `s` must be null or a string returned by this library, not yet freed.
 */
void adhm_string_free(char *s);

/**
 * Parses a datum from JSON.
 *
 * # Safety
 * `json` must be a NUL-terminated string; `out` must be writable.
 */
enum AdhmStatus adhm_datum_from_json(const char *json, struct AdhmDatum **out);

/**
 * # Safety
 * `d` must be null or a handle from this library, not yet freed.
 */
void adhm_datum_free(struct AdhmDatum *d);

/**
 * Serializes a datum to JSON.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum AdhmStatus adhm_datum_to_json(const struct AdhmDatum *d, char **out);

/**
 * # Safety
 * `d` must be a live handle; `dim_v` and `dim_w` must be writable.
 */
enum AdhmStatus adhm_datum_dims(const struct AdhmDatum *d, size_t *dim_v, size_t *dim_w);

/**
 * Membership checks as a JSON report (see the `verify` command).
 *
 * # Safety
 * `d` must be a live handle; `out` and `verified` must be writable.
 */
enum AdhmStatus adhm_datum_verify(const struct AdhmDatum *d, bool *verified, char **out);

/**
 * `true` when stable and costable.
 *
 * # Safety
 * `d` must be a live handle; `out` must be writable.
 */
enum AdhmStatus adhm_datum_is_regular(const struct AdhmDatum *d, bool *out);

/**
 * Runs a product pipeline (`tensor` takes two inputs, the other verbs
 * one) and returns the output datum.  `verified` reports whether every
 * check on the output passed.
 *
 * # Safety
 * `verb` must be a NUL-terminated string, `inputs` an array of `count`
 * live handles, and `out`, `verified` writable.
 */
enum AdhmStatus adhm_product(const char *verb,
                             const struct AdhmDatum *const *inputs,
                             size_t count,
                             uint64_t seed,
                             struct AdhmDatum **out,
                             bool *verified);

/**
 * The invariant Hilbert series to order `trunc`, e.g. `1 + (t+1+t^-1) u^2`.
 *
 * # Safety
 * `out` must be writable.
 */
enum AdhmStatus adhm_hilbert_series(size_t trunc, char **out);

/**
 * Point count of the SO(3) zero fibre for `dim V = k`.
 *
 * # Safety
 * `out` must be writable.
 */
enum AdhmStatus adhm_count_so3(size_t k,
                               uint64_t prime,
                               size_t workers,
                               bool allow_long,
                               uint64_t *out);

/**
 * Point count of the zero fibre on three copies of `V_d`.
 *
 * # Safety
 * `out` must be writable.
 */
enum AdhmStatus adhm_count_homw(size_t d, uint64_t prime, size_t workers, uint64_t *out);

/**
 * Zeros of `μ_x` for `x = e1 z^n`; fails with `SetMismatch` when they do
 * not form the claimed subspace.
 *
 * # Safety
 * `out` must be writable.
 */
enum AdhmStatus adhm_count_mux(size_t d, size_t n, uint64_t prime, size_t workers, uint64_t *out);

#endif /* ADHM_H */
