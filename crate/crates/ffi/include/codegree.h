#ifndef CODEGREE_H
#define CODEGREE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Largest group order accepted by [`cg_ring_cyclic`].
#define CG_MAX_CYCLIC_ORDER 64

typedef enum CgStatus {
  CG_STATUS_OK = 0,
  CG_STATUS_NULL_POINTER = 1,
  CG_STATUS_INVALID_UTF8 = 2,
  CG_STATUS_INVALID_INPUT = 3,
  CG_STATUS_INTERNAL = 4,
  CG_STATUS_PANIC = 5,
} CgStatus;

typedef enum CgVerdict {
  CG_VERDICT_OBSTRUCTED_D_NUMBER = 0,
  CG_VERDICT_OBSTRUCTED_CYCLOTOMIC_ONLY = 1,
  CG_VERDICT_NOT_OBSTRUCTED = 2,
  CG_VERDICT_INDETERMINATE = 3,
} CgVerdict;

// A validated based ring.
typedef struct CgRing CgRing;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Parses and validates a ring definition in the JSON file format
// (`rank`, `labels`, `unit`, `dual`, `N`).
//
// # Safety
// `json` must be null or a NUL-terminated string; `out` must be null or
// writable.
enum CgStatus cg_ring_from_json(const char *json, struct CgRing **out);

// Builds the rank-3 ring `K(k,l,m,n)`; requires `k^2 + l^2 = lm + kn + 1`.
//
// # Safety
// `out` must be null or writable.
enum CgStatus cg_ring_rank3(uint64_t k, uint64_t l, uint64_t m, uint64_t n, struct CgRing **out);

// Builds the group ring of `Z/n`, `1 <= n <= CG_MAX_CYCLIC_ORDER`.
//
// # Safety
// `out` must be null or writable.
enum CgStatus cg_ring_cyclic(uint32_t n, struct CgRing **out);

// Releases a ring handle. Null is ignored.
//
// # Safety
// `ring` must be null or a handle not yet freed.
void cg_ring_free(struct CgRing *ring);

// # Safety
// `ring` must be null or a live handle; `out` must be null or writable.
enum CgStatus cg_ring_rank(const struct CgRing *ring, size_t *out);

// Characteristic polynomial of alpha, e.g. `t^3 - 26t^2 + 148t - 148`.
// Free the result with [`cg_string_free`].
//
// # Safety
// `ring` must be null or a live handle; `out` must be null or writable.
enum CgStatus cg_ring_alpha_charpoly(const struct CgRing *ring, char **out);

// The obstruction report as pretty JSON, identical to
// `codegree obstruct --format json`. Free with [`cg_string_free`].
//
// # Safety
// `ring` must be null or a live handle; `out` must be null or writable.
enum CgStatus cg_ring_obstruction_json(const struct CgRing *ring, char **out);

// # Safety
// `ring` must be null or a live handle; `out` must be null or writable.
enum CgStatus cg_ring_verdict(const struct CgRing *ring, enum CgVerdict *out);

// d-number test for a root of the irreducible monic polynomial with
// coefficients `coeffs[0] = 1, coeffs[1], ..., coeffs[len - 1]`, highest
// degree first. `witness` receives the least failing index, or 0 when the
// root is a d-number.
//
// # Safety
// `coeffs` must point to `len` readable values; the out pointers must be
// null or writable.
enum CgStatus cg_d_number_test(const int64_t *coeffs,
                               size_t len,
                               bool *is_d_number,
                               size_t *witness);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must be null or a string from this library not yet freed.
void cg_string_free(char *s);

// Message of the last failed call on this thread, or null after a
// successful call. Valid until the next call on this thread.
const char *cg_last_error(void);

// Library version, a static string.
const char *cg_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CODEGREE_H */
