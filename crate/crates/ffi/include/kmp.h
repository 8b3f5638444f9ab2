#ifndef KMP_H
#define KMP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum KmpStatus {
  KMP_STATUS_OK = 0,
  KMP_STATUS_NULL_POINTER = 1,
  KMP_STATUS_PARSE = 2,
  KMP_STATUS_INVALID_MATRIX = 3,
  KMP_STATUS_RANK_LIMIT = 4,
  KMP_STATUS_PRECONDITION = 5,
  KMP_STATUS_ARITHMETIC = 6,
  KMP_STATUS_THEOREM_VIOLATION = 7,
  KMP_STATUS_IO = 8,
  KMP_STATUS_BUFFER_TOO_SMALL = 9,
  KMP_STATUS_PANIC = 10,
} KmpStatus;

// Opaque generalized Cartan matrix.
typedef struct KmpCartan KmpCartan;

// Opaque rational function in `t`.
typedef struct KmpRatFunc KmpRatFunc;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *kmp_last_error(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void kmp_string_free(char *s);

// Parses `{"cartan": [[...]]}` or `{"coxeter_graph": {...}}`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum KmpStatus kmp_cartan_from_json(const char *json, struct KmpCartan **out);

// Builds a matrix from `n * n` row-major entries.
//
// # Safety
// `entries` must point to `n * n` readable integers.
enum KmpStatus kmp_cartan_from_entries(size_t n, const int64_t *entries, struct KmpCartan **out);

// # Safety
// `a` must come from this library and not have been freed. Null is ignored.
void kmp_cartan_free(struct KmpCartan *a);

// Rank of the matrix, or 0 for a null handle.
//
// # Safety
// `a` must be null or a live handle.
size_t kmp_cartan_rank(const struct KmpCartan *a);

// Poincaré series of the Weyl group.
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum KmpStatus kmp_poincare(const struct KmpCartan *a, struct KmpRatFunc **out);

// Parses `{"num": [...], "den": [...]}`.
//
// # Safety
// `json` must be a NUL-terminated string and `out` a valid pointer.
enum KmpStatus kmp_ratfunc_from_json(const char *json, struct KmpRatFunc **out);

// # Safety
// `f` must come from this library and not have been freed. Null is ignored.
void kmp_ratfunc_free(struct KmpRatFunc *f);

// Canonical JSON form with coefficients as decimal strings.
//
// # Safety
// `f` must be a live handle and `out` a valid pointer.
enum KmpStatus kmp_ratfunc_to_json(const struct KmpRatFunc *f, char **out);

// `deg num - deg den`. `*is_zero` is set for the zero function, whose
// degree is left untouched.
//
// # Safety
// All pointers must be valid.
enum KmpStatus kmp_ratfunc_degree(const struct KmpRatFunc *f, int64_t *degree, bool *is_zero);

// Taylor coefficients `0..=order` as a JSON array of decimal strings.
//
// # Safety
// `f` must be a live handle and `out` a valid pointer.
enum KmpStatus kmp_ratfunc_series(const struct KmpRatFunc *f, size_t order, char **out);

// Value at `t = num / den`, written as `"p"` or `"p/q"`.
//
// # Safety
// `f` must be a live handle and `out` a valid pointer.
enum KmpStatus kmp_ratfunc_eval(const struct KmpRatFunc *f, int64_t num, int64_t den, char **out);

// Brute-force length counts for lengths `0..=depth`. Writes at most
// `capacity` counts and stores how many levels were produced in
// `*written`; returns `KMP_STATUS_BUFFER_TOO_SMALL` if they did not fit.
//
// # Safety
// `counts` must have room for `capacity` values; other pointers valid.
enum KmpStatus kmp_weyl_counts(const struct KmpCartan *a,
                               size_t depth,
                               size_t cap,
                               uint64_t *counts,
                               size_t capacity,
                               size_t *written,
                               bool *truncated);

// Classification report as JSON.
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum KmpStatus kmp_classify_json(const struct KmpCartan *a, char **out);

// Full Poincaré report (series, type, lcm form) as JSON.
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum KmpStatus kmp_poincare_json(const struct KmpCartan *a, char **out);

// `B(t)` coefficients and the first negative one, as JSON.
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum KmpStatus kmp_kac_json(const struct KmpCartan *a, size_t order, char **out);

// Degree of `P(A)` with `K0` and `K1`, as JSON.
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum KmpStatus kmp_clr_json(const struct KmpCartan *a, char **out);

// Nonzero homotopy indices up to `order`, as a JSON object `k -> i_k`.
//
// # Safety
// `a` must be a live handle and `out` a valid pointer.
enum KmpStatus kmp_indices_json(const struct KmpCartan *a, size_t order, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KMP_H */
