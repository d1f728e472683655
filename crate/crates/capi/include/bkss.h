#ifndef BKSS_H
#define BKSS_H

/* This file is generated by cbindgen from bkss-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Success.
#define SS_OK 0

// An argument was null, out of range, or otherwise invalid.
#define SS_EINVAL 1

// Internal error (a panic was caught at the boundary).
#define SS_EPANIC 2

// Opaque handle to a computed page report.
typedef struct SsReport SsReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Compute all rows `q <= q_max` for the given model.
//
// `family` is one of `"knots"`, `"links"`, `"hlinks"`, `"braids"`;
// `prime` selects the coefficient field (`0` for the rationals, otherwise a
// prime).  On success writes a fresh handle to `*out`.
//
// # Safety
// `family` must be null or a valid NUL-terminated string; `out` must be a
// valid writable pointer.
int ss_report_compute(const char *family,
                      uint32_t strands,
                      uint32_t ambient,
                      uint32_t q_max,
                      uint64_t prime,
                      struct SsReport **out);

// Free a report handle (null is a no-op).
//
// # Safety
// `handle` must be null or a handle returned by [`ss_report_compute`] that
// has not been freed before.
void ss_report_free(struct SsReport *handle);

// Dimensions at spot `(q, p)`.  Writes `dim E1` to `*e1` and `dim E2` to
// `*e2` (`-1` when the row was truncated before ranks were computed).
// Spots outside the computed support report `0, 0`.
//
// # Safety
// `handle` must be a live handle from [`ss_report_compute`]; `e1` and `e2`
// must be valid writable pointers.
int ss_report_entry(const struct SsReport *handle,
                    uint32_t q,
                    uint32_t p,
                    uint64_t *e1,
                    int64_t *e2);

// Render the report as the canonical JSON document (verdict included).
// Returns a fresh string; free with [`ss_string_free`].  Null on error.
//
// # Safety
// `handle` must be null or a live handle from [`ss_report_compute`].
char *ss_report_json(const struct SsReport *handle);

// Convergence verdict for a family at ambient dimension `n`, as JSON.
// Free with [`ss_string_free`].  Null on invalid input.
//
// # Safety
// `family` must be null or a valid NUL-terminated string.
char *ss_verdict_json(const char *family, uint32_t ambient);

// `(k-1)(n-2)+1`: how cartesian the `k`-cube of punctured embeddings is.
// Requires `k >= 1, n >= 1`.
//
// # Safety
// `out` must be null or a valid writable pointer.
int ss_cube_cartesian(uint32_t k, uint32_t n, int64_t *out);

// `(j-1)(n-3)`: connectivity of the `j`-th tower layer.  Requires
// `j >= 1, n >= 3`.
//
// # Safety
// `out` must be null or a valid writable pointer.
int ss_layer_connectivity(uint32_t j, uint32_t n, int64_t *out);

// Free a string returned by this library (null is a no-op).
//
// # Safety
// `s` must have been returned by a `bkss` function and not freed before.
void ss_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BKSS_H */
