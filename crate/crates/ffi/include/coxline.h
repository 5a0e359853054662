#ifndef COXLINE_H
#define COXLINE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum CoxlineStatus {
  COXLINE_STATUS_OK = 0,
  // A required pointer argument was null.
  COXLINE_STATUS_NULL_POINTER = 1,
  // Malformed input: bad point count, unparsable number, invalid configuration.
  COXLINE_STATUS_INVALID_ARGUMENT = 2,
  // Input outside the domain of the operation, e.g. a non-nef class for the closed form.
  COXLINE_STATUS_DOMAIN = 3,
  // The result does not fit the output type, or the input exceeds supported sizes.
  COXLINE_STATUS_OVERFLOW = 4,
  // Internal failure; the call panicked.
  COXLINE_STATUS_INTERNAL = 5,
} CoxlineStatus;

// Opaque point configuration.
typedef struct CoxlineConfig CoxlineConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version, a static NUL-terminated string.
const char *coxline_version(void);

// Message of the last failed call on this thread, or null if it succeeded.
const char *coxline_last_error_message(void);

// Releases a string returned by this library. Null is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void coxline_string_free(char *s);

// Default configuration: `t_i = i - 1`, `q = (0 : 1 : 0)`.
//
// # Safety
// `out` must be valid for writes.
enum CoxlineStatus coxline_config_default(size_t n, struct CoxlineConfig **out);

// Configuration with points `(t_i : 0 : 1)` and auxiliary point `q`.
// Numbers are decimal integers or fractions `"p/q"`.
//
// # Safety
// `t` must point to `n` C strings, `q` to three, and `out` must be valid for writes.
enum CoxlineStatus coxline_config_new(const char *const *t,
                                      size_t n,
                                      const char *const *q,
                                      struct CoxlineConfig **out);

// Configuration from TOML text with keys `n`, `t`, `q`.
//
// # Safety
// `text` must be a NUL-terminated string and `out` valid for writes.
enum CoxlineStatus coxline_config_parse(const char *text, struct CoxlineConfig **out);

// Number of points of a configuration.
//
// # Safety
// `cfg` must be a live handle and `out` valid for writes.
enum CoxlineStatus coxline_config_n(const struct CoxlineConfig *cfg, size_t *out);

// Releases a configuration. Null is ignored.
//
// # Safety
// `cfg` must come from this library and not have been freed.
void coxline_config_free(struct CoxlineConfig *cfg);

// Intersection number `D . D'` of two classes of equal length.
//
// # Safety
// Both coefficient arrays must hold `len` values; `out` must be valid for writes.
enum CoxlineStatus coxline_intersect(const int64_t *x, const int64_t *y, size_t len, int64_t *out);

// Euler characteristic `chi(D)`.
//
// # Safety
// `coeffs` must hold `len` values; `out` must be valid for writes.
enum CoxlineStatus coxline_chi(const int64_t *coeffs, size_t len, int64_t *out);

// `h0(D)` from the lattice: zero off the effective cone, otherwise `chi` of
// the nef part after removing fixed components.
//
// # Safety
// `coeffs` must hold `len` values; `out` must be valid for writes.
enum CoxlineStatus coxline_h0(const int64_t *coeffs, size_t len, int64_t *out);

// Effective cone membership.
//
// # Safety
// `coeffs` must hold `len` values; `out` must be valid for writes.
enum CoxlineStatus coxline_is_effective(const int64_t *coeffs, size_t len, bool *out);

// Nef cone membership.
//
// # Safety
// `coeffs` must hold `len` values; `out` must be valid for writes.
enum CoxlineStatus coxline_is_nef(const int64_t *coeffs, size_t len, bool *out);

// `h0(D)` by exact interpolation at the configuration's points.
//
// # Safety
// `cfg` must be a live handle, `coeffs` must hold `len` values and `out` must
// be valid for writes.
enum CoxlineStatus coxline_h0_rank(const struct CoxlineConfig *cfg,
                                   const int64_t *coeffs,
                                   size_t len,
                                   size_t *out);

// Number of standard monomials of degree `D`, by enumeration.
//
// # Safety
// `coeffs` must hold `len` values; `out` must be valid for writes.
enum CoxlineStatus coxline_standard_monomial_count(const int64_t *coeffs, size_t len, size_t *out);

// Number of standard monomials of a nef degree `D`, in closed form.
// Non-nef classes give `Domain`.
//
// # Safety
// `coeffs` must hold `len` values; `out` must be valid for writes.
enum CoxlineStatus coxline_standard_monomial_count_closed_form(const int64_t *coeffs,
                                                               size_t len,
                                                               int64_t *out);

// Classification report as JSON: cone membership, coordinates, `chi`, `h0`
// and the fixed-part decomposition. Free with [`coxline_string_free`].
//
// # Safety
// `coeffs` must hold `len` values; `out` must be valid for writes.
enum CoxlineStatus coxline_classify_json(const int64_t *coeffs, size_t len, char **out);

// Standard monomial basis of degree `D` with plane forms and the independence
// check, as JSON. Free with [`coxline_string_free`].
//
// # Safety
// `cfg` must be a live handle, `coeffs` must hold `len` values and `out` must
// be valid for writes.
enum CoxlineStatus coxline_basis_json(const struct CoxlineConfig *cfg,
                                      const int64_t *coeffs,
                                      size_t len,
                                      char **out);

// Relations of the configuration with their checks, as JSON. Free with
// [`coxline_string_free`].
//
// # Safety
// `cfg` must be a live handle and `out` valid for writes.
enum CoxlineStatus coxline_relations_json(const struct CoxlineConfig *cfg, char **out);

// Cross-checks every nef class of degree at most `d_max`. Writes whether all
// checks passed to `passed` and the report JSON to `out`. Free with
// [`coxline_string_free`].
//
// # Safety
// `cfg` must be a live handle; `passed` and `out` must be valid for writes.
enum CoxlineStatus coxline_verify_json(const struct CoxlineConfig *cfg,
                                       uint32_t d_max,
                                       bool *passed,
                                       char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COXLINE_H */
