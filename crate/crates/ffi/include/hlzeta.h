#ifndef HLZETA_H
#define HLZETA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Regime code for the C side.
#define HLZ_REGIME_AUTO -1

#define HLZ_REGIME_GENERIC 0

#define HLZ_REGIME_Z_ONE 1

enum HlzStatus
#if defined(__cplusplus) || __STDC_VERSION__ >= 202311L
  : int32_t
#endif // defined(__cplusplus) || __STDC_VERSION__ >= 202311L
 {
  HLZ_STATUS_OK = 0,
  HLZ_STATUS_NULL_POINTER = 1,
  HLZ_STATUS_INVALID_ARGUMENT = 2,
  HLZ_STATUS_PARSE = 3,
  HLZ_STATUS_DOMAIN = 4,
  HLZ_STATUS_INTERNAL = 5,
};
#ifndef __cplusplus
#if __STDC_VERSION__ >= 202311L
typedef enum HlzStatus HlzStatus;
#else
typedef int32_t HlzStatus;
#endif // __STDC_VERSION__ >= 202311L
#endif // __cplusplus

// Expansion handle.
typedef struct HlzExpansion HlzExpansion;

typedef struct HlzComplex {
  double re;
  double im;
} HlzComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread; empty after a success.
// The pointer stays valid until the next call on the same thread.
const char *hlz_last_error_message(void);

// Library version as a static string.
const char *hlz_version(void);

// # Safety
// `s` must come from this library or be null.
void hlz_string_free(char *s);

// # Safety
// `e` must come from this library or be null.
void hlz_expansion_free(struct HlzExpansion *e);

// Expansion at the point `l[0..r]`, `r ≥ 2`.
//
// # Safety
// `l` must point to `r` values and `out` must be writable.
HlzStatus hlz_expand(const uint32_t *l, uintptr_t r, struct HlzExpansion **out);

// Keeps the terms that survive the given regimes (`HLZ_REGIME_GENERIC` or
// `HLZ_REGIME_Z_ONE`, one per coordinate).
//
// # Safety
// `e` must be a live handle, `regimes` must point to `r` values and `out`
// must be writable.
HlzStatus hlz_expansion_specialize(const struct HlzExpansion *e,
                                   const int32_t *regimes,
                                   uintptr_t r,
                                   struct HlzExpansion **out);

// # Safety
// `e` must be a live handle and `out` writable.
HlzStatus hlz_expansion_term_count(const struct HlzExpansion *e, uintptr_t *out);

// # Safety
// `e` must be a live handle and `out` writable.
HlzStatus hlz_expansion_to_json(const struct HlzExpansion *e, char **out);

// # Safety
// `e` must be a live handle and `out` writable.
HlzStatus hlz_expansion_to_text(const struct HlzExpansion *e, char **out);

// # Safety
// `json` must be a nul-terminated string and `out` writable.
HlzStatus hlz_expansion_from_json(const char *json, struct HlzExpansion **out);

// Exact value of the expansion. `a`, `z`, `eps` are comma-separated exact
// complex numbers such as `1/2,3-i`; `regimes` holds `r` regime codes or
// is null for automatic choice. The result is an exact string.
//
// # Safety
// String arguments must be nul-terminated, `regimes` null or of length `r`,
// `e` a live handle and `out` writable.
HlzStatus hlz_expansion_eval(const struct HlzExpansion *e,
                             const char *a,
                             const char *z,
                             const char *eps,
                             const int32_t *regimes,
                             char **out);

// Exact `B_n(a; z)` as a string.
//
// # Safety
// `a`, `z` must be nul-terminated and `out` writable.
HlzStatus hlz_apostol_eval(uint32_t n, const char *a, const char *z, int32_t regime, char **out);

// `B_n(a; z)` as a polynomial in `a`; `regime` must be concrete.
//
// # Safety
// `out` must be writable.
HlzStatus hlz_apostol_poly_string(uint32_t n, int32_t regime, char **out);

// The defining series at double-precision inputs, summed with `precision`
// digits and rounded to double.
//
// # Safety
// `s`, `a`, `z` must point to `r` values and `out` must be writable.
HlzStatus hlz_direct_series(const struct HlzComplex *s,
                            const struct HlzComplex *a,
                            const struct HlzComplex *z,
                            uintptr_t r,
                            uint32_t precision,
                            struct HlzComplex *out);

// Recomputes the embedded reference expansions.
//
// # Safety
// `passed` and `total` must be writable.
HlzStatus hlz_verify_fixtures(uintptr_t *passed, uintptr_t *total);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HLZETA_H */
