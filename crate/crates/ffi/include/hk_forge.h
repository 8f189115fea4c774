#ifndef HK_FORGE_H
#define HK_FORGE_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes.
typedef enum HkStatus {
  HK_STATUS_OK = 0,
  HK_STATUS_NULL_POINTER = 1,
  HK_STATUS_INVALID_UTF8 = 2,
  HK_STATUS_NOT_PRIME = 3,
  HK_STATUS_INVALID_INPUT = 4,
  HK_STATUS_SYNTAX = 5,
  HK_STATUS_CHARACTERISTIC_MISMATCH = 6,
  HK_STATUS_SIZE_LIMIT = 7,
  HK_STATUS_NO_PERIOD_FOUND = 8,
  HK_STATUS_COMPUTATION = 9,
  HK_STATUS_PANIC = 10,
} HkStatus;

// Coefficient basis for rendering.
typedef enum HkBasis {
  HK_BASIS_DELTA = 0,
  HK_BASIS_LAMBDA = 1,
} HkBasis;

// Quadric family.
typedef enum HkVariant {
  HK_VARIANT_A1 = 0,
  HK_VARIANT_A2 = 1,
} HkVariant;

// Opaque element of the representation ring.
typedef struct HkElement HkElement;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. The pointer is
// valid until the next call into the library from the same thread.
const char *hk_last_error(void);

// Library version as a static string.
const char *hk_version(void);

// Release a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void hk_string_free(char *s);

// Parse `text` (e.g. `"2*d3 + 1/2*d4"` or `"l0 - l1"`) in characteristic `p`.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a writable pointer.
enum HkStatus hk_element_parse(uint32_t p, const char *text, struct HkElement **out);

// `δ_i` (basis Delta) or `λ_i` (basis Lambda).
//
// # Safety
// `out` must be a writable pointer.
enum HkStatus hk_element_basis(uint32_t p, enum HkBasis basis, uint32_t i, struct HkElement **out);

// Release an element. NULL is ignored.
//
// # Safety
// `e` must come from this library and not have been freed.
void hk_element_free(struct HkElement *e);

// `*out = a + b`.
//
// # Safety
// `a` and `b` must be live elements and `out` a writable pointer.
enum HkStatus hk_element_add(const struct HkElement *a,
                             const struct HkElement *b,
                             struct HkElement **out);

// `*out = a·b`.
//
// # Safety
// `a` and `b` must be live elements and `out` a writable pointer.
enum HkStatus hk_element_mul(const struct HkElement *a,
                             const struct HkElement *b,
                             struct HkElement **out);

// `α(e)` as a reduced fraction `"num/den"` (or `"num"` when integral).
//
// # Safety
// `e` must be a live element and `out` a writable pointer.
enum HkStatus hk_element_alpha(const struct HkElement *e, char **out);

// Render `e` in the requested basis.
//
// # Safety
// `e` must be a live element and `out` a writable pointer.
enum HkStatus hk_element_render(const struct HkElement *e, enum HkBasis basis, char **out);

// Hilbert–Kunz multiplicity of the quadric `variant` of dimension `d`, as a
// JSON report with `ehk` encoded as `{"num": "...", "den": "..."}`.
//
// # Safety
// `out` must be a writable pointer.
enum HkStatus hk_ehk_quadric(uint32_t p, enum HkVariant variant, uint32_t d, char **out);

// Hilbert–Kunz multiplicity of `x_0^{e_0} + ... + x_{n-1}^{e_{n-1}}`, as a JSON report.
//
// # Safety
// `exponents` must point to `n` readable values and `out` be a writable pointer.
enum HkStatus hk_ehk_diagonal(uint32_t p, const uint32_t *exponents, uintptr_t n, char **out);

// `HK_e` of `poly` in `nvars` variables over F_p, by direct linear algebra.
//
// # Safety
// `poly` must be a NUL-terminated string and `out` a writable pointer.
enum HkStatus hk_direct_hk(uint32_t p,
                           uintptr_t nvars,
                           const char *poly,
                           uint32_t e,
                           uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HK_FORGE_H */
