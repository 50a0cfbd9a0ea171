#ifndef ZETA_RESONANCE_H
#define ZETA_RESONANCE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ZrStatus {
  ZR_STATUS_OK = 0,
  ZR_STATUS_POLE = 1,
  ZR_STATUS_PRECISION_UNREACHABLE = 2,
  ZR_STATUS_RANGE = 3,
  ZR_STATUS_CAPACITY = 4,
  ZR_STATUS_BETA = 5,
  ZR_STATUS_KIND = 6,
  ZR_STATUS_SHAPE = 7,
  ZR_STATUS_VALIDATION = 8,
  ZR_STATUS_IO = 9,
  ZR_STATUS_JSON = 10,
  ZR_STATUS_NULL_POINTER = 11,
  ZR_STATUS_INVALID_UTF8 = 12,
  ZR_STATUS_PANIC = 13,
} ZrStatus;

/**
 * Opaque resonator handle. Release with [`zr_resonator_free`].
 */
typedef struct ZrResonator ZrResonator;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failure on this thread, or NULL. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *zr_last_error(void);

/**
 * ζ(σ + it) to absolute precision `precision`.
 *
 * # Safety
 * `re` and `im` must be valid for writes.
 */
enum ZrStatus zr_zeta(double sigma, double t, double precision, double *re, double *im);

/**
 * ∏_{p ≤ y} (1 − p^{−1−it})^{−1}.
 *
 * # Safety
 * `re` and `im` must be valid for writes.
 */
enum ZrStatus zr_truncated_euler_product(double t, double y, double *re, double *im);

/**
 * # Safety
 * `dst` must be valid for writes.
 */
enum ZrStatus zr_resonator_strip(double x, uint32_t ell, struct ZrResonator **dst);

/**
 * # Safety
 * `dst` must be valid for writes.
 */
enum ZrStatus zr_resonator_sigma1(double x, struct ZrResonator **dst);

/**
 * # Safety
 * `dst` must be valid for writes.
 */
enum ZrStatus zr_resonator_critical(uint64_t t,
                                    double kappa,
                                    double gamma,
                                    uint32_t classes,
                                    struct ZrResonator **dst);

/**
 * # Safety
 * `r` must come from a `zr_resonator_*` constructor and not be used afterwards.
 */
void zr_resonator_free(struct ZrResonator *r);

/**
 * R(t).
 *
 * # Safety
 * `r` must be a live handle; `re` and `im` valid for writes.
 */
enum ZrStatus zr_resonator_eval(const struct ZrResonator *r, double t, double *re, double *im);

/**
 * Support size (number of primes for sigma1).
 *
 * # Safety
 * `r` must be a live handle; `card` valid for writes.
 */
enum ZrStatus zr_resonator_card(const struct ZrResonator *r, size_t *card);

/**
 * ‖R‖² = Σ r(n)².
 *
 * # Safety
 * `r` must be a live handle; `norm2` valid for writes.
 */
enum ZrStatus zr_resonator_norm2(const struct ZrResonator *r, double *norm2);

/**
 * Serialize to JSON. Free the string with [`zr_string_free`].
 *
 * # Safety
 * `r` must be a live handle; `json` valid for writes.
 */
enum ZrStatus zr_resonator_to_json(const struct ZrResonator *r, char **json);

/**
 * # Safety
 * `json` must be a NUL-terminated string; `dst` valid for writes.
 */
enum ZrStatus zr_resonator_from_json(const char *json, struct ZrResonator **dst);

/**
 * # Safety
 * `s` must come from this library, or be NULL.
 */
void zr_string_free(char *s);

/**
 * Σ_{mk=n} r(m)r(n)k^{−σ} over the support.
 *
 * # Safety
 * `r` must be a live handle; `value` and `triples` valid for writes.
 */
enum ZrStatus zr_gcd_sum(const struct ZrResonator *r,
                         double sigma,
                         double *value,
                         uint64_t *triples);

/**
 * ℓ^{π(x)} ∏_{p ≤ x} (1 + p^{−σ})^{1 − 1/ℓ}.
 */
double zr_strip_gcd_lower_bound(double x, uint32_t ell, double sigma);

/**
 * Series, enumerated tail and Euler-product closed form of the σ = 1 ratio.
 *
 * # Safety
 * The three output pointers must be valid for writes.
 */
enum ZrStatus zr_sigma1_ratio(double x,
                              uint64_t k_cutoff,
                              double *series,
                              double *tail,
                              double *closed_form);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZETA_RESONANCE_H */
