#ifndef KMSS_H
#define KMSS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum KmssCone {
    KMSS_CONE_IN_CONE = 0,
    KMSS_CONE_IN_NEGATIVE_CONE = 1,
    KMSS_CONE_UNDETERMINED = 2,
} KmssCone;

/**
 * Result code of every call.
 */
typedef enum KmssStatus {
    KMSS_STATUS_OK = 0,
    KMSS_STATUS_NULL_POINTER = 1,
    KMSS_STATUS_INVALID_MATRIX = 2,
    KMSS_STATUS_NOT_IRREDUCIBLE = 3,
    KMSS_STATUS_NOT_SYMMETRIZABLE = 4,
    KMSS_STATUS_INDEX_OUT_OF_RANGE = 5,
    KMSS_STATUS_OVERFLOW = 6,
    KMSS_STATUS_INVALID_ARGUMENT = 7,
    KMSS_STATUS_DOMAIN_ERROR = 8,
    KMSS_STATUS_PANIC = 9,
} KmssStatus;

typedef enum KmssType {
    KMSS_TYPE_SPHERICAL = 0,
    KMSS_TYPE_AFFINE = 1,
    KMSS_TYPE_INDEFINITE = 2,
} KmssType;

/**
 * Opaque generalized Cartan matrix.
 */
typedef struct KmssGcm KmssGcm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Owned by the
 * library; valid until the next failing call on the same thread.
 */
const char *kmss_last_error_message(void);

/**
 * Frees a string returned by this library.
 *
 * # Safety
 * `s` must come from this library and not have been freed already.
 */
void kmss_string_free(char *s);

/**
 * Validates a row-major `n x n` matrix and returns a handle in `*out`.
 *
 * # Safety
 * `entries` must point to `n * n` readable values and `out` must be writable.
 */
enum KmssStatus kmss_gcm_new(const int64_t *entries, uintptr_t n, struct KmssGcm **out);

/**
 * Parses a JSON matrix (bare array or `{"A": ...}`).
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` writable.
 */
enum KmssStatus kmss_gcm_from_json(const char *json, struct KmssGcm **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `gcm` must come from `kmss_gcm_new` / `kmss_gcm_from_json` and not have been freed.
 */
void kmss_gcm_free(struct KmssGcm *gcm);

/**
 * Number of rows, or 0 for a null handle.
 *
 * # Safety
 * `gcm` must be a live handle or null.
 */
uintptr_t kmss_gcm_size(const struct KmssGcm *gcm);

/**
 * # Safety
 * `gcm` must be a live handle; output pointers must be writable.
 */
enum KmssStatus kmss_gcm_classify(const struct KmssGcm *gcm,
                                  enum KmssType *out_type,
                                  uintptr_t *out_rank,
                                  uintptr_t *out_corank);

/**
 * # Safety
 * `gcm` must be a live handle and `out` writable.
 */
enum KmssStatus kmss_gcm_is_star_spherical(const struct KmssGcm *gcm, bool *out);

/**
 * Writes the `n x n` row-major matrix of the word (1-based letters) acting
 * on the coroot space into `out`.
 *
 * # Safety
 * `letters` must hold `len` values (may be null when `len == 0`), `out` must hold `n * n`.
 */
enum KmssStatus kmss_weyl_word_matrix(const struct KmssGcm *gcm,
                                      const uintptr_t *letters,
                                      uintptr_t len,
                                      int64_t *out);

/**
 * Tits cone membership of an integer point in coroot coordinates. The
 * full verdict (witness word, flags) is returned as JSON in `*out_json`
 * when `out_json` is not null.
 *
 * # Safety
 * `point` must hold `n` values; output pointers must be writable or null (`out_json` only).
 */
enum KmssStatus kmss_tits_cone(const struct KmssGcm *gcm,
                               const int64_t *point,
                               uintptr_t cap,
                               enum KmssCone *out_verdict,
                               char **out_json);

/**
 * JSON report for the twisted unipotent element of `SL_{n+1}(R[t,t^-1])`:
 * the matrix, its characteristic polynomial and the diagonalizability verdict.
 *
 * # Safety
 * `out_json` must be writable.
 */
enum KmssStatus kmss_example_hole_json(uintptr_t n, char **out_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* KMSS_H */
