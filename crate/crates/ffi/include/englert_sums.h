#ifndef ENGLERT_SUMS_H
#define ENGLERT_SUMS_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define ES_OK 0

#define ES_E_NULL 1

#define ES_E_UTF8 2

#define ES_E_BUFFER 3

#define ES_E_PANIC 4

#define ES_E_INDEX 5

#define ES_E_DOMAIN 10

#define ES_E_SINGULAR 11

#define ES_E_UNSUPPORTED_ORDER 12

#define ES_E_CAPACITY 13

#define ES_E_TOLERANCE 14

#define ES_E_INTERNAL 15

#define ES_E_UNKNOWN_FAMILY 16

#define ES_PATH_POLYNOMIAL 0

#define ES_PATH_ELEMENTARY 1

#define ES_PATH_POLYLOG 2

#define ES_PATH_ORACLE 3

/**
 * An exact row of cosine-polynomial coefficients.
 */
typedef struct EsCoeffTable EsCoeffTable;

/**
 * A series family at a fixed order.
 */
typedef struct EsFamily EsFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a family code such as `"tbCp"` at order `n`.
 *
 * # Safety
 * `code` must be a NUL-terminated string; `out` must be valid for writes.
 */
int32_t es_family_new(const char *code, uint32_t n, struct EsFamily **out);

/**
 * # Safety
 * `f` must come from `es_family_new` and not be used afterwards. Null is ignored.
 */
void es_family_free(struct EsFamily *f);

/**
 * Denominator power of the family.
 *
 * # Safety
 * `f` must be a live handle; `out` valid for writes.
 */
int32_t es_family_power(const struct EsFamily *f, uint32_t *out);

/**
 * Closed-form value at `z`. `error_bound` and `path` may be null.
 *
 * # Safety
 * `f` must be a live handle; non-null out pointers must be valid for writes.
 */
int32_t es_eval(const struct EsFamily *f,
                double z,
                double *value,
                double *error_bound,
                int32_t *path);

/**
 * Value at `z` through the interrelation with another family.
 *
 * # Safety
 * As for `es_eval`.
 */
int32_t es_eval_via_relation(const struct EsFamily *f,
                             double z,
                             double *value,
                             double *error_bound,
                             int32_t *path);

/**
 * Direct summation of the series. `terms_used` and `tail_bound` may be null.
 *
 * # Safety
 * `f` must be a live handle; non-null out pointers must be valid for writes.
 */
int32_t es_oracle(const struct EsFamily *f,
                  double z,
                  double tol,
                  double *value,
                  uint64_t *terms_used,
                  double *tail_bound);

/**
 * `Li_a(e^(i theta))`.
 *
 * # Safety
 * `re` and `im` must be valid for writes.
 */
int32_t es_polylog(uint32_t a, double theta, double *re, double *im);

/**
 * Coefficients `c_0(n), ..., c_n(n)`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
int32_t es_coeffs_new(uint32_t n, struct EsCoeffTable **out);

/**
 * # Safety
 * `t` must come from `es_coeffs_new` and not be used afterwards. Null is ignored.
 */
void es_coeffs_free(struct EsCoeffTable *t);

/**
 * Number of coefficients in the table.
 *
 * # Safety
 * `t` must be a live handle.
 */
size_t es_coeffs_len(const struct EsCoeffTable *t);

/**
 * Order `n` the table was built for.
 *
 * # Safety
 * `t` must be a live handle.
 */
uint32_t es_coeffs_order(const struct EsCoeffTable *t);

/**
 * Coefficient `i` rounded to double.
 *
 * # Safety
 * `t` must be a live handle; `out` valid for writes.
 */
int32_t es_coeffs_get_f64(const struct EsCoeffTable *t, size_t i, double *out);

/**
 * Coefficient `i` as exact `"p/q"`, NUL-terminated. `needed` (may be null)
 * receives the buffer size required.
 *
 * # Safety
 * `t` must be a live handle; `buf` must hold `len` bytes.
 */
int32_t es_coeffs_get_string(const struct EsCoeffTable *t,
                             size_t i,
                             char *buf,
                             size_t len,
                             size_t *needed);

/**
 * Copies the calling thread's last error message into `buf`.
 *
 * # Safety
 * `buf` must hold `len` bytes; `needed` may be null.
 */
int32_t es_last_error(char *buf, size_t len, size_t *needed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ENGLERT_SUMS_H */
