#ifndef PAULI_FWHT_H
#define PAULI_FWHT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum PfwhtStatus {
  PFWHT_STATUS_OK = 0,
  PFWHT_STATUS_NULL_POINTER = 1,
  /**
   * Length is not `4^n`.
   */
  PFWHT_STATUS_INVALID_LENGTH = 2,
  PFWHT_STATUS_TOO_MANY_QUBITS = 3,
  PFWHT_STATUS_INDEX_OUT_OF_RANGE = 4,
  /**
   * Label buffer shorter than `qubits + 1` bytes.
   */
  PFWHT_STATUS_BUFFER_TOO_SMALL = 5,
  /**
   * Threshold is negative or NaN.
   */
  PFWHT_STATUS_INVALID_THRESHOLD = 6,
  PFWHT_STATUS_PANIC = 255,
} PfwhtStatus;

/**
 * Sparse decomposition owned by the library. Free with [`pfwht_terms_free`].
 */
typedef struct PfwhtTerms PfwhtTerms;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *pfwht_version(void);

/**
 * Static NUL-terminated description of `status`.
 */
const char *pfwht_status_message(enum PfwhtStatus status);

/**
 * Number of qubits for a buffer of `len` complex entries, or -1 if `len` is
 * not a supported power of 4.
 */
int32_t pfwht_qubits_for_len(size_t len);

/**
 * Replaces the matrix in `data` with its Pauli coefficients: entry `(r, s)`
 * becomes the weight of the string with X-bits `r` and Z-bits `s`.
 *
 * # Safety
 *
 * `data` must point to `2 * len` writable doubles, aligned for `double`.
 */
enum PfwhtStatus pfwht_decompose(double *data, size_t len);

/**
 * Inverse of [`pfwht_decompose`].
 *
 * # Safety
 *
 * Same contract as [`pfwht_decompose`].
 */
enum PfwhtStatus pfwht_reconstruct(double *data, size_t len);

/**
 * Decomposes a copy of `data` and keeps the terms with `|coeff| > threshold`,
 * ordered by `(r, s)`. The input buffer is not modified. On success `*out`
 * owns a new handle.
 *
 * # Safety
 *
 * `data` must point to `2 * len` readable doubles and `out` must be a valid
 * place to store a pointer.
 */
enum PfwhtStatus pfwht_terms_new(const double *data,
                                 size_t len,
                                 double threshold,
                                 struct PfwhtTerms **out);

/**
 * Number of terms held by `terms`; 0 for a null handle.
 *
 * # Safety
 *
 * `terms` must be null or a live handle from [`pfwht_terms_new`].
 */
size_t pfwht_terms_len(const struct PfwhtTerms *terms);

/**
 * Qubit count of the decomposed matrix; 0 for a null handle.
 *
 * # Safety
 *
 * `terms` must be null or a live handle from [`pfwht_terms_new`].
 */
size_t pfwht_terms_qubits(const struct PfwhtTerms *terms);

/**
 * Reads term `index`. The label is written NUL-terminated into `label`,
 * which needs room for `qubits + 1` bytes. `label` and any of the output
 * pointers may be null to skip that field.
 *
 * # Safety
 *
 * `terms` must be a live handle; non-null outputs must be writable, and
 * `label` must have `label_cap` writable bytes.
 */
enum PfwhtStatus pfwht_terms_get(const struct PfwhtTerms *terms,
                                 size_t index,
                                 char *label,
                                 size_t label_cap,
                                 size_t *r,
                                 size_t *s,
                                 double *re,
                                 double *im);

/**
 * Releases a handle. Null is a no-op.
 *
 * # Safety
 *
 * `terms` must be null or a handle from [`pfwht_terms_new`] not yet freed.
 */
void pfwht_terms_free(struct PfwhtTerms *terms);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PAULI_FWHT_H */
