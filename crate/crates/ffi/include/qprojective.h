#ifndef QPROJECTIVE_H
#define QPROJECTIVE_H

/* Generated by cbindgen; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum QpStatus {
  QP_STATUS_OK = 0,
  QP_STATUS_NULL_POINTER = 1,
  QP_STATUS_INVALID_ARGUMENT = 2,
  QP_STATUS_OUT_OF_RANGE = 3,
  QP_STATUS_BUFFER_TOO_SMALL = 4,
  QP_STATUS_COMPUTATION = 5,
  QP_STATUS_PANIC = 6,
} QpStatus;

/**
 * Spectrum of D_N through a fixed level, held exactly.
 */
typedef struct QpSpectrum QpSpectrum;

/**
 * One spectral line evaluated at a real q.
 */
typedef struct QpLine {
  uint32_t degree;
  uint32_t level;
  /**
   * +1 or -1 for the two halves of a pair, 0 in the kernel.
   */
  int8_t sign;
  uint64_t multiplicity;
  double eigenvalue_sq;
  double eigenvalue;
} QpLine;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Static description of a status code.
 */
const char *qp_status_message(enum QpStatus status);

/**
 * Message for the last failure on this thread; valid until the next call on the same thread.
 */
const char *qp_last_error(void);

/**
 * Computes the spectrum for rank `ell`, charge `n` and pair levels `0..=m_max`.
 *
 * # Safety
 * `out` must be a valid pointer to writable storage for one handle pointer.
 */
enum QpStatus qp_spectrum_new(uint32_t ell, int64_t n, uint32_t m_max, struct QpSpectrum **out);

/**
 * Releases a spectrum handle; null is ignored.
 *
 * # Safety
 * `h` must come from `qp_spectrum_new` and not be used afterwards.
 */
void qp_spectrum_free(struct QpSpectrum *h);

/**
 * Number of lines in the spectrum.
 *
 * # Safety
 * `h` must be a live handle and `len` writable.
 */
enum QpStatus qp_spectrum_len(const struct QpSpectrum *h, size_t *len);

/**
 * Total multiplicity of the zero modes.
 *
 * # Safety
 * `h` must be a live handle and `dim` writable.
 */
enum QpStatus qp_spectrum_kernel_dim(const struct QpSpectrum *h, uint64_t *dim);

/**
 * Line `index` evaluated at `q` in (0, 1].
 *
 * # Safety
 * `h` must be a live handle and `line` writable.
 */
enum QpStatus qp_spectrum_line(const struct QpSpectrum *h,
                               size_t index,
                               double q,
                               struct QpLine *line);

/**
 * Highest weight of line `index` as "(n1,...,nl)".
 *
 * # Safety
 * `h` must be a live handle; `buf` must hold `cap` bytes; `needed` may be null.
 */
enum QpStatus qp_spectrum_weight(const struct QpSpectrum *h,
                                 size_t index,
                                 char *buf,
                                 size_t cap,
                                 size_t *needed);

/**
 * Exact D^2 value of line `index` as a canonical string in t = q^(1/r).
 *
 * # Safety
 * As for `qp_spectrum_weight`; `root_order` may be null.
 */
enum QpStatus qp_spectrum_symbolic(const struct QpSpectrum *h,
                                   size_t index,
                                   uint32_t *root_order,
                                   char *buf,
                                   size_t cap,
                                   size_t *needed);

/**
 * Casimir eigenvalue on the representation with highest weight `weight[0..len]`, at q.
 *
 * # Safety
 * `weight` must point to `len` values and `out` be writable.
 */
enum QpStatus qp_casimir(const uint32_t *weight, size_t len, double q, double *out);

/**
 * Dimension of the representation with highest weight `weight[0..len]`.
 *
 * # Safety
 * `weight` must point to `len` values and `out` be writable.
 */
enum QpStatus qp_weyl_dim(const uint32_t *weight, size_t len, uint64_t *out);

/**
 * Runs a verification suite ("scalar", "combinatorics", "grassmann", "uqsl", "spectra",
 * "sphere" or "all") up to rank `ell`, reporting the number of checks and of failures.
 *
 * # Safety
 * `suite` must be a NUL-terminated string; `total` and `failed` writable.
 */
enum QpStatus qp_verify(const char *suite, uint32_t ell, size_t *total, size_t *failed);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QPROJECTIVE_H */
