#ifndef QND_H
#define QND_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum QndStatus {
  QND_STATUS_OK = 0,
  QND_STATUS_NULL_POINTER = 1,
  QND_STATUS_INVALID_ARGUMENT = 2,
  QND_STATUS_SINGULAR = 3,
  QND_STATUS_NOT_WELL_POSED = 4,
  QND_STATUS_UTF8 = 5,
  QND_STATUS_PANIC = 6,
} QndStatus;

/**
 * A lattice operator. Opaque.
 */
typedef struct QndOperator QndOperator;

typedef struct QndLorentzClass {
  /**
   * Positive determinant.
   */
  bool proper;
  double determinant;
  double metric_error;
} QndLorentzClass;

typedef struct QndComplex {
  double re;
  double im;
} QndComplex;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *qnd_version(void);

/**
 * Message of the most recent failure on this thread. The pointer stays
 * valid until the next failing call on the same thread.
 */
const char *qnd_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void qnd_string_free(char *s);

/**
 * Translation generator `p̃_μ`, `mu` in 1..=4.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QndStatus qnd_operator_translation(uint32_t mu, struct QndOperator **out);

/**
 * Coordinate operator `x^μ`, `mu` in 1..=4.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QndStatus qnd_operator_coordinate(uint32_t mu, struct QndOperator **out);

/**
 * Lorentz generator `l̃_{μλ}`, `mu != lam`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QndStatus qnd_operator_lorentz(uint32_t mu, uint32_t lam, struct QndOperator **out);

/**
 * Scalar multiple of the identity, `num / den`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum QndStatus qnd_operator_scalar(int64_t num, int64_t den, struct QndOperator **out);

/**
 * `[a, b] = ab − ba` as a new handle.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be valid for writes.
 */
enum QndStatus qnd_operator_commutator(const struct QndOperator *a,
                                       const struct QndOperator *b,
                                       struct QndOperator **out);

/**
 * Composition `ab` as a new handle.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be valid for writes.
 */
enum QndStatus qnd_operator_compose(const struct QndOperator *a,
                                    const struct QndOperator *b,
                                    struct QndOperator **out);

/**
 * Sum `a + b` as a new handle.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be valid for writes.
 */
enum QndStatus qnd_operator_add(const struct QndOperator *a,
                                const struct QndOperator *b,
                                struct QndOperator **out);

/**
 * Exact operator equality on all of ℕ⁴.
 *
 * # Safety
 * `a` and `b` must be live handles; `out` must be valid for writes.
 */
enum QndStatus qnd_operator_equal(const struct QndOperator *a,
                                  const struct QndOperator *b,
                                  bool *out);

/**
 * Human-readable form; free with [`qnd_string_free`].
 *
 * # Safety
 * `a` must be a live handle; `out` must be valid for writes.
 */
enum QndStatus qnd_operator_to_string(const struct QndOperator *a, char **out);

/**
 * # Safety
 * `a` must be null or a handle from this library that has not been freed.
 */
void qnd_operator_free(struct QndOperator *a);

/**
 * Runs a named suite (`ccr`, `vacuum`, `dipole`, `quadrupole`,
 * `invariants`, `exchange`, `toy`, `s4`, `all`) and writes its JSON report.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out_json` and `out_passed` must
 * be valid for writes.
 */
enum QndStatus qnd_run_suite(const char *name, uint64_t seed, char **out_json, bool *out_passed);

/**
 * Evaluates the path invariant `N(n)` on a net given as JSON
 * `{"num_nodes": k, "arrows": [[tail, head], ...]}` and writes the report.
 *
 * # Safety
 * `net_json` must be a NUL-terminated string; `out_json` and `out_passed`
 * must be valid for writes.
 */
enum QndStatus qnd_net_invariants(const char *net_json,
                                  uint32_t n,
                                  char **out_json,
                                  bool *out_passed);

/**
 * Lorentz class of the S(4) permutation with 1-based `images[0..4]`.
 *
 * # Safety
 * `images` must point to 4 readable bytes; `out` must be valid for writes.
 */
enum QndStatus qnd_s4_classify(const uint8_t *images, struct QndLorentzClass *out);

/**
 * Remote (propagator chain) and local (network contraction) amplitudes of
 * the toy model. `potential` is `free` or `harmonic`; the source and sink
 * are drawn from `seed` exactly as the `qnd toy` command does.
 *
 * # Safety
 * `potential` must be a NUL-terminated string; `out_remote` and
 * `out_local` must be valid for writes.
 */
enum QndStatus qnd_toy_amplitudes(uint32_t dim,
                                  uint32_t steps,
                                  const char *potential,
                                  double tav,
                                  uint64_t seed,
                                  struct QndComplex *out_remote,
                                  struct QndComplex *out_local);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QND_H */
