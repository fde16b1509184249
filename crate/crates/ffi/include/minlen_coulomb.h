#ifndef MINLEN_COULOMB_H
#define MINLEN_COULOMB_H

/* Generated by cbindgen from crates/ffi. Do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MlcMethod {
  MLC_METHOD_CLOSED = 0,
  MLC_METHOD_ROOT = 1,
  MLC_METHOD_SERIES = 2,
  MLC_METHOD_WKB = 3,
} MlcMethod;

/**
 * Result code of every call.
 */
typedef enum MlcStatus {
  MLC_STATUS_OK = 0,
  MLC_STATUS_NULL_POINTER = 1,
  MLC_STATUS_DOMAIN = 2,
  MLC_STATUS_NO_FINITE_SOLUTION = 3,
  MLC_STATUS_SINGULAR_REGIME = 4,
  MLC_STATUS_PARAMS_MISMATCH = 5,
  MLC_STATUS_QUADRATURE = 6,
  MLC_STATUS_BRACKET_NOT_FOUND = 7,
  MLC_STATUS_SINGULARITY = 8,
  MLC_STATUS_PANIC = 99,
} MlcStatus;

/**
 * Opaque eigenfunction handle.
 */
typedef struct MlcWavefunction MlcWavefunction;

typedef struct MlcQuadSpec {
  double abs_tol;
  double rel_tol;
  size_t max_subdivisions;
} MlcQuadSpec;

typedef struct MlcBoundState {
  uint32_t n;
  double epsilon;
  double energy;
  enum MlcMethod method;
} MlcBoundState;

typedef struct MlcRegime {
  double epsilon;
  double eps_beta;
  double one_minus_eps_beta;
  double alpha_sqrt_beta;
  double bound;
  bool flagged;
} MlcRegime;

typedef struct MlcComplex {
  double re;
  double im;
} MlcComplex;

typedef struct MlcIntegral {
  struct MlcComplex value;
  double error_estimate;
  bool converged;
  size_t evaluations;
} MlcIntegral;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * ABI version, `major * 10000 + minor * 100 + patch`.
 */
uint32_t mlc_version(void);

/**
 * Message for the last failed call on this thread, or null.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *mlc_last_error_message(void);

struct MlcQuadSpec mlc_quad_spec_default(void);

/**
 * `q(eps) = alpha / (2 (sqrt(eps) + sqrt(beta) eps))`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum MlcStatus mlc_quantization_value(double alpha, double beta, double epsilon, double *out);

/**
 * # Safety
 * `out` must be null or valid for writes.
 */
enum MlcStatus mlc_energy_closed_form(double alpha,
                                      double beta,
                                      double delta,
                                      uint32_t n,
                                      struct MlcBoundState *out);

/**
 * # Safety
 * `out` must be null or valid for writes.
 */
enum MlcStatus mlc_energy_root_find(double alpha,
                                    double beta,
                                    double delta,
                                    uint32_t n,
                                    double tol,
                                    struct MlcBoundState *out);

/**
 * Level from the Bohr-Sommerfeld condition.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum MlcStatus mlc_energy_wkb(double alpha,
                              double beta,
                              double delta,
                              uint32_t n,
                              double tol,
                              struct MlcBoundState *out);

/**
 * Small-`beta` series at effective index `nu`, `order` in 0..=2.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum MlcStatus mlc_energy_series(double alpha, double beta, double nu, uint32_t order, double *out);

/**
 * # Safety
 * `out_delta` and `out_n` must be null or valid for writes.
 */
enum MlcStatus mlc_family_from_reference(double alpha,
                                         double beta,
                                         double epsilon0,
                                         double *out_delta,
                                         uint32_t *out_n);

/**
 * # Safety
 * `out` must be null or valid for writes.
 */
enum MlcStatus mlc_validate_regime(double alpha,
                                   double beta,
                                   double delta,
                                   uint32_t n,
                                   struct MlcRegime *out);

/**
 * # Safety
 * `out` must be null or valid for writes.
 */
enum MlcStatus mlc_normalization_constant(double alpha, double beta, double epsilon, double *out);

/**
 * # Safety
 * `out` must be null or valid for writes.
 */
enum MlcStatus mlc_action_integral_closed(double alpha, double beta, double epsilon, double *out);

/**
 * # Safety
 * `spec` must be null (defaults) or valid; `out` null or valid for writes.
 */
enum MlcStatus mlc_action_integral_numeric(double alpha,
                                           double beta,
                                           double epsilon,
                                           const struct MlcQuadSpec *spec,
                                           double *out);

/**
 * Creates an eigenfunction with binding energy `epsilon`.
 *
 * # Safety
 * `out` must be null or valid for writes. The handle written to `*out`
 * must be released with [`mlc_wavefunction_free`].
 */
enum MlcStatus mlc_wavefunction_new(double alpha,
                                    double beta,
                                    double epsilon,
                                    struct MlcWavefunction **out);

/**
 * Creates the eigenfunction of level `n` in the family `delta`.
 *
 * # Safety
 * As for [`mlc_wavefunction_new`].
 */
enum MlcStatus mlc_wavefunction_for_level(double alpha,
                                          double beta,
                                          double delta,
                                          uint32_t n,
                                          struct MlcWavefunction **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `wf` must be null or a handle from this library that was not freed yet.
 */
void mlc_wavefunction_free(struct MlcWavefunction *wf);

/**
 * # Safety
 * `wf` must be a live handle; `out` null or valid for writes.
 */
enum MlcStatus mlc_wavefunction_epsilon(const struct MlcWavefunction *wf, double *out);

/**
 * # Safety
 * `wf` must be a live handle; `out` null or valid for writes.
 */
enum MlcStatus mlc_wavefunction_norm_const(const struct MlcWavefunction *wf, double *out);

/**
 * # Safety
 * `wf` must be a live handle; `out` null or valid for writes.
 */
enum MlcStatus mlc_wavefunction_evaluate(const struct MlcWavefunction *wf,
                                         double p,
                                         struct MlcComplex *out);

/**
 * # Safety
 * `wf` must be a live handle; `out` null or valid for writes.
 */
enum MlcStatus mlc_wavefunction_phase(const struct MlcWavefunction *wf, double p, double *out);

/**
 * # Safety
 * `wf` must be a live handle; `out` null or valid for writes.
 */
enum MlcStatus mlc_wavefunction_derivative(const struct MlcWavefunction *wf,
                                           double p,
                                           struct MlcComplex *out);

/**
 * # Safety
 * `wf` must be a live handle; `out` null or valid for writes.
 */
enum MlcStatus mlc_wavefunction_ode_residual(const struct MlcWavefunction *wf,
                                             double p,
                                             struct MlcComplex *out);

/**
 * # Safety
 * `wf` must be a live handle; `out` null or valid for writes.
 */
enum MlcStatus mlc_wavefunction_boundary_constant(const struct MlcWavefunction *wf,
                                                  struct MlcComplex *out);

/**
 * `(1/X) psi (p)` including the boundary constant.
 *
 * # Safety
 * `wf` must be a live handle; `spec` null or valid; `out` null or valid
 * for writes.
 */
enum MlcStatus mlc_wavefunction_inverse_x(const struct MlcWavefunction *wf,
                                          double p,
                                          const struct MlcQuadSpec *spec,
                                          struct MlcComplex *out);

/**
 * `<a|b>` with the deformed measure.
 *
 * # Safety
 * `a`, `b` must be live handles; `spec` null or valid; `out` null or
 * valid for writes.
 */
enum MlcStatus mlc_inner_product(const struct MlcWavefunction *a,
                                 const struct MlcWavefunction *b,
                                 const struct MlcQuadSpec *spec,
                                 struct MlcIntegral *out);

/**
 * # Safety
 * `wf` must be a live handle; `spec` null or valid; `out` null or valid
 * for writes.
 */
enum MlcStatus mlc_measure_integral(const struct MlcWavefunction *wf,
                                    const struct MlcQuadSpec *spec,
                                    struct MlcIntegral *out);

/**
 * `<(1/X) a | b> - <a | (1/X) b>`.
 *
 * # Safety
 * `a`, `b` must be live handles; `spec` null or valid; `out` null or
 * valid for writes.
 */
enum MlcStatus mlc_hermiticity_defect(const struct MlcWavefunction *a,
                                      const struct MlcWavefunction *b,
                                      const struct MlcQuadSpec *spec,
                                      struct MlcIntegral *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MINLEN_COULOMB_H */
