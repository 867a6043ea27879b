#ifndef CLENT_H
#define CLENT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stddef.h>
#include <stdint.h>

/*
 Result codes. Zero is success.
 */
typedef enum ClentStatus {
  CLENT_STATUS_OK = 0,
  CLENT_STATUS_NULL_POINTER = 1,
  CLENT_STATUS_INVALID_INPUT = 2,
  CLENT_STATUS_INVALID_MODEL = 3,
  CLENT_STATUS_UNSTABLE_SYSTEM = 4,
  CLENT_STATUS_NOT_POSITIVE_DEFINITE = 5,
  CLENT_STATUS_CROSS_BLOCK_NOT_ZERO = 6,
  CLENT_STATUS_SUB_HEISENBERG = 7,
  CLENT_STATUS_NON_UNIFORM_SCALE = 8,
  CLENT_STATUS_BUFFER_TOO_SMALL = 9,
  CLENT_STATUS_NUMERICAL_FAILURE = 10,
  CLENT_STATUS_PANIC = 11,
} ClentStatus;

/*
 A phase-space covariance matrix in `(q..., p...)` ordering.
 */
typedef struct ClentCovariance ClentCovariance;

/*
 A Hamiltonian model.
 */
typedef struct ClentModel ClentModel;

/*
 Message for the most recent failure on this thread. Empty after a success.
 The pointer stays valid until the next call into this library on the same thread.
 */
const char *clent_last_error_message(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *clent_version(void);

/*
 Parses a model from its JSON description.
 */
enum ClentStatus clent_model_from_json(const char *json, struct ClentModel **model_out);

/*
 Two oscillators with `H = (p1² + p2²)/2 + (A q1² + B q2² + C q1 q2)/2`.
 */
enum ClentStatus clent_model_two_mode(double a, double b, double c, struct ClentModel **model_out);

/*
 Ring of `n` identical oscillators with on-site constant `k` and coupling `kappa`.
 */
enum ClentStatus clent_model_lattice(size_t n,
                                     double k,
                                     double kappa,
                                     struct ClentModel **model_out);

enum ClentStatus clent_model_n_modes(const struct ClentModel *model, size_t *n_out);

/*
 Releases a model. Null is ignored.
 */
void clent_model_free(struct ClentModel *model);

/*
 Angle-averaged covariance with every action variable equal to `action`.
 */
enum ClentStatus clent_covariance_classical(const struct ClentModel *model,
                                            double action,
                                            struct ClentCovariance **cov_out);

/*
 Ground-state covariance for the given `hbar`.
 */
enum ClentStatus clent_covariance_quantum(const struct ClentModel *model,
                                          double hbar,
                                          struct ClentCovariance **cov_out);

/*
 Restricts `cov` to the listed 0-based oscillators, in the given order.
 */
enum ClentStatus clent_covariance_reduce(const struct ClentCovariance *cov,
                                         const size_t *subsystem,
                                         size_t len,
                                         struct ClentCovariance **cov_out);

/*
 Number of oscillators; the matrix has order twice this.
 */
enum ClentStatus clent_covariance_n_modes(const struct ClentCovariance *cov, size_t *n_out);

/*
 Copies the `2n × 2n` entries row-major into `buf`, which must hold `len ≥ 4n²` values.
 */
enum ClentStatus clent_covariance_entries(const struct ClentCovariance *cov,
                                          double *buf,
                                          size_t len);

/*
 Releases a covariance matrix. Null is ignored.
 */
void clent_covariance_free(struct ClentCovariance *cov);

/*
 Rescaled symplectic eigenvalues, ascending; `buf` must hold `n` values.
 */
enum ClentStatus clent_sigma_tilde(const struct ClentCovariance *cov, double *buf, size_t len);

/*
 Purity and von Neumann entropy of the state described by `cov`.
 */
enum ClentStatus clent_measures(const struct ClentCovariance *cov,
                                double *purity_out,
                                double *von_neumann_out);

/*
 Generalized purity, Tsallis and Rényi entropies at `alpha`. At `alpha == 1`
 the purity is NaN and both entropies equal the von Neumann entropy.
 */
enum ClentStatus clent_alpha_measures(const struct ClentCovariance *cov,
                                      double alpha,
                                      double *mu_out,
                                      double *tsallis_out,
                                      double *renyi_out);

/*
 Logarithmic negativity (bits) and negativity between two disjoint groups of `cov`.
 */
enum ClentStatus clent_log_negativity(const struct ClentCovariance *cov,
                                      const size_t *group1,
                                      size_t len1,
                                      const size_t *group2,
                                      size_t len2,
                                      double *log_negativity_out,
                                      double *negativity_out);

#endif  /* CLENT_H */
