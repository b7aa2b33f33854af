#ifndef EXOTIC_WALKS_H
#define EXOTIC_WALKS_H

/* Generated by cbindgen from exotic-walks-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call.
typedef enum EwStatus {
  EW_OK = 0,
  EW_INVALID_PARAMETER = 1,
  EW_BUDGET_EXCEEDED = 2,
  EW_CAPACITY_EXCEEDED = 3,
  EW_INVARIANT_VIOLATION = 4,
  EW_NULL_POINTER = 5,
  EW_BUFFER_TOO_SMALL = 6,
  EW_INVALID_UTF8 = 7,
  EW_PANIC = 8,
} EwStatus;

// Opaque handle to a λ-profile.
typedef struct EwProfile EwProfile;

// Opaque handle to a quasi-isometry configuration.
typedef struct EwQiConfig EwQiConfig;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies the description of the most recent failure on this thread into
// `buf` (NUL-terminated).
//
// # Safety
// `buf` must point to at least `buf_len` writable bytes.
enum EwStatus ew_last_error_message(char *buf, size_t buf_len);

// Library version as a NUL-terminated string.
//
// # Safety
// `buf` must point to at least `buf_len` writable bytes.
enum EwStatus ew_version(char *buf, size_t buf_len);

// Constant profile λ_j ≡ lambda (1/4 is the simple random walk).
//
// # Safety
// `out` must be a valid pointer; the returned handle must be released with
// [`ew_profile_free`].
enum EwStatus ew_profile_new_const(double lambda, struct EwProfile **out);

// Drift-oscillation profile with literal boundaries N_s = 2^(s²).
//
// # Safety
// As [`ew_profile_new_const`].
enum EwStatus ew_profile_new_no_drift_literal(double lambda, struct EwProfile **out);

// Drift-oscillation profile with scaled boundaries N_s = n0·base^s.
//
// # Safety
// As [`ew_profile_new_const`].
enum EwStatus ew_profile_new_no_drift_scaled(double lambda,
                                             uint64_t n0,
                                             uint64_t base,
                                             struct EwProfile **out);

// CLT-failure profile: λ inside the bands centered at N_s/2, 1/4 outside.
//
// # Safety
// As [`ew_profile_new_const`].
enum EwStatus ew_profile_new_no_clt(double lambda,
                                    uint64_t n1,
                                    double band_exponent,
                                    struct EwProfile **out);

// Releases a profile handle. Null is a no-op.
//
// # Safety
// `profile` must be null or a handle obtained from a profile constructor,
// not yet freed.
void ew_profile_free(struct EwProfile *profile);

// λ_j of the profile (j ≥ 1).
//
// # Safety
// `profile` must be a live handle; `out` a valid pointer.
enum EwStatus ew_profile_lambda_at(const struct EwProfile *profile, uint64_t j, double *out);

// E[X_n] for the profile's distance chain.
//
// # Safety
// `profile` must be a live handle; `out` a valid pointer.
enum EwStatus ew_expected_distance(const struct EwProfile *profile, uint64_t n, double *out);

// Writes P[X_n = j] for j = 0..=n into `out[0..=n]`; `out_len` must be at
// least n+1.
//
// # Safety
// `profile` must be a live handle; `out` must point to `out_len` doubles.
enum EwStatus ew_distribution_masses(const struct EwProfile *profile,
                                     uint64_t n,
                                     double *out,
                                     size_t out_len);

// Residual of the expectation recurrence between times n−k and n.
//
// # Safety
// `profile` must be a live handle; `out` a valid pointer.
enum EwStatus ew_lemma33_residual(const struct EwProfile *profile,
                                  uint64_t n,
                                  uint64_t k,
                                  double *out);

// Σ_{h=0}^{n_max} P[X_h = 0].
//
// # Safety
// `profile` must be a live handle; `out` a valid pointer.
enum EwStatus ew_return_mass_sum(const struct EwProfile *profile, uint64_t n_max, double *out);

// Probability that the up-biased walk hits 0 by time n_max from `start`.
//
// # Safety
// `out` must be a valid pointer.
enum EwStatus ew_hitting_zero_probability(uint64_t start,
                                          double up_prob,
                                          uint64_t n_max,
                                          double *out);

// Hoeffding bound e^{−2nδ²}.
//
// # Safety
// `out` must be a valid pointer.
enum EwStatus ew_chernoff_bound(uint64_t n, double mu, double delta, double *out);

// KS distance and CLT window mass of the normalized law at time n.
//
// # Safety
// `profile` must be a live handle; the out-pointers must be valid.
enum EwStatus ew_clt_diagnostics(const struct EwProfile *profile,
                                 uint64_t n,
                                 double ell,
                                 double sigma,
                                 double z,
                                 double *out_interval_mass,
                                 double *out_ks_distance);

// Creates a quasi-isometry configuration (block depth C ≥ 4, base ≥ 2).
//
// # Safety
// `out` must be a valid pointer; release with [`ew_qi_config_free`].
enum EwStatus ew_qi_config_new(uint32_t c, uint64_t x_set_base, struct EwQiConfig **out);

// Releases a configuration handle. Null is a no-op.
//
// # Safety
// `cfg` must be null or a handle from [`ew_qi_config_new`], not yet freed.
void ew_qi_config_free(struct EwQiConfig *cfg);

// D_X for block depth c, as an exact fraction.
//
// # Safety
// The out-pointers must be valid.
enum EwStatus ew_qi_dx(uint32_t c, int64_t *out_num, int64_t *out_den);

// Image of `word` under f, written into `out` as a NUL-terminated string.
//
// # Safety
// `cfg` must be a live handle; `word` a NUL-terminated string; `out` must
// point to `out_len` writable bytes.
enum EwStatus ew_qi_apply_f(const struct EwQiConfig *cfg,
                            const char *word,
                            char *out,
                            size_t out_len);

// Preimage of `word` under f.
//
// # Safety
// As [`ew_qi_apply_f`].
enum EwStatus ew_qi_invert_f(const struct EwQiConfig *cfg,
                             const char *word,
                             char *out,
                             size_t out_len);

// Exact maximum distortion ratio over all pairs of the ball.
//
// # Safety
// `cfg` must be a live handle; `out_max_ratio` a valid pointer.
enum EwStatus ew_qi_verify_ball(const struct EwQiConfig *cfg,
                                uint32_t ball_radius,
                                double *out_max_ratio);

// E[d(1, f(Z_n))] for the push-forward of the simple random walk.
//
// # Safety
// `cfg` must be a live handle; `out` a valid pointer.
enum EwStatus ew_pushforward_expected_distance(const struct EwQiConfig *cfg,
                                               uint64_t n,
                                               double *out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* EXOTIC_WALKS_H */
