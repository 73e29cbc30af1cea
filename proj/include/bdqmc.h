/*
 * Copyright 2026 the bdqmc authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C API of the bdqmc library: quasi-Monte Carlo integration of Gaussian
 * integrals over R^s with boundary-damping importance sampling, scrambled
 * base-2 digital nets, a Walsh-coefficient audit and a convergence
 * experiment runner.
 *
 * All functions return BDQMC_OK (0) on success or a nonzero error code;
 * bdqmc_last_error() describes the most recent failure on the calling
 * thread. Objects returned through out-parameters are owned by the caller
 * and released with the matching *_free function.
 */

#ifndef BDQMC_H
#define BDQMC_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define BDQMC_OK 0
#define BDQMC_ERR_RUNTIME 1  /* I/O or internal failure */
#define BDQMC_ERR_INVALID 2  /* invalid argument or configuration */
#define BDQMC_ERR_CAPACITY 3 /* request exceeds a documented capacity */

/* Message for the most recent error on this thread (empty string if none).
 * The pointer stays valid until the next failing call on the thread. */
const char *bdqmc_last_error(void);

/* ---- transport maps -------------------------------------------------- */

typedef struct bdqmc_transport bdqmc_transport;

/* Boundary-damping map: theta[s] in (0,1/2] per coordinate, bump
 * exponent p >= 1. */
int bdqmc_transport_create_damping(const double *theta, size_t s, double p,
                                   bdqmc_transport **out);
int bdqmc_transport_create_inversion(size_t s, bdqmc_transport **out);
int bdqmc_transport_create_mobius(size_t s, bdqmc_transport **out);
int bdqmc_transport_create_truncation(size_t s, double a,
                                      bdqmc_transport **out);
void bdqmc_transport_free(bdqmc_transport *t);

/* T_j(u) for zero-based coordinate j, u strictly inside (0,1) for the
 * unbounded variants. */
int bdqmc_transport_map(const bdqmc_transport *t, size_t j, double u,
                        double *out);
/* w_j(u) = T_j'(u) phi(T_j(u)) on [0,1]. */
int bdqmc_transport_weight(const bdqmc_transport *t, size_t j, double u,
                           double *out);

/* ---- digital nets ---------------------------------------------------- */

typedef struct bdqmc_dirs bdqmc_dirs;

/* Loads a direction-number table in the published "d s a m_i" column
 * format with one header line. */
int bdqmc_dirs_load(const char *path, bdqmc_dirs **out);
/* Loads the bundled table; path resolution: BDQMC_DATA_DIR environment
 * variable, then the build-time data directory. */
int bdqmc_dirs_default(bdqmc_dirs **out);
void bdqmc_dirs_free(bdqmc_dirs *d);
size_t bdqmc_dirs_max_dimension(const bdqmc_dirs *d);

/* Unscrambled Sobol' points: writes (1<<m)*s doubles, row-major. */
int bdqmc_sobol_points(const bdqmc_dirs *d, size_t s, unsigned m,
                       double *out);
/* One linearly scrambled + digitally shifted replicate of the same net;
 * pure function of (seed, replicate). Writes (1<<m)*s doubles. */
int bdqmc_scramble_points(const bdqmc_dirs *d, size_t s, unsigned m,
                          uint64_t seed, uint32_t replicate, double *out);
/* Exhaustive (t,m,s)-net membership test over n = 1<<m points. */
int bdqmc_check_net(const double *points, size_t s, unsigned m, unsigned t,
                    int *ok);
/* Smallest passing t (brute force; small m and s only). */
int bdqmc_min_t(const double *points, size_t s, unsigned m, unsigned *t_out);

/* ---- experiments ------------------------------------------------------ */

typedef struct bdqmc_config bdqmc_config;

int bdqmc_config_create(bdqmc_config **out);
/* JSON object mirroring the config field names (option, map_kind, s, M,
 * m_lo, m_hi, replicates, seed, theta0, theta_exponent, p,
 * truncation_rule, a_explicit, dirs_path, out_dir, threads). */
int bdqmc_config_from_json(const char *json_text, bdqmc_config **out);
void bdqmc_config_free(bdqmc_config *c);

int bdqmc_config_set_int(bdqmc_config *c, const char *field, long long v);
int bdqmc_config_set_real(bdqmc_config *c, const char *field, double v);
int bdqmc_config_set_string(bdqmc_config *c, const char *field,
                            const char *v);

typedef struct {
  int option;
  size_t s;
  double M;
  unsigned m;
  unsigned long long n;
  double rmse;
  double mean_estimate;
  unsigned replicates;
  unsigned long long seed;
  unsigned long long failures;
} bdqmc_result_row;

typedef struct bdqmc_results bdqmc_results;

/* Runs the configured sweep over m in [m_lo, m_hi]; deterministic given
 * the seed. */
int bdqmc_run_experiment(const bdqmc_config *c, const bdqmc_dirs *d,
                         bdqmc_results **out);
void bdqmc_results_free(bdqmc_results *r);
size_t bdqmc_results_count(const bdqmc_results *r);
int bdqmc_results_row(const bdqmc_results *r, size_t i,
                      bdqmc_result_row *out);
/* Concatenates src onto dst (for multi-option plots). */
int bdqmc_results_append(bdqmc_results *dst, const bdqmc_results *src);
int bdqmc_results_write_csv(const bdqmc_results *r, const char *path);
int bdqmc_results_write_svg(const bdqmc_results *r, const char *path);
int bdqmc_results_load_csv(const char *path, bdqmc_results **out);
/* OLS slope of log2(rmse) on m over [m_lo, m_hi]; needs >= 3 rows. */
int bdqmc_fit_slope(const bdqmc_results *r, unsigned m_lo, unsigned m_hi,
                    double *out);
/* Resolved parameters of a preset option, as text. Caller buffer. */
int bdqmc_describe_option(int option, double M, size_t s, char *buf,
                          size_t buflen);

/* ---- Walsh audit ------------------------------------------------------ */

/* Audits |w_theta-hat(k)| <= 4 min(theta, sup|I(wal_k)|) for every theta
 * and 1 <= k <= k_max. Writes the CSV report (columns theta, p, k, coeff,
 * bound, ratio) when out_csv is non-NULL; stores the largest observed
 * coeff/bound ratio in max_ratio when non-NULL. Fails with
 * BDQMC_ERR_RUNTIME if any coefficient violates its bound. */
int bdqmc_walsh_audit(const double *thetas, size_t n_thetas, double p,
                      uint32_t k_max, const char *out_csv,
                      double *max_ratio);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BDQMC_H */
