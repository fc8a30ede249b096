/* C interface to the Hadamard-space means library.
 *
 * Handles are opaque; every function that can fail returns an hm_status and
 * leaves a human-readable message in hm_last_error() (thread local). Points
 * cross the boundary as flat double buffers of hm_space_point_size(space)
 * entries:
 *
 *   euclidean dim d   : d coordinates
 *   spd dim d         : d*d entries, row major, symmetric positive definite
 *   open book (k, d)  : [sheet (1-based, integral), t (>= 0), spine_0..spine_{d-1}]
 */
#ifndef HADAMARD_H
#define HADAMARD_H

#include <stdint.h>

#if defined(_WIN32)
#define HM_API __declspec(dllexport)
#else
#define HM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hm_status {
  HM_OK = 0,
  HM_ERR_INVALID_ARGUMENT = 1,
  HM_ERR_NUMERIC = 2,
  HM_ERR_CAPACITY = 3,
  HM_ERR_CONVERGENCE = 4,
  HM_ERR_IO = 5
} hm_status;

/* Message for the most recent failure on this thread; empty string if none. */
HM_API const char* hm_last_error(void);

/* ---- spaces ---- */

typedef struct hm_space hm_space;

HM_API hm_space* hm_space_euclidean(int dim);
HM_API hm_space* hm_space_spd(int dim);
HM_API hm_space* hm_space_open_book(int sheets, int spine_dim);
HM_API void hm_space_free(hm_space* space);

/* Number of doubles encoding one point; 0 on null input. */
HM_API int hm_space_point_size(const hm_space* space);

HM_API hm_status hm_space_distance(const hm_space* space, const double* p, const double* q,
                                   double* out);
/* t in [0, 1]; out may alias p or q. */
HM_API hm_status hm_space_interpolate(const hm_space* space, const double* p, const double* q,
                                      double t, double* out);

/* ---- point buffers ---- */

typedef struct hm_points hm_points;

HM_API hm_points* hm_points_new(const hm_space* space);
HM_API hm_status hm_points_push(hm_points* points, const double* coords);
HM_API int64_t hm_points_size(const hm_points* points);
HM_API hm_status hm_points_get(const hm_points* points, int64_t index, double* out);
HM_API void hm_points_free(hm_points* points);

/* ---- means ---- */

HM_API hm_status hm_mean_inductive(const hm_space* space, const hm_points* points, double* out);
HM_API hm_status hm_mean_hansen(const hm_space* space, const hm_points* points, double* out);
/* Hard cap of 8 points; tol is the tuple-diameter stopping tolerance. */
HM_API hm_status hm_mean_es_sahib(const hm_space* space, const hm_points* points, double tol,
                                  int max_rounds, double* out);
HM_API hm_status hm_mean_resampled(const hm_space* space, const hm_points* points, uint64_t seed,
                                   double* out);
/* weights may be NULL for the uniform mean; total_steps >= point count.
 * certificate (optional) receives 2 * diameter * sqrt(n / total_steps). */
HM_API hm_status hm_mean_lim_palfia(const hm_space* space, const hm_points* points,
                                    const double* weights, int64_t total_steps, double* out,
                                    double* certificate);
/* Exact barycenter where a closed form exists (flat space, commuting
 * matrices, open book); weights may be NULL for uniform. */
HM_API hm_status hm_frechet_oracle(const hm_space* space, const hm_points* points,
                                   const double* weights, double* out);

/* ---- geometry property suite ---- */

/* Worst scale-normalized violation over `cases` random triples, in the order
 * symmetry, identity, triangle, endpoint, speed, npc, midpoint
 * (out has room for 7 doubles). */
HM_API hm_status hm_check_space(const hm_space* space, int64_t cases, uint64_t seed,
                                double* out_violations);

/* ---- experiments ---- */

typedef struct hm_config hm_config;
typedef struct hm_result hm_result;

HM_API hm_config* hm_config_new(void);
HM_API void hm_config_free(hm_config* config);
/* Keys: experiment, n-max, epsilon, seed, replications, estimators,
 * lp-exponent, trace-stride (same schema as the config file). */
HM_API hm_status hm_config_set(hm_config* config, const char* key, const char* value);
HM_API hm_status hm_config_load(hm_config* config, const char* path);
HM_API hm_status hm_config_save(const hm_config* config, const char* path);

HM_API hm_status hm_experiment_run(const hm_config* config, hm_result** out);
HM_API int64_t hm_result_rows(const hm_result* result);
/* Returned strings stay owned by the library and are valid for the process
 * lifetime. */
HM_API hm_status hm_result_row(const hm_result* result, int64_t index, const char** experiment,
                               const char** estimator, int64_t* replication, int64_t* n,
                               const char** metric, double* value);
HM_API hm_status hm_result_write_csv(const hm_result* result, const char* path);
HM_API hm_status hm_result_write_svg(const hm_result* result, const char* dir);
HM_API hm_status hm_result_write_config_echo(const hm_result* result, const char* path);
HM_API void hm_result_free(hm_result* result);

/* ---- quadratic-mean bound check ---- */

/* generator: "euclidean-hetero" or "spd-commuting-hetero". For each grid
 * entry writes the empirical mean of d(S_n, mu)^2, its 3 sigma half width,
 * the proven bound and a pass flag; all_pass (optional) is the conjunction. */
HM_API hm_status hm_bound_check(const char* generator, const int64_t* n_grid, int n_grid_len,
                                int replications, uint64_t seed, double* empirical,
                                double* half_width, double* bound, int* pass, int* all_pass);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HADAMARD_H */
