#ifndef HYPERWAVE_HYPERWAVE_H
#define HYPERWAVE_HYPERWAVE_H

#include <stddef.h>
#include <stdint.h>

#if defined(HYPERWAVE_BUILDING)
#define HW_API __attribute__((visibility("default")))
#else
#define HW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hw_status {
  HW_OK = 0,
  HW_ERR_DOMAIN = 1,
  HW_ERR_INVALID_POINT = 2,
  HW_ERR_POLE = 3,
  HW_ERR_ILL_CONDITIONED = 4,
  HW_ERR_ACCURACY = 5,
  HW_ERR_CONFIG = 6,
  HW_ERR_NULL_ARGUMENT = 7,
  HW_ERR_INTERNAL = 8
} hw_status;

typedef enum hw_route { HW_ROUTE_ODE = 0, HW_ROUTE_QUADRATURE = 1, HW_ROUTE_HYPERGEOMETRIC = 2, HW_ROUTE_AUTO = 3 } hw_route;

typedef enum hw_variance_method {
  HW_VARIANCE_EXACT_ANGULAR = 0,
  HW_VARIANCE_SANDWICH_LOWER = 1,
  HW_VARIANCE_SANDWICH_UPPER = 2
} hw_variance_method;

typedef enum hw_functional { HW_FUNCTIONAL_POLYSPECTRUM = 0, HW_FUNCTIONAL_EXCURSION = 1, HW_FUNCTIONAL_LERAY = 2 } hw_functional;

typedef enum hw_fit { HW_FIT_PURE_POWER = 0, HW_FIT_POWER_WITH_LOG = 1 } hw_fit;

/* Message of the last failed call on this thread ("" if none). */
HW_API const char* hw_last_error(void);
HW_API const char* hw_version(void);

/* Parallel-for supplied by the caller: must call task(i, task_ctx) once for every i < count and return when done.
   A NULL executor runs tasks sequentially. Results never depend on the executor. */
typedef void (*hw_task_fn)(size_t index, void* task_ctx);
typedef struct hw_executor {
  void (*run)(size_t count, hw_task_fn task, void* task_ctx, void* user);
  void* user;
} hw_executor;

typedef struct hw_params hw_params;
typedef struct hw_covtable hw_covtable;

HW_API hw_status hw_params_create(int n, double alpha, hw_params** out);
HW_API hw_status hw_params_from_lambda(int n, double lambda, hw_params** out);
HW_API void hw_params_destroy(hw_params* p);
HW_API hw_status hw_params_get(const hw_params* p, int* n, double* alpha, double* sigma, double* lambda);

HW_API hw_status hw_spherical_F(const hw_params* p, double r, hw_route route, double* value, double* error, int* degraded);
HW_API hw_status hw_asymptotic_tail(const hw_params* p, double r, double* main_term, double* error_bound);
HW_API hw_status hw_harish_chandra_c(const hw_params* p, double* re, double* im);
HW_API hw_status hw_spectral_density(const hw_params* p, double* out);
HW_API hw_status hw_bessel_approx(const hw_params* p, double r, double* out);
HW_API hw_status hw_berry_covariance(int n, double lambda, double s, double* out);
HW_API hw_status hw_ball_volume(int n, double R, double* out);
HW_API hw_status hw_distance(int n, const double* x, const double* y, double* out);

HW_API hw_status hw_covtable_create(const hw_params* p, double r_max, hw_covtable** out);
HW_API void hw_covtable_destroy(hw_covtable* t);
HW_API hw_status hw_covtable_eval(const hw_covtable* t, double r, double* out);

/* count uniform points of B_R, ambient coordinates (n + 1 per point) written row by row */
HW_API hw_status hw_sample_ball(int n, double R, size_t count, uint64_t seed, uint64_t stream, double* coords);
/* exact Gaussian draws on count points; values holds realizations * count entries */
HW_API hw_status hw_sample_field(const hw_params* p, const double* coords, size_t count, int realizations, uint64_t seed,
                                 const hw_executor* ex, double* values);

typedef struct hw_variance_result {
  double value;
  double value_per_qfact;
  double est_abs_error;
  int odd_q;
  int accuracy_flag;
} hw_variance_result;

HW_API hw_status hw_variance_Cq(const hw_params* p, double R, int q, hw_variance_method method, hw_variance_result* out);
HW_API hw_status hw_ball_fourier(const hw_params* p, double R, double* f_R, double* ratio, int* ratio_valid);
HW_API hw_status hw_contraction_mc(const hw_params* p, double R, int pexp, int qexp, long long samples, uint64_t seed,
                                   const hw_executor* ex, double* value, double* se);
HW_API hw_status hw_leray_second_moment(const hw_params* p, double R, double* out);
HW_API hw_status hw_euclid_variance(int n, double lambda, double R, int q, double* out);

/* per-realization estimates and spatial-noise variances (K entries each); param is q, t or eps */
HW_API hw_status hw_functional_mc(const hw_params* p, double R, hw_functional kind, double param, int M, int K,
                                  uint64_t seed, const hw_executor* ex, double* estimates, double* noise_var);

HW_API hw_status hw_wasserstein1_gaussian(const double* samples, size_t count, double var, double* out);

typedef struct hw_clt_report {
  double empirical_variance;
  double corrected_variance;
  double theoretical_variance;
  double w1;
  int no_clt_claim;
} hw_clt_report;

HW_API hw_status hw_clt_report_run(const hw_params* p, double R, int q, int M, int K, uint64_t seed, const hw_executor* ex,
                                   hw_clt_report* out);
HW_API hw_status hw_local_limit(const double* lambdas, size_t count, int n, double extent, int grid_points,
                                double* sup_dev, int* extent_warning);

typedef struct hw_scaling_fit {
  double slope;
  double intercept;
  double max_rel_residual;
  double log_correction_ratio_drift;
} hw_scaling_fit;

HW_API hw_status hw_scaling_fit_run(const double* x, const double* y, size_t count, hw_fit hypothesis, double slope0,
                                    int use_slope0, hw_scaling_fit* out);

typedef void (*hw_criterion_fn)(int id, const char* name, int pass, const char* detail, double seconds, void* user);
/* ids == NULL runs all thirteen criteria; passed receives the number of passing criteria */
HW_API hw_status hw_reproduce(const char* profile, uint64_t seed, const int* ids, size_t id_count, const hw_executor* ex,
                              hw_criterion_fn on_result, void* user, int* passed);

#ifdef __cplusplus
}
#endif

#endif
