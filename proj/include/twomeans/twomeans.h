/*
 * C interface to the twomeans library: exact 2-means error for hyperplane
 * partitions of two touching unit spheres, its optimizer and certification
 * sweeps, the four-point line example, and the Monte Carlo Lloyd simulator.
 *
 * Every function returns a tm_status. On failure, tm_last_error() returns a
 * message for the calling thread that stays valid until its next call into
 * the library. Objects returned through opaque handles are owned by the
 * caller and released with the matching *_free function.
 *
 * Coordinates: centroid values named *_left are in the frame with sphere
 * centres at 0 and 2; *_rho values and all point clouds use centres -1, +1.
 */
#ifndef TWOMEANS_H
#define TWOMEANS_H

#include <stddef.h>
#include <stdint.h>

#if defined(TWOMEANS_BUILDING_LIBRARY)
#define TM_API __attribute__((visibility("default")))
#else
#define TM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tm_status {
  TM_OK = 0,
  TM_ERR_INVALID_ARGUMENT = 1,
  TM_ERR_EMPTY_CLUSTER = 2,
  TM_ERR_DEGENERATE_PARTITION = 3,
  TM_ERR_ENDPOINT = 4,
  TM_ERR_SINGULAR_PREFACTOR = 5,
  TM_ERR_NON_CONVERGENCE = 6,
  TM_ERR_COINCIDENT_CENTROIDS = 7,
  TM_ERR_INTERNAL = 99
} tm_status;

TM_API const char* tm_status_string(tm_status status);
TM_API const char* tm_last_error(void);
TM_API const char* tm_version(void);

/* ---- projected measure ------------------------------------------------- */

TM_API tm_status tm_normalization_constant(int n, double* out);
TM_API tm_status tm_mass_minus(int n, double a, double* out);
TM_API tm_status tm_first_moment_minus(int n, double a, double* out);
TM_API tm_status tm_first_moment_minus_quadrature(int n, double a, double* out);
/* At a = 2 returns TM_ERR_EMPTY_CLUSTER but still writes c_plus_left = 1. */
TM_API tm_status tm_centroids(int n, double a, double* c_minus_left, double* c_plus_left);
TM_API tm_status tm_mass_series(int n, double a, double* out);
TM_API tm_status tm_mass_lower_bound_check(int n, double a, int* holds);
TM_API tm_status tm_mass_dimension_monotonicity_check(double a, const int* n_grid,
                                                      size_t grid_len, int* holds);

/* ---- mean-squared error ------------------------------------------------ */

typedef struct tm_mse_report {
  int n;
  double a;
  double e_minus;
  double e_pm;
  double e_plus;
  double e_total;
  int has_derivative;
  double derivative;
  int has_bracket_factor;
  double bracket_factor;
  double m_minus;
  double m_plus;
  int has_c_minus;
  double c_minus_left;
  double c_plus_left;
  double c_minus_rho;
  double c_plus_rho;
} tm_mse_report;

TM_API tm_status tm_mse_evaluate(int n, double a, tm_mse_report* out);
TM_API tm_status tm_mse_components(int n, double a, double* e_minus, double* e_pm,
                                   double* e_plus);
TM_API tm_status tm_mse_total(int n, double a, double* out);
/* TM_ERR_ENDPOINT at a in {0,2} writes 0 to *out; TM_ERR_SINGULAR_PREFACTOR
 * (n = 2, a <= 1e-9) leaves *out untouched. */
TM_API tm_status tm_mse_derivative(int n, double a, double* out);
TM_API tm_status tm_derivative_prefactor(int n, double a, double* out);
TM_API tm_status tm_bracket_factor(int n, double a, double* out);
TM_API tm_status tm_mse_closed_form_n2(double a, double* out);

/* ---- optimizer --------------------------------------------------------- */

typedef enum tm_method {
  TM_METHOD_GOLDEN_SECTION = 0,
  TM_METHOD_DERIVATIVE_BISECTION = 1,
  TM_METHOD_GRID_REFINE = 2
} tm_method;

typedef struct tm_optimization_result {
  int n;
  double a_star;
  double e_star;
  tm_method method;
  int evaluations;
  double bracket_lo;
  double bracket_hi;
} tm_optimization_result;

TM_API const char* tm_method_name(tm_method method);
TM_API tm_status tm_minimize_cutoff(int n, double tol, tm_method method,
                                    tm_optimization_result* out);

typedef struct tm_certification tm_certification;

TM_API tm_status tm_certify_monotonicity(int n, double grid_step, tm_certification** out);
TM_API void tm_certification_free(tm_certification* cert);
TM_API int tm_certification_passed(const tm_certification* cert);
TM_API size_t tm_certification_points(const tm_certification* cert);
TM_API size_t tm_certification_failure_count(const tm_certification* cert);
TM_API double tm_certification_failure_at(const tm_certification* cert, size_t i);

/* ---- four points on a line --------------------------------------------- */

typedef enum tm_partition_kind {
  TM_PARTITION_SYMMETRIC = 0,
  TM_PARTITION_CANNIBAL = 1,
  TM_PARTITION_OTHER = 2
} tm_partition_kind;

typedef struct tm_discrete_partition {
  double points[4];
  int labels[4]; /* 1 or 2 */
  double mse;
  double means[2];
  tm_partition_kind kind;
} tm_discrete_partition;

/* Writes up to capacity optimal partitions; *count receives the total. */
TM_API tm_status tm_discrete_enumerate_optimal(double epsilon, tm_discrete_partition* out,
                                               size_t capacity, size_t* count);
TM_API tm_status tm_discrete_cannibal_mse(double epsilon, double* out);
TM_API tm_status tm_discrete_separation_threshold(double tol, double* out);

/* ---- Monte Carlo ------------------------------------------------------- */

typedef struct tm_cloud tm_cloud;

TM_API tm_status tm_sample_spheres(int n, size_t count, uint64_t seed, tm_cloud** out);
TM_API void tm_cloud_free(tm_cloud* cloud);
TM_API int tm_cloud_dimension(const tm_cloud* cloud);
TM_API size_t tm_cloud_size(const tm_cloud* cloud);
TM_API uint64_t tm_cloud_seed(const tm_cloud* cloud);
/* Copies the n coordinates of point i into out. */
TM_API tm_status tm_cloud_point(const tm_cloud* cloud, size_t i, double* out);
TM_API tm_status tm_cloud_source(const tm_cloud* cloud, size_t i, int* source);
/* labels: 0 = cluster 1, 1 = cluster 2; length tm_cloud_size(). */
TM_API tm_status tm_axis_split(const tm_cloud* cloud, int axis, double threshold,
                               uint8_t* labels);
TM_API tm_status tm_empirical_mse(const tm_cloud* cloud, const uint8_t* labels, double* mse,
                                  double* std_error);
TM_API tm_status tm_voronoi_reassign(const tm_cloud* cloud, const double* c1, const double* c2,
                                     uint8_t* labels);

typedef enum tm_lloyd_init {
  TM_INIT_RANDOM_POINTS = 0,
  TM_INIT_ANTIPODAL = 1,
  TM_INIT_GIVEN = 2
} tm_lloyd_init;

typedef struct tm_lloyd_options {
  tm_lloyd_init init;
  int max_iter;
  double move_tol;
  uint64_t init_seed;
  const double* given_c1; /* n values, TM_INIT_GIVEN only */
  const double* given_c2;
  double axis_angle_threshold;
} tm_lloyd_options;

typedef struct tm_lloyd_run tm_lloyd_run;

TM_API void tm_lloyd_options_default(tm_lloyd_options* options);
TM_API tm_status tm_lloyd(const tm_cloud* cloud, const tm_lloyd_options* options,
                          tm_lloyd_run** out);
TM_API void tm_lloyd_run_free(tm_lloyd_run* run);
TM_API int tm_lloyd_iterations(const tm_lloyd_run* run);
TM_API int tm_lloyd_converged(const tm_lloyd_run* run);
TM_API size_t tm_lloyd_trace_length(const tm_lloyd_run* run);
TM_API double tm_lloyd_trace_at(const tm_lloyd_run* run, size_t i);
TM_API double tm_lloyd_final_mse(const tm_lloyd_run* run);
/* which: 0 = cluster 1, 1 = cluster 2; copies n coordinates. */
TM_API tm_status tm_lloyd_centroid(const tm_lloyd_run* run, int which, double* out);
TM_API tm_status tm_lloyd_labels(const tm_lloyd_run* run, uint8_t* labels, size_t len);
TM_API double tm_lloyd_axis_deviation_angle(const tm_lloyd_run* run);
TM_API int tm_lloyd_has_cutoff(const tm_lloyd_run* run);
TM_API double tm_lloyd_cutoff(const tm_lloyd_run* run);

#ifdef __cplusplus
}
#endif

#endif /* TWOMEANS_H */
