#include "twomeans/twomeans.h"

#include <algorithm>
#include <new>
#include <string>
#include <vector>

#include "twomeans/discrete_line.hpp"
#include "twomeans/empirical.hpp"
#include "twomeans/error.hpp"
#include "twomeans/mse_model.hpp"
#include "twomeans/optimizer.hpp"
#include "twomeans/projected_measure.hpp"

struct tm_certification {
  twomeans::optimizer::CertificationResult result;
};

struct tm_cloud {
  twomeans::empirical::SampleCloud cloud;
};

struct tm_lloyd_run {
  twomeans::empirical::LloydRun run;
};

namespace {

using namespace twomeans;

thread_local std::string last_error;

tm_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return TM_ERR_INVALID_ARGUMENT;
    case ErrorCode::empty_cluster: return TM_ERR_EMPTY_CLUSTER;
    case ErrorCode::degenerate_partition: return TM_ERR_DEGENERATE_PARTITION;
    case ErrorCode::endpoint: return TM_ERR_ENDPOINT;
    case ErrorCode::singular_prefactor: return TM_ERR_SINGULAR_PREFACTOR;
    case ErrorCode::non_convergence: return TM_ERR_NON_CONVERGENCE;
    case ErrorCode::coincident_centroids: return TM_ERR_COINCIDENT_CENTROIDS;
  }
  return TM_ERR_INTERNAL;
}

tm_status reject(const char* what) {
  last_error = what;
  return TM_ERR_INVALID_ARGUMENT;
}

// Runs body, translating exceptions into status codes.
template <class Body>
tm_status guarded(Body&& body) {
  last_error.clear();
  try {
    body();
    return TM_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TM_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TM_ERR_INTERNAL;
  }
}

template <class T>
tm_status scalar(double* out, T&& compute) {
  if (!out) return reject("null output pointer");
  return guarded([&] { *out = compute(); });
}

}  // namespace

extern "C" {

TM_API const char* tm_status_string(tm_status status) {
  switch (status) {
    case TM_OK: return "ok";
    case TM_ERR_INVALID_ARGUMENT: return "invalid argument";
    case TM_ERR_EMPTY_CLUSTER: return "empty cluster";
    case TM_ERR_DEGENERATE_PARTITION: return "degenerate partition";
    case TM_ERR_ENDPOINT: return "endpoint";
    case TM_ERR_SINGULAR_PREFACTOR: return "singular prefactor";
    case TM_ERR_NON_CONVERGENCE: return "non-convergence";
    case TM_ERR_COINCIDENT_CENTROIDS: return "coincident centroids";
    case TM_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

TM_API const char* tm_last_error(void) { return last_error.c_str(); }

TM_API const char* tm_version(void) { return "1.0.0"; }

TM_API tm_status tm_normalization_constant(int n, double* out) {
  return scalar(out, [&] { return projected_measure::normalization_constant(n); });
}

TM_API tm_status tm_mass_minus(int n, double a, double* out) {
  return scalar(out, [&] { return projected_measure::mass_minus(n, Cutoff{a}); });
}

TM_API tm_status tm_first_moment_minus(int n, double a, double* out) {
  return scalar(out, [&] {
    GeometryParams::validate(n);
    return projected_measure::first_moment_minus(n, Cutoff{a});
  });
}

TM_API tm_status tm_first_moment_minus_quadrature(int n, double a, double* out) {
  return scalar(out, [&] { return projected_measure::first_moment_minus_quadrature(n, Cutoff{a}); });
}

TM_API tm_status tm_centroids(int n, double a, double* c_minus_left, double* c_plus_left) {
  if (!c_minus_left || !c_plus_left) return reject("null output pointer");
  return guarded([&] {
    const auto c = projected_measure::centroids(n, Cutoff{a});
    *c_plus_left = c.c_plus();
    *c_minus_left = c.c_minus();
  });
}

TM_API tm_status tm_mass_series(int n, double a, double* out) {
  return scalar(out, [&] { return projected_measure::mass_series(n, Cutoff{a}); });
}

TM_API tm_status tm_mass_lower_bound_check(int n, double a, int* holds) {
  if (!holds) return reject("null output pointer");
  return guarded([&] { *holds = projected_measure::mass_lower_bound_check(n, Cutoff{a}); });
}

TM_API tm_status tm_mass_dimension_monotonicity_check(double a, const int* n_grid,
                                                      size_t grid_len, int* holds) {
  if (!holds || (!n_grid && grid_len > 0)) return reject("null pointer argument");
  return guarded([&] {
    *holds = projected_measure::mass_dimension_monotonicity_check(
        Cutoff{a}, std::span<const int>(n_grid, grid_len));
  });
}

TM_API tm_status tm_mse_evaluate(int n, double a, tm_mse_report* out) {
  if (!out) return reject("null output pointer");
  return guarded([&] {
    const auto r = mse_model::evaluate(n, Cutoff{a});
    tm_mse_report c{};
    c.n = r.n;
    c.a = r.a;
    c.e_minus = r.e_minus;
    c.e_pm = r.e_pm;
    c.e_plus = r.e_plus;
    c.e_total = r.e_total;
    c.has_derivative = r.derivative.has_value();
    c.derivative = r.derivative.value_or(0.0);
    c.has_bracket_factor = r.bracket_factor.has_value();
    c.bracket_factor = r.bracket_factor.value_or(0.0);
    c.m_minus = r.m_minus;
    c.m_plus = r.m_plus;
    c.has_c_minus = r.c_minus.has_value();
    c.c_minus_left = r.c_minus.value_or(0.0);
    c.c_plus_left = r.c_plus;
    c.c_minus_rho = GeometryParams::left_to_rho(c.c_minus_left);
    c.c_plus_rho = GeometryParams::left_to_rho(r.c_plus);
    *out = c;
  });
}

TM_API tm_status tm_mse_components(int n, double a, double* e_minus, double* e_pm,
                                   double* e_plus) {
  if (!e_minus || !e_pm || !e_plus) return reject("null output pointer");
  return guarded([&] {
    const auto c = mse_model::mse_components(n, Cutoff{a});
    *e_minus = c.e_minus;
    *e_pm = c.e_pm;
    *e_plus = c.e_plus;
  });
}

TM_API tm_status tm_mse_total(int n, double a, double* out) {
  return scalar(out, [&] { return mse_model::mse_total(n, Cutoff{a}); });
}

TM_API tm_status tm_mse_derivative(int n, double a, double* out) {
  const tm_status status = scalar(out, [&] { return mse_model::mse_derivative(n, Cutoff{a}); });
  if (status == TM_ERR_ENDPOINT) *out = 0.0;
  return status;
}

TM_API tm_status tm_derivative_prefactor(int n, double a, double* out) {
  return scalar(out, [&] { return mse_model::derivative_prefactor(n, Cutoff{a}); });
}

TM_API tm_status tm_bracket_factor(int n, double a, double* out) {
  return scalar(out, [&] { return mse_model::bracket_factor(n, Cutoff{a}); });
}

TM_API tm_status tm_mse_closed_form_n2(double a, double* out) {
  return scalar(out, [&] { return mse_model::mse_closed_form_n2(Cutoff{a}); });
}

TM_API const char* tm_method_name(tm_method method) {
  switch (method) {
    case TM_METHOD_GOLDEN_SECTION: return "golden_section";
    case TM_METHOD_DERIVATIVE_BISECTION: return "derivative_bisection";
    case TM_METHOD_GRID_REFINE: return "grid_refine";
  }
  return "unknown";
}

TM_API tm_status tm_minimize_cutoff(int n, double tol, tm_method method,
                                    tm_optimization_result* out) {
  if (!out) return reject("null output pointer");
  optimizer::Method m{};
  switch (method) {
    case TM_METHOD_GOLDEN_SECTION: m = optimizer::Method::golden_section; break;
    case TM_METHOD_DERIVATIVE_BISECTION: m = optimizer::Method::derivative_bisection; break;
    case TM_METHOD_GRID_REFINE: m = optimizer::Method::grid_refine; break;
    default: return reject("unknown method");
  }
  return guarded([&] {
    const auto r = optimizer::minimize_cutoff(n, tol, m);
    *out = {r.n, r.a_star, r.e_star, method, r.evaluations, r.bracket.first, r.bracket.second};
  });
}

TM_API tm_status tm_certify_monotonicity(int n, double grid_step, tm_certification** out) {
  if (!out) return reject("null output pointer");
  *out = nullptr;
  return guarded([&] {
    *out = new tm_certification{optimizer::certify_monotonicity(n, grid_step)};
  });
}

TM_API void tm_certification_free(tm_certification* cert) { delete cert; }

TM_API int tm_certification_passed(const tm_certification* cert) {
  return cert && cert->result.passed();
}

TM_API size_t tm_certification_points(const tm_certification* cert) {
  return cert ? cert->result.points : 0;
}

TM_API size_t tm_certification_failure_count(const tm_certification* cert) {
  return cert ? cert->result.failures.size() : 0;
}

TM_API double tm_certification_failure_at(const tm_certification* cert, size_t i) {
  return cert->result.failures.at(i);
}

TM_API tm_status tm_discrete_enumerate_optimal(double epsilon, tm_discrete_partition* out,
                                               size_t capacity, size_t* count) {
  if (!count || (!out && capacity > 0)) return reject("null pointer argument");
  return guarded([&] {
    const auto optimal = discrete_line::enumerate_optimal(epsilon);
    const discrete_line::FourPointConfig config(epsilon);
    *count = optimal.size();
    for (std::size_t i = 0; i < std::min(capacity, optimal.size()); ++i) {
      const auto& p = optimal[i];
      tm_discrete_partition c{};
      for (std::size_t k = 0; k < 4; ++k) {
        c.points[k] = config.points[k];
        c.labels[k] = p.labels[k];
      }
      c.mse = p.mse;
      c.means[0] = p.means[0];
      c.means[1] = p.means[1];
      c.kind = static_cast<tm_partition_kind>(p.kind);
      out[i] = c;
    }
  });
}

TM_API tm_status tm_discrete_cannibal_mse(double epsilon, double* out) {
  return scalar(out, [&] {
    const discrete_line::FourPointConfig config(epsilon);
    return discrete_line::cannibal_mse_formula(config.epsilon);
  });
}

TM_API tm_status tm_discrete_separation_threshold(double tol, double* out) {
  return scalar(out, [&] { return discrete_line::separation_threshold(tol); });
}

TM_API tm_status tm_sample_spheres(int n, size_t count, uint64_t seed, tm_cloud** out) {
  if (!out) return reject("null output pointer");
  *out = nullptr;
  return guarded([&] { *out = new tm_cloud{empirical::sample_spheres(n, count, seed)}; });
}

TM_API void tm_cloud_free(tm_cloud* cloud) { delete cloud; }

TM_API int tm_cloud_dimension(const tm_cloud* cloud) {
  return cloud ? cloud->cloud.dimension() : 0;
}

TM_API size_t tm_cloud_size(const tm_cloud* cloud) { return cloud ? cloud->cloud.size() : 0; }

TM_API uint64_t tm_cloud_seed(const tm_cloud* cloud) { return cloud ? cloud->cloud.seed() : 0; }

TM_API tm_status tm_cloud_point(const tm_cloud* cloud, size_t i, double* out) {
  if (!cloud || !out) return reject("null pointer argument");
  if (i >= cloud->cloud.size()) return reject("point index out of range");
  const auto x = cloud->cloud.point(i);
  std::copy(x.begin(), x.end(), out);
  return TM_OK;
}

TM_API tm_status tm_cloud_source(const tm_cloud* cloud, size_t i, int* source) {
  if (!cloud || !source) return reject("null pointer argument");
  if (i >= cloud->cloud.size()) return reject("point index out of range");
  *source = cloud->cloud.source(i);
  return TM_OK;
}

TM_API tm_status tm_axis_split(const tm_cloud* cloud, int axis, double threshold,
                               uint8_t* labels) {
  if (!cloud || !labels) return reject("null pointer argument");
  return guarded([&] {
    const auto l = empirical::axis_split(cloud->cloud, axis, threshold);
    std::copy(l.begin(), l.end(), labels);
  });
}

TM_API tm_status tm_empirical_mse(const tm_cloud* cloud, const uint8_t* labels, double* mse,
                                  double* std_error) {
  if (!cloud || !labels || !mse) return reject("null pointer argument");
  return guarded([&] {
    const empirical::Assignment l(labels, labels + cloud->cloud.size());
    const auto estimate = empirical::empirical_mse_with_error(cloud->cloud, l);
    *mse = estimate.mse;
    if (std_error) *std_error = estimate.std_error;
  });
}

TM_API tm_status tm_voronoi_reassign(const tm_cloud* cloud, const double* c1, const double* c2,
                                     uint8_t* labels) {
  if (!cloud || !c1 || !c2 || !labels) return reject("null pointer argument");
  return guarded([&] {
    const auto n = static_cast<std::size_t>(cloud->cloud.dimension());
    const empirical::CentroidPair c{{c1, c1 + n}, {c2, c2 + n}};
    const auto l = empirical::voronoi_reassign(cloud->cloud, c);
    std::copy(l.begin(), l.end(), labels);
  });
}

TM_API void tm_lloyd_options_default(tm_lloyd_options* options) {
  if (!options) return;
  const empirical::LloydOptions d;
  *options = {TM_INIT_ANTIPODAL, d.max_iter, d.move_tol, d.init_seed,
              nullptr,           nullptr,    d.axis_angle_threshold};
}

TM_API tm_status tm_lloyd(const tm_cloud* cloud, const tm_lloyd_options* options,
                          tm_lloyd_run** out) {
  if (!cloud || !options || !out) return reject("null pointer argument");
  *out = nullptr;
  empirical::LloydOptions o;
  switch (options->init) {
    case TM_INIT_RANDOM_POINTS: o.init = empirical::LloydInit::random_points; break;
    case TM_INIT_ANTIPODAL: o.init = empirical::LloydInit::antipodal; break;
    case TM_INIT_GIVEN: o.init = empirical::LloydInit::given; break;
    default: return reject("unknown Lloyd initialisation");
  }
  o.max_iter = options->max_iter;
  o.move_tol = options->move_tol;
  o.init_seed = options->init_seed;
  o.axis_angle_threshold = options->axis_angle_threshold;
  if (o.init == empirical::LloydInit::given) {
    if (!options->given_c1 || !options->given_c2) return reject("given init requires centroids");
    const auto n = static_cast<std::size_t>(cloud->cloud.dimension());
    o.given = empirical::CentroidPair{{options->given_c1, options->given_c1 + n},
                                      {options->given_c2, options->given_c2 + n}};
  }
  return guarded([&] { *out = new tm_lloyd_run{empirical::lloyd(cloud->cloud, o)}; });
}

TM_API void tm_lloyd_run_free(tm_lloyd_run* run) { delete run; }

TM_API int tm_lloyd_iterations(const tm_lloyd_run* run) { return run ? run->run.iterations : 0; }

TM_API int tm_lloyd_converged(const tm_lloyd_run* run) { return run && run->run.converged; }

TM_API size_t tm_lloyd_trace_length(const tm_lloyd_run* run) {
  return run ? run->run.mse_trace.size() : 0;
}

TM_API double tm_lloyd_trace_at(const tm_lloyd_run* run, size_t i) {
  return run->run.mse_trace.at(i);
}

TM_API double tm_lloyd_final_mse(const tm_lloyd_run* run) { return run->run.final_mse(); }

TM_API tm_status tm_lloyd_centroid(const tm_lloyd_run* run, int which, double* out) {
  if (!run || !out) return reject("null pointer argument");
  if (which != 0 && which != 1) return reject("centroid index must be 0 or 1");
  const auto& c = which == 0 ? run->run.centroids.first : run->run.centroids.second;
  std::copy(c.begin(), c.end(), out);
  return TM_OK;
}

TM_API tm_status tm_lloyd_labels(const tm_lloyd_run* run, uint8_t* labels, size_t len) {
  if (!run || !labels) return reject("null pointer argument");
  if (len != run->run.labels.size()) return reject("label buffer has the wrong length");
  std::copy(run->run.labels.begin(), run->run.labels.end(), labels);
  return TM_OK;
}

TM_API double tm_lloyd_axis_deviation_angle(const tm_lloyd_run* run) {
  return run->run.axis_deviation_angle;
}

TM_API int tm_lloyd_has_cutoff(const tm_lloyd_run* run) {
  return run && run->run.extracted_cutoff.has_value();
}

TM_API double tm_lloyd_cutoff(const tm_lloyd_run* run) {
  return run->run.extracted_cutoff.value_or(0.0);
}

}  // extern "C"
