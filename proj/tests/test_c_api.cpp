#include <cmath>
#include <cstring>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "twomeans/twomeans.h"

extern "C" int tm_c_header_check(void);

namespace {
const double kPi = std::numbers::pi;
}

TEST_CASE("header compiles as C") { CHECK(tm_c_header_check() == 1); }

TEST_CASE("status strings and version") {
  CHECK(std::string(tm_status_string(TM_OK)) == "ok");
  CHECK(std::string(tm_status_string(TM_ERR_ENDPOINT)) == "endpoint");
  CHECK(std::string(tm_version()).find('.') != std::string::npos);
}

TEST_CASE("scalar functions") {
  double v = 0.0;
  REQUIRE(tm_normalization_constant(3, &v) == TM_OK);
  CHECK(v == doctest::Approx(0.5));
  REQUIRE(tm_mass_minus(3, 0.5, &v) == TM_OK);
  CHECK(std::fabs(v - 0.75) < 1e-15);
  REQUIRE(tm_mse_total(3, 0.8, &v) == TM_OK);
  CHECK(std::fabs(v - 1.16) < 1e-14);
  REQUIRE(tm_mse_derivative(3, 0.8, &v) == TM_OK);
  CHECK(std::fabs(v - 0.4) < 1e-12);
  REQUIRE(tm_mse_closed_form_n2(1.0 - std::sqrt(3.0) / 2.0, &v) == TM_OK);
  CHECK(std::fabs(v - (45 * kPi * kPi - 30 * kPi - 9) / (35 * kPi * kPi)) < 1e-12);
  REQUIRE(tm_mass_series(5, 1.25, &v) == TM_OK);
  CHECK(std::fabs(v - 0.31640625) < 1e-12);
  double fm = 0.0, fq = 0.0;
  REQUIRE(tm_first_moment_minus(6, 0.7, &fm) == TM_OK);
  REQUIRE(tm_first_moment_minus_quadrature(6, 0.7, &fq) == TM_OK);
  CHECK(std::fabs(fm - fq) < 1e-12);
}

TEST_CASE("errors map to status codes and leave a message") {
  double v = 0.0;
  CHECK(tm_mass_minus(1, 0.5, &v) == TM_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(tm_last_error()) > 0);
  CHECK(tm_mass_minus(3, 2.5, &v) == TM_ERR_INVALID_ARGUMENT);
  CHECK(tm_mse_derivative(2, 1e-12, &v) == TM_ERR_SINGULAR_PREFACTOR);
  CHECK(tm_mse_derivative(4, 2.0, &v) == TM_ERR_ENDPOINT);
  CHECK(v == 0.0);
  double e1, e2, e3;
  CHECK(tm_mse_components(4, 2.0, &e1, &e2, &e3) == TM_ERR_DEGENERATE_PARTITION);
  CHECK(tm_mass_series(4, 1.0 + 1e-9, &v) == TM_ERR_NON_CONVERGENCE);
  CHECK(tm_mass_minus(3, 0.5, nullptr) == TM_ERR_INVALID_ARGUMENT);
  REQUIRE(tm_mass_minus(3, 0.5, &v) == TM_OK);
  CHECK(std::string(tm_last_error()).empty());
}

TEST_CASE("centroids") {
  double cm = 0.0, cp = 0.0;
  REQUIRE(tm_centroids(3, 1.0, &cm, &cp) == TM_OK);
  CHECK(std::fabs(cm - 1.0 + 1.5) < 1e-12);
  CHECK(std::fabs(cp - 1.0 - 0.5) < 1e-12);
  CHECK(tm_centroids(3, 2.0, &cm, &cp) == TM_ERR_EMPTY_CLUSTER);
  CHECK(cp == 1.0);
}

TEST_CASE("predicate checks") {
  int holds = 0;
  REQUIRE(tm_mass_lower_bound_check(4, 1.5, &holds) == TM_OK);
  CHECK(holds == 1);
  const int grid[] = {4, 5, 6, 8, 12, 16};
  REQUIRE(tm_mass_dimension_monotonicity_check(0.5, grid, 6, &holds) == TM_OK);
  CHECK(holds == 1);
  const int bad[] = {5, 4};
  CHECK(tm_mass_dimension_monotonicity_check(0.5, bad, 2, &holds) == TM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("evaluate report") {
  tm_mse_report r{};
  REQUIRE(tm_mse_evaluate(4, 1.0, &r) == TM_OK);
  CHECK(r.n == 4);
  CHECK(std::fabs(r.e_total - 1.32368236271524516815) < 1e-12);
  CHECK(r.has_derivative == 1);
  CHECK(r.has_bracket_factor == 1);
  REQUIRE(tm_mse_evaluate(4, 2.0, &r) == TM_OK);
  CHECK(r.e_total == 2.0);
  CHECK(r.has_derivative == 0);
  double p = 0.0, b = 0.0, d = 0.0;
  REQUIRE(tm_derivative_prefactor(6, 0.9, &p) == TM_OK);
  REQUIRE(tm_bracket_factor(6, 0.9, &b) == TM_OK);
  REQUIRE(tm_mse_derivative(6, 0.9, &d) == TM_OK);
  CHECK(std::fabs(p * b - d) < 1e-12 * std::fabs(d));
}

TEST_CASE("optimizer") {
  tm_optimization_result r{};
  REQUIRE(tm_minimize_cutoff(5, 1e-8, TM_METHOD_GOLDEN_SECTION, &r) == TM_OK);
  CHECK(r.a_star == 0.0);
  REQUIRE(tm_minimize_cutoff(2, 1e-8, TM_METHOD_GOLDEN_SECTION, &r) == TM_OK);
  CHECK(std::fabs(r.a_star - 0.2245505652783265) < 1e-8);
  CHECK(r.evaluations > 0);
  CHECK(r.bracket_lo <= r.a_star);
  CHECK(std::string(tm_method_name(TM_METHOD_GRID_REFINE)) == "grid_refine");
  CHECK(tm_minimize_cutoff(2, 1e-8, TM_METHOD_DERIVATIVE_BISECTION, &r) ==
        TM_ERR_INVALID_ARGUMENT);
  CHECK(tm_minimize_cutoff(2, 1e-8, static_cast<tm_method>(17), &r) == TM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("certification handle") {
  tm_certification* cert = nullptr;
  REQUIRE(tm_certify_monotonicity(6, 0.01, &cert) == TM_OK);
  CHECK(tm_certification_passed(cert) == 1);
  CHECK(tm_certification_points(cert) == 199);
  CHECK(tm_certification_failure_count(cert) == 0);
  tm_certification_free(cert);
  tm_certification_free(nullptr);
  CHECK(tm_certify_monotonicity(2, 0.01, &cert) == TM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("discrete") {
  tm_discrete_partition parts[4];
  size_t count = 0;
  REQUIRE(tm_discrete_enumerate_optimal(0.2, parts, 4, &count) == TM_OK);
  REQUIRE(count == 2);
  for (size_t i = 0; i < count; ++i) {
    CHECK(parts[i].kind == TM_PARTITION_CANNIBAL);
    CHECK(std::fabs(parts[i].mse - 2 * (1 + 0.2 + 0.04) / 3) < 1e-12);
  }
  // A short buffer still reports the full count.
  REQUIRE(tm_discrete_enumerate_optimal(0.2, parts, 1, &count) == TM_OK);
  CHECK(count == 2);
  REQUIRE(tm_discrete_enumerate_optimal(0.5, parts, 4, &count) == TM_OK);
  CHECK(count == 1);
  CHECK(parts[0].kind == TM_PARTITION_SYMMETRIC);
  double t = 0.0;
  REQUIRE(tm_discrete_separation_threshold(1e-10, &t) == TM_OK);
  CHECK(std::fabs(t - (std::sqrt(3.0) - 1) / 2) < 1e-9);
  REQUIRE(tm_discrete_cannibal_mse(0.0 + 0.1, &t) == TM_OK);
  CHECK(std::fabs(t - 2 * (1 + 0.1 + 0.01) / 3) < 1e-15);
  CHECK(tm_discrete_enumerate_optimal(-1.0, parts, 4, &count) == TM_ERR_INVALID_ARGUMENT);
}

TEST_CASE("cloud and Lloyd handles") {
  tm_cloud* cloud = nullptr;
  REQUIRE(tm_sample_spheres(3, 50000, 7, &cloud) == TM_OK);
  CHECK(tm_cloud_dimension(cloud) == 3);
  CHECK(tm_cloud_size(cloud) == 50000);
  CHECK(tm_cloud_seed(cloud) == 7);
  double x[3];
  int source = -1;
  REQUIRE(tm_cloud_point(cloud, 0, x) == TM_OK);
  REQUIRE(tm_cloud_source(cloud, 0, &source) == TM_OK);
  const double centre = source == 0 ? -1.0 : 1.0;
  CHECK(std::fabs(std::hypot(x[0] - centre, x[1], x[2]) - 1.0) < 1e-12);
  CHECK(tm_cloud_point(cloud, 50000, x) == TM_ERR_INVALID_ARGUMENT);

  std::vector<uint8_t> labels(50000), voronoi(50000);
  REQUIRE(tm_axis_split(cloud, 0, 0.0, labels.data()) == TM_OK);
  double mse = 0.0, se = 0.0;
  REQUIRE(tm_empirical_mse(cloud, labels.data(), &mse, &se) == TM_OK);
  CHECK(std::fabs(mse - 1.0) < 4 * se + 1e-3);
  REQUIRE(tm_empirical_mse(cloud, labels.data(), &mse, nullptr) == TM_OK);
  const double c1[] = {-1, 0, 0}, c2[] = {1, 0, 0};
  REQUIRE(tm_voronoi_reassign(cloud, c1, c2, voronoi.data()) == TM_OK);
  CHECK(voronoi == labels);
  CHECK(tm_voronoi_reassign(cloud, c1, c1, voronoi.data()) == TM_ERR_COINCIDENT_CENTROIDS);

  tm_lloyd_options opts;
  tm_lloyd_options_default(&opts);
  CHECK(opts.init == TM_INIT_ANTIPODAL);
  CHECK(opts.max_iter == 500);
  tm_lloyd_run* run = nullptr;
  REQUIRE(tm_lloyd(cloud, &opts, &run) == TM_OK);
  CHECK(tm_lloyd_converged(run) == 1);
  const size_t len = tm_lloyd_trace_length(run);
  REQUIRE(len == static_cast<size_t>(tm_lloyd_iterations(run)));
  for (size_t k = 1; k < len; ++k) {
    CHECK(tm_lloyd_trace_at(run, k) <= tm_lloyd_trace_at(run, k - 1) + 1e-12);
  }
  CHECK(tm_lloyd_final_mse(run) == tm_lloyd_trace_at(run, len - 1));
  REQUIRE(tm_lloyd_has_cutoff(run) == 1);
  CHECK(std::fabs(tm_lloyd_cutoff(run)) < 0.05);
  CHECK(tm_lloyd_axis_deviation_angle(run) < 0.05);
  double g1[3], g2[3];
  REQUIRE(tm_lloyd_centroid(run, 0, g1) == TM_OK);
  REQUIRE(tm_lloyd_centroid(run, 1, g2) == TM_OK);
  CHECK(tm_lloyd_centroid(run, 2, g2) == TM_ERR_INVALID_ARGUMENT);
  CHECK(tm_lloyd_labels(run, labels.data(), labels.size()) == TM_OK);
  CHECK(tm_lloyd_labels(run, labels.data(), 10) == TM_ERR_INVALID_ARGUMENT);

  tm_lloyd_options given;
  tm_lloyd_options_default(&given);
  given.init = TM_INIT_GIVEN;
  given.given_c1 = g1;
  given.given_c2 = g2;
  tm_lloyd_run* again = nullptr;
  REQUIRE(tm_lloyd(cloud, &given, &again) == TM_OK);
  CHECK(tm_lloyd_iterations(again) == 1);
  tm_lloyd_run_free(again);

  given.given_c1 = nullptr;
  CHECK(tm_lloyd(cloud, &given, &again) == TM_ERR_INVALID_ARGUMENT);

  tm_lloyd_run_free(run);
  tm_cloud_free(cloud);
}
