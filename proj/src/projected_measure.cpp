#include "twomeans/projected_measure.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "twomeans/error.hpp"
#include "twomeans/quadrature.hpp"

namespace twomeans::projected_measure {

namespace {

constexpr double kResolutionGuard = 1e-12;
constexpr double kSeriesTermTol = 1e-13;
constexpr int kSeriesMaxTerms = 10000;

void require_dimension(int n) { GeometryParams::validate(n); }

// 2a - a^2, written to keep relative accuracy near a = 0 and a = 2.
double chord_term(double a) { return a * (2.0 - a); }

double sin_power(double theta, int power) {
  const double s = std::sin(theta);
  double result = 1.0;
  for (int i = 0; i < power; ++i) result *= s;
  return result;
}

}  // namespace

double CentroidPair::c_minus() const {
  if (!c_minus_) fail(ErrorCode::empty_cluster, "minus cluster is empty at a = 2");
  return *c_minus_;
}

double normalization_constant(int n) {
  require_dimension(n);
  // ratio(k) = Gamma(k/2) / Gamma((k-1)/2); ratio(2) = Gamma(1)/Gamma(1/2).
  double ratio = 1.0 / std::sqrt(std::numbers::pi);
  for (int k = 2; k < n; ++k) ratio = 0.5 * (k - 1) / ratio;
  return ratio / std::sqrt(std::numbers::pi);
}

double integrate_against(int n, double lo, double hi,
                         const std::function<double(double)>& g) {
  require_dimension(n);
  if (!(lo >= -1.0 && hi <= 1.0 && lo <= hi)) {
    fail(ErrorCode::invalid_argument, "integration range must satisfy -1 <= lo <= hi <= 1");
  }
  if (lo == hi) return 0.0;
  const double amp = normalization_constant(n);
  const int power = n - 2;
  // x = cos(theta): dmu_n = A_n sin^(n-2)(theta) dtheta, theta decreasing in x.
  auto integrand = [&](double theta) {
    return g(std::cos(theta)) * amp * sin_power(theta, power);
  };
  return quadrature::integrate(integrand, std::acos(hi), std::acos(lo));
}

double mass_minus(int n, Cutoff a) {
  require_dimension(n);
  if (n == 3) return 0.5 * (2.0 - a.value());
  if (a.degenerate()) return 0.0;
  return integrate_against(n, -1.0, a.left_position(), [](double) { return 1.0; });
}

MassPair masses(int n, Cutoff a) {
  const double m = mass_minus(n, a);
  return {m, 2.0 - m};
}

double first_moment_minus(int n, Cutoff a) {
  const double amp = normalization_constant(n);
  return -(amp / (n - 1)) * std::pow(chord_term(a.value()), 0.5 * (n - 1));
}

double first_moment_minus_quadrature(int n, Cutoff a) {
  if (a.degenerate()) return 0.0;
  return integrate_against(n, -1.0, a.left_position(), [](double x) { return x; });
}

CentroidPair centroids(int n, Cutoff a) {
  require_dimension(n);
  if (a.degenerate()) return {std::nullopt, 1.0};
  if (a.at_tangency()) return {0.0, 2.0};
  const double m = mass_minus(n, a);
  const double p = first_moment_minus(n, a);
  return {p / m, (2.0 - p) / (2.0 - m)};
}

SeriesResult mass_series_detailed(int n, Cutoff a) {
  if (n < 3) fail(ErrorCode::invalid_argument, "mass_series requires n >= 3");
  const double av = a.value();
  if (!(av > 1.0)) {
    fail(ErrorCode::invalid_argument, "mass_series requires a in (1, 2), got " + std::to_string(av));
  }
  if (a.degenerate()) return {0.0, 0};

  const double k_n = normalization_constant(n) / (n - 1);
  const double s = chord_term(av);
  // (2-a)^2 / (2a - a^2), the geometric part of the term ratio.
  const double r = (2.0 - av) / av;

  double term = 2.0 * k_n * std::pow(s, 0.5 * (n - 3)) * (2.0 - av);
  double sum = term;
  for (int k = 1; k <= kSeriesMaxTerms; ++k) {
    const double next = term * (n - 2.0 * k - 1.0) / (n + 2.0 * k - 1.0) * r;
    sum += next;
    if (next == 0.0) return {sum, k + 1};  // odd n: the series terminates
    const bool alternating = (next < 0.0) != (term < 0.0);
    if (alternating && std::fabs(next) < kSeriesTermTol) return {sum, k + 1};
    term = next;
  }
  fail(ErrorCode::non_convergence,
       "mass_series did not converge within " + std::to_string(kSeriesMaxTerms) + " terms");
}

double mass_series(int n, Cutoff a) { return mass_series_detailed(n, a).value; }

bool mass_lower_bound_check(int n, Cutoff a) {
  if (n < 3) fail(ErrorCode::invalid_argument, "lower bound check requires n >= 3");
  const double av = a.value();
  if (av < 1.0 || av >= 2.0) {
    fail(ErrorCode::invalid_argument, "lower bound check requires a in [1, 2)");
  }
  const double bound =
      normalization_constant(n) / (n - 1) * std::pow(chord_term(av), 0.5 * (n - 1));
  return mass_minus(n, a) >= bound;
}

bool mass_dimension_monotonicity_check(Cutoff a, std::span<const int> n_grid) {
  const double av = a.value();
  if (!(av > 0.0 && av < 2.0) || av == 1.0) {
    fail(ErrorCode::invalid_argument,
         "monotonicity in n is only strict for a in (0,1) or (1,2)");
  }
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] <= 3) fail(ErrorCode::invalid_argument, "n_grid entries must exceed 3");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) {
      fail(ErrorCode::invalid_argument, "n_grid must be strictly increasing");
    }
  }
  const bool increasing = av < 1.0;
  for (std::size_t i = 1; i < n_grid.size(); ++i) {
    const double step = mass_minus(n_grid[i], a) - mass_minus(n_grid[i - 1], a);
    if (increasing ? !(step > kResolutionGuard) : !(step < -kResolutionGuard)) return false;
  }
  return true;
}

}  // namespace twomeans::projected_measure
