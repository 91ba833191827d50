#pragma once

#include <functional>
#include <optional>
#include <span>

#include "twomeans/geometry.hpp"

// The projection of the uniform surface measure on the unit (n-1)-sphere onto
// one coordinate axis:
//
//   dmu_n(x) = A_n (1 - x^2)^((n-3)/2) dx  on [-1, 1].
//
// Masses and moments of the left sphere below the hyperplane at left-frame
// position 1 - a are evaluated in the angular variable x = cos(theta), where
// the integrand becomes A_n sin^(n-2)(theta) and is smooth for every n >= 2.
namespace twomeans::projected_measure {

// Masses of the two clusters under the total-mass-two convention.
struct MassPair {
  double m_minus;
  double m_plus;
};

// Left-frame cluster means. The minus cluster is empty at a = 2.
class CentroidPair {
 public:
  CentroidPair(std::optional<double> c_minus, double c_plus)
      : c_minus_(c_minus), c_plus_(c_plus) {}

  bool has_minus() const noexcept { return c_minus_.has_value(); }
  // Throws Error(empty_cluster) when the minus cluster is empty.
  double c_minus() const;
  double c_plus() const noexcept { return c_plus_; }

  double c_minus_rho() const { return GeometryParams::left_to_rho(c_minus()); }
  double c_plus_rho() const noexcept {
    return GeometryParams::left_to_rho(c_plus_);
  }

 private:
  std::optional<double> c_minus_;
  double c_plus_;
};

/// A_n = Gamma(n/2) / (sqrt(pi) Gamma((n-1)/2)), via the half-integer
/// recursion of the ratio Gamma(n/2)/Gamma((n-1)/2).
double normalization_constant(int n);

/// M^-_n(a): mass of dmu_n on [-1, 1-a].
double mass_minus(int n, Cutoff a);

MassPair masses(int n, Cutoff a);

/// Closed form -(A_n/(n-1)) (2a - a^2)^((n-1)/2) of the first moment of
/// dmu_n on [-1, 1-a].
double first_moment_minus(int n, Cutoff a);

/// Same moment evaluated by quadrature; independent of the closed form.
double first_moment_minus_quadrature(int n, Cutoff a);

CentroidPair centroids(int n, Cutoff a);

/// M^-_n(a) for a in (1,2) from the alternating series obtained by repeated
/// integration by parts. Summation stops once the terms alternate in sign and
/// the next one is below 1e-13; throws Error(non_convergence) past 10000.
double mass_series(int n, Cutoff a);

struct SeriesResult {
  double value;
  int terms;
};
SeriesResult mass_series_detailed(int n, Cutoff a);

/// Whether M^-_n(a) >= (A_n/(n-1)) (2a - a^2)^((n-1)/2), n >= 3, a in [1,2).
bool mass_lower_bound_check(int n, Cutoff a);

/// Whether M^-_n(a) moves strictly monotonically across n_grid: increasing
/// for a in (0,1), decreasing for a in (1,2). Consecutive values must differ
/// by more than the 1e-12 resolution guard.
bool mass_dimension_monotonicity_check(Cutoff a, std::span<const int> n_grid);

/// Integral of g(x) dmu_n(x) over [lo, hi] in the left-sphere coordinate,
/// -1 <= lo <= hi <= 1. Shared by the moment and error-component paths.
double integrate_against(int n, double lo, double hi,
                         const std::function<double(double)>& g);

}  // namespace twomeans::projected_measure
