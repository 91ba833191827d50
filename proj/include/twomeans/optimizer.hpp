#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

namespace twomeans::optimizer {

enum class Method { golden_section, derivative_bisection, grid_refine };

std::string_view to_string(Method method) noexcept;

struct OptimizationResult {
  int n;
  double a_star;
  double e_star;
  Method method;
  int evaluations;
  std::pair<double, double> bracket;
};

inline constexpr double kCoarseGridStep = 0.01;

/// Minimizer of a -> E(n,a) on [0,2). A coarse scan locates the best grid
/// cell, which is then refined with the chosen method until the bracket is no
/// wider than tol. A bracket resting on 0 with E increasing across it is
/// reported as a* = 0 exactly.
///
/// derivative_bisection requires n >= 4.
OptimizationResult minimize_cutoff(int n, double tol,
                                   Method method = Method::golden_section,
                                   double grid_step = kCoarseGridStep);

struct CertificationResult {
  int n;
  double grid_step;
  std::size_t points;
  std::vector<double> failures;  // cutoffs where dE/da <= 0

  bool passed() const noexcept { return failures.empty(); }
};

/// Checks dE/da > 0 at a = k*grid_step for every k with step <= a <= 2-step.
CertificationResult certify_monotonicity(int n, double grid_step);

}  // namespace twomeans::optimizer
