#pragma once

#include <functional>
#include <span>

namespace twomeans::quadrature {

// Nodes and weights of the Gauss-Legendre rule on [-1,1].
struct Rule {
  std::span<const double> nodes;
  std::span<const double> weights;
};

// The 64-point rule, computed once by Newton iteration on P_64.
const Rule& gauss_legendre_64();

struct Options {
  double abs_tol = 1e-13;
  double rel_tol = 1e-14;
  int max_depth = 40;
};

// Integral of f over [lo, hi] by composite 64-point Gauss-Legendre. An
// interval is accepted once the single-panel estimate and the sum over its
// two halves differ by less than max(abs_tol, rel_tol * |estimate|);
// otherwise both halves are refined with half the absolute tolerance.
// lo > hi integrates with reversed sign; lo == hi gives 0.
double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const Options& options = {});

}  // namespace twomeans::quadrature
