#include "twomeans/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace twomeans::quadrature {

namespace {

constexpr int kOrder = 64;

struct Table {
  std::array<double, kOrder> nodes{};
  std::array<double, kOrder> weights{};

  Table() {
    // Newton iteration on P_n from the Tricomi initial guess; nodes are
    // symmetric so only half are computed.
    for (int i = 0; i < kOrder / 2; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (kOrder + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0;
        double p1 = x;
        for (int k = 2; k <= kOrder; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::fabs(dx) < 1e-16) break;
      }
      // Recompute the derivative at the converged node.
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= kOrder; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = kOrder * (x * p1 - p0) / (x * x - 1.0);
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      nodes[i] = -x;
      nodes[kOrder - 1 - i] = x;
      weights[i] = w;
      weights[kOrder - 1 - i] = w;
    }
  }
};

double panel(const std::function<double(double)>& f, double lo, double hi) {
  const Rule& rule = gauss_legendre_64();
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

double adapt(const std::function<double(double)>& f, double lo, double hi,
             double whole, double abs_tol, const Options& options, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double left = panel(f, lo, mid);
  const double right = panel(f, mid, hi);
  const double refined = left + right;
  const double tol = std::max(abs_tol, options.rel_tol * std::fabs(refined));
  if (std::fabs(refined - whole) <= tol || depth >= options.max_depth) {
    return refined;
  }
  return adapt(f, lo, mid, left, 0.5 * abs_tol, options, depth + 1) +
         adapt(f, mid, hi, right, 0.5 * abs_tol, options, depth + 1);
}

}  // namespace

const Rule& gauss_legendre_64() {
  static const Table table;
  static const Rule rule{table.nodes, table.weights};
  return rule;
}

double integrate(const std::function<double(double)>& f, double lo, double hi,
                 const Options& options) {
  if (lo == hi) return 0.0;
  if (lo > hi) return -integrate(f, hi, lo, options);
  return adapt(f, lo, hi, panel(f, lo, hi), options.abs_tol, options, 0);
}

}  // namespace twomeans::quadrature
