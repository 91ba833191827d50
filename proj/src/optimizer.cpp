#include "twomeans/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "twomeans/error.hpp"
#include "twomeans/geometry.hpp"
#include "twomeans/mse_model.hpp"

namespace twomeans::optimizer {

namespace {

// Value comparisons of E stop resolving the minimizer well below this width
// (E is flat to second order at an interior minimum), so golden section hands
// over to the derivative sign here. grid_refine does the same.
constexpr double kGoldenFloor = 1e-6;
constexpr double kValueNoise = 64.0 * std::numeric_limits<double>::epsilon();

class Objective {
 public:
  explicit Objective(int n) : n_(n) {}

  double value(double a) {
    ++evaluations_;
    return mse_model::mse_total(n_, Cutoff{a});
  }

  // Derivative sign at a, or 0 when the derivative is refused there.
  int slope_sign(double a) {
    ++evaluations_;
    try {
      const double d = mse_model::mse_derivative(n_, Cutoff{a});
      return d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    } catch (const Error&) {
      return 0;
    }
  }

  int evaluations() const { return evaluations_; }

 private:
  int n_;
  int evaluations_ = 0;
};

struct Bracket {
  double lo;
  double hi;
  double width() const { return hi - lo; }
};

Bracket coarse_scan(Objective& f, double step) {
  const int cells = static_cast<int>(std::llround(2.0 / step));
  int best = 0;
  double best_value = f.value(0.0);
  int last = 0;
  for (int k = 1; k < cells; ++k) {
    const double a = k * step;
    if (a >= 2.0) break;
    last = k;
    const double v = f.value(a);
    if (v < best_value) {
      best_value = v;
      best = k;
    }
  }
  return {std::max(best - 1, 0) * step, std::min(best + 1, last) * step};
}

// Returns false once the two interior values differ by no more than rounding
// noise, leaving b at the last bracket the values did resolve. With
// stop_on_tie unset, ties shrink towards the lower end instead.
bool golden(Objective& f, Bracket& b, double width, bool stop_on_tie) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b.hi - inv_phi * b.width();
  double d = b.lo + inv_phi * b.width();
  double fc = f.value(c);
  double fd = f.value(d);
  while (b.width() > width) {
    const double noise = kValueNoise * std::max(std::fabs(fc), std::fabs(fd));
    const bool tie = std::fabs(fc - fd) <= noise;
    if (tie && stop_on_tie) return false;
    if (fc < fd || tie) {
      b.hi = d;
      d = c;
      fd = fc;
      c = b.hi - inv_phi * b.width();
      fc = f.value(c);
    } else {
      b.lo = c;
      c = d;
      fc = fd;
      d = b.lo + inv_phi * b.width();
      fd = f.value(d);
    }
  }
  return true;
}

// Shrinks b towards the sign change of dE/da. Returns false if the
// derivative is unavailable somewhere along the way; b is then left at the
// last bracket that was certified.
bool slope_bisection(Objective& f, Bracket& b, double width) {
  while (b.width() > width) {
    const double mid = 0.5 * (b.lo + b.hi);
    const int s = f.slope_sign(mid);
    if (s == 0) return false;
    (s > 0 ? b.hi : b.lo) = mid;
  }
  return true;
}

// Values within rounding noise of the best count as ties and keep the lower
// point, so a flat minimum at the boundary stays bracketed there.
void grid_refine(Objective& f, Bracket& b, double width) {
  constexpr int kPoints = 11;
  while (b.width() > width) {
    const double step = b.width() / (kPoints - 1);
    int best = 0;
    double best_value = f.value(b.lo);
    for (int k = 1; k < kPoints; ++k) {
      const double v = f.value(b.lo + k * step);
      if (v < best_value - kValueNoise * std::fabs(best_value)) {
        best_value = v;
        best = k;
      }
    }
    const double lo = b.lo + std::max(best - 1, 0) * step;
    const double hi = b.lo + std::min(best + 1, kPoints - 1) * step;
    b = {lo, hi};
  }
}

}  // namespace

std::string_view to_string(Method method) noexcept {
  switch (method) {
    case Method::golden_section: return "golden_section";
    case Method::derivative_bisection: return "derivative_bisection";
    case Method::grid_refine: return "grid_refine";
  }
  return "unknown";
}

OptimizationResult minimize_cutoff(int n, double tol, Method method, double grid_step) {
  GeometryParams::validate(n);
  if (!(tol >= 1e-12 && tol <= 1e-2)) {
    fail(ErrorCode::invalid_argument, "tol must lie in [1e-12, 1e-2]");
  }
  if (!(grid_step > 0.0 && grid_step <= 0.1)) {
    fail(ErrorCode::invalid_argument, "grid_step must lie in (0, 0.1]");
  }
  if (method == Method::derivative_bisection && n < 4) {
    fail(ErrorCode::invalid_argument, "derivative_bisection requires n >= 4");
  }

  Objective f(n);
  Bracket b = coarse_scan(f, grid_step);
  switch (method) {
    case Method::golden_section:
      golden(f, b, std::max(tol, kGoldenFloor), true);
      if (b.width() > tol && !slope_bisection(f, b, tol)) golden(f, b, tol, false);
      break;
    case Method::derivative_bisection:
      slope_bisection(f, b, tol);
      break;
    case Method::grid_refine:
      grid_refine(f, b, std::max(tol, kGoldenFloor));
      if (b.width() > tol && !slope_bisection(f, b, tol)) grid_refine(f, b, tol);
      break;
  }

  double a_star = 0.5 * (b.lo + b.hi);
  if (b.lo == 0.0) {
    const double at_zero = f.value(0.0);
    const bool increasing = f.slope_sign(b.hi) > 0 ||
                            at_zero <= f.value(b.hi) + kValueNoise * std::fabs(at_zero);
    if (increasing) a_star = 0.0;
  }
  return {n, a_star, mse_model::mse_total(n, Cutoff{a_star}), method, f.evaluations(),
          {b.lo, b.hi}};
}

CertificationResult certify_monotonicity(int n, double grid_step) {
  if (n < 3) fail(ErrorCode::invalid_argument, "monotonicity certification requires n >= 3");
  if (!(grid_step >= 1e-4 && grid_step <= 0.1)) {
    fail(ErrorCode::invalid_argument, "grid_step must lie in [1e-4, 0.1]");
  }
  CertificationResult result{n, grid_step, 0, {}};
  for (long k = 1;; ++k) {
    const double a = static_cast<double>(k) * grid_step;
    if (a > 2.0 - grid_step + 1e-12) break;
    ++result.points;
    const double d = mse_model::mse_derivative(n, Cutoff{a});
    if (!(d > 0.0)) result.failures.push_back(a);
  }
  return result;
}

}  // namespace twomeans::optimizer
