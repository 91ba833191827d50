#include "twomeans/mse_model.hpp"

#include <cmath>
#include <numbers>

#include "twomeans/error.hpp"
#include "twomeans/projected_measure.hpp"

namespace twomeans::mse_model {

namespace pm = projected_measure;

namespace {

void require_open_interval(Cutoff a, const char* what) {
  if (a.at_tangency() || a.degenerate()) {
    fail(ErrorCode::invalid_argument, std::string(what) + " requires a in (0, 2)");
  }
}

// E from the minus mass and minus first moment (left frame).
double total_from_moments(double m, double p) {
  return 3.0 - 0.5 * (p * p / m + (2.0 - p) * (2.0 - p) / (2.0 - m));
}

}  // namespace

Components mse_components(int n, Cutoff a) {
  if (a.degenerate()) {
    fail(ErrorCode::degenerate_partition, "a = 2 leaves the minus cluster empty");
  }
  const pm::CentroidPair c = pm::centroids(n, a);
  const double c_minus = c.c_minus();
  const double c_plus = c.c_plus();
  const double split = a.left_position();

  Components out{};
  out.e_minus = pm::integrate_against(n, -1.0, split, [&](double x) {
    return 1.0 - x * x + (x - c_minus) * (x - c_minus);
  });
  out.e_pm = pm::integrate_against(n, split, 1.0, [&](double x) {
    return 1.0 - x * x + (x - c_plus) * (x - c_plus);
  });
  out.e_plus = pm::integrate_against(n, -1.0, 1.0, [&](double x) {
    const double d = 2.0 + x - c_plus;
    return 1.0 - x * x + d * d;
  });
  return out;
}

double mse_total(int n, Cutoff a) {
  GeometryParams::validate(n);
  if (a.degenerate()) return 2.0;
  return total_from_moments(pm::mass_minus(n, a), pm::first_moment_minus(n, a));
}

double derivative_prefactor(int n, Cutoff a) {
  require_open_interval(a, "derivative_prefactor");
  const double av = a.value();
  const double m = pm::mass_minus(n, a);
  const double mm = m * (2.0 - m);
  return 2.0 * pm::normalization_constant(n) * std::pow(av * (2.0 - av), 0.5 * (n - 3)) /
         (mm * mm);
}

double bracket_factor(int n, Cutoff a) {
  require_open_interval(a, "bracket_factor");
  const double av = a.value();
  const double m = pm::mass_minus(n, a);
  // h = (A_n/(n-1)) (2a - a^2)^((n-1)/2) = -P.
  const double h = -pm::first_moment_minus(n, a);
  const double m2 = m * m;
  return (1.0 - av) * m2 * m + (2.0 * av - 1.0) * m2 + (2.0 - av) * h * m2 + h * h * m +
         2.0 * (av - 1.0) * h * m - h * h;
}

double mse_derivative(int n, Cutoff a) {
  GeometryParams::validate(n);
  if (n == 2 && a.value() <= kSingularCutoffN2) {
    fail(ErrorCode::singular_prefactor, "dE/da prefactor diverges at a -> 0 for n = 2");
  }
  if (a.at_tangency() || a.degenerate()) {
    fail(ErrorCode::endpoint, "dE/da is only evaluated for a in (0, 2)");
  }
  return derivative_prefactor(n, a) * bracket_factor(n, a);
}

double mse_closed_form_n2(Cutoff a) {
  if (a.degenerate()) fail(ErrorCode::invalid_argument, "closed form requires a in [0, 2)");
  const double av = a.value();
  const double m = 1.0 - std::acos(1.0 - av) / std::numbers::pi;
  const double p = -std::sqrt(av * (2.0 - av)) / std::numbers::pi;
  return total_from_moments(m, p);
}

MseReport evaluate(int n, Cutoff a) {
  GeometryParams::validate(n);
  MseReport r{};
  r.n = n;
  r.a = a.value();
  if (a.degenerate()) {
    // Single-cluster limit: every point of either sphere is at squared
    // distance 2 from the global mean.
    r.e_minus = 0.0;
    r.e_pm = 2.0;
    r.e_plus = 2.0;
    r.e_total = 2.0;
    r.m_minus = 0.0;
    r.m_plus = 2.0;
    r.c_plus = 1.0;
    return r;
  }
  const Components c = mse_components(n, a);
  r.e_minus = c.e_minus;
  r.e_pm = c.e_pm;
  r.e_plus = c.e_plus;
  r.e_total = 0.5 * (c.e_minus + c.e_pm + c.e_plus);
  const pm::MassPair m = pm::masses(n, a);
  r.m_minus = m.m_minus;
  r.m_plus = m.m_plus;
  const pm::CentroidPair cp = pm::centroids(n, a);
  r.c_minus = cp.c_minus();
  r.c_plus = cp.c_plus();
  try {
    r.derivative = mse_derivative(n, a);
    r.bracket_factor = bracket_factor(n, a);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::endpoint && e.code() != ErrorCode::singular_prefactor) throw;
  }
  return r;
}

}  // namespace twomeans::mse_model
