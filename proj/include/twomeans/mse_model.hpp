#pragma once

#include <optional>

#include "twomeans/geometry.hpp"

namespace twomeans::mse_model {

// The three squared-distance integrals against dmu_n: the left-sphere part
// below the cutoff, the left-sphere part above it, and the whole right sphere.
struct Components {
  double e_minus;
  double e_pm;
  double e_plus;
};

struct MseReport {
  int n;
  double a;
  double e_minus;
  double e_pm;
  double e_plus;
  double e_total;  // (e_minus + e_pm + e_plus) / 2
  std::optional<double> derivative;
  std::optional<double> bracket_factor;
  double m_minus;
  double m_plus;
  std::optional<double> c_minus;  // left frame; absent at a = 2
  double c_plus;                  // left frame
};

/// Component integrals by quadrature. Throws Error(degenerate_partition) at
/// a = 2.
Components mse_components(int n, Cutoff a);

/// E(n,a) = 3 - ((P^2/M) + (2-P)^2/(2-M)) / 2, with M the minus mass and P
/// the closed-form first moment. Returns the single-cluster limit 2 at a = 2.
double mse_total(int n, Cutoff a);

/// 2 A_n (2a - a^2)^((n-3)/2) / (M^- M^+)^2.
double derivative_prefactor(int n, Cutoff a);

/// Polynomial-in-M^- factor multiplying the prefactor in dE/da.
double bracket_factor(int n, Cutoff a);

/// Analytic dE/da = prefactor * bracket for a in (0,2).
///
/// Throws Error(endpoint) for a in {0, 2}; the value there is 0 for n > 3.
/// Throws Error(singular_prefactor) for n = 2 and a <= 1e-9, where the
/// prefactor diverges.
double mse_derivative(int n, Cutoff a);

/// E(2,a) from the arc-length closed forms M = 1 - arccos(1-a)/pi and
/// P = -sqrt(2a - a^2)/pi.
double mse_closed_form_n2(Cutoff a);

/// Everything above at one point. Derivative and bracket are absent where
/// mse_derivative refuses.
MseReport evaluate(int n, Cutoff a);

inline constexpr double kSingularCutoffN2 = 1e-9;

}  // namespace twomeans::mse_model
