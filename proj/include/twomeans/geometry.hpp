#pragma once

namespace twomeans {

// Dimension of the ambient space together with the coordinate frame used by
// the projected-measure formulas: the left sphere is centred at 0 and the
// right sphere at 2 on the symmetry axis. The symmetric frame used for point
// clouds (centres at -1 and +1) is the left frame shifted by -1.
struct GeometryParams {
  int n;

  explicit GeometryParams(int dimension);

  // Throws Error(invalid_argument) for n < 2.
  static void validate(int dimension);

  static constexpr double left_to_rho(double x) noexcept { return x - 1.0; }
  static constexpr double rho_to_left(double x) noexcept { return x + 1.0; }
};

// Offset of the separating hyperplane x1 = -a (symmetric frame), folded into
// [0,2] by the reflection symmetry of the measure.
class Cutoff {
 public:
  explicit Cutoff(double a);

  double value() const noexcept { return a_; }

  // Left-frame position of the hyperplane, 1 - a.
  double left_position() const noexcept { return 1.0 - a_; }
  // Symmetric-frame position of the hyperplane, -a.
  double rho_position() const noexcept { return -a_; }

  bool at_tangency() const noexcept { return a_ == 0.0; }
  bool degenerate() const noexcept { return a_ == 2.0; }

 private:
  double a_;
};

}  // namespace twomeans
