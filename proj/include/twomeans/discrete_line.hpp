#pragma once

#include <array>
#include <vector>

// Two unit "spheres" on the line, i.e. the four equally weighted points
// {-2-eps, -eps, eps, 2+eps}, and brute-force 2-means over them.
namespace twomeans::discrete_line {

struct FourPointConfig {
  double epsilon;
  std::array<double, 4> points;
  std::array<double, 4> weights;

  explicit FourPointConfig(double eps);
};

enum class PartitionKind {
  symmetric,  // {-2-eps, -eps} | {eps, 2+eps}
  cannibal,   // one outer point alone, the other three together
  other,
};

struct DiscretePartition {
  std::array<int, 4> labels;  // 1 or 2, point order as in FourPointConfig
  double mse;
  std::array<double, 2> means;
  PartitionKind kind;
};

/// Weighted squared error of a labelling with each cluster at its mean.
DiscretePartition evaluate_partition(const FourPointConfig& config,
                                     const std::array<int, 4>& labels);

/// All 7 two-cluster partitions (point 0 always in cluster 1).
std::vector<DiscretePartition> enumerate_partitions(const FourPointConfig& config);

/// Every partition attaining the minimum MSE, ties within 1e-12.
std::vector<DiscretePartition> enumerate_optimal(double epsilon);

/// 2(1 + eps + eps^2)/3.
double cannibal_mse_formula(double epsilon);

/// eps at which the cannibal and symmetric partitions have equal error,
/// located by bisection on the brute-force errors.
double separation_threshold(double tol);

}  // namespace twomeans::discrete_line
