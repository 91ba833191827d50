#include "twomeans/discrete_line.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "twomeans/error.hpp"

namespace twomeans::discrete_line {

namespace {

constexpr double kTieTol = 1e-12;
constexpr std::array<int, 4> kSymmetric{1, 1, 2, 2};
constexpr std::array<int, 4> kCannibal{1, 1, 1, 2};

PartitionKind classify(const std::array<int, 4>& labels) {
  if (labels == kSymmetric) return PartitionKind::symmetric;
  const auto lonely = [&](int cluster) {
    return std::count(labels.begin(), labels.end(), cluster) == 1;
  };
  const bool first_alone = lonely(labels[0]);
  const bool last_alone = lonely(labels[3]);
  if (first_alone || last_alone) return PartitionKind::cannibal;
  return PartitionKind::other;
}

}  // namespace

FourPointConfig::FourPointConfig(double eps)
    : epsilon(eps),
      points{-2.0 - eps, -eps, eps, 2.0 + eps},
      weights{0.25, 0.25, 0.25, 0.25} {
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    fail(ErrorCode::invalid_argument, "epsilon must be positive, got " + std::to_string(eps));
  }
}

DiscretePartition evaluate_partition(const FourPointConfig& config,
                                     const std::array<int, 4>& labels) {
  std::array<double, 2> mass{};
  std::array<double, 2> moment{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (labels[i] != 1 && labels[i] != 2) {
      fail(ErrorCode::invalid_argument, "labels must be 1 or 2");
    }
    const auto c = static_cast<std::size_t>(labels[i] - 1);
    mass[c] += config.weights[i];
    moment[c] += config.weights[i] * config.points[i];
  }
  if (mass[0] == 0.0 || mass[1] == 0.0) {
    fail(ErrorCode::empty_cluster, "both clusters must be nonempty");
  }
  const std::array<double, 2> means{moment[0] / mass[0], moment[1] / mass[1]};
  double mse = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    const double d = config.points[i] - means[static_cast<std::size_t>(labels[i] - 1)];
    mse += config.weights[i] * d * d;
  }
  return {labels, mse, means, classify(labels)};
}

std::vector<DiscretePartition> enumerate_partitions(const FourPointConfig& config) {
  std::vector<DiscretePartition> out;
  // Point 0 is pinned to cluster 1, which removes complements; mask 0 would
  // leave cluster 2 empty.
  for (unsigned mask = 1; mask < 8; ++mask) {
    std::array<int, 4> labels{1, 1, 1, 1};
    for (unsigned bit = 0; bit < 3; ++bit) {
      if (mask & (1u << bit)) labels[bit + 1] = 2;
    }
    out.push_back(evaluate_partition(config, labels));
  }
  return out;
}

std::vector<DiscretePartition> enumerate_optimal(double epsilon) {
  const FourPointConfig config(epsilon);
  const auto all = enumerate_partitions(config);
  const double best =
      std::min_element(all.begin(), all.end(), [](const auto& x, const auto& y) {
        return x.mse < y.mse;
      })->mse;
  std::vector<DiscretePartition> optimal;
  for (const auto& p : all) {
    if (p.mse <= best + kTieTol) optimal.push_back(p);
  }
  return optimal;
}

double cannibal_mse_formula(double epsilon) {
  return 2.0 * (1.0 + epsilon + epsilon * epsilon) / 3.0;
}

double separation_threshold(double tol) {
  if (!(tol >= 1e-12 && tol <= 1e-3)) {
    fail(ErrorCode::invalid_argument, "tol must lie in [1e-12, 1e-3]");
  }
  const auto gap = [](double eps) {
    const FourPointConfig config(eps);
    return evaluate_partition(config, kCannibal).mse -
           evaluate_partition(config, kSymmetric).mse;
  };
  // The cannibal partition wins at small separation and loses by eps = 1.
  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace twomeans::discrete_line
