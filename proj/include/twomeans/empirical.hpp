#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

// Monte Carlo counterpart of the continuum model: samples on the two touching
// unit spheres centred at -e1 and +e1, empirical 2-means error, Voronoi
// reassignment and Lloyd's iteration.
namespace twomeans::empirical {

// Cluster labels: 0 is cluster 1, 1 is cluster 2.
using Assignment = std::vector<std::uint8_t>;

class SampleCloud {
 public:
  SampleCloud(int n, std::vector<double> coords, std::vector<std::uint8_t> source,
              std::uint64_t seed);

  int dimension() const noexcept { return n_; }
  std::size_t size() const noexcept { return source_.size(); }
  std::uint64_t seed() const noexcept { return seed_; }

  std::span<const double> point(std::size_t i) const {
    return {coords_.data() + i * static_cast<std::size_t>(n_),
            static_cast<std::size_t>(n_)};
  }
  // 0 for the sphere centred at -e1, 1 for the one at +e1.
  std::uint8_t source(std::size_t i) const { return source_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

 private:
  int n_;
  std::vector<double> coords_;
  std::vector<std::uint8_t> source_;
  std::uint64_t seed_;
};

using Centroid = std::vector<double>;
using CentroidPair = std::pair<Centroid, Centroid>;

/// Uniform samples from (sigma_{-1} + sigma_{+1})/2. Point i depends only on
/// (seed, i), so the cloud is identical however it is generated.
SampleCloud sample_spheres(int n, std::size_t count, std::uint64_t seed);

/// Labels from the hyperplane split x1 <= threshold (cluster 1) vs. x1 >
/// threshold, or along any other coordinate axis.
Assignment axis_split(const SampleCloud& cloud, int axis, double threshold);

/// Cluster means of a labelling. Throws Error(empty_cluster).
CentroidPair cluster_means(const SampleCloud& cloud, const Assignment& labels);

/// Squared distance of every point to its own cluster mean.
std::vector<double> squared_distances(const SampleCloud& cloud,
                                      const Assignment& labels);

/// Sample-average squared distance to the cluster means.
double empirical_mse(const SampleCloud& cloud, const Assignment& labels);

struct MseEstimate {
  double mse;
  double std_error;
};
MseEstimate empirical_mse_with_error(const SampleCloud& cloud,
                                     const Assignment& labels);

/// Nearest-centroid labels; points equidistant from both go to cluster 1.
/// Throws Error(coincident_centroids).
Assignment voronoi_reassign(const SampleCloud& cloud, const CentroidPair& centroids);

enum class LloydInit { random_points, antipodal, given };

struct LloydOptions {
  LloydInit init = LloydInit::antipodal;
  int max_iter = 500;
  double move_tol = 1e-10;
  std::uint64_t init_seed = 0;         // for random_points
  std::optional<CentroidPair> given;   // for given
  double axis_angle_threshold = 0.05;  // radians
};

struct LloydRun {
  int n;
  std::size_t count;
  std::uint64_t seed;
  CentroidPair centroids;
  Assignment labels;
  std::vector<double> mse_trace;
  int iterations;
  bool converged;
  double axis_deviation_angle;
  // Symmetric-frame x1 coordinate of the centroid midpoint, present when the
  // centroid axis is within the angle threshold of e1.
  std::optional<double> extracted_cutoff;

  double final_mse() const { return mse_trace.back(); }
};

/// Alternates Voronoi reassignment and mean updates until the centroids move
/// less than move_tol. Throws Error(empty_cluster) if a cluster empties.
LloydRun lloyd(const SampleCloud& cloud, const LloydOptions& options = {});

/// Sum with a fixed pairwise order, independent of how callers partition work.
double pairwise_sum(std::span<const double> values);

}  // namespace twomeans::empirical
