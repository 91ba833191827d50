#include "twomeans/empirical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "twomeans/error.hpp"
#include "twomeans/geometry.hpp"

namespace twomeans::empirical {

namespace {

constexpr std::size_t kPairwiseBlock = 256;

constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// SplitMix64 stream keyed by (seed, counter). Each sample point owns its
// stream, so results do not depend on evaluation order.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::uint64_t counter)
      : state_(splitmix64(seed ^ splitmix64(counter + 0x632be59bd9b4e019ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return splitmix64(state_);
  }

 private:
  std::uint64_t state_;
};

// Per-cluster coordinate sums and counts.
struct Accum {
  std::vector<double> sums;  // [cluster * n + coordinate]
  std::array<std::size_t, 2> counts{};
};

Accum accumulate(const SampleCloud& cloud, const Assignment& labels, std::size_t lo,
                 std::size_t hi) {
  const auto n = static_cast<std::size_t>(cloud.dimension());
  if (hi - lo <= kPairwiseBlock) {
    Accum acc{std::vector<double>(2 * n, 0.0), {}};
    for (std::size_t i = lo; i < hi; ++i) {
      const std::size_t c = labels[i];
      const auto x = cloud.point(i);
      for (std::size_t k = 0; k < n; ++k) acc.sums[c * n + k] += x[k];
      ++acc.counts[c];
    }
    return acc;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  Accum left = accumulate(cloud, labels, lo, mid);
  const Accum right = accumulate(cloud, labels, mid, hi);
  for (std::size_t k = 0; k < left.sums.size(); ++k) left.sums[k] += right.sums[k];
  left.counts[0] += right.counts[0];
  left.counts[1] += right.counts[1];
  return left;
}

void check_labels(const SampleCloud& cloud, const Assignment& labels) {
  if (labels.size() != cloud.size()) {
    fail(ErrorCode::invalid_argument, "label count does not match cloud size");
  }
  for (const auto l : labels) {
    if (l > 1) fail(ErrorCode::invalid_argument, "labels must be 0 or 1");
  }
}

double distance(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) s += (x[k] - y[k]) * (x[k] - y[k]);
  return std::sqrt(s);
}

std::vector<double> squared_distances_to(const SampleCloud& cloud, const Assignment& labels,
                                         const CentroidPair& means) {
  std::vector<double> out(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const double d = distance(cloud.point(i), labels[i] == 0 ? means.first : means.second);
    out[i] = d * d;
  }
  return out;
}

void check_centroid(const SampleCloud& cloud, const Centroid& c) {
  if (c.size() != static_cast<std::size_t>(cloud.dimension())) {
    fail(ErrorCode::invalid_argument, "centroid dimension does not match cloud");
  }
}

}  // namespace

SampleCloud::SampleCloud(int n, std::vector<double> coords, std::vector<std::uint8_t> source,
                         std::uint64_t seed)
    : n_(n), coords_(std::move(coords)), source_(std::move(source)), seed_(seed) {
  GeometryParams::validate(n);
  if (coords_.size() != source_.size() * static_cast<std::size_t>(n)) {
    fail(ErrorCode::invalid_argument, "coordinate buffer does not match point count");
  }
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= kPairwiseBlock) {
    double s = 0.0;
    for (const double v : values) s += v;
    return s;
  }
  const std::size_t mid = values.size() / 2;
  return pairwise_sum(values.first(mid)) + pairwise_sum(values.subspan(mid));
}

SampleCloud sample_spheres(int n, std::size_t count, std::uint64_t seed) {
  GeometryParams::validate(n);
  if (count < 2) fail(ErrorCode::invalid_argument, "count must be at least 2");
  const auto dim = static_cast<std::size_t>(n);
  std::vector<double> coords(count * dim);
  std::vector<std::uint8_t> source(count);
  for (std::size_t i = 0; i < count; ++i) {
    CounterRng rng(seed, i);
    std::normal_distribution<double> gauss;
    std::bernoulli_distribution coin;
    source[i] = coin(rng) ? 1 : 0;
    double* x = coords.data() + i * dim;
    double norm = 0.0;
    while (norm == 0.0) {
      double ss = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        x[k] = gauss(rng);
        ss += x[k] * x[k];
      }
      norm = std::sqrt(ss);
    }
    for (std::size_t k = 0; k < dim; ++k) x[k] /= norm;
    x[0] += source[i] ? 1.0 : -1.0;
  }
  return SampleCloud(n, std::move(coords), std::move(source), seed);
}

Assignment axis_split(const SampleCloud& cloud, int axis, double threshold) {
  if (axis < 0 || axis >= cloud.dimension()) {
    fail(ErrorCode::invalid_argument, "axis out of range");
  }
  Assignment labels(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    labels[i] = cloud.point(i)[static_cast<std::size_t>(axis)] <= threshold ? 0 : 1;
  }
  return labels;
}

CentroidPair cluster_means(const SampleCloud& cloud, const Assignment& labels) {
  check_labels(cloud, labels);
  const Accum acc = accumulate(cloud, labels, 0, cloud.size());
  if (acc.counts[0] == 0 || acc.counts[1] == 0) {
    fail(ErrorCode::empty_cluster, "a cluster has no points");
  }
  const auto n = static_cast<std::size_t>(cloud.dimension());
  Centroid c1(n);
  Centroid c2(n);
  for (std::size_t k = 0; k < n; ++k) {
    c1[k] = acc.sums[k] / static_cast<double>(acc.counts[0]);
    c2[k] = acc.sums[n + k] / static_cast<double>(acc.counts[1]);
  }
  return {std::move(c1), std::move(c2)};
}

std::vector<double> squared_distances(const SampleCloud& cloud, const Assignment& labels) {
  return squared_distances_to(cloud, labels, cluster_means(cloud, labels));
}

double empirical_mse(const SampleCloud& cloud, const Assignment& labels) {
  const auto sq = squared_distances(cloud, labels);
  return pairwise_sum(sq) / static_cast<double>(sq.size());
}

MseEstimate empirical_mse_with_error(const SampleCloud& cloud, const Assignment& labels) {
  auto sq = squared_distances(cloud, labels);
  const auto count = static_cast<double>(sq.size());
  const double mean = pairwise_sum(sq) / count;
  for (double& v : sq) v = (v - mean) * (v - mean);
  const double variance = pairwise_sum(sq) / (count - 1.0);
  return {mean, std::sqrt(variance / count)};
}

Assignment voronoi_reassign(const SampleCloud& cloud, const CentroidPair& centroids) {
  const auto& [c1, c2] = centroids;
  check_centroid(cloud, c1);
  check_centroid(cloud, c2);
  if (c1 == c2) fail(ErrorCode::coincident_centroids, "centroids coincide");
  const auto n = static_cast<std::size_t>(cloud.dimension());
  std::vector<double> mid(n);
  std::vector<double> dir(n);
  for (std::size_t k = 0; k < n; ++k) {
    mid[k] = 0.5 * (c1[k] + c2[k]);
    dir[k] = c2[k] - c1[k];
  }
  // |x - c1| <= |x - c2|  <=>  (x - mid) . (c2 - c1) <= 0
  Assignment labels(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const auto x = cloud.point(i);
    double dot = 0.0;
    for (std::size_t k = 0; k < n; ++k) dot += (x[k] - mid[k]) * dir[k];
    labels[i] = dot <= 0.0 ? 0 : 1;
  }
  return labels;
}

LloydRun lloyd(const SampleCloud& cloud, const LloydOptions& options) {
  if (options.max_iter < 1) fail(ErrorCode::invalid_argument, "max_iter must be >= 1");
  if (!(options.move_tol > 0.0)) fail(ErrorCode::invalid_argument, "move_tol must be > 0");
  const auto n = static_cast<std::size_t>(cloud.dimension());

  CentroidPair c;
  switch (options.init) {
    case LloydInit::antipodal:
      c = {Centroid(n, 0.0), Centroid(n, 0.0)};
      c.first[0] = -1.0;
      c.second[0] = 1.0;
      break;
    case LloydInit::random_points: {
      CounterRng rng(options.init_seed, std::numeric_limits<std::uint64_t>::max());
      std::uniform_int_distribution<std::size_t> pick(0, cloud.size() - 1);
      const std::size_t i = pick(rng);
      std::size_t j = pick(rng);
      for (int tries = 0; j == i && tries < 64; ++tries) j = pick(rng);
      const auto x = cloud.point(i);
      const auto y = cloud.point(j);
      c = {Centroid(x.begin(), x.end()), Centroid(y.begin(), y.end())};
      break;
    }
    case LloydInit::given:
      if (!options.given) fail(ErrorCode::invalid_argument, "given init requires centroids");
      c = *options.given;
      check_centroid(cloud, c.first);
      check_centroid(cloud, c.second);
      break;
  }

  LloydRun run{};
  run.n = cloud.dimension();
  run.count = cloud.size();
  run.seed = cloud.seed();
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    Assignment labels = voronoi_reassign(cloud, c);
    CentroidPair means;
    try {
      means = cluster_means(cloud, labels);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::empty_cluster) throw;
      fail(ErrorCode::empty_cluster,
           "Lloyd iteration " + std::to_string(iter) + " emptied a cluster; restart with another seed");
    }
    const auto sq = squared_distances_to(cloud, labels, means);
    run.mse_trace.push_back(pairwise_sum(sq) / static_cast<double>(sq.size()));
    const double moved =
        std::max(distance(means.first, c.first), distance(means.second, c.second));
    c = std::move(means);
    run.labels = std::move(labels);
    run.iterations = iter;
    if (moved < options.move_tol) {
      run.converged = true;
      break;
    }
  }
  run.centroids = c;

  std::vector<double> diff(n);
  for (std::size_t k = 0; k < n; ++k) diff[k] = c.second[k] - c.first[k];
  const double len = distance(c.first, c.second);
  run.axis_deviation_angle = std::acos(std::min(1.0, std::fabs(diff[0]) / len));
  if (run.axis_deviation_angle < options.axis_angle_threshold) {
    run.extracted_cutoff = 0.5 * (c.first[0] + c.second[0]);
  }
  return run;
}

}  // namespace twomeans::empirical
