#include "twomeans/geometry.hpp"

#include <cmath>
#include <string>

#include "twomeans/error.hpp"

namespace twomeans {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid argument";
    case ErrorCode::empty_cluster: return "empty cluster";
    case ErrorCode::degenerate_partition: return "degenerate partition";
    case ErrorCode::endpoint: return "endpoint";
    case ErrorCode::singular_prefactor: return "singular prefactor";
    case ErrorCode::non_convergence: return "non-convergence";
    case ErrorCode::coincident_centroids: return "coincident centroids";
  }
  return "unknown";
}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

GeometryParams::GeometryParams(int dimension) : n(dimension) { validate(dimension); }

void GeometryParams::validate(int dimension) {
  if (dimension < 2) {
    fail(ErrorCode::invalid_argument,
         "dimension must be at least 2, got " + std::to_string(dimension));
  }
}

Cutoff::Cutoff(double a) : a_(std::fabs(a)) {
  if (!std::isfinite(a) || a_ > 2.0) {
    fail(ErrorCode::invalid_argument,
         "cutoff must lie in [-2, 2], got " + std::to_string(a));
  }
}

}  // namespace twomeans
