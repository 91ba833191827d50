#pragma once

#include <stdexcept>
#include <string>

namespace twomeans {

enum class ErrorCode {
  invalid_argument,
  empty_cluster,
  degenerate_partition,
  endpoint,
  singular_prefactor,
  non_convergence,
  coincident_centroids,
};

const char* to_string(ErrorCode code) noexcept;

// All library failures are reported through this exception. The code is
// what callers (and the C API) dispatch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace twomeans
