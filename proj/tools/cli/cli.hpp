#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace twomeans::cli {

enum class Subcommand { eval, sweep, minimize, certify, lloyd, discrete };
enum class OutputFormat { csv, json };

struct RunConfig {
  Subcommand subcommand = Subcommand::eval;
  std::optional<int> n;
  std::optional<double> a;
  double grid_step = 0.05;
  std::size_t samples = 200000;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  OutputFormat output_format = OutputFormat::csv;
  std::optional<std::string> output_path;

  // Subcommand specific.
  std::string method = "golden_section";  // minimize
  std::string init = "antipodal";         // lloyd
  int max_iter = 500;                     // lloyd
  std::optional<std::string> cloud_path;  // lloyd
  double epsilon = 0.2;                   // discrete
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

// Reasons a config cannot be run; empty when valid.
std::vector<std::string> validate(const RunConfig& config);

// Executes a validated config. The report goes to config.output_path, or to
// out when no path is set; diagnostics go to err.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv (argv[0] is the program name) and runs it.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Decimal text with 17 significant digits, independent of the global locale.
std::string format_number(double value);

}  // namespace twomeans::cli
