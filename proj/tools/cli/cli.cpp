#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "twomeans/twomeans.h"

namespace twomeans::cli {

namespace {

using nlohmann::ordered_json;

constexpr const char* kSweepHeader = "n,a,E,dEda,M_minus,C_minus,C_plus";

// Default dimensions for certify when --n is not given.
constexpr int kCertifyMinN = 4;
constexpr int kCertifyMaxN = 12;
const std::vector<int> kMonotoneDimensionGrid{4, 5, 6, 8, 12, 16};

// Raised for failures reported by the C API.
struct ApiError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(tm_status status, const std::string& context) {
  if (status != TM_OK) {
    throw ApiError(context + ": " + tm_status_string(status) + " (" + tm_last_error() + ")");
  }
}

struct CloudDeleter {
  void operator()(tm_cloud* c) const { tm_cloud_free(c); }
};
struct RunDeleter {
  void operator()(tm_lloyd_run* r) const { tm_lloyd_run_free(r); }
};
struct CertDeleter {
  void operator()(tm_certification* c) const { tm_certification_free(c); }
};

const char* subcommand_name(Subcommand s) {
  switch (s) {
    case Subcommand::eval: return "eval";
    case Subcommand::sweep: return "sweep";
    case Subcommand::minimize: return "minimize";
    case Subcommand::certify: return "certify";
    case Subcommand::lloyd: return "lloyd";
    case Subcommand::discrete: return "discrete";
  }
  return "unknown";
}

std::optional<tm_method> parse_method(const std::string& name) {
  if (name == "golden_section") return TM_METHOD_GOLDEN_SECTION;
  if (name == "derivative_bisection") return TM_METHOD_DERIVATIVE_BISECTION;
  if (name == "grid_refine") return TM_METHOD_GRID_REFINE;
  return std::nullopt;
}

std::optional<tm_lloyd_init> parse_init(const std::string& name) {
  if (name == "antipodal") return TM_INIT_ANTIPODAL;
  if (name == "random_points") return TM_INIT_RANDOM_POINTS;
  return std::nullopt;
}

const char* kind_name(tm_partition_kind kind) {
  switch (kind) {
    case TM_PARTITION_SYMMETRIC: return "symmetric";
    case TM_PARTITION_CANNIBAL: return "cannibal";
    case TM_PARTITION_OTHER: return "other";
  }
  return "unknown";
}

// JSON writer that renders numbers through format_number so that every
// floating-point value carries 17 significant digits.
void write_json(std::ostream& os, const ordered_json& j, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [key, value] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << ordered_json(key).dump() << ": ";
        write_json(os, value, indent + 2);
      }
      os << '\n' << close << '}';
      return;
    }
    case ordered_json::value_t::array: {
      os << '[';
      bool first = true;
      for (const auto& value : j) {
        if (!first) os << ", ";
        first = false;
        write_json(os, value, indent + 2);
      }
      os << ']';
      return;
    }
    case ordered_json::value_t::number_float: {
      const double v = j.get<double>();
      os << (std::isfinite(v) ? format_number(v) : std::string("null"));
      return;
    }
    default:
      os << j.dump();
  }
}

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["subcommand"] = subcommand_name(c.subcommand);
  j["n"] = c.n ? ordered_json(*c.n) : ordered_json(nullptr);
  j["a"] = c.a ? ordered_json(*c.a) : ordered_json(nullptr);
  j["grid_step"] = c.grid_step;
  j["samples"] = c.samples;
  j["seed"] = c.seed;
  j["tol"] = c.tol;
  j["output_format"] = c.output_format == OutputFormat::csv ? "csv" : "json";
  j["output_path"] = c.output_path ? ordered_json(*c.output_path) : ordered_json(nullptr);
  j["method"] = c.method;
  j["init"] = c.init;
  j["max_iter"] = c.max_iter;
  j["cloud_path"] = c.cloud_path ? ordered_json(*c.cloud_path) : ordered_json(nullptr);
  j["epsilon"] = c.epsilon;
  return j;
}

// Derivative column policy: refused values (n = 2 near a = 0) are empty,
// endpoint values are 0.
std::optional<double> derivative_cell(int n, double a) {
  double d = 0.0;
  const tm_status status = tm_mse_derivative(n, a, &d);
  if (status == TM_OK || status == TM_ERR_ENDPOINT) return d;
  if (status == TM_ERR_SINGULAR_PREFACTOR) return std::nullopt;
  check(status, "mse_derivative");
  return std::nullopt;
}

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

ordered_json json_or_null(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

std::vector<double> grid(double step) {
  std::vector<double> out;
  for (long k = 0;; ++k) {
    const double a = static_cast<double>(k) * step;
    if (a > 2.0 - 1e-12) break;
    out.push_back(a);
  }
  return out;
}

// --------------------------------------------------------------------------

int run_eval(const RunConfig& c, std::ostream& out) {
  tm_mse_report r{};
  check(tm_mse_evaluate(*c.n, *c.a, &r), "eval");
  const std::optional<double> derivative =
      r.has_derivative ? std::optional<double>(r.derivative) : std::nullopt;
  const std::optional<double> bracket =
      r.has_bracket_factor ? std::optional<double>(r.bracket_factor) : std::nullopt;
  const std::optional<double> c_minus =
      r.has_c_minus ? std::optional<double>(r.c_minus_rho) : std::nullopt;
  if (c.output_format == OutputFormat::csv) {
    out << "n,a,E_minus,E_pm,E_plus,E,dEda,bracket_factor,M_minus,M_plus,C_minus,C_plus\n";
    out << r.n << ',' << format_number(r.a) << ',' << format_number(r.e_minus) << ','
        << format_number(r.e_pm) << ',' << format_number(r.e_plus) << ','
        << format_number(r.e_total) << ',' << cell(derivative) << ',' << cell(bracket) << ','
        << format_number(r.m_minus) << ',' << format_number(r.m_plus) << ',' << cell(c_minus)
        << ',' << format_number(r.c_plus_rho) << '\n';
    return kExitOk;
  }
  ordered_json j;
  j["config"] = config_json(c);
  ordered_json rep;
  rep["n"] = r.n;
  rep["a"] = r.a;
  rep["E_minus"] = r.e_minus;
  rep["E_pm"] = r.e_pm;
  rep["E_plus"] = r.e_plus;
  rep["E"] = r.e_total;
  rep["dEda"] = json_or_null(derivative);
  rep["bracket_factor"] = json_or_null(bracket);
  rep["M_minus"] = r.m_minus;
  rep["M_plus"] = r.m_plus;
  rep["C_minus"] = json_or_null(c_minus);
  rep["C_plus"] = r.c_plus_rho;
  j["report"] = rep;
  write_json(out, j);
  out << '\n';
  return kExitOk;
}

int run_sweep(const RunConfig& c, std::ostream& out) {
  const int n = *c.n;
  ordered_json rows = ordered_json::array();
  if (c.output_format == OutputFormat::csv) out << kSweepHeader << '\n';
  for (const double a : grid(c.grid_step)) {
    double e = 0.0;
    double m = 0.0;
    double cm = 0.0;
    double cp = 0.0;
    check(tm_mse_total(n, a, &e), "mse_total");
    check(tm_mass_minus(n, a, &m), "mass_minus");
    check(tm_centroids(n, a, &cm, &cp), "centroids");
    const auto d = derivative_cell(n, a);
    cm -= 1.0;
    cp -= 1.0;
    if (c.output_format == OutputFormat::csv) {
      out << n << ',' << format_number(a) << ',' << format_number(e) << ',' << cell(d) << ','
          << format_number(m) << ',' << format_number(cm) << ',' << format_number(cp) << '\n';
    } else {
      ordered_json row;
      row["n"] = n;
      row["a"] = a;
      row["E"] = e;
      row["dEda"] = json_or_null(d);
      row["M_minus"] = m;
      row["C_minus"] = cm;
      row["C_plus"] = cp;
      rows.push_back(row);
    }
  }
  if (c.output_format == OutputFormat::json) {
    ordered_json j;
    j["config"] = config_json(c);
    j["rows"] = rows;
    write_json(out, j);
    out << '\n';
  }
  return kExitOk;
}

int run_minimize(const RunConfig& c, std::ostream& out) {
  tm_optimization_result r{};
  check(tm_minimize_cutoff(*c.n, c.tol, *parse_method(c.method), &r), "minimize");
  if (c.output_format == OutputFormat::csv) {
    out << "n,a_star,E_star,method,evaluations,bracket_lo,bracket_hi\n";
    out << r.n << ',' << format_number(r.a_star) << ',' << format_number(r.e_star) << ','
        << tm_method_name(r.method) << ',' << r.evaluations << ','
        << format_number(r.bracket_lo) << ',' << format_number(r.bracket_hi) << '\n';
    return kExitOk;
  }
  ordered_json j;
  j["config"] = config_json(c);
  ordered_json res;
  res["n"] = r.n;
  res["a_star"] = r.a_star;
  res["E_star"] = r.e_star;
  res["method"] = tm_method_name(r.method);
  res["evaluations"] = r.evaluations;
  res["bracket"] = {r.bracket_lo, r.bracket_hi};
  j["result"] = res;
  write_json(out, j);
  out << '\n';
  return kExitOk;
}

struct CheckOutcome {
  std::string check;
  int n;  // 0 when the check spans several dimensions
  std::string detail;
  std::vector<double> failing_a;
};

std::vector<CheckOutcome> certify_dimension(int n, double step) {
  std::vector<CheckOutcome> outcomes;

  {
    tm_certification* raw = nullptr;
    check(tm_certify_monotonicity(n, step, &raw), "certify_monotonicity");
    const std::unique_ptr<tm_certification, CertDeleter> cert(raw);
    CheckOutcome o{"derivative_positive", n,
                   std::to_string(tm_certification_points(cert.get())) + " points", {}};
    for (std::size_t i = 0; i < tm_certification_failure_count(cert.get()); ++i) {
      o.failing_a.push_back(tm_certification_failure_at(cert.get(), i));
    }
    outcomes.push_back(std::move(o));
  }

  if (n > 3) {
    CheckOutcome o{"mass_between_n3_and_1", n, "0 <= a <= 1", {}};
    for (const double a : grid(step)) {
      if (a > 1.0 + 1e-12) break;
      double m3 = 0.0;
      double mn = 0.0;
      check(tm_mass_minus(3, a, &m3), "mass_minus");
      check(tm_mass_minus(n, a, &mn), "mass_minus");
      if (!(m3 <= mn + 1e-12 && mn <= 1.0 + 1e-12)) o.failing_a.push_back(a);
    }
    outcomes.push_back(std::move(o));
  }

  CheckOutcome bound{"mass_lower_bound", n, "1 <= a <= 1.95", {}};
  CheckOutcome series{"mass_series_agreement", n, "1 < a <= 1.95; |series - quadrature| < 1e-8",
                      {}};
  for (int k = 0; k <= 19; ++k) {
    const double a = 1.0 + 0.05 * k;
    int holds = 0;
    check(tm_mass_lower_bound_check(n, a, &holds), "mass_lower_bound_check");
    if (!holds) bound.failing_a.push_back(a);
    if (k == 0) continue;
    double s = 0.0;
    double q = 0.0;
    check(tm_mass_series(n, a, &s), "mass_series");
    check(tm_mass_minus(n, a, &q), "mass_minus");
    if (!(std::fabs(s - q) < 1e-8)) series.failing_a.push_back(a);
  }
  outcomes.push_back(std::move(bound));
  outcomes.push_back(std::move(series));
  return outcomes;
}

CheckOutcome certify_dimension_monotonicity() {
  std::string grid_text;
  for (const int n : kMonotoneDimensionGrid) {
    grid_text += (grid_text.empty() ? "" : " ") + std::to_string(n);
  }
  CheckOutcome o{"mass_monotone_in_n", 0, "n in {" + grid_text + "}", {}};
  for (int k = 1; k <= 19; ++k) {
    if (k == 10) continue;
    const double a = 0.1 * k;
    int holds = 0;
    check(tm_mass_dimension_monotonicity_check(a, kMonotoneDimensionGrid.data(),
                                               kMonotoneDimensionGrid.size(), &holds),
          "mass_dimension_monotonicity_check");
    if (!holds) o.failing_a.push_back(a);
  }
  return o;
}

int run_certify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  std::vector<int> dims;
  if (c.n) {
    dims.push_back(*c.n);
  } else {
    for (int n = kCertifyMinN; n <= kCertifyMaxN; ++n) dims.push_back(n);
  }
  std::vector<CheckOutcome> outcomes{certify_dimension_monotonicity()};
  for (const int n : dims) {
    auto more = certify_dimension(n, c.grid_step);
    outcomes.insert(outcomes.end(), more.begin(), more.end());
  }

  bool all_passed = true;
  ordered_json checks = ordered_json::array();
  if (c.output_format == OutputFormat::csv) out << "check,n,detail,result,failures\n";
  for (const auto& o : outcomes) {
    const bool passed = o.failing_a.empty();
    all_passed = all_passed && passed;
    if (c.output_format == OutputFormat::csv) {
      out << o.check << ',' << (o.n ? std::to_string(o.n) : std::string("all")) << ','
          << o.detail << ',' << (passed ? "PASS" : "FAIL") << ',' << o.failing_a.size() << '\n';
    } else {
      ordered_json jc;
      jc["check"] = o.check;
      jc["n"] = o.n ? ordered_json(o.n) : ordered_json(nullptr);
      jc["detail"] = o.detail;
      jc["passed"] = passed;
      jc["failing_a"] = o.failing_a;
      checks.push_back(jc);
    }
    for (const double a : o.failing_a) {
      err << "FAIL " << o.check << " n=" << (o.n ? std::to_string(o.n) : std::string("all"))
          << " a=" << format_number(a) << '\n';
    }
  }
  if (c.output_format == OutputFormat::json) {
    ordered_json j;
    j["config"] = config_json(c);
    j["checks"] = checks;
    j["passed"] = all_passed;
    write_json(out, j);
    out << '\n';
  }
  return all_passed ? kExitOk : kExitFailure;
}

void write_cloud(const std::string& path, const tm_cloud* cloud, const tm_lloyd_run* run) {
  std::ofstream file(path);
  if (!file) throw ApiError("cannot open " + path);
  const int n = tm_cloud_dimension(cloud);
  const std::size_t count = tm_cloud_size(cloud);
  std::vector<std::uint8_t> labels(count);
  check(tm_lloyd_labels(run, labels.data(), count), "lloyd_labels");
  for (int k = 1; k <= n; ++k) file << 'x' << k << ',';
  file << "source,cluster\n";
  std::vector<double> x(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < count; ++i) {
    int source = 0;
    check(tm_cloud_point(cloud, i, x.data()), "cloud_point");
    check(tm_cloud_source(cloud, i, &source), "cloud_source");
    for (const double v : x) file << format_number(v) << ',';
    file << source << ',' << static_cast<int>(labels[i]) << '\n';
  }
}

int run_lloyd(const RunConfig& c, std::ostream& out) {
  const int n = *c.n;
  tm_cloud* raw_cloud = nullptr;
  check(tm_sample_spheres(n, c.samples, c.seed, &raw_cloud), "sample_spheres");
  const std::unique_ptr<tm_cloud, CloudDeleter> cloud(raw_cloud);

  tm_lloyd_options options;
  tm_lloyd_options_default(&options);
  options.init = *parse_init(c.init);
  options.max_iter = c.max_iter;
  options.init_seed = c.seed;
  tm_lloyd_run* raw_run = nullptr;
  check(tm_lloyd(cloud.get(), &options, &raw_run), "lloyd");
  const std::unique_ptr<tm_lloyd_run, RunDeleter> run(raw_run);

  std::vector<double> c1(static_cast<std::size_t>(n));
  std::vector<double> c2(static_cast<std::size_t>(n));
  check(tm_lloyd_centroid(run.get(), 0, c1.data()), "lloyd_centroid");
  check(tm_lloyd_centroid(run.get(), 1, c2.data()), "lloyd_centroid");
  const std::optional<double> cutoff =
      tm_lloyd_has_cutoff(run.get()) ? std::optional<double>(tm_lloyd_cutoff(run.get()))
                                     : std::nullopt;

  if (c.cloud_path) write_cloud(*c.cloud_path, cloud.get(), run.get());

  if (c.output_format == OutputFormat::csv) {
    out << "n,count,seed,init,iterations,converged,final_mse,axis_deviation_angle,"
           "extracted_cutoff,c1_x1,c2_x1\n";
    out << n << ',' << c.samples << ',' << c.seed << ',' << c.init << ','
        << tm_lloyd_iterations(run.get()) << ',' << tm_lloyd_converged(run.get()) << ','
        << format_number(tm_lloyd_final_mse(run.get())) << ','
        << format_number(tm_lloyd_axis_deviation_angle(run.get())) << ',' << cell(cutoff) << ','
        << format_number(c1[0]) << ',' << format_number(c2[0]) << '\n';
    return kExitOk;
  }
  ordered_json j;
  j["config"] = config_json(c);
  ordered_json r;
  r["n"] = n;
  r["count"] = c.samples;
  r["seed"] = c.seed;
  r["iterations"] = tm_lloyd_iterations(run.get());
  r["converged"] = tm_lloyd_converged(run.get()) != 0;
  r["final_mse"] = tm_lloyd_final_mse(run.get());
  r["axis_deviation_angle"] = tm_lloyd_axis_deviation_angle(run.get());
  r["extracted_cutoff"] = json_or_null(cutoff);
  r["centroids"] = {c1, c2};
  std::vector<double> trace;
  for (std::size_t i = 0; i < tm_lloyd_trace_length(run.get()); ++i) {
    trace.push_back(tm_lloyd_trace_at(run.get(), i));
  }
  r["mse_trace"] = trace;
  j["run"] = r;
  write_json(out, j);
  out << '\n';
  return kExitOk;
}

int run_discrete(const RunConfig& c, std::ostream& out) {
  std::size_t count = 0;
  check(tm_discrete_enumerate_optimal(c.epsilon, nullptr, 0, &count), "enumerate_optimal");
  std::vector<tm_discrete_partition> parts(count);
  check(tm_discrete_enumerate_optimal(c.epsilon, parts.data(), parts.size(), &count),
        "enumerate_optimal");
  double threshold = 0.0;
  check(tm_discrete_separation_threshold(std::clamp(c.tol, 1e-12, 1e-3), &threshold),
        "separation_threshold");

  const auto labels_text = [](const tm_discrete_partition& p) {
    std::string s;
    for (const int l : p.labels) s += static_cast<char>('0' + l);
    return s;
  };
  if (c.output_format == OutputFormat::csv) {
    out << "epsilon,kind,labels,mse,mean1,mean2,threshold\n";
    for (const auto& p : parts) {
      out << format_number(c.epsilon) << ',' << kind_name(p.kind) << ',' << labels_text(p)
          << ',' << format_number(p.mse) << ',' << format_number(p.means[0]) << ','
          << format_number(p.means[1]) << ',' << format_number(threshold) << '\n';
    }
    return kExitOk;
  }
  ordered_json j;
  j["config"] = config_json(c);
  ordered_json list = ordered_json::array();
  for (const auto& p : parts) {
    ordered_json jp;
    jp["kind"] = kind_name(p.kind);
    jp["labels"] = std::vector<int>(std::begin(p.labels), std::end(p.labels));
    jp["points"] = std::vector<double>(std::begin(p.points), std::end(p.points));
    jp["mse"] = p.mse;
    jp["means"] = {p.means[0], p.means[1]};
    list.push_back(jp);
  }
  j["optimal_partitions"] = list;
  j["threshold"] = threshold;
  write_json(out, j);
  out << '\n';
  return kExitOk;
}

}  // namespace

std::string format_number(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
  return {buf, result.ptr};
}

std::vector<std::string> validate(const RunConfig& c) {
  std::vector<std::string> problems;
  const auto need_n = [&](int min_n) {
    if (!c.n) {
      problems.push_back("--n is required");
    } else if (*c.n < min_n) {
      problems.push_back("--n must be at least " + std::to_string(min_n));
    }
  };
  switch (c.subcommand) {
    case Subcommand::eval:
      need_n(2);
      if (!c.a) {
        problems.push_back("--a is required");
      } else if (!(std::fabs(*c.a) <= 2.0)) {
        problems.push_back("--a must lie in [-2, 2]");
      }
      break;
    case Subcommand::sweep:
      need_n(2);
      if (!(c.grid_step >= 1e-4 && c.grid_step <= 1.0)) {
        problems.push_back("--grid-step must lie in [1e-4, 1]");
      }
      break;
    case Subcommand::minimize:
      need_n(2);
      if (!(c.tol >= 1e-12 && c.tol <= 1e-2)) problems.push_back("--tol must lie in [1e-12, 1e-2]");
      if (!parse_method(c.method)) problems.push_back("unknown --method " + c.method);
      if (c.method == "derivative_bisection" && c.n && *c.n < 4) {
        problems.push_back("derivative_bisection requires --n >= 4");
      }
      break;
    case Subcommand::certify:
      if (c.n && *c.n < 3) problems.push_back("--n must be at least 3");
      if (!(c.grid_step >= 1e-4 && c.grid_step <= 0.1)) {
        problems.push_back("--grid-step must lie in [1e-4, 0.1]");
      }
      break;
    case Subcommand::lloyd:
      need_n(2);
      if (c.samples < 2) problems.push_back("--samples must be at least 2");
      if (c.max_iter < 1) problems.push_back("--max-iter must be at least 1");
      if (!parse_init(c.init)) problems.push_back("unknown --init " + c.init);
      break;
    case Subcommand::discrete:
      if (!(c.epsilon > 0.0) || !std::isfinite(c.epsilon)) {
        problems.push_back("--epsilon must be positive");
      }
      break;
  }
  return problems;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* sink = &out;
  if (config.output_path) {
    file.open(*config.output_path);
    if (!file) {
      err << "error: cannot open " << *config.output_path << '\n';
      return kExitFailure;
    }
    sink = &file;
  }
  try {
    switch (config.subcommand) {
      case Subcommand::eval: return run_eval(config, *sink);
      case Subcommand::sweep: return run_sweep(config, *sink);
      case Subcommand::minimize: return run_minimize(config, *sink);
      case Subcommand::certify: return run_certify(config, *sink, err);
      case Subcommand::lloyd: return run_lloyd(config, *sink);
      case Subcommand::discrete: return run_discrete(config, *sink);
    }
  } catch (const ApiError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and Monte Carlo 2-means error for two touching unit spheres"};
  app.require_subcommand(1);
  RunConfig config;
  std::string format = "csv";
  std::string output;
  std::string cloud_output;

  const auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Report format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", output, "Report path (default: stdout)");
    sub->add_option("--seed", config.seed, "Seed, recorded in JSON reports");
    sub->add_option("--tol", config.tol, "Tolerance");
  };
  const auto add_n = [&](CLI::App* sub) {
    sub->add_option_function<int>("--n", [&](const int& v) { config.n = v; }, "Dimension");
  };

  auto* eval = app.add_subcommand("eval", "Evaluate E(n,a) and its parts at one cutoff");
  add_n(eval);
  eval->add_option_function<double>("--a", [&](const double& v) { config.a = v; }, "Cutoff");
  add_output(eval);

  auto* sweep = app.add_subcommand("sweep", "Tabulate E, dE/da, masses and centroids on a grid");
  add_n(sweep);
  sweep->add_option("--grid-step", config.grid_step, "Grid spacing in a");
  add_output(sweep);

  auto* minimize = app.add_subcommand("minimize", "Locate the optimal cutoff");
  add_n(minimize);
  minimize->add_option("--method", config.method,
                       "golden_section | derivative_bisection | grid_refine");
  add_output(minimize);

  auto* certify = app.add_subcommand("certify", "Run the numerical certification checks");
  add_n(certify);
  certify->add_option("--grid-step", config.grid_step, "Grid spacing in a");
  add_output(certify);

  auto* lloyd = app.add_subcommand("lloyd", "Run Lloyd's algorithm on sampled spheres");
  add_n(lloyd);
  lloyd->add_option("--samples", config.samples, "Number of sample points");
  lloyd->add_option("--init", config.init, "antipodal | random_points");
  lloyd->add_option("--max-iter", config.max_iter, "Iteration cap");
  lloyd->add_option("--cloud-output", cloud_output, "Write the labelled point cloud as CSV");
  add_output(lloyd);

  auto* discrete = app.add_subcommand("discrete", "Four points on a line");
  discrete->add_option("--epsilon", config.epsilon, "Half gap between the two spheres");
  add_output(discrete);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const std::pair<CLI::App*, Subcommand> table[] = {
      {eval, Subcommand::eval},       {sweep, Subcommand::sweep},
      {minimize, Subcommand::minimize}, {certify, Subcommand::certify},
      {lloyd, Subcommand::lloyd},     {discrete, Subcommand::discrete}};
  for (const auto& [sub, kind] : table) {
    if (sub->parsed()) config.subcommand = kind;
  }
  config.output_format = format == "json" ? OutputFormat::json : OutputFormat::csv;
  if (!output.empty()) config.output_path = output;
  if (!cloud_output.empty()) config.cloud_path = cloud_output;

  const auto problems = validate(config);
  if (!problems.empty()) {
    for (const auto& p : problems) err << "error: " << p << '\n';
    err << app.get_subcommand(subcommand_name(config.subcommand))->help();
    return kExitUsage;
  }
  return run(config, out, err);
}

}  // namespace twomeans::cli
