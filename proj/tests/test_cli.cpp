#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "twomeans/twomeans.h"

using twomeans::cli::main_entry;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "twomeans");
  std::ostringstream out, err;
  const int code = main_entry(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::string field;
    std::istringstream cells(line);
    while (std::getline(cells, field, ',')) row.push_back(field);
    if (!line.empty() && line.back() == ',') row.emplace_back();
    rows.push_back(row);
  }
  return rows;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("twomeans_cli_test_" + name);
}

}  // namespace

TEST_CASE("eval prints the report") {
  const auto r = cli({"eval", "--n", "3", "--a", "0.8"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][0] == "n");
  CHECK(rows[0][5] == "E");
  CHECK(std::stod(rows[1][5]) == doctest::Approx(1.16).epsilon(1e-14));
  CHECK(std::stod(rows[1][6]) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("eval json carries every config field") {
  const auto r = cli({"eval", "--n", "5", "--a", "1.25", "--format", "json", "--seed", "42"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto& config = j.at("config");
  CHECK(config.at("seed") == 42);
  CHECK(config.at("n") == 5);
  CHECK(config.at("a") == 1.25);
  for (const char* key : {"subcommand", "grid_step", "samples", "tol", "output_format",
                          "output_path", "method", "init", "max_iter", "cloud_path", "epsilon"}) {
    CHECK(config.contains(key));
  }
}

TEST_CASE("sweep: 40 rows, E strictly increasing for n = 4") {
  const auto r = cli({"sweep", "--n", "4", "--grid-step", "0.05"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 41);
  CHECK(rows[0] == std::vector<std::string>{"n", "a", "E", "dEda", "M_minus", "C_minus", "C_plus"});
  for (std::size_t i = 2; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][2]) > std::stod(rows[i - 1][2]));
  }
}

TEST_CASE("sweep csv round-trips through the library") {
  const auto path = temp_path("sweep.csv");
  const auto r = cli({"sweep", "--n", "6", "--grid-step", "0.02", "--output", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  const auto rows = parse_csv(text.str());
  REQUIRE(rows.size() == 101);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    double e = 0.0;
    REQUIRE(tm_mse_total(std::stoi(rows[i][0]), std::stod(rows[i][1]), &e) == TM_OK);
    CHECK(std::fabs(e - std::stod(rows[i][2])) < 1e-12);
  }
  std::filesystem::remove(path);
}

TEST_CASE("sweep leaves the refused derivative empty") {
  const auto r = cli({"sweep", "--n", "2"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  CHECK(rows[1][3].empty());
  CHECK_FALSE(rows[2][3].empty());
  CHECK(std::stod(rows[2][3]) < 0.0);
}

TEST_CASE("minimize") {
  auto r = cli({"minimize", "--n", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(std::fabs(j.at("result").at("a_star").get<double>() - 0.2245505652783265) < 1e-8);
  r = cli({"minimize", "--n", "7", "--method", "grid_refine"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  CHECK(rows[1][1] == "0");
  CHECK(rows[1][3] == "grid_refine");
}

TEST_CASE("certify passes and reports each check") {
  const auto r = cli({"certify", "--n", "5", "--grid-step", "0.05"});
  CHECK(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() > 1);
  CHECK(rows[0][0] == "check");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].size() == 5);
    CHECK(rows[i][3] == "PASS");
  };
}

TEST_CASE("lloyd summary and cloud export") {
  const auto path = temp_path("cloud.csv");
  const auto r = cli({"lloyd", "--n", "3", "--samples", "5000", "--seed", "9", "--cloud-output",
                      path.string()});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][0] == "3");
  CHECK(rows[1][1] == "5000");
  CHECK(rows[1][2] == "9");
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  const auto cloud = parse_csv(text.str());
  REQUIRE(cloud.size() == 5001);
  CHECK(cloud[0] == std::vector<std::string>{"x1", "x2", "x3", "source", "cluster"});
  std::filesystem::remove(path);

  // Same seed, same report.
  const auto again = cli({"lloyd", "--n", "3", "--samples", "5000", "--seed", "9"});
  CHECK(again.out == r.out);
}

TEST_CASE("lloyd json trace is non-increasing") {
  const auto r = cli({"lloyd", "--n", "2", "--samples", "20000", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto trace = nlohmann::json::parse(r.out).at("run").at("mse_trace");
  for (std::size_t k = 1; k < trace.size(); ++k) {
    CHECK(trace[k].get<double>() <= trace[k - 1].get<double>() + 1e-12);
  }
}

TEST_CASE("discrete") {
  const auto r = cli({"discrete", "--epsilon", "0.2"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1][1] == "cannibal");
  CHECK(std::stod(rows[1][3]) == doctest::Approx(2 * (1 + 0.2 + 0.04) / 3).epsilon(1e-14));
  const auto sym = parse_csv(cli({"discrete", "--epsilon", "0.5"}).out);
  REQUIRE(sym.size() == 2);
  CHECK(sym[1][1] == "symmetric");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(cli({}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"eval", "--n", "3"}).code == 2);
  CHECK(cli({"eval", "--n", "1", "--a", "0.5"}).code == 2);
  CHECK(cli({"eval", "--n", "3", "--a", "2.5"}).code == 2);
  CHECK(cli({"eval", "--n", "3", "--a", "0.5", "--format", "xml"}).code == 2);
  CHECK(cli({"sweep", "--n", "3", "--grid-step", "0"}).code == 2);
  CHECK(cli({"minimize", "--n", "2", "--method", "bogus"}).code == 2);
  CHECK(cli({"minimize", "--n", "2", "--tol", "1"}).code == 2);
  CHECK(cli({"certify", "--n", "2"}).code == 2);
  CHECK(cli({"lloyd", "--n", "3", "--samples", "1"}).code == 2);
  CHECK(cli({"discrete", "--epsilon", "-1"}).code == 2);
  const auto r = cli({"eval", "--n", "1", "--a", "0.5"});
  CHECK(r.out.empty());
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("runtime failures exit with 1") {
  const auto r = cli({"eval", "--n", "3", "--a", "0.5", "--output", "/nonexistent/dir/x.csv"});
  CHECK(r.code == 1);
  CHECK_FALSE(r.err.empty());
}

TEST_CASE("format_number keeps 17 significant digits") {
  using twomeans::cli::format_number;
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-2.5e-10) == "-2.5000000000000002e-10");
  CHECK(std::stod(format_number(M_PI)) == M_PI);
}
