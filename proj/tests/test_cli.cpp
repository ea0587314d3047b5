#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = HAMSELECT_CLI_PATH;

fs::path workdir() {
  static const fs::path dir = [] {
    auto p = fs::temp_directory_path() / "hamselect_cli_test";
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

fs::path write_config(const std::string& name, const json& cfg) {
  const auto path = workdir() / name;
  std::ofstream out(path);
  out << cfg.dump(2);
  return path;
}

int run(const std::string& args) {
  const int rc = std::system((kCli + " " + args + " > /dev/null 2>&1").c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::istringstream is(line);
  std::string cell;
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  return cells;
}

double csv_value(const fs::path& p, const std::string& column, std::size_t row = 1) {
  const auto lines = csv_lines(slurp(p));
  REQUIRE(lines.size() > row);
  const auto header = split(lines[0]);
  const auto cells = split(lines[row]);
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == column) return std::stod(cells[i]);
  FAIL("column not found: ", column);
  return 0.0;
}

}  // namespace

TEST_CASE("bounds emits the expected row") {
  const auto cfg = write_config(
      "bounds.json", {{"family", "gaussian"}, {"a", 2.0}, {"d", 100}, {"s", 10}});
  const auto out = workdir() / "bounds.csv";
  CHECK(run("bounds --config " + cfg.string() + " --out " + out.string()) == 0);
  CHECK(csv_value(out, "psi_sep") == doctest::Approx(7.006).epsilon(1e-3));
  CHECK(csv_value(out, "t2") == doctest::Approx(2.1513).epsilon(1e-4));

  const auto again = workdir() / "bounds2.csv";
  CHECK(run("bounds --config " + cfg.string() + " --out " + again.string()) == 0);
  CHECK(slurp(out) == slurp(again));
  CHECK(slurp(out).find("\r") == std::string::npos);
}

TEST_CASE("invalid configs exit 2 and write nothing") {
  const auto bad = write_config(
      "bad_model.json", {{"family", "gaussian"}, {"a", 2.0}, {"d", 10}, {"s", 10}});
  const auto out = workdir() / "never.csv";
  fs::remove(out);
  CHECK(run("bounds --config " + bad.string() + " --out " + out.string()) == 2);
  CHECK_FALSE(fs::exists(out));

  const auto unknown = write_config(
      "bad_key.json",
      {{"family", "gaussian"}, {"a", 2.0}, {"d", 100}, {"s", 10}, {"bogus", 1}});
  CHECK(run("bounds --config " + unknown.string() + " --out " + out.string()) == 2);
  CHECK_FALSE(fs::exists(out));

  const auto both_units = write_config(
      "bad_units.json",
      {{"family", "gaussian"}, {"a", 2.0}, {"a2", 4.0}, {"d", 100}, {"s", 10}});
  CHECK(run("bounds --config " + both_units.string()) == 2);
  CHECK(run("bounds --config /nonexistent.json") == 2);
  CHECK(run("frobnicate") == 2);
}

TEST_CASE("risk run is deterministic and honors overrides") {
  const auto cfg = write_config("risk.json", {{"family", "gaussian"},
                                              {"a", 1.5},
                                              {"d", 20},
                                              {"s", 4},
                                              {"selector", "scan"},
                                              {"risk_kind", "hamming"},
                                              {"reps", 500},
                                              {"seed", 42}});
  const auto out1 = workdir() / "risk1.csv";
  const auto out2 = workdir() / "risk2.csv";
  CHECK(run("risk --config " + cfg.string() + " --out " + out1.string()) == 0);
  CHECK(run("risk --config " + cfg.string() + " --out " + out2.string()) == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK(csv_value(out1, "reps") == 500);
  CHECK(csv_value(out1, "seed") == 42);

  const auto out3 = workdir() / "risk3.csv";
  CHECK(run("risk --config " + cfg.string() + " --seed 43 --reps 600 --out " + out3.string()) ==
        0);
  CHECK(csv_value(out3, "reps") == 600);
  CHECK(csv_value(out3, "seed") == 43);
  CHECK(csv_value(out3, "mean") != csv_value(out1, "mean"));
}

TEST_CASE("json format mirrors the csv rows") {
  const auto cfg = write_config("risk_json.json", {{"family", "gaussian"},
                                                   {"a", 1.5},
                                                   {"d", 20},
                                                   {"s", 4},
                                                   {"reps", 300}});
  const auto out = workdir() / "risk.json.out";
  CHECK(run("risk --config " + cfg.string() + " --format json --out " + out.string()) == 0);
  const json parsed = json::parse(slurp(out));
  REQUIRE(parsed.is_array());
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].contains("mean"));
  CHECK(parsed[0].contains("stderr"));
  CHECK(parsed[0]["selector"] == "scan");
}

TEST_CASE("sweep emits the full grid") {
  const auto cfg = write_config("sweep.json", {{"family", "gaussian"},
                                               {"d_grid", {10, 20, 30}},
                                               {"s_grid", {2, 4}},
                                               {"a_grid", {1.0}},
                                               {"selectors", {"scan", "separable"}},
                                               {"risk_kinds", {"hamming", "wrong_recovery"}},
                                               {"reps", 200},
                                               {"seed", 7}});
  const auto out = workdir() / "sweep.csv";
  CHECK(run("sweep --config " + cfg.string() + " --out " + out.string()) == 0);
  const auto lines = csv_lines(slurp(out));
  CHECK(lines.size() == 1 + 3 * 2 * 1 * 2 * 2);
  const auto rerun = workdir() / "sweep2.csv";
  CHECK(run("sweep --config " + cfg.string() + " --out " + rerun.string()) == 0);
  CHECK(slurp(out) == slurp(rerun));
}

TEST_CASE("amplitude may be given squared") {
  const auto by_a = write_config(
      "unit_a.json",
      {{"family", "chi_square_pair"}, {"k", 3}, {"a", 4.0}, {"d", 30}, {"s", 3}});
  const auto by_a2 = write_config(
      "unit_a2.json",
      {{"family", "chi_square_pair"}, {"k", 3}, {"a2", 16.0}, {"d", 30}, {"s", 3}});
  const auto o1 = workdir() / "u1.csv";
  const auto o2 = workdir() / "u2.csv";
  CHECK(run("bounds --config " + by_a.string() + " --out " + o1.string()) == 0);
  CHECK(run("bounds --config " + by_a2.string() + " --out " + o2.string()) == 0);
  CHECK(slurp(o1) == slurp(o2));
}

TEST_CASE("verify suites run clean and report failures as intended") {
  CHECK(run("verify sympoly") == 0);
  CHECK(run("verify counterexamples") == 0);
  CHECK(run("verify nonexistent_suite") == 2);
  const auto out = workdir() / "verify.json";
  CHECK(run("verify sympoly counterexamples --out " + out.string()) == 0);
  const json rep = json::parse(slurp(out));
  REQUIRE(rep.is_array());
  CHECK(rep.size() == 2);
  CHECK(rep[0]["pass"] == true);
}
