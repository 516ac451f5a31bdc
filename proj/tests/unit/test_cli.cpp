// Copyright 2026 The trigzeros Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "trigzeros/cli/config.hpp"
#include "trigzeros/cli/experiment.hpp"

namespace fs = std::filesystem;
using namespace trigzeros::cli;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("trigzeros_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExperimentConfig make(std::initializer_list<std::pair<const char*, std::string>> kv) {
  ExperimentConfig c;
  for (const auto& [k, v] : kv) apply_setting(c, k, v);
  return c;
}

// Data rows of counts.csv (comment lines and header skipped).
std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(slurp(p));
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

int run_exe(const std::string& args) {
  const char* exe = std::getenv("TRIGZEROS_EXE");
  REQUIRE_MESSAGE(exe != nullptr, "TRIGZEROS_EXE not set");
  const std::string cmd = std::string("\"") + exe + "\" " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(rc));
  return WEXITSTATUS(rc);
}

}  // namespace

TEST_CASE("counts.csv is byte-identical across reruns and worker counts") {
  std::string first;
  for (const char* workers : {"1", "4", "16", "4"}) {
    const fs::path dir = scratch(std::string("det_") + workers);
    auto c = make({{"n", "50"}, {"interval", "0:50"}, {"dist", "gaussian"}, {"reps", "10000"},
                   {"seed", "7"}, {"workers", workers}, {"out", dir.string()}});
    const RunResult r = run_simulate(c);
    CHECK(r.exit_code == kExitOk);
    const std::string text = slurp(dir / "counts.csv");
    if (first.empty()) {
      first = text;
    } else {
      CHECK(text == first);
    }
  }
  CHECK(first.rfind("# trigzeros ", 0) == 0);
  CHECK(first.find("\nreplication,count,method,flags\n") != std::string::npos);
}

TEST_CASE("pinned cosine coefficients give two zeros per period") {
  const fs::path dir = scratch("cosine");
  for (const char* method : {"scan", "companion", "both"}) {
    auto c = make({{"n", "1"}, {"interval", "0:" + format_number(2 * std::numbers::pi)},
                   {"debug-coeffs", "1,0"}, {"reps", "5"}, {"method", method},
                   {"out", dir.string()}});
    REQUIRE(run_simulate(c).exit_code == kExitOk);
    const auto rows = csv_rows(dir / "counts.csv");
    REQUIRE(rows.size() == 5);
    for (const auto& row : rows) CHECK(row[1] == "2");
  }
}

TEST_CASE("every output embeds the version and the full config") {
  const fs::path dir = scratch("meta");
  auto c = make({{"n", "20"}, {"interval", "0:10"}, {"dist", "rademacher"}, {"reps", "200"},
                 {"seed", "3"}, {"m-max", "2"}, {"out", dir.string()}});
  const RunResult r = run_simulate(c);
  REQUIRE(r.exit_code == kExitOk);
  const std::string echo = echo_line(c);
  for (const char* f : {"counts.csv", "summary.csv", "histogram.svg"}) {
    const std::string text = slurp(dir / f);
    CHECK_MESSAGE(text.find(version()) != std::string::npos, f);
    CHECK_MESSAGE(text.find(echo) != std::string::npos, f);
  }
  const auto j = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(j["version"] == version());
  for (const auto& [k, v] : resolved_fields(c)) CHECK(j["config"][k] == v);
  CHECK(j["replications"] == 200);
  const std::string summary = slurp(dir / "summary.csv");
  CHECK(summary.find("\nm,estimate,se\n") != std::string::npos);

  // The output directory and worker count do not affect results and are
  // kept out of the echo.
  CHECK(echo.find("out=") == std::string::npos);
  CHECK(echo.find("workers=") == std::string::npos);
}

TEST_CASE("simulate rejects invalid configurations") {
  const fs::path dir = scratch("invalid");
  CHECK_THROWS_AS(run_simulate(make({{"dist", "cauchy"}, {"out", dir.string()}})), ConfigError);
  CHECK_THROWS_AS(run_simulate(make({{"dist", "nonsense"}, {"out", dir.string()}})),
                  ConfigError);
  CHECK_THROWS_AS(run_simulate(make({{"interval", "5:5"}, {"out", dir.string()}})), ConfigError);
  CHECK_THROWS_AS(make({{"reps", "-3"}}), ConfigError);
  CHECK_THROWS_AS(make({{"method", "guess"}}), ConfigError);
  CHECK_THROWS_AS(run_simulate(make({{"reps", "0"}, {"out", dir.string()}})), ConfigError);
  // Companion roots live on one period of length 2*pi*N.
  CHECK_THROWS_AS(run_simulate(make({{"n", "4"}, {"interval", "0:50"}, {"method", "companion"},
                                     {"out", dir.string()}})),
                  ConfigError);
  CHECK_THROWS_AS(run_simulate(make({{"n", "2"}, {"debug-coeffs", "1,0"},
                                     {"out", dir.string()}})),
                  ConfigError);
}

TEST_CASE("cauchy runs only when marked exploratory") {
  const fs::path dir = scratch("cauchy");
  auto c = make({{"n", "20"}, {"interval", "0:20"}, {"dist", "cauchy"}, {"reps", "100"},
                 {"exploratory", "true"}, {"out", dir.string()}});
  const RunResult r = run_simulate(c);
  CHECK(r.exit_code == kExitOk);
  REQUIRE(r.summaries.size() == 1);
  CHECK(r.summaries[0].meta.exploratory);
}

TEST_CASE("figure1: four panels in caption order") {
  const fs::path dir = scratch("figure1");
  auto c = make({{"reps", "2000"}, {"seed", "11"}, {"out", dir.string()}});
  const RunResult r = run_figure1(c);
  REQUIRE(r.exit_code == kExitOk);

  const std::string svg = slurp(dir / "figure1.svg");
  const std::regex panel_re("<g class=\"panel\" id=\"panel(\\d)\">\\n<text[^>]*>([^<]*)</text>");
  std::vector<std::string> titles;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), panel_re);
       it != std::sregex_iterator(); ++it) {
    titles.push_back((*it)[2]);
  }
  REQUIRE(titles.size() == 4);
  CHECK(titles[0] == "Rademacher");
  CHECK(titles[1] == "Uniform (scaled)");
  CHECK(titles[2] == "Gaussian");
  CHECK(titles[3].rfind("Cauchy", 0) == 0);

  REQUIRE(r.summaries.size() == 4);
  const char* files[] = {"panel_1_rademacher.csv", "panel_2_uniform.csv", "panel_3_gaussian.csv",
                         "panel_4_cauchy.csv"};
  for (int p = 0; p < 4; ++p) {
    double total = 0.0;
    for (const auto& row : csv_rows(dir / files[p])) total += std::stod(row[1]);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    double in_memory = 0.0;
    for (const auto& [k, v] : r.summaries[p].pmf) in_memory += v;
    CHECK(std::abs(in_memory - 1.0) <= 1e-12);
  }

  std::uint64_t mode = 0;
  double best = -1.0;
  for (const auto& [k, v] : r.summaries[2].pmf) {
    if (v > best) {
      best = v;
      mode = k;
    }
  }
  const auto target = static_cast<std::int64_t>(std::lround(50.0 / (std::numbers::pi * std::sqrt(3.0))));
  CHECK(target == 9);
  CHECK(std::llabs(static_cast<std::int64_t>(mode) - target) <= 2);
}

TEST_CASE("compare: same law passes, cauchy is exploratory and does not gate") {
  const fs::path dir = scratch("compare");
  auto c = make({{"command", "compare"}, {"n", "50"}, {"interval", "0:50"},
                 {"dist", "gaussian,gaussian,cauchy"}, {"reps", "2000"}, {"seed", "5"},
                 {"out", dir.string()}});
  const RunResult r = run_compare(c);
  CHECK(r.exit_code == kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir / "report.json"));
  CHECK(j["passed"] == true);
  int gating = 0;
  for (const auto& row : j["ks"]) {
    const bool has_cauchy = row["a"].get<std::string>().find("cauchy") != std::string::npos ||
                            row["b"].get<std::string>().find("cauchy") != std::string::npos;
    if (has_cauchy) {
      CHECK(row["gating"] == false);
      CHECK(row["status"] == "exploratory");
    } else {
      CHECK(row["gating"] == true);
      CHECK(row["status"] == "pass");
      ++gating;
    }
  }
  CHECK(gating == 1);
  CHECK(j["summaries"][2]["exploratory"] == true);
}

TEST_CASE("compare: rademacher vs gaussian at N=100 passes at the calibrated threshold") {
  const fs::path dir = scratch("compare100");
  auto c = make({{"command", "compare"}, {"n", "100"}, {"interval", "0:50"},
                 {"dist", "rademacher,gaussian"}, {"reps", "2000"}, {"seed", "9"},
                 {"out", dir.string()}});
  const RunResult r = run_compare(c);
  CHECK(r.exit_code == kExitOk);
  CHECK(fs::exists(dir / "report.csv"));
}

TEST_CASE("compare needs two laws") {
  CHECK_THROWS_AS(validate(make({{"command", "compare"}, {"dist", "gaussian"}})), ConfigError);
}

TEST_CASE("gp and rice write their artifacts") {
  const fs::path dir = scratch("gp_rice");
  auto g = make({{"interval", "0:10"}, {"reps", "300"}, {"freqs", "128"}, {"out", dir.string()}});
  const RunResult rg = run_gp(g);
  CHECK(rg.exit_code == kExitOk);
  REQUIRE(rg.summaries.size() == 1);
  CHECK(rg.summaries[0].factorial_moments.at(1).estimate ==
        doctest::Approx(10.0 / (std::numbers::pi * std::sqrt(3.0))).epsilon(0.1));

  auto r = make({{"command", "rice"}, {"interval", "0:10"}, {"m-max", "2"}, {"reps", "500"},
                 {"out", dir.string()}});
  const RunResult rr = run_rice(r);
  CHECK(rr.exit_code == kExitOk);
  const auto j = nlohmann::json::parse(slurp(dir / "rice.json"));
  CHECK(j["mean"].get<double>() == doctest::Approx(10.0 / (std::numbers::pi * std::sqrt(3.0))));
  CHECK(j["second_factorial_moment"]["converged"] == true);
  CHECK(j["second_factorial_moment"]["value"].get<double>() == doctest::Approx(2.3838).epsilon(1e-3));
  CHECK_THROWS_AS(run_rice(make({{"command", "rice"}, {"interval", "0:10"}, {"epsilon", "3"},
                                 {"out", dir.string()}})),
                  ConfigError);
}

TEST_CASE("config file keys mirror the flags") {
  const fs::path dir = scratch("keys");
  const fs::path file = dir / "run.cfg";
  std::ofstream(file) << "# comment\nn = 5\nreps = 3 # trailing\ninterval = 0:4\n";
  const auto kv = read_config_file(file.string());
  REQUIRE(kv.size() == 3);
  CHECK(kv[0] == std::pair<std::string, std::string>{"n", "5"});
  std::ofstream(file) << "bogus = 1\n";
  CHECK_THROWS_AS(read_config_file(file.string()), ConfigError);
  std::ofstream(file) << "no equals sign\n";
  CHECK_THROWS_AS(read_config_file(file.string()), ConfigError);
}

TEST_CASE("executable: flags override the config file") {
  const fs::path dir = scratch("exe_override");
  const fs::path file = dir / "run.cfg";
  std::ofstream(file) << "n = 5\nreps = 3\ninterval = 0:20\nseed = 4\nout = " << (dir / "a").string()
                      << "\n";
  REQUIRE(run_exe("simulate --config " + file.string() + " --reps 4 --out " +
                  (dir / "b").string()) == 0);
  CHECK_FALSE(fs::exists(dir / "a" / "counts.csv"));
  const std::string text = slurp(dir / "b" / "counts.csv");
  CHECK(text.find("n=5") != std::string::npos);
  CHECK(text.find("reps=4") != std::string::npos);
  CHECK(csv_rows(dir / "b" / "counts.csv").size() == 4);

  // Same run through the library gives the same bytes.
  auto c = make({{"n", "5"}, {"reps", "4"}, {"interval", "0:20"}, {"seed", "4"},
                 {"out", (dir / "c").string()}});
  REQUIRE(run_simulate(c).exit_code == kExitOk);
  CHECK(slurp(dir / "c" / "counts.csv") == text);
}

TEST_CASE("executable: exit codes") {
  const fs::path dir = scratch("exe_codes");
  const std::string out = " --out " + dir.string();
  CHECK(run_exe("simulate --n 10 --interval 0:10 --reps 20" + out) == 0);
  CHECK(run_exe("simulate --dist cauchy --reps 20" + out) == 2);
  CHECK(run_exe("simulate --dist cauchy --exploratory --n 10 --interval 0:10 --reps 20" + out) == 0);
  CHECK(run_exe("simulate --dist laplace --reps 20" + out) == 2);
  CHECK(run_exe("simulate --interval 3:1" + out) == 2);
  CHECK(run_exe("simulate --no-such-flag 1" + out) == 2);
  CHECK(run_exe("simulate --config " + (dir / "missing.cfg").string() + out) == 2);
  CHECK(run_exe("--version") == 0);
}
