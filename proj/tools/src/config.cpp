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

#include "trigzeros/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "trigzeros/coeffs.hpp"
#include "trigzeros/errors.hpp"

namespace trigzeros::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_double(const std::string& key, const std::string& v) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(x)) {
    throw ConfigError("invalid number for '" + key + "': '" + v + "'");
  }
  return x;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) {
    throw ConfigError("invalid non-negative integer for '" + key + "': '" + v + "'");
  }
  return x;
}

int to_int(const std::string& key, const std::string& v) {
  const std::uint64_t x = to_u64(key, v);
  if (x > 1u << 30) throw ConfigError("value for '" + key + "' is too large");
  return static_cast<int>(x);
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("invalid boolean for '" + key + "': '" + v + "'");
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::Simulate: return "simulate";
    case Command::Gp: return "gp";
    case Command::Rice: return "rice";
    case Command::Compare: return "compare";
    case Command::Figure1: return "figure1";
  }
  return "unknown";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Scan: return "scan";
    case Method::Companion: return "companion";
    case Method::Both: return "both";
  }
  return "unknown";
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::Simulate, Command::Gp, Command::Rice, Command::Compare,
                    Command::Figure1}) {
    if (to_string(c) == name) return c;
  }
  throw ConfigError("unknown command '" + name + "'");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "command", "n",       "interval",    "dist",      "reps",      "seed",
      "method",  "epsilon", "m-max",       "out",       "freqs",     "workers",
      "exploratory", "reference", "rice", "debug-coeffs"};
  return keys;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::string value = trim(std::string_view(line).substr(eq + 1));
    const auto& keys = config_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

void apply_setting(ExperimentConfig& c, const std::string& key, const std::string& value) {
  if (key == "command") {
    c.command = parse_command(value);
  } else if (key == "n") {
    c.N = to_int(key, value);
  } else if (key == "interval") {
    const auto colon = value.find(':');
    if (colon == std::string::npos) throw ConfigError("interval must be 'lo:hi'");
    c.interval = {to_double(key, trim(value.substr(0, colon))),
                  to_double(key, trim(value.substr(colon + 1)))};
  } else if (key == "dist") {
    c.dists = split(value, ',');
  } else if (key == "reps") {
    c.replications = to_u64(key, value);
  } else if (key == "seed") {
    c.seed = to_u64(key, value);
  } else if (key == "method") {
    if (value == "scan") c.method = Method::Scan;
    else if (value == "companion") c.method = Method::Companion;
    else if (value == "both") c.method = Method::Both;
    else throw ConfigError("method must be scan, companion or both");
  } else if (key == "epsilon") {
    c.epsilon = to_double(key, value);
  } else if (key == "m-max") {
    c.m_max = to_int(key, value);
  } else if (key == "out") {
    c.output_dir = value;
  } else if (key == "freqs") {
    c.freqs = to_int(key, value);
  } else if (key == "workers") {
    c.workers = static_cast<unsigned>(to_int(key, value));
  } else if (key == "exploratory") {
    c.exploratory = to_bool(key, value);
  } else if (key == "reference") {
    c.reference = to_bool(key, value);
  } else if (key == "rice") {
    c.rice = to_bool(key, value);
  } else if (key == "debug-coeffs") {
    c.debug_coeffs.clear();
    for (const auto& item : split(value, ',')) c.debug_coeffs.push_back(to_double(key, item));
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
  c.echo.emplace_back(key, value);
}

void validate(const ExperimentConfig& c) {
  if (c.replications < 1) throw ConfigError("reps must be at least 1");
  if (!(c.interval.hi > c.interval.lo)) throw ConfigError("interval must satisfy lo < hi");
  if (c.N < 1) throw ConfigError("n must be at least 1");
  if (c.freqs < 1) throw ConfigError("freqs must be at least 1");
  if (c.dists.empty()) throw ConfigError("dist must name at least one law");

  const bool allow_exploratory =
      c.exploratory || c.command == Command::Compare || c.command == Command::Figure1;
  for (const auto& d : c.dists) {
    try {
      (void)parse_dist_spec(d, allow_exploratory);
    } catch (const InvalidArgument& e) {
      std::string msg = e.what();
      if (d == "cauchy") msg += " (pass --exploratory to simulate outside the limit theorem)";
      throw ConfigError(msg);
    }
  }
  if (c.command == Command::Compare && c.dists.size() < 2) {
    throw ConfigError("compare needs at least two distributions");
  }
  if (c.method != Method::Scan && c.command != Command::Gp && c.command != Command::Rice &&
      c.interval.length() > 2.0 * std::numbers::pi * c.N) {
    throw ConfigError("companion counting needs an interval no longer than one period 2*pi*n");
  }
  if (!c.debug_coeffs.empty() && c.debug_coeffs.size() != 2 * static_cast<std::size_t>(c.N)) {
    throw ConfigError("debug-coeffs needs 2n values (a_1..a_n, b_1..b_n)");
  }
  if (c.command == Command::Rice) {
    if (!(c.epsilon > 0.0 && c.epsilon < c.interval.length() / 4.0)) {
      throw ConfigError("epsilon must satisfy 0 < epsilon < |interval| / 4");
    }
    if (c.m_max < 1 || c.m_max > 4) throw ConfigError("m-max must be between 1 and 4 for rice");
  }
  if (c.m_max < 0 || c.m_max > 8) throw ConfigError("m-max must be between 0 and 8");
}

std::string format_number(double x) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, p) : std::string("nan");
}

std::vector<std::pair<std::string, std::string>> resolved_fields(const ExperimentConfig& c) {
  std::string dists;
  for (const auto& d : c.dists) dists += (dists.empty() ? "" : ",") + d;
  std::vector<std::pair<std::string, std::string>> f = {
      {"command", to_string(c.command)},
      {"n", std::to_string(c.N)},
      {"interval", format_number(c.interval.lo) + ":" + format_number(c.interval.hi)},
      {"dist", dists},
      {"reps", std::to_string(c.replications)},
      {"seed", std::to_string(c.seed)},
      {"method", to_string(c.method)},
      {"epsilon", format_number(c.epsilon)},
      {"m-max", std::to_string(c.m_max)},
      {"freqs", std::to_string(c.freqs)},
      {"exploratory", c.exploratory ? "true" : "false"},
      {"reference", c.reference ? "true" : "false"},
      {"rice", c.rice ? "true" : "false"},
  };
  if (!c.debug_coeffs.empty()) {
    std::string v;
    for (double x : c.debug_coeffs) v += (v.empty() ? "" : ",") + format_number(x);
    f.emplace_back("debug-coeffs", v);
  }
  return f;
}

std::string echo_line(const ExperimentConfig& c) {
  std::string out;
  for (const auto& [k, v] : resolved_fields(c)) out += (out.empty() ? "" : " ") + k + "=" + v;
  return out;
}

}  // namespace trigzeros::cli
