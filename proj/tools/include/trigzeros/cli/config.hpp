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

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "trigzeros/quadrature.hpp"

namespace trigzeros::cli {

enum class Command { Simulate, Gp, Rice, Compare, Figure1 };
enum class Method { Scan, Companion, Both };

std::string to_string(Command c);
std::string to_string(Method m);

// Exit codes of the command-line contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;

// Bad configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  Command command = Command::Simulate;
  int N = 50;
  Interval interval{0.0, 50.0};
  std::vector<std::string> dists = {"gaussian"};
  std::uint64_t replications = 1000;
  std::uint64_t seed = 1;
  Method method = Method::Scan;
  double epsilon = 0.05;
  int m_max = 3;
  std::string output_dir = ".";
  int freqs = 512;           // spectral frequencies for the limit process
  unsigned workers = 0;      // 0: one per hardware thread
  bool exploratory = false;  // allow laws outside the limit theorem (cauchy)
  bool reference = false;    // compare: add a sinc-process reference ensemble
  bool rice = false;         // compare: add Rice moment values
  std::vector<double> debug_coeffs;  // pinned a_1..a_N, b_1..b_N (empty: random)

  // Every key as given (file first, then flags), echoed into outputs.
  std::vector<std::pair<std::string, std::string>> echo;
};

// Keys accepted in config files and as --key flags.
const std::vector<std::string>& config_keys();

// Flat "key = value" text; '#' starts a comment. Unknown keys and malformed
// lines throw ConfigError.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

// Applies one key. Throws ConfigError on an unknown key or a bad value.
void apply_setting(ExperimentConfig& config, const std::string& key, const std::string& value);

// Cross-field checks (reps >= 1, interval nonempty, companion within one
// period, exploratory laws only with the flag, ...).
void validate(const ExperimentConfig& config);

Command parse_command(const std::string& name);

// Every resolved field except the output directory and the worker count,
// neither of which affects results. Embedded in every output file.
std::vector<std::pair<std::string, std::string>> resolved_fields(const ExperimentConfig& config);

// resolved_fields as "key=value key=value ...".
std::string echo_line(const ExperimentConfig& config);

// Shortest round-trip decimal form.
std::string format_number(double x);

}  // namespace trigzeros::cli
