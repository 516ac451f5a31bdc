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
#include <string>
#include <vector>

#include "trigzeros/cli/config.hpp"
#include "trigzeros/stats.hpp"

namespace trigzeros::cli {

std::string version();

// One replication of a counting experiment.
struct CountRecord {
  std::int64_t count = -1;  // -1 when the replication failed numerically
  std::string method;
  std::uint8_t flags = 0;
  bool failed = false;
};

struct HistogramPanel {
  std::string title;
  std::map<std::uint64_t, double> pmf;
  std::string note;  // e.g. "exploratory"
};

// counts.csv: "# trigzeros <version>", "# config <echo>", then
// replication,count,method,flags. Integers only, so reruns are byte-identical.
void write_counts_csv(const std::string& path, const ExperimentConfig& config,
                      const std::vector<CountRecord>& records);

// m,estimate,se with the same comment header.
void write_moments_csv(const std::string& path, const ExperimentConfig& config,
                       const std::map<int, MomentEstimate>& moments);

// Bar charts with a shared x-axis, one row per panel.
std::string histogram_svg(const std::vector<HistogramPanel>& panels, const std::string& title,
                          const std::string& config_echo);

void write_text(const std::string& path, const std::string& text);

}  // namespace trigzeros::cli
