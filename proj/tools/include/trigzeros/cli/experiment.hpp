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

#include <string>
#include <vector>

#include "trigzeros/cli/config.hpp"
#include "trigzeros/cli/output.hpp"
#include "trigzeros/stats.hpp"

namespace trigzeros::cli {

struct RunResult {
  int exit_code = kExitOk;
  std::string message;
  std::vector<EnsembleSummary> summaries;
  std::vector<std::string> files;
};

// Each writes its artifacts into config.output_dir (created if needed).
// Configuration problems throw ConfigError; numerical-quality problems are
// reported through exit_code 3.
RunResult run_simulate(const ExperimentConfig& config);
RunResult run_gp(const ExperimentConfig& config);
RunResult run_rice(const ExperimentConfig& config);
RunResult run_compare(const ExperimentConfig& config);
RunResult run_figure1(const ExperimentConfig& config);

RunResult run(const ExperimentConfig& config);

// The replication loop shared by simulate/compare/figure1: replication r
// draws from stream (seed, r), results are stored by index.
std::vector<CountRecord> count_ensemble(const ExperimentConfig& config, const std::string& dist,
                                        std::uint64_t seed);

}  // namespace trigzeros::cli
