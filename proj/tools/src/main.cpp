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

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "trigzeros/cli/config.hpp"
#include "trigzeros/cli/experiment.hpp"
#include "trigzeros/cli/output.hpp"
#include "trigzeros/errors.hpp"

namespace {

using trigzeros::cli::ConfigError;
using trigzeros::cli::ExperimentConfig;

struct FlagValues {
  std::string config_file;
  std::map<std::string, std::string> values;  // key -> raw value
  std::map<std::string, bool> switches;
};

const char* help_for(const std::string& key) {
  static const std::map<std::string, const char*> help = {
      {"n", "number of frequencies N"},
      {"interval", "counting interval lo:hi"},
      {"dist", "coefficient law(s), comma separated"},
      {"reps", "replications"},
      {"seed", "master seed"},
      {"method", "scan | companion | both"},
      {"epsilon", "diagonal exclusion width for Rice moments"},
      {"m-max", "highest factorial moment reported"},
      {"out", "output directory"},
      {"freqs", "spectral frequencies for the limit process"},
      {"workers", "worker threads (0: hardware concurrency)"},
      {"debug-coeffs", "pin a_1..a_N,b_1..b_N instead of sampling"},
  };
  auto it = help.find(key);
  return it == help.end() ? "" : it->second;
}

void add_options(CLI::App* app, FlagValues& f) {
  app->add_option("--config", f.config_file, "key = value file; flags override it");
  for (const auto& key : trigzeros::cli::config_keys()) {
    if (key == "command") continue;
    if (key == "exploratory" || key == "reference" || key == "rice") {
      const char* h = key == "exploratory" ? "allow laws outside the limit theorem (cauchy)"
                      : key == "reference" ? "compare: add the sinc-process reference"
                                           : "compare: add Rice moment values";
      app->add_flag_callback("--" + key, [&f, key] { f.switches[key] = true; }, h);
    } else {
      app->add_option_function<std::string>(
          "--" + key, [&f, key](const std::string& v) { f.values[key] = v; }, help_for(key));
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zero counts of random trigonometric polynomials"};
  app.set_version_flag("--version", trigzeros::cli::version());
  app.require_subcommand(0, 1);
  FlagValues top;
  add_options(&app, top);
  std::map<CLI::App*, FlagValues> sub_flags;
  const std::pair<const char*, const char*> subs[] = {
      {"simulate", "zero-count ensemble for one coefficient law"},
      {"gp", "zero-count ensemble for the sinc-covariance limit process"},
      {"rice", "Kac-Rice factorial moments of the limit process"},
      {"compare", "universality comparison across coefficient laws"},
      {"figure1", "four-panel histogram of zero counts"},
  };
  for (const auto& [name, desc] : subs) {
    CLI::App* s = app.add_subcommand(name, desc);
    add_options(s, sub_flags[s]);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return e.get_exit_code() == 0 ? rc : trigzeros::cli::kExitConfig;
  }

  try {
    ExperimentConfig config;
    const FlagValues* chosen = &top;
    std::optional<std::string> command;
    for (auto& [s, f] : sub_flags) {
      if (s->parsed()) {
        command = s->get_name();
        chosen = &f;
      }
    }
    std::vector<const FlagValues*> layers = {&top};
    if (chosen != &top) layers.push_back(chosen);
    // Config files first, then top-level flags, then subcommand flags.
    for (const FlagValues* f : layers) {
      if (f->config_file.empty()) continue;
      for (const auto& [k, v] : trigzeros::cli::read_config_file(f->config_file)) {
        trigzeros::cli::apply_setting(config, k, v);
      }
    }
    for (const FlagValues* f : layers) {
      for (const auto& key : trigzeros::cli::config_keys()) {
        if (auto it = f->values.find(key); it != f->values.end()) {
          trigzeros::cli::apply_setting(config, key, it->second);
        }
        if (f->switches.count(key)) trigzeros::cli::apply_setting(config, key, "true");
      }
    }
    if (command) trigzeros::cli::apply_setting(config, "command", *command);

    const auto result = trigzeros::cli::run(config);
    std::cout << trigzeros::cli::to_string(config.command) << ": " << result.message << "\n";
    for (const auto& file : result.files) std::cout << "  wrote " << file << "\n";
    return result.exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return trigzeros::cli::kExitConfig;
  } catch (const trigzeros::InvalidArgument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return trigzeros::cli::kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return trigzeros::cli::kExitNumerical;
  }
}
