// Copyright 2026 The motsim Authors
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

#include <atomic>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "motsim/config.hpp"
#include "motsim/diagnostics.hpp"
#include "motsim/errors.hpp"
#include "motsim/experiments.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitStrict = 4;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Run a motsim experiment and write <experiment>.csv and <experiment>.meta.json"};
  std::string experiment;
  std::string config_path;
  std::string out_dir;
  std::string dims;
  std::string jumps;
  long seed = 0;
  long ntraj = 0;
  double dt = 0.0;
  bool exact_trig = false;
  bool strict = false;
  app.add_option("experiment", experiment, "Experiment tag")
      ->required()
      ->check(CLI::IsMember(motsim::ExperimentConfig::experiments()));
  app.add_option("--config", config_path, "Configuration file (key = value)");
  auto* out_opt = app.add_option("--out", out_dir, "Output directory");
  auto* seed_opt = app.add_option("--seed", seed, "Master RNG seed");
  auto* dims_opt = app.add_option("--dims", dims, "Comma-separated truncation dims");
  auto* dt_opt = app.add_option("--dt", dt, "Fixed integration step");
  app.add_flag("--exact-trig", exact_trig, "Exact trigonometric coupling in the lab frame");
  auto* jumps_opt = app.add_option("--jumps", jumps, "Quantum jumps on|off")->check(CLI::IsMember({"on", "off"}));
  auto* ntraj_opt = app.add_option("--ntraj", ntraj, "Trajectories per row when jumps are on");
  app.add_flag("--strict", strict, "Exit with status 4 on any convergence warning");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  std::atomic<int> warnings{0};
  motsim::set_warning_handler([&warnings](const std::string& message) {
    ++warnings;
    std::cerr << "motsim warning: " << message << '\n';
  });

  try {
    motsim::ExperimentConfig config =
        config_path.empty() ? motsim::ExperimentConfig(experiment) : motsim::ExperimentConfig::load(config_path);
    if (config.experiment() != experiment) {
      throw motsim::ConfigError("config is for '" + config.experiment() + "', not '" + experiment + "'");
    }
    if (*out_opt) config.set("out_dir", out_dir);
    if (*seed_opt) config.set("seed", std::to_string(seed));
    if (*dims_opt) config.set("dims", dims);
    if (*dt_opt) config.set("integrator.dt", std::to_string(dt));
    if (exact_trig) config.set("exact_trig", "true");
    if (*jumps_opt) config.set("jumps", jumps == "on" ? "true" : "false");
    if (*ntraj_opt) config.set("ntraj", std::to_string(ntraj));
    if (strict) config.set("strict", "true");

    const motsim::ExperimentResult result = motsim::run_experiment(config);
    motsim::write_outputs(result, config, config.get_string("out_dir"));
    std::cout << "wrote " << result.rows.size() << " rows to " << config.get_string("out_dir") << "/"
              << result.experiment << ".csv\n";
    if (config.get_bool("strict") && (result.flagged() || warnings > 0)) {
      std::cerr << "strict mode: convergence warnings present\n";
      return kExitStrict;
    }
    return 0;
  } catch (const motsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const motsim::ArgumentError& e) {
    std::cerr << "invalid parameter: " << e.what() << '\n';
    return kExitConfig;
  } catch (const motsim::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
