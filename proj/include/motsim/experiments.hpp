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

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "motsim/config.hpp"

namespace motsim {

/// One emitted result line. Inputs and outputs keep insertion order; the
/// convergence fields are always written.
struct ResultRow {
  std::string label;
  std::vector<std::pair<std::string, double>> inputs;
  std::vector<std::pair<std::string, double>> outputs;

  std::vector<int> dims;
  double dt = 0.0;
  double top_population = 0.0;
  double runtime_s = 0.0;
  std::vector<std::string> flags;  ///< truncation or convergence warnings

  void input(const std::string& key, double value) { inputs.emplace_back(key, value); }
  void output(const std::string& key, double value) { outputs.emplace_back(key, value); }
  /// Looks up an input or output by name; throws ArgumentError when absent.
  double value(const std::string& key) const;
  bool flagged() const { return !flags.empty(); }
};

struct ExperimentResult {
  std::string experiment;
  std::vector<ResultRow> rows;
  bool flagged() const;
};

struct Table1Row {
  double eta_p;
  double nu_x;
  double nu_z;
  double chi;
  double r;
  double reference_fidelity;
};
/// The nine trap configurations of the two-mode squeezing benchmark.
const std::vector<Table1Row>& table1_rows();

struct TransferRow {
  std::string table;  ///< "table2" .. "table5"
  std::string state;  ///< "phase10", "phase20", "fock10", "cat"
  double eta;
  double nu;
  double reference_norm;
};
/// The eighteen transfer configurations, in table order.
const std::vector<TransferRow>& transfer_rows();
std::vector<TransferRow> transfer_rows(const std::string& table);

/// Top-level population above which a row is flagged.
inline constexpr double kTruncationFlag = 1e-4;

ExperimentResult run_table1(const ExperimentConfig& config);
/// Time series for both Lamb-Dicke parameters; one row per (eta, sample).
ExperimentResult run_fig4_fig5(const ExperimentConfig& config);
ExperimentResult run_transfer_tables(const ExperimentConfig& config);
ExperimentResult run_cascade_ideal(const ExperimentConfig& config);
ExperimentResult run_delocalized_targets(const ExperimentConfig& config);
ExperimentResult run_collective_demo(const ExperimentConfig& config);

/// Dispatches on config.experiment().
ExperimentResult run_experiment(const ExperimentConfig& config);

/// CSV with a fixed header: label, inputs, outputs, then convergence columns.
std::string to_csv(const ExperimentResult& result);
/// JSON sidecar holding the configuration, dims, dt and code version.
std::string to_meta_json(const ExperimentResult& result, const ExperimentConfig& config);
/// Writes `<experiment>.csv` and `<experiment>.meta.json` into `dir`.
void write_outputs(const ExperimentResult& result, const ExperimentConfig& config, const std::string& dir);

/// `git describe` of the build.
std::string code_version();

}  // namespace motsim
