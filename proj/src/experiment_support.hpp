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

#include <chrono>
#include <vector>

#include "motsim/config.hpp"
#include "motsim/experiments.hpp"
#include "motsim/integrators.hpp"

namespace motsim::detail {

IntegratorConfig integrator_config(const ExperimentConfig& config);

/// Requested dims, or `fallback` when the override is empty. A single value
/// is broadcast to every mode.
std::vector<int> resolve_dims(const ExperimentConfig& config, const std::vector<int>& fallback);

/// Selects 1-based row indices from a list; empty selection keeps all.
std::vector<int> select_rows(const std::vector<int>& requested, int available);

void flag_top_population(ResultRow& row, double top_population);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace motsim::detail
