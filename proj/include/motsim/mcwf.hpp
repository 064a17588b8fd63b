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

#include <cstdint>
#include <optional>
#include <vector>

#include "motsim/integrators.hpp"
#include "motsim/states.hpp"
#include "motsim/time_dependent.hpp"

namespace motsim {

struct TrajectoryOptions {
  bool jumps = true;
  std::uint64_t seed = 0;
  /// Expectation values recorded at every sample, on the normalized state.
  std::vector<Operator> observables;
  /// Keep the normalized state at every sample (needed for ensemble averages).
  bool store_states = false;
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<double> norms_sq;  ///< squared norm since the last jump
  std::vector<double> jump_times;
  std::vector<int> jump_channels;
  std::vector<std::vector<cd>> observables;  ///< [sample][observable]
  std::vector<StateVector> states;           ///< normalized, when requested
  std::uint64_t seed = 0;
  std::optional<StateVector> final_state;    ///< unnormalized, in the frame of H
  double max_top_population = 0.0;
};

/// Monte-Carlo wave-function trajectory under a non-Hermitian H_eff whose
/// anti-Hermitian part is -i/2 sum_k C_k^dagger C_k. With jumps off the
/// deterministic no-jump state is propagated. Fixed-step RK4 only; jump times
/// are located by bisection to dt/100.
TrajectoryRecord mcwf_trajectory(const TimeDependentOperator& h_eff, const std::vector<Operator>& jumps,
                                 const StateVector& psi0, double t0, double t1, const IntegratorConfig& cfg,
                                 const TrajectoryOptions& options);

struct EnsembleOptions {
  int n_traj = 100;
  std::uint64_t master_seed = 0;
  bool jumps = true;
  std::vector<Operator> observables;
  bool average_states = true;
  int threads = 0;  ///< 0 selects hardware concurrency
};

struct EnsembleResult {
  std::vector<double> times;
  std::vector<DensityMatrix> states;           ///< averaged projectors
  std::vector<std::vector<cd>> observable_mean;
  std::vector<std::vector<double>> observable_stderr;
  double mean_jumps = 0.0;
  double jumps_stderr = 0.0;
  std::vector<std::vector<double>> jump_times;  ///< per trajectory
  std::vector<double> final_norms_sq;
};

/// Seed of trajectory `index` derived from the master seed.
std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index);

EnsembleResult mcwf_ensemble(const TimeDependentOperator& h_eff, const std::vector<Operator>& jumps,
                             const StateVector& psi0, double t0, double t1, const IntegratorConfig& cfg,
                             const EnsembleOptions& options);

struct TransferReport {
  double no_jump_norm;  ///< final squared norm
  double fidelity;      ///< overlap with the target after renormalization
};

TransferReport transfer_fidelity_report(const TrajectoryRecord& record, const StateVector& target);

}  // namespace motsim
