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

#include <functional>
#include <vector>

#include "motsim/integrators.hpp"
#include "motsim/states.hpp"
#include "motsim/time_dependent.hpp"

namespace motsim {

/// Largest population found in the top Fock level of any mode.
double top_level_population(const StateVector& psi);
double top_level_population(const DensityMatrix& rho);

struct SchrodingerPath {
  std::vector<double> times;
  std::vector<StateVector> states;  ///< in the frame of the Hamiltonian
  double max_norm_drift = 0.0;
  double max_top_population = 0.0;
};

/// Integrates i d/dt psi = H(t) psi. Hermitian generators only.
SchrodingerPath evolve_schrodinger(const TimeDependentOperator& h, const StateVector& psi0, double t0, double t1,
                                   const IntegratorConfig& cfg = {});

struct MasterOptions {
  bool store_states = true;
  bool check_positivity = true;
  std::function<void(double, const DensityMatrix&)> observer;
};

struct MasterPath {
  std::vector<double> times;
  std::vector<DensityMatrix> states;  ///< empty unless store_states
  double max_trace_error = 0.0;
  double max_hermiticity_defect = 0.0;
  double min_eigenvalue = 0.0;
  double max_top_population = 0.0;
};

/// d rho/dt = -i[H, rho] + sum_k (2 L rho L^dagger - L^dagger L rho - rho L^dagger L).
/// Jump operators are given in the lab frame; sqrt(kappa) a damps the field
/// amplitude at rate kappa and the population at 2 kappa.
MasterPath evolve_master(const TimeDependentOperator& h, const std::vector<Operator>& jumps,
                         const DensityMatrix& rho0, double t0, double t1, const IntegratorConfig& cfg = {},
                         const MasterOptions& options = {});

/// Rates of the adiabatically eliminated two-site cascade.
struct CascadeRates {
  std::function<double(double)> gamma1;
  std::function<double(double)> gamma2;
  double phase_difference = 0.0;  ///< phi_A1 - phi_A2
  double rate_bound = 1.0;        ///< upper bound on gamma1, gamma2; sets the step
};

/// Cascaded master equation for two motional modes (modes 0 and 1):
/// gamma1 D[b1] + gamma2 D[b2] + 2 sqrt(gamma1 gamma2)([b2^dagger, b1 rho] e^{-i dphi} + h.c.)
/// with D[b] rho = 2 b rho b^dagger - b^dagger b rho - rho b^dagger b.
MasterPath evolve_adiabatic_cascade(const CascadeRates& rates, const DensityMatrix& rho0, double t0, double t1,
                                    const IntegratorConfig& cfg = {}, const MasterOptions& options = {});

}  // namespace motsim
