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
#include <vector>

#include "motsim/states.hpp"

namespace motsim {

/// |<phi|psi>|^2.
double fidelity_pure(const StateVector& psi, const StateVector& phi);
/// Re <phi|rho|phi>; linear in rho.
double fidelity_mixed(const DensityMatrix& rho, const StateVector& phi);

/// Coherent state of amplitude alpha e^{-(i nu + gamma) t} on `mode`,
/// vacuum on the other modes. The zero-point phase is dropped.
StateVector reference_decayed_coherent(cd alpha, double nu, double gamma, double t, const FockSpace& space,
                                       int mode = 0);

/// Wigner function of the two-mode squeezed vacuum in quadratures with
/// vacuum variance 1/4:
/// (4/pi^2) exp{-[(x+z)^2 + (px-pz)^2] e^{2r} - [(x-z)^2 + (px+pz)^2] e^{-2r}}.
double epr_wigner(double x, double px, double z, double pz, double r);

/// (1/2) eta^2 (1 + nbar + a sigma).
double lamb_dicke_validity(double eta, double nbar, double sigma, double a);
/// Same condition for a thermal-like mode of a two-mode squeezed state,
/// nbar = sinh^2 r and sigma ~ nbar + 1/2: (1/2) eta^2 (1 + nbar + a(nbar + 1/2)).
double thermal_like_validity(double eta, double r, double a = 3.0);

/// Spontaneous emission rate of the two-mode drive,
/// (gamma eta^2 eps^2 / 4 Delta^2)(|1 - e^{-i delta t}|^2 + |1 + e^{i delta t}|^2 / 5).
double spontaneous_scattering_rate(double gamma, double eta, double eps2_over_det2, double delta_21, double t);
/// Time average of the above: (gamma eta^2 eps^2 / 4 Delta^2)(2 + 2/5).
double mean_spontaneous_scattering_rate(double gamma, double eta, double eps2_over_det2);

/// 10 g0^2 / (kappa gamma).
double strong_coupling_figure(double g0, double kappa, double gamma);

struct ValidityInputs {
  double eta = 0.1;
  double nbar = 0.0;
  double sigma = 0.0;
  double a = 3.0;
  double nu = 10.0;
  double kappa = 1.0;
  double omega_max = 0.1;  ///< peak exchange rate |Omega|
  double nu_x = 1.0;
  double nu_z = 3.0;
  double chi = 0.004;
  double g0 = 1.0;
  double gamma = 1.0;
  double delta_01 = 100.0;
};

struct ValidityEntry {
  std::string name;
  double value;
  double threshold;
  bool must_exceed;  ///< true: value should be >= threshold; false: <= threshold
  bool ok;
};

struct ValidityReport {
  double lamb_dicke_lhs;
  double nu_over_kappa;
  double nu_over_omega;
  double splitting_over_chi;
  double adiabaticity;  ///< |Omega|_max / kappa
  double strong_coupling;
  double spontaneous_ratio;  ///< gamma / Delta_01
  std::vector<ValidityEntry> entries;
  bool all_ok() const;
};

ValidityReport validity_report(const ValidityInputs& in);

}  // namespace motsim
