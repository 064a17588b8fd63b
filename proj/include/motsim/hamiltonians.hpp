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
#include <string_view>
#include <vector>

#include "motsim/fock.hpp"
#include "motsim/pulses.hpp"
#include "motsim/time_dependent.hpp"

namespace motsim {

/// Two-mode standing-wave drive on one atom. Rates share one unit.
struct TwoModeDriveParams {
  double nu_x = 1.0;
  double nu_z = 3.0;
  double eta_x_p = 0.1;  ///< projected Lamb-Dicke parameter along x
  double eta_z_p = 0.1;
  double drive_strength_sq_over_det = 0.1;  ///< eps^2 / Delta
  double delta_21 = 4.0;                    ///< laser-laser detuning
  double phi = 0.0;
  bool drop_constant_shift = true;
};

/// chi = 4 eta'_x eta'_z eps^2 / Delta.
double chi_coupling(const TwoModeDriveParams& p);

/// H(t) = nu_x n_x + nu_z n_z - (2 eps^2/Delta)[1 + cos(2 eta'_x X + 2 eta'_z Z - delta t + phi)]
/// with X = b_x + b_x^dagger. The cosine is built from the exact unitaries
/// exp(+-2i(eta'_x X + eta'_z Z)). Modes 0 and 1 of `space` are x and z.
TimeDependentOperator build_two_mode_drive(const TwoModeDriveParams& p, const FockSpace& space,
                                           Frame frame = Frame::lab);

/// chi (b_x^dagger b_z e^{i phi} + h.c.).
Operator effective_mixer(double chi, double phi, const FockSpace& space);
/// chi (b_x^dagger b_z^dagger e^{i phi} + h.c.).
Operator effective_squeezer(double chi, double phi, const FockSpace& space);

enum class Truncation { exact, third_order };

/// One trapped atom (motion along x) in a driven cavity, atomic excitation
/// eliminated. `drive` returns g0 eps_A(t) / Delta.
struct AtomCavityParams {
  double nu_x = 10.0;
  double delta_cA = 10.0;
  double eta_x = 0.1;
  double g0_sq_over_det = 0.2;
  std::function<double(double)> drive = [](double) { return 1.0; };
  double kappa = 1.0;
  double phi_A = 0.0;
};

/// H(t) = nu n_b + delta a^dagger a - (g0^2/Delta) sin^2(eta X) a^dagger a
///        - drive(t) sin(eta X)(e^{-i phi} a^dagger + e^{i phi} a).
/// third_order keeps sin(eta X) to eta^3 and sin^2 to eta^2. The rotating
/// frame is defined for the truncated form only; exact + rotating throws.
TimeDependentOperator build_atom_cavity(const AtomCavityParams& p, const FockSpace& space, Truncation truncation,
                                        Frame frame, int motion_mode = 0, int cavity_mode = 1);

/// Single-mode sin(eta X) matrix of dimension `dim`.
DenseMatrix sine_of_position(int dim, double eta, Truncation truncation);

/// Effective Lamb-Dicke coupling -eta * drive of the resonant exchange term.
double exchange_rate(double eta_x, double drive_amplitude);

/// Two atom-cavity sites joined by a unidirectional channel.
struct CascadedSystem {
  TimeDependentOperator h_eff;  ///< non-Hermitian effective Hamiltonian
  Operator jump;                ///< collective output-channel jump operator
};

/// Space layout (mot1, cav1, cav2, mot2). Drive amplitudes of the two sites
/// follow the matched pulse pair. The identity H - H^dagger = -i C^dagger C is
/// verified on construction.
CascadedSystem build_cascaded_effective(const AtomCavityParams& site1, const AtomCavityParams& site2,
                                        const PulseSchedule& pulses, const FockSpace& space,
                                        Truncation truncation = Truncation::third_order,
                                        Frame frame = Frame::rotating);

enum class CollectiveCase { mix0, sq0, mixR, sqR };

CollectiveCase parse_collective_case(std::string_view tag);

/// Two ions in a linear trap: single-ion x motion coupled to the centre-of-mass
/// (0) or relative (R) collective z mode.
struct CollectiveIonParams {
  double nu_x = 1.0;
  double nu_z = 3.0;
  double eta_x = 0.1;
  double eta_z = 0.1;
  double alpha = 1.0;  ///< projection of the drive wavevector on x
  double beta = 1.0;   ///< projection on z
  double drive_strength_sq_over_det = 0.1;
  double phi = 0.0;
  CollectiveCase mode_case = CollectiveCase::mix0;
};

struct CollectiveCoupling {
  double eta_mode;         ///< collective Lamb-Dicke parameter of the chosen z mode
  double mode_frequency;   ///< nu_z for the centre-of-mass mode, sqrt(3) nu_z for the relative mode
  double chi;              ///< effective coupling rate
  double delta_21;         ///< laser-laser detuning that selects the case
  bool squeezing;
};

double com_lamb_dicke(double eta_z);
double relative_lamb_dicke(double eta_z);
CollectiveCoupling collective_coupling(const CollectiveIonParams& p);
/// Effective mixer or squeezer between the x mode (0) and collective mode (1).
Operator build_collective_ion(const CollectiveIonParams& p, const FockSpace& space);

struct CollectiveMode {
  std::vector<double> weights;
  double n_eff;
};

/// Weights cos(theta_k) / sqrt(N_eff) with N_eff = sum cos^2(theta_k).
CollectiveMode collective_mode_map(const std::vector<double>& thetas);
/// N_eff * (eta * drive)^2 / kappa.
double adiabatic_collective_rate(double eta_x, double drive_amplitude, double kappa,
                                 const std::vector<double>& thetas);

}  // namespace motsim
