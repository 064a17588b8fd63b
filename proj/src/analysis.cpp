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

#include "motsim/analysis.hpp"

#include <cmath>
#include <numbers>

#include "motsim/errors.hpp"

namespace motsim {

double fidelity_pure(const StateVector& psi, const StateVector& phi) {
  if (psi.space() != phi.space()) throw ArgumentError("fidelity: space mismatch");
  return std::norm(inner_product(phi, psi));
}

double fidelity_mixed(const DensityMatrix& rho, const StateVector& phi) {
  if (rho.space() != phi.space()) throw ArgumentError("fidelity: space mismatch");
  return phi.amplitudes().dot(rho.entries() * phi.amplitudes()).real();
}

StateVector reference_decayed_coherent(cd alpha, double nu, double gamma, double t, const FockSpace& space,
                                       int mode) {
  const cd amplitude = alpha * std::exp(cd(-gamma * t, -nu * t));
  std::vector<cd> amps(space.num_modes(), 0.0);
  amps.at(mode) = amplitude;
  return coherent_state(space, amps);
}

double epr_wigner(double x, double px, double z, double pz, double r) {
  const double squeezed = (x + z) * (x + z) + (px - pz) * (px - pz);
  const double stretched = (x - z) * (x - z) + (px + pz) * (px + pz);
  return 4.0 / (std::numbers::pi * std::numbers::pi) *
         std::exp(-squeezed * std::exp(2.0 * r) - stretched * std::exp(-2.0 * r));
}

double lamb_dicke_validity(double eta, double nbar, double sigma, double a) {
  if (a < 0.0) throw ArgumentError("a must be non-negative");
  return 0.5 * eta * eta * (1.0 + nbar + a * sigma);
}

double thermal_like_validity(double eta, double r, double a) {
  const double nbar = std::sinh(r) * std::sinh(r);
  return lamb_dicke_validity(eta, nbar, nbar + 0.5, a);
}

double spontaneous_scattering_rate(double gamma, double eta, double eps2_over_det2, double delta_21, double t) {
  const cd e = std::polar(1.0, delta_21 * t);
  const double first = std::norm(1.0 - std::conj(e));
  const double second = std::norm(1.0 + e);
  return 0.25 * gamma * eta * eta * eps2_over_det2 * (first + second / 5.0);
}

double mean_spontaneous_scattering_rate(double gamma, double eta, double eps2_over_det2) {
  return 0.25 * gamma * eta * eta * eps2_over_det2 * (2.0 + 2.0 / 5.0);
}

double strong_coupling_figure(double g0, double kappa, double gamma) {
  if (!(kappa > 0.0 && gamma > 0.0) || g0 < 0.0) throw ArgumentError("rates must be positive");
  return 10.0 * g0 * g0 / (kappa * gamma);
}

bool ValidityReport::all_ok() const {
  for (const auto& e : entries) {
    if (!e.ok) return false;
  }
  return true;
}

ValidityReport validity_report(const ValidityInputs& in) {
  ValidityReport r{};
  r.lamb_dicke_lhs = lamb_dicke_validity(in.eta, in.nbar, in.sigma, in.a);
  r.nu_over_kappa = in.nu / in.kappa;
  r.nu_over_omega = in.omega_max > 0.0 ? in.nu / in.omega_max : INFINITY;
  r.splitting_over_chi = in.chi > 0.0 ? std::abs(in.nu_x - in.nu_z) / in.chi : INFINITY;
  r.adiabaticity = in.omega_max / in.kappa;
  r.strong_coupling = strong_coupling_figure(in.g0, in.kappa, in.gamma);
  r.spontaneous_ratio = in.gamma / in.delta_01;
  auto add = [&r](std::string name, double value, double threshold, bool must_exceed) {
    const bool ok = must_exceed ? value >= threshold : value <= threshold;
    r.entries.push_back({std::move(name), value, threshold, must_exceed, ok});
  };
  add("lamb_dicke", r.lamb_dicke_lhs, 0.1, false);
  add("nu_over_kappa", r.nu_over_kappa, 5.0, true);
  add("nu_over_omega", r.nu_over_omega, 10.0, true);
  add("splitting_over_chi", r.splitting_over_chi, 100.0, true);
  add("adiabaticity", r.adiabaticity, 0.3, false);
  add("strong_coupling", r.strong_coupling, 1.0, true);
  add("spontaneous_ratio", r.spontaneous_ratio, 0.1, false);
  return r;
}

}  // namespace motsim
