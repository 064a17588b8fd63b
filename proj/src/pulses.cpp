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

#include "motsim/pulses.hpp"

#include <cmath>

#include "motsim/errors.hpp"

namespace motsim {
namespace {

double logistic(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

double gamma1(double t, double gamma) { return gamma * logistic(2.0 * gamma * t); }

double gamma2(double t, double gamma) { return gamma1(-t, gamma); }

double amplitude_from_rate(double rate, double kappa, double eta) {
  if (rate < 0.0) throw ArgumentError("rate must be non-negative");
  if (kappa <= 0.0 || eta <= 0.0) throw ArgumentError("kappa and eta must be positive");
  return std::sqrt(kappa * rate) / eta;
}

PulseSchedule::PulseSchedule(double gamma, double half_width_in_inverse_gamma)
    : gamma_max(gamma), window(half_width_in_inverse_gamma) {
  if (gamma <= 0.0) throw ArgumentError("pulse rate must be positive");
  if (window <= 0.0) throw ArgumentError("pulse window must be positive");
}

double PulseSchedule::rate(int site, double t) const {
  if (site == 1) return gamma1(t, gamma_max);
  if (site == 2) return gamma2(t, gamma_max);
  throw ArgumentError("site must be 1 or 2");
}

double PulseSchedule::amplitude(int site, double t, double kappa, double eta) const {
  return amplitude_from_rate(rate(site, t), kappa, eta);
}

}  // namespace motsim
