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

namespace motsim {

/// Rising rate Gamma * e^{Gamma t} / (e^{Gamma t} + e^{-Gamma t}), evaluated as a
/// logistic function of 2 Gamma t.
double gamma1(double t, double gamma);
/// Falling mirror image, gamma1(-t).
double gamma2(double t, double gamma);

/// Drive amplitude sqrt(kappa * rate) / eta whose squared coupling
/// (eta * amplitude)^2 / kappa reproduces `rate`.
double amplitude_from_rate(double rate, double kappa, double eta);

/// Matched emission/absorption pulse pair on a finite window around t = 0.
struct PulseSchedule {
  double gamma_max = 0.01;
  double window = 8.0;  ///< half-width in units of 1/gamma_max

  PulseSchedule() = default;
  PulseSchedule(double gamma, double half_width_in_inverse_gamma = 8.0);

  double t_start() const { return -window / gamma_max; }
  double t_end() const { return window / gamma_max; }
  double rate(int site, double t) const;
  double amplitude(int site, double t, double kappa, double eta) const;
};

}  // namespace motsim
