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

#include "motsim/integrators.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "motsim/errors.hpp"

namespace motsim {

StepPlan plan_steps(const IntegratorConfig& cfg, double omega_max, double t0, double t1) {
  if (!(t1 > t0)) throw ArgumentError("time span must be increasing");
  if (cfg.samples < 1) throw ArgumentError("need at least one sample");
  if (cfg.steps_per_period < 20) throw ArgumentError("steps_per_period must be at least 20");
  const double span = t1 - t0;
  const double period = omega_max > 0.0 ? 2.0 * std::numbers::pi / omega_max : span;
  const double dt_cap = period / 20.0;
  double dt = period / cfg.steps_per_period;
  if (cfg.dt > 0.0) {
    if (cfg.dt > dt_cap * (1.0 + 1e-12)) {
      std::ostringstream msg;
      msg << "dt = " << cfg.dt << " exceeds (2 pi / w_max) / 20 = " << dt_cap;
      throw ArgumentError(msg.str());
    }
    dt = cfg.dt;
  }
  const double interval = span / cfg.samples;
  const long per_sample = std::max(1L, static_cast<long>(std::ceil(interval / dt - 1e-9)));
  return {interval / per_sample, per_sample, cfg.samples, interval};
}

void throw_step_floor(double t, double h) {
  std::ostringstream msg;
  msg << "adaptive step fell to the floor h = " << h << " at t = " << t;
  throw NumericalError(msg.str());
}

}  // namespace motsim
