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

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Dense>

namespace motsim {

enum class Method { rk4, dopri5 };

struct IntegratorConfig {
  Method method = Method::rk4;
  double dt = 0.0;           ///< explicit fixed step; 0 selects steps_per_period
  int steps_per_period = 40; ///< fixed steps per fastest period 2 pi / w_max (>= 20)
  double rtol = 1e-9;
  double atol = 1e-11;
  double max_step_fraction = 0.25;  ///< adaptive step cap as fraction of 2 pi / w_max
  double min_step = 1e-12;
  int samples = 200;
  bool renormalize = false;
};

/// Fixed-step layout: `samples` equal sample intervals of `steps_per_sample`
/// steps of size `dt` each.
struct StepPlan {
  double dt;
  long steps_per_sample;
  int samples;
  double sample_interval;
};

/// Throws ArgumentError if an explicit dt exceeds (2 pi / w_max) / 20.
/// A zero `omega_max` treats the whole span as one period.
StepPlan plan_steps(const IntegratorConfig& cfg, double omega_max, double t0, double t1);

/// Classical fourth-order Runge-Kutta step for Eigen dense states.
template <class State>
class Rk4Stepper {
 public:
  using Rhs = std::function<void(double, const State&, State&)>;

  explicit Rk4Stepper(Rhs rhs) : rhs_(std::move(rhs)) {}

  void step(double t, double h, State& y) {
    rhs_(t, y, k1_);
    tmp_ = y + (0.5 * h) * k1_;
    rhs_(t + 0.5 * h, tmp_, k2_);
    tmp_ = y + (0.5 * h) * k2_;
    rhs_(t + 0.5 * h, tmp_, k3_);
    tmp_ = y + h * k3_;
    rhs_(t + h, tmp_, k4_);
    y += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
  }

 private:
  Rhs rhs_;
  State k1_, k2_, k3_, k4_, tmp_;
};

/// Dormand-Prince 5(4) with step-size control on a mixed absolute/relative
/// RMS error norm. Throws NumericalError if the step falls below min_step.
template <class State>
class DopriIntegrator {
 public:
  using Rhs = std::function<void(double, const State&, State&)>;

  DopriIntegrator(Rhs rhs, double rtol, double atol, double min_step, double max_step)
      : rhs_(std::move(rhs)), rtol_(rtol), atol_(atol), min_step_(min_step), max_step_(max_step) {}

  /// Advances y from t0 to t1 exactly.
  void advance(double t0, double t1, State& y);

  long accepted_steps() const { return accepted_; }
  long rejected_steps() const { return rejected_; }

 private:
  Rhs rhs_;
  double rtol_, atol_, min_step_, max_step_;
  double h_ = 0.0;
  long accepted_ = 0;
  long rejected_ = 0;
  State k1_, k2_, k3_, k4_, k5_, k6_, k7_, tmp_, y5_, err_;
  bool fsal_valid_ = false;
};

void throw_step_floor(double t, double h);

template <class State>
void DopriIntegrator<State>::advance(double t0, double t1, State& y) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;
  double t = t0;
  if (h_ <= 0.0) h_ = std::min(max_step_, std::max(min_step_, 1e-3 * (t1 - t0)));
  fsal_valid_ = false;
  while (t < t1) {
    double h = std::min(h_, t1 - t);
    if (!fsal_valid_) rhs_(t, y, k1_);
    tmp_ = y + h * a21 * k1_;
    rhs_(t + c2 * h, tmp_, k2_);
    tmp_ = y + h * (a31 * k1_ + a32 * k2_);
    rhs_(t + c3 * h, tmp_, k3_);
    tmp_ = y + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
    rhs_(t + c4 * h, tmp_, k4_);
    tmp_ = y + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
    rhs_(t + c5 * h, tmp_, k5_);
    tmp_ = y + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
    rhs_(t + h, tmp_, k6_);
    y5_ = y + h * (b1 * k1_ + b3 * k3_ + b4 * k4_ + b5 * k5_ + b6 * k6_);
    rhs_(t + h, y5_, k7_);
    err_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);
    const auto scale = (atol_ + rtol_ * y.array().abs().max(y5_.array().abs())).eval();
    const double err = std::sqrt((err_.array().abs() / scale).square().mean());
    if (err <= 1.0 || h <= min_step_) {
      if (!(err <= 1.0)) throw_step_floor(t, h);
      t = (h == t1 - t) ? t1 : t + h;
      y = y5_;
      k1_ = k7_;
      fsal_valid_ = true;
      ++accepted_;
      const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
      if (h == h_) h_ = std::min(max_step_, h * grow);
    } else {
      ++rejected_;
      fsal_valid_ = true;  // k1 still valid at unchanged (t, y)
      h_ = std::max(min_step_, h * std::max(0.2, 0.9 * std::pow(err, -0.2)));
    }
  }
}

}  // namespace motsim
