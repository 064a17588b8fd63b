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

#include "motsim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "motsim/diagnostics.hpp"
#include "motsim/errors.hpp"

namespace motsim {
namespace {

constexpr double kTopLevelWarning = 1e-4;

const cd kMinusI(0.0, -1.0);

// Phases of the free-part frame, cached for repeated evaluation at the same
// time (the two RK4 midpoint stages share one).
class PhaseCache {
 public:
  explicit PhaseCache(const TimeDependentOperator& h) : h_(h) {}
  const Vector& at(double t) {
    if (!valid_ || t != t_) {
      phases_ = h_.frame_phases(t);
      t_ = t;
      valid_ = true;
    }
    return phases_;
  }

 private:
  const TimeDependentOperator& h_;
  Vector phases_;
  double t_ = 0.0;
  bool valid_ = false;
};

// Drives a stepper across the sample grid, invoking `sample(k, t, y)` at
// every sample point including t0.
template <class State, class Rhs, class Sample>
void integrate_samples(const IntegratorConfig& cfg, double omega_max, double t0, double t1, State& y, Rhs rhs,
                       Sample sample) {
  const StepPlan plan = plan_steps(cfg, omega_max, t0, t1);
  sample(0, t0, y);
  if (cfg.method == Method::rk4) {
    Rk4Stepper<State> stepper(rhs);
    for (int k = 1; k <= plan.samples; ++k) {
      const double start = t0 + (k - 1) * plan.sample_interval;
      for (long s = 0; s < plan.steps_per_sample; ++s) stepper.step(start + s * plan.dt, plan.dt, y);
      sample(k, k == plan.samples ? t1 : t0 + k * plan.sample_interval, y);
    }
  } else {
    const double period = omega_max > 0.0 ? 2.0 * std::numbers::pi / omega_max : (t1 - t0);
    DopriIntegrator<State> integrator(rhs, cfg.rtol, cfg.atol, cfg.min_step, cfg.max_step_fraction * period);
    for (int k = 1; k <= plan.samples; ++k) {
      const double a = t0 + (k - 1) * plan.sample_interval;
      const double b = k == plan.samples ? t1 : t0 + k * plan.sample_interval;
      integrator.advance(a, b, y);
      sample(k, b, y);
    }
  }
}

void check_finite(const Vector& y, double t) {
  if (!y.allFinite()) {
    std::ostringstream msg;
    msg << "state became non-finite at t = " << t;
    throw NumericalError(msg.str());
  }
}

void check_finite(const DenseMatrix& y, double t) {
  if (!y.allFinite()) {
    std::ostringstream msg;
    msg << "density matrix became non-finite at t = " << t;
    throw NumericalError(msg.str());
  }
}

void warn_top_level(double pop) {
  if (pop > kTopLevelWarning) {
    std::ostringstream msg;
    msg << "top Fock level population " << pop << " exceeds " << kTopLevelWarning;
    warn(msg.str());
  }
}

DenseMatrix conjugate_by_phases(const Vector& phases, const DenseMatrix& m) {
  return phases.asDiagonal() * m * phases.conjugate().asDiagonal();
}

}  // namespace

double top_level_population(const StateVector& psi) {
  const FockSpace& space = psi.space();
  const Vector& a = psi.amplitudes();
  const double total = a.squaredNorm();
  double worst = 0.0;
  for (int m = 0; m < space.num_modes(); ++m) {
    const std::size_t s = space.stride(m);
    const std::size_t d = static_cast<std::size_t>(space.dim(m));
    double pop = 0.0;
    for (std::size_t i = 0; i < space.total_dim(); ++i) {
      if ((i / s) % d == d - 1) pop += std::norm(a(static_cast<Eigen::Index>(i)));
    }
    worst = std::max(worst, total > 0.0 ? pop / total : 0.0);
  }
  return worst;
}

double top_level_population(const DensityMatrix& rho) {
  const FockSpace& space = rho.space();
  const double total = rho.trace().real();
  double worst = 0.0;
  for (int m = 0; m < space.num_modes(); ++m) {
    const std::size_t s = space.stride(m);
    const std::size_t d = static_cast<std::size_t>(space.dim(m));
    double pop = 0.0;
    for (std::size_t i = 0; i < space.total_dim(); ++i) {
      if ((i / s) % d == d - 1) pop += rho.entries()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
    }
    worst = std::max(worst, total > 0.0 ? pop / total : 0.0);
  }
  return worst;
}

SchrodingerPath evolve_schrodinger(const TimeDependentOperator& h, const StateVector& psi0, double t0, double t1,
                                   const IntegratorConfig& cfg) {
  if (h.hermiticity() != Hermiticity::hermitian) {
    throw ArgumentError("evolve_schrodinger needs a Hermitian generator");
  }
  if (h.space() != psi0.space()) throw ArgumentError("state and Hamiltonian spaces differ");
  const bool lab = h.frame() == Frame::lab;
  Vector y = lab ? h.to_interaction(t0, psi0.amplitudes()) : psi0.amplitudes();
  const double norm0 = y.norm();

  PhaseCache cache(h);
  Vector scratch;
  auto rhs = [&](double t, const Vector& in, Vector& out) {
    h.apply_interaction(t, cache.at(t), in, out, scratch);
    out *= kMinusI;
  };

  SchrodingerPath path;
  integrate_samples(cfg, h.max_frequency(), t0, t1, y, rhs, [&](int, double t, Vector& state) {
    check_finite(state, t);
    path.max_norm_drift = std::max(path.max_norm_drift, std::abs(state.norm() - norm0));
    if (cfg.renormalize) state *= norm0 / state.norm();
    StateVector sv(h.space(), lab ? h.to_lab(t, state) : state);
    path.max_top_population = std::max(path.max_top_population, top_level_population(sv));
    path.times.push_back(t);
    path.states.push_back(std::move(sv));
  });
  warn_top_level(path.max_top_population);
  return path;
}

namespace {

struct Dissipator {
  SparseKernel jump;
  SparseKernel jump_dagger_jump;
};

// out = Phi op Phi^dagger x: the interaction-picture version of a lab-frame
// operator applied from the left.
void left_interaction(const SparseKernel& op, const Vector& phases, const DenseMatrix& x, DenseMatrix& shifted,
                      DenseMatrix& out) {
  shifted.noalias() = phases.conjugate().asDiagonal() * x;
  op.apply(shifted, out);
  out = phases.asDiagonal() * out;
}

void add_dissipators(const std::vector<Dissipator>& dissipators, const Vector& phases, const DenseMatrix& rho,
                     DenseMatrix& out) {
  thread_local DenseMatrix shifted, l_rho, l_rho_dagger, sandwich, anti;
  for (const auto& d : dissipators) {
    left_interaction(d.jump, phases, rho, shifted, l_rho);
    l_rho_dagger = l_rho.adjoint();
    left_interaction(d.jump, phases, l_rho_dagger, shifted, sandwich);
    left_interaction(d.jump_dagger_jump, phases, rho, shifted, anti);
    out += 2.0 * sandwich;
    out -= anti;
    out -= anti.adjoint();
  }
}

template <class Rhs>
MasterPath run_master(const FockSpace& space, DenseMatrix y, double omega_max, double t0, double t1,
                      const IntegratorConfig& cfg, const MasterOptions& options, Rhs rhs,
                      const std::function<DenseMatrix(double, const DenseMatrix&)>& to_reported) {
  MasterPath path;
  path.min_eigenvalue = 1.0;
  const bool positivity = options.check_positivity && space.total_dim() <= 400;
  integrate_samples(cfg, omega_max, t0, t1, y, rhs, [&](int, double t, DenseMatrix& state) {
    check_finite(state, t);
    if (cfg.renormalize) state /= state.trace().real();
    DensityMatrix rho(space, to_reported(t, state));
    path.max_trace_error = std::max(path.max_trace_error, std::abs(rho.trace() - cd(1.0)));
    path.max_hermiticity_defect = std::max(path.max_hermiticity_defect, rho.hermiticity_defect());
    path.max_top_population = std::max(path.max_top_population, top_level_population(rho));
    if (positivity) path.min_eigenvalue = std::min(path.min_eigenvalue, rho.min_eigenvalue());
    path.times.push_back(t);
    if (options.observer) options.observer(t, rho);
    if (options.store_states) path.states.push_back(std::move(rho));
  });
  if (positivity && path.min_eigenvalue < -1e-6) {
    std::ostringstream msg;
    msg << "density matrix eigenvalue " << path.min_eigenvalue << " below -1e-6";
    warn(msg.str());
  }
  warn_top_level(path.max_top_population);
  return path;
}

}  // namespace

MasterPath evolve_master(const TimeDependentOperator& h, const std::vector<Operator>& jumps,
                         const DensityMatrix& rho0, double t0, double t1, const IntegratorConfig& cfg,
                         const MasterOptions& options) {
  if (h.hermiticity() != Hermiticity::hermitian) throw ArgumentError("evolve_master needs a Hermitian generator");
  if (h.space() != rho0.space()) throw ArgumentError("state and Hamiltonian spaces differ");
  std::vector<Dissipator> dissipators;
  for (const auto& l : jumps) {
    if (l.space() != rho0.space()) throw ArgumentError("jump operator space differs");
    dissipators.push_back({SparseKernel(l.matrix()), SparseKernel(SparseMatrix(l.matrix().adjoint() * l.matrix()))});
  }
  const bool lab = h.frame() == Frame::lab;
  DenseMatrix y = lab ? conjugate_by_phases(h.frame_phases(t0), rho0.entries()) : rho0.entries();

  PhaseCache cache(h);
  DenseMatrix k;
  auto rhs = [&](double t, const DenseMatrix& rho, DenseMatrix& out) {
    const Vector& phases = cache.at(t);
    h.apply_interaction(t, phases, rho, k);
    k *= kMinusI;
    out = k;
    out += k.adjoint();
    add_dissipators(dissipators, phases, rho, out);
  };
  auto reported = [&](double t, const DenseMatrix& state) -> DenseMatrix {
    return lab ? conjugate_by_phases(h.frame_phases(t).conjugate(), state) : state;
  };
  return run_master(rho0.space(), std::move(y), h.max_frequency(), t0, t1, cfg, options, rhs, reported);
}

MasterPath evolve_adiabatic_cascade(const CascadeRates& rates, const DensityMatrix& rho0, double t0, double t1,
                                    const IntegratorConfig& cfg, const MasterOptions& options) {
  const FockSpace& space = rho0.space();
  if (space.num_modes() != 2) throw ArgumentError("adiabatic cascade needs a two-mode space");
  if (!rates.gamma1 || !rates.gamma2) throw ArgumentError("cascade rates are not set");
  const SparseKernel b1(annihilation(space, 0).matrix());
  const SparseKernel b2(annihilation(space, 1).matrix());
  const SparseKernel b2d(creation(space, 1).matrix());
  const SparseKernel n1(number(space, 0).matrix());
  const SparseKernel n2(number(space, 1).matrix());
  const cd cross_phase = std::polar(1.0, -rates.phase_difference);

  DenseMatrix w1, w1_dagger, w2, w3;
  // out += g (2 b rho b^dagger - n rho - rho n); rho is Hermitian at every stage.
  auto add_damping = [&](double g, const SparseKernel& b, const SparseKernel& n, const DenseMatrix& rho,
                         DenseMatrix& out) {
    b.apply(rho, w1);
    w1_dagger = w1.adjoint();
    b.apply(w1_dagger, w2);
    n.apply(rho, w3);
    out += (2.0 * g) * w2;
    out -= g * w3;
    out -= g * w3.adjoint();
  };
  auto rhs = [&](double t, const DenseMatrix& rho, DenseMatrix& out) {
    const double g1 = rates.gamma1(t);
    const double g2 = rates.gamma2(t);
    out.setZero(rho.rows(), rho.cols());
    add_damping(g1, b1, n1, rho, out);
    add_damping(g2, b2, n2, rho, out);
    // [b2^dagger, b1 rho] = b2^dagger b1 rho - b1 rho b2^dagger, and
    // b1 rho b2^dagger = (b2 (b1 rho)^dagger)^dagger.
    b1.apply(rho, w1);
    w1_dagger = w1.adjoint();
    b2.apply(w1_dagger, w2);
    b2d.apply(w1, w3);
    w3 -= w2.adjoint();
    w3 *= 2.0 * std::sqrt(g1 * g2) * cross_phase;
    out += w3;
    out += w3.adjoint();
  };
  const double dmax = std::max(space.dim(0), space.dim(1));
  const double omega = 4.0 * rates.rate_bound * dmax;
  return run_master(space, rho0.entries(), omega, t0, t1, cfg, options, rhs,
                    [](double, const DenseMatrix& s) { return s; });
}

}  // namespace motsim
