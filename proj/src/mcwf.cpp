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

#include "motsim/mcwf.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "motsim/diagnostics.hpp"
#include "motsim/dynamics.hpp"
#include "motsim/errors.hpp"

namespace motsim {
namespace {

const cd kMinusI(0.0, -1.0);
constexpr double kNormFloor = 1e-14;

Vector apply_in_frame(const SparseMatrix& op, const Vector& phases, const Vector& y) {
  Vector shifted = phases.conjugate().cwiseProduct(y);
  Vector out = op * shifted;
  return phases.cwiseProduct(out);
}

}  // namespace

std::uint64_t trajectory_seed(std::uint64_t master_seed, std::uint64_t index) {
  // splitmix64 finalizer over the (seed, index) pair.
  std::uint64_t z = master_seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

TrajectoryRecord mcwf_trajectory(const TimeDependentOperator& h_eff, const std::vector<Operator>& jumps,
                                 const StateVector& psi0, double t0, double t1, const IntegratorConfig& cfg,
                                 const TrajectoryOptions& options) {
  if (cfg.method != Method::rk4) throw ArgumentError("trajectories use fixed-step RK4");
  if (h_eff.space() != psi0.space()) throw ArgumentError("state and Hamiltonian spaces differ");
  for (const auto& c : jumps) {
    if (c.space() != psi0.space()) throw ArgumentError("jump operator space differs");
  }
  for (const auto& o : options.observables) {
    if (o.space() != psi0.space()) throw ArgumentError("observable space differs");
  }
  const StepPlan plan = plan_steps(cfg, h_eff.max_frequency(), t0, t1);
  const bool lab = h_eff.frame() == Frame::lab;
  Vector y = lab ? h_eff.to_interaction(t0, psi0.amplitudes()) : psi0.amplitudes();
  y /= y.norm();

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double threshold = options.jumps ? uniform(rng) : 0.0;

  Vector scratch;
  Vector cached_phases;
  double cached_t = std::nan("");
  auto phases_at = [&](double t) -> const Vector& {
    if (!(t == cached_t)) {
      cached_phases = h_eff.frame_phases(t);
      cached_t = t;
    }
    return cached_phases;
  };
  auto rhs = [&](double t, const Vector& in, Vector& out) {
    h_eff.apply_interaction(t, phases_at(t), in, out, scratch);
    out *= kMinusI;
  };
  Rk4Stepper<Vector> stepper(rhs);

  TrajectoryRecord record;
  record.seed = options.seed;

  auto sample = [&](double t) {
    const double nsq = y.squaredNorm();
    if (std::sqrt(nsq) < kNormFloor) {
      std::ostringstream msg;
      msg << "trajectory norm underflow at t = " << t;
      throw NumericalError(msg.str());
    }
    if (!y.allFinite()) throw NumericalError("trajectory state became non-finite");
    record.times.push_back(t);
    record.norms_sq.push_back(nsq);
    StateVector reported(h_eff.space(), lab ? h_eff.to_lab(t, y) : y);
    record.max_top_population = std::max(record.max_top_population, top_level_population(reported));
    if (!options.observables.empty()) {
      std::vector<cd> values;
      for (const auto& o : options.observables) values.push_back(expectation(o, reported) / nsq);
      record.observables.push_back(std::move(values));
    }
    if (options.store_states) record.states.push_back(reported.normalized());
  };

  auto do_jump = [&](double t) {
    const Vector& phases = phases_at(t);
    std::vector<Vector> candidates;
    std::vector<double> weights;
    for (const auto& c : jumps) {
      candidates.push_back(apply_in_frame(c.matrix(), phases, y));
      weights.push_back(candidates.back().squaredNorm());
    }
    double total = 0.0;
    for (double w : weights) total += w;
    if (!(total > 0.0)) throw NumericalError("jump requested on a state annihilated by every channel");
    const double pick = uniform(rng) * total;
    std::size_t k = 0;
    double acc = weights[0];
    while (k + 1 < weights.size() && acc < pick) acc += weights[++k];
    y = candidates[k] / std::sqrt(weights[k]);
    record.jump_times.push_back(t);
    record.jump_channels.push_back(static_cast<int>(k));
    threshold = uniform(rng);
  };

  // Advances y over [t, t + h], stopping at every jump.
  auto advance = [&](double t, double h) {
    double left = h;
    double now = t;
    while (left > 1e-14 * h) {
      if (!options.jumps || jumps.empty()) {
        stepper.step(now, left, y);
        return;
      }
      const Vector before = y;
      stepper.step(now, left, y);
      if (y.squaredNorm() > threshold) return;
      double lo = 0.0;
      double hi = left;
      while (hi - lo > plan.dt / 100.0) {
        const double mid = 0.5 * (lo + hi);
        y = before;
        stepper.step(now, mid, y);
        if (y.squaredNorm() <= threshold) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
      y = before;
      stepper.step(now, hi, y);
      now += hi;
      left -= hi;
      do_jump(now);
    }
  };

  sample(t0);
  for (int k = 1; k <= plan.samples; ++k) {
    const double start = t0 + (k - 1) * plan.sample_interval;
    for (long s = 0; s < plan.steps_per_sample; ++s) advance(start + s * plan.dt, plan.dt);
    sample(k == plan.samples ? t1 : t0 + k * plan.sample_interval);
  }
  record.final_state = StateVector(h_eff.space(), lab ? h_eff.to_lab(t1, y) : y);
  if (record.max_top_population > 1e-4) {
    std::ostringstream msg;
    msg << "trajectory top Fock level population " << record.max_top_population << " exceeds 1e-4";
    warn(msg.str());
  }
  return record;
}

EnsembleResult mcwf_ensemble(const TimeDependentOperator& h_eff, const std::vector<Operator>& jumps,
                             const StateVector& psi0, double t0, double t1, const IntegratorConfig& cfg,
                             const EnsembleOptions& options) {
  if (options.n_traj < 1) throw ArgumentError("ensemble needs at least one trajectory");
  std::vector<TrajectoryRecord> records(static_cast<std::size_t>(options.n_traj));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (int i = next++; i < options.n_traj; i = next++) {
      try {
        TrajectoryOptions topt;
        topt.jumps = options.jumps;
        topt.seed = trajectory_seed(options.master_seed, static_cast<std::uint64_t>(i));
        topt.observables = options.observables;
        topt.store_states = options.average_states;
        records[static_cast<std::size_t>(i)] = mcwf_trajectory(h_eff, jumps, psi0, t0, t1, cfg, topt);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  int threads = options.threads > 0 ? options.threads : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, options.n_traj);
  std::vector<std::thread> pool;
  for (int w = 1; w < threads; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  // Reduction in trajectory order keeps results independent of scheduling.
  EnsembleResult result;
  result.times = records.front().times;
  const std::size_t samples = result.times.size();
  const double n = options.n_traj;
  if (options.average_states) {
    const auto dim = static_cast<Eigen::Index>(psi0.space().total_dim());
    for (std::size_t s = 0; s < samples; ++s) {
      DenseMatrix acc = DenseMatrix::Zero(dim, dim);
      for (const auto& r : records) acc.noalias() += r.states[s].amplitudes() * r.states[s].amplitudes().adjoint();
      result.states.emplace_back(psi0.space(), acc / n);
    }
  }
  const std::size_t n_obs = options.observables.size();
  if (n_obs > 0) {
    result.observable_mean.assign(samples, std::vector<cd>(n_obs, 0.0));
    result.observable_stderr.assign(samples, std::vector<double>(n_obs, 0.0));
    for (std::size_t s = 0; s < samples; ++s) {
      for (std::size_t o = 0; o < n_obs; ++o) {
        cd mean = 0.0;
        for (const auto& r : records) mean += r.observables[s][o];
        mean /= n;
        double var = 0.0;
        for (const auto& r : records) var += std::norm(r.observables[s][o] - mean);
        result.observable_mean[s][o] = mean;
        result.observable_stderr[s][o] = n > 1 ? std::sqrt(var / (n - 1) / n) : 0.0;
      }
    }
  }
  double mean_jumps = 0.0;
  for (const auto& r : records) mean_jumps += static_cast<double>(r.jump_times.size());
  mean_jumps /= n;
  double var = 0.0;
  for (const auto& r : records) {
    const double d = static_cast<double>(r.jump_times.size()) - mean_jumps;
    var += d * d;
  }
  result.mean_jumps = mean_jumps;
  result.jumps_stderr = n > 1 ? std::sqrt(var / (n - 1) / n) : 0.0;
  for (auto& r : records) {
    result.jump_times.push_back(std::move(r.jump_times));
    result.final_norms_sq.push_back(r.norms_sq.back());
  }
  return result;
}

TransferReport transfer_fidelity_report(const TrajectoryRecord& record, const StateVector& target) {
  if (!record.final_state) throw ArgumentError("trajectory record carries no final state");
  const StateVector& psi = *record.final_state;
  const double nsq = psi.amplitudes().squaredNorm();
  if (!(nsq > 0.0)) throw NumericalError("final state has zero norm");
  const double overlap = std::norm(inner_product(target.normalized(), psi));
  return {nsq, std::clamp(overlap / nsq, 0.0, 1.0)};
}

}  // namespace motsim
