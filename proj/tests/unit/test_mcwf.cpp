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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "motsim/dynamics.hpp"
#include "motsim/errors.hpp"
#include "motsim/mcwf.hpp"
#include "motsim/states.hpp"

using namespace motsim;

namespace {

TimeDependentOperator static_operator(const FockSpace& s, const SparseMatrix& m, Hermiticity tag) {
  TimeDependentOperator h(s, std::vector<double>(s.num_modes(), 0.0), Frame::rotating, tag);
  h.add_static(m);
  return h;
}

struct DrivenCavity {
  FockSpace space{std::vector<int>{8}};
  double kappa = 0.5;
  Operator a = annihilation(space, 0);
  Operator h = 0.4 * (a + a.adjoint()) + 0.2 * number(space, 0);
  TimeDependentOperator hamiltonian() const { return static_operator(space, h.matrix(), Hermiticity::hermitian); }
  TimeDependentOperator effective() const {
    return static_operator(space, (h + cd(0.0, -kappa) * number(space, 0)).matrix(), Hermiticity::general);
  }
  Operator jump() const { return std::sqrt(2.0 * kappa) * a; }
};

double kolmogorov_p_value(double d, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) p += 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
  return std::clamp(p, 0.0, 1.0);
}

double trace_distance(const DenseMatrix& a, const DenseMatrix& b) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(a - b);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

IntegratorConfig fine(int samples) {
  IntegratorConfig cfg;
  cfg.dt = 0.01;
  cfg.samples = samples;
  return cfg;
}

}  // namespace

TEST(Trajectory, DarkStateKeepsUnitNorm) {
  FockSpace s({4});
  const double kappa = 1.0;
  const TimeDependentOperator h = static_operator(s, (cd(0.0, -kappa) * number(s, 0)).matrix(), Hermiticity::general);
  TrajectoryOptions opt;
  opt.jumps = true;
  const TrajectoryRecord r = mcwf_trajectory(h, {std::sqrt(2.0 * kappa) * annihilation(s, 0)}, fock_state(s, {0}),
                                             0.0, 5.0, fine(10), opt);
  for (double n : r.norms_sq) EXPECT_NEAR(n, 1.0, 1e-14);
  EXPECT_TRUE(r.jump_times.empty());
}

TEST(Trajectory, NoJumpNormFollowsDecay) {
  FockSpace s({3});
  const double kappa = 0.7;
  const TimeDependentOperator h = static_operator(s, (cd(0.0, -kappa) * number(s, 0)).matrix(), Hermiticity::general);
  TrajectoryOptions opt;
  opt.jumps = false;
  const TrajectoryRecord r =
      mcwf_trajectory(h, {std::sqrt(2.0 * kappa) * annihilation(s, 0)}, fock_state(s, {1}), 0.0, 3.0, fine(6), opt);
  for (std::size_t k = 0; k < r.times.size(); ++k) EXPECT_NEAR(r.norms_sq[k], std::exp(-2.0 * kappa * r.times[k]), 1e-9);
  ASSERT_TRUE(r.final_state.has_value());
  EXPECT_NEAR(r.final_state->norm() * r.final_state->norm(), r.norms_sq.back(), 1e-14);
}

TEST(Trajectory, NormSlopeIsJumpRate) {
  const DrivenCavity cav;
  TrajectoryOptions opt;
  opt.jumps = false;
  opt.observables = {cav.jump().adjoint() * cav.jump()};
  const int samples = 400;
  const TrajectoryRecord r =
      mcwf_trajectory(cav.effective(), {cav.jump()}, fock_state(cav.space, {0}), 0.0, 4.0, fine(samples), opt);
  const double h = r.times[1] - r.times[0];
  for (int k = 50; k < samples; k += 50) {
    const double slope = (r.norms_sq[k + 1] - r.norms_sq[k - 1]) / (2.0 * h);
    const double rate = r.observables[k][0].real() * r.norms_sq[k];
    EXPECT_NEAR(slope, -rate, 1e-3 * std::abs(rate));
  }
}

TEST(Trajectory, SeedDeterminism) {
  const DrivenCavity cav;
  TrajectoryOptions opt;
  opt.seed = 99;
  const auto run = [&](std::uint64_t seed) {
    opt.seed = seed;
    return mcwf_trajectory(cav.effective(), {cav.jump()}, fock_state(cav.space, {3}), 0.0, 6.0, fine(20), opt);
  };
  const TrajectoryRecord a = run(99);
  const TrajectoryRecord b = run(99);
  const TrajectoryRecord c = run(100);
  EXPECT_EQ(a.jump_times, b.jump_times);
  EXPECT_EQ(a.seed, 99u);
  EXPECT_FALSE(a.jump_times.empty());
  EXPECT_NE(a.jump_times, c.jump_times);
  EXPECT_NE(trajectory_seed(1, 0), trajectory_seed(1, 1));
  EXPECT_EQ(trajectory_seed(5, 3), trajectory_seed(5, 3));
}

TEST(Trajectory, RejectsForeignJumpOperator) {
  FockSpace s({3});
  const TimeDependentOperator h = static_operator(s, SparseMatrix(3, 3), Hermiticity::general);
  EXPECT_THROW(mcwf_trajectory(h, {annihilation(FockSpace({4}), 0)}, fock_state(s, {1}), 0.0, 1.0, fine(2), {}),
               ArgumentError);
}

TEST(Ensemble, WaitingTimesAreExponential) {
  FockSpace s({3});
  const double kappa = 1.0;
  const TimeDependentOperator h = static_operator(s, (cd(0.0, -kappa) * number(s, 0)).matrix(), Hermiticity::general);
  EnsembleOptions opt;
  opt.n_traj = 2000;
  opt.master_seed = 2026;
  opt.average_states = false;
  const EnsembleResult r = mcwf_ensemble(h, {std::sqrt(2.0 * kappa) * annihilation(s, 0)}, fock_state(s, {1}), 0.0,
                                         10.0, fine(4), opt);
  std::vector<double> waits;
  for (const auto& times : r.jump_times) {
    ASSERT_EQ(times.size(), 1u);
    waits.push_back(times.front());
  }
  std::sort(waits.begin(), waits.end());
  double d = 0.0;
  const double n = static_cast<double>(waits.size());
  for (std::size_t i = 0; i < waits.size(); ++i) {
    const double cdf = 1.0 - std::exp(-2.0 * kappa * waits[i]);
    d = std::max({d, cdf - i / n, (i + 1) / n - cdf});
  }
  EXPECT_GT(kolmogorov_p_value(d, waits.size()), 0.01);
  EXPECT_NEAR(r.mean_jumps, 1.0, 1e-12);
}

TEST(Ensemble, ConvergesToMasterEquation) {
  const DrivenCavity cav;
  const double t1 = 4.0;
  const MasterPath master = evolve_master(cav.hamiltonian(), {std::sqrt(cav.kappa) * cav.a},
                                          DensityMatrix(cav.space, fock_state(cav.space, {2}).amplitudes() *
                                                                       fock_state(cav.space, {2}).amplitudes().adjoint()),
                                          0.0, t1, fine(40));
  EnsembleOptions opt;
  opt.n_traj = 500;
  opt.master_seed = 7;
  opt.observables = {number(cav.space, 0)};
  const EnsembleResult ens =
      mcwf_ensemble(cav.effective(), {cav.jump()}, fock_state(cav.space, {2}), 0.0, t1, fine(40), opt);
  ASSERT_EQ(ens.states.size(), master.states.size());
  EXPECT_LT(trace_distance(ens.states.back().entries(), master.states.back().entries()), 0.05);

  double integral = 0.0;
  for (std::size_t k = 1; k < master.times.size(); ++k) {
    const double n0 = expectation(number(cav.space, 0), master.states[k - 1]).real();
    const double n1 = expectation(number(cav.space, 0), master.states[k]).real();
    integral += 0.5 * (n0 + n1) * (master.times[k] - master.times[k - 1]);
  }
  const double expected_jumps = 2.0 * cav.kappa * integral;
  EXPECT_NEAR(ens.mean_jumps, expected_jumps, 4.0 * ens.jumps_stderr + 0.01 * expected_jumps);
}

TEST(Ensemble, ThreadCountDoesNotChangeResults) {
  const DrivenCavity cav;
  EnsembleOptions opt;
  opt.n_traj = 12;
  opt.master_seed = 3;
  opt.threads = 1;
  const EnsembleResult a = mcwf_ensemble(cav.effective(), {cav.jump()}, fock_state(cav.space, {2}), 0.0, 3.0, fine(3), opt);
  opt.threads = 4;
  const EnsembleResult b = mcwf_ensemble(cav.effective(), {cav.jump()}, fock_state(cav.space, {2}), 0.0, 3.0, fine(3), opt);
  EXPECT_EQ(a.jump_times, b.jump_times);
  EXPECT_LT((a.states.back().entries() - b.states.back().entries()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Ensemble, SingleNoJumpTrajectoryIsRankOne) {
  const DrivenCavity cav;
  EnsembleOptions opt;
  opt.n_traj = 1;
  opt.jumps = false;
  const EnsembleResult r = mcwf_ensemble(cav.effective(), {cav.jump()}, fock_state(cav.space, {1}), 0.0, 2.0, fine(2), opt);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(r.states.back().entries());
  EXPECT_NEAR(solver.eigenvalues().maxCoeff(), 1.0, 1e-12);
  EXPECT_LT(solver.eigenvalues().cwiseAbs().sum() - 1.0, 1e-12);
  EXPECT_LT(r.final_norms_sq.front(), 1.0);
}

TEST(TransferReport, PerfectTransfer) {
  FockSpace s({4});
  TrajectoryRecord r;
  r.norms_sq = {1.0};
  r.final_state = fock_state(s, {2});
  const TransferReport rep = transfer_fidelity_report(r, fock_state(s, {2}));
  EXPECT_NEAR(rep.no_jump_norm, 1.0, 1e-15);
  EXPECT_NEAR(rep.fidelity, 1.0, 1e-15);
}

TEST(TransferReport, RenormalizesFinalState) {
  FockSpace s({4});
  TrajectoryRecord r;
  r.final_state = StateVector(s, 0.5 * fock_state(s, {2}).amplitudes());
  r.norms_sq = {0.25};
  const TransferReport rep = transfer_fidelity_report(r, fock_state(s, {2}));
  EXPECT_NEAR(rep.no_jump_norm, 0.25, 1e-15);
  EXPECT_NEAR(rep.fidelity, 1.0, 1e-15);
}
