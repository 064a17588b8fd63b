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

#include <cmath>
#include <numbers>

#include "motsim/analysis.hpp"
#include "motsim/errors.hpp"
#include "motsim/states.hpp"

using namespace motsim;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(Fidelity, PureStates) {
  FockSpace s({6});
  const StateVector a = fock_state(s, {2});
  EXPECT_NEAR(fidelity_pure(a, a), 1.0, 1e-15);
  EXPECT_NEAR(fidelity_pure(a, fock_state(s, {3})), 0.0, 1e-15);
  EXPECT_THROW(fidelity_pure(a, fock_state(FockSpace({5}), {2})), ArgumentError);
}

TEST(Fidelity, MixedIsLinearAndOneOnProjector) {
  FockSpace s({20});
  const StateVector phi = coherent_state(s, {cd(1.0, 0.5)});
  const DensityMatrix proj(s, phi.amplitudes() * phi.amplitudes().adjoint());
  EXPECT_NEAR(fidelity_mixed(proj, phi), 1.0, 1e-12);
  const StateVector other = fock_state(s, {1});
  const DensityMatrix mix(s, 0.3 * proj.entries() + 0.7 * other.amplitudes() * other.amplitudes().adjoint());
  EXPECT_NEAR(fidelity_mixed(mix, phi), 0.3 + 0.7 * fidelity_pure(other, phi), 1e-12);
}

TEST(ReferenceDecayedCoherent, Amplitude) {
  FockSpace s({40});
  const cd alpha(std::sqrt(10.0), 0.0);
  const StateVector t0 = reference_decayed_coherent(alpha, 10.0, 0.01, 0.0, s);
  EXPECT_NEAR(fidelity_pure(t0, coherent_state(s, {alpha})), 1.0, 1e-12);
  const StateVector t1 = reference_decayed_coherent(alpha, 10.0, 0.01, 100.0, s);
  const cd mean = expectation(annihilation(s, 0), t1);
  EXPECT_NEAR(std::abs(mean), std::sqrt(10.0) / std::exp(1.0), 1e-9);
  EXPECT_NEAR(std::arg(mean), std::remainder(-1000.0, 2.0 * kPi), 1e-9);
  const StateVector late = reference_decayed_coherent(alpha, 10.0, 0.01, 5000.0, s);
  EXPECT_NEAR(std::norm(late.amplitudes()(0)), 1.0, 1e-12);
}

TEST(EprWigner, OriginValue) {
  for (double r : {0.0, 0.7, 2.0}) EXPECT_NEAR(epr_wigner(0, 0, 0, 0, r), 4.0 / (kPi * kPi), 1e-15);
}

TEST(EprWigner, UnsqueezedFactorizes) {
  const double x = 0.3, px = -0.2, z = 0.7, pz = 0.1;
  const double vacuum = (2.0 / kPi) * std::exp(-2.0 * (x * x + px * px)) * (2.0 / kPi) * std::exp(-2.0 * (z * z + pz * pz));
  EXPECT_NEAR(epr_wigner(x, px, z, pz, 0.0), vacuum, 1e-15);
}

TEST(EprWigner, IntegratesToOne) {
  const double r = 1.0;
  const int n = 32;
  const double lim = 5.0;
  const double h = 2.0 * lim / n;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = -lim + (i + 0.5) * h;
    for (int j = 0; j < n; ++j) {
      const double px = -lim + (j + 0.5) * h;
      for (int k = 0; k < n; ++k) {
        const double z = -lim + (k + 0.5) * h;
        for (int l = 0; l < n; ++l) sum += epr_wigner(x, px, z, -lim + (l + 0.5) * h, r);
      }
    }
  }
  EXPECT_NEAR(sum * std::pow(h, 4), 1.0, 1e-4);
}

TEST(LambDicke, CoherentState) {
  const double value = lamb_dicke_validity(0.15, 10.0, std::sqrt(10.0), 3.0);
  EXPECT_NEAR(value, 0.5 * 0.0225 * (11.0 + 3.0 * std::sqrt(10.0)), 1e-15);
  EXPECT_NEAR(value, 10.0 * 0.15 * 0.15, 0.03 * 0.225);
  EXPECT_NEAR(lamb_dicke_validity(0.1, 10.0, std::sqrt(10.0), 3.0), 0.1, 0.03 * 0.1);
  EXPECT_NEAR(lamb_dicke_validity(0.2, 0.0, 0.0, 17.0), 0.02, 1e-15);
  EXPECT_THROW(lamb_dicke_validity(0.1, 0.0, 0.0, -1.0), ArgumentError);
}

TEST(LambDicke, ThermalLike) {
  EXPECT_NEAR(thermal_like_validity(0.1, 0.0), 1.25 * 0.01, 1e-15);
  EXPECT_NEAR(thermal_like_validity(0.1, 1.6), 0.12537, 1e-5);
  const double nbar = std::sinh(1.6) * std::sinh(1.6);
  EXPECT_NEAR(thermal_like_validity(0.1, 1.6), 0.5 * 0.01 * (4.0 * nbar + 2.5), 1e-14);
}

TEST(Scattering, RateValues) {
  const double pre = 0.25 * 1.0 * 0.01 * 0.1;
  EXPECT_NEAR(spontaneous_scattering_rate(1.0, 0.1, 0.1, 4.0, 0.0), pre * 0.8, 1e-16);
  EXPECT_NEAR(spontaneous_scattering_rate(1.0, 0.1, 0.1, 4.0, kPi / 4.0), pre * 4.0, 1e-15);
  const int n = 1000;
  double avg = 0.0;
  for (int k = 0; k < n; ++k) avg += spontaneous_scattering_rate(1.0, 0.1, 0.1, 4.0, k * (2.0 * kPi / 4.0) / n);
  EXPECT_NEAR(avg / n, mean_spontaneous_scattering_rate(1.0, 0.1, 0.1), 1e-14);
}

TEST(StrongCoupling, HardwareFigures) {
  const double first = strong_coupling_figure(5.3, 1.0, 19.4);
  const double second = strong_coupling_figure(3.1, 0.5, 19.4);
  EXPECT_EQ(std::lround(first), 14);
  EXPECT_EQ(std::lround(second), 10);
  EXPECT_EQ(strong_coupling_figure(0.0, 1.0, 1.0), 0.0);
  EXPECT_THROW(strong_coupling_figure(1.0, 0.0, 1.0), ArgumentError);
}

TEST(ValidityReport, EntriesNonNegativeWithThresholds) {
  const ValidityReport r = validity_report(ValidityInputs{});
  EXPECT_FALSE(r.entries.empty());
  for (const auto& e : r.entries) {
    EXPECT_GE(e.value, 0.0) << e.name;
    EXPECT_GT(e.threshold, 0.0) << e.name;
  }
  EXPECT_NEAR(r.lamb_dicke_lhs, 0.005, 1e-15);
  EXPECT_NEAR(r.nu_over_kappa, 10.0, 1e-15);
  EXPECT_TRUE(r.all_ok());
  ValidityInputs bad;
  bad.eta = 0.5;
  bad.nbar = 10.0;
  EXPECT_FALSE(validity_report(bad).all_ok());
}
