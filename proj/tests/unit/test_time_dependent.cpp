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

#include "motsim/errors.hpp"
#include "motsim/time_dependent.hpp"

using namespace motsim;

namespace {

double max_abs(const DenseMatrix& m) { return m.cwiseAbs().maxCoeff(); }

TimeDependentOperator driven_pair(Frame frame) {
  FockSpace s({4, 3});
  TimeDependentOperator h(s, {1.0, 3.0}, frame, Hermiticity::hermitian);
  const SparseMatrix hop = (creation(s, 0) * annihilation(s, 1)).matrix();
  const SparseMatrix hop_dagger = SparseMatrix(hop.adjoint());
  h.add_term([](double t) { return std::polar(0.2, 0.7 * t); }, hop);
  h.add_term([](double t) { return std::polar(0.2, -0.7 * t); }, hop_dagger);
  h.add_static(0.05 * number(s, 0).matrix());
  return h;
}

}  // namespace

TEST(TimeDependent, InteractionMatrixIsPhaseConjugatedPotential) {
  const TimeDependentOperator h = driven_pair(Frame::rotating);
  const double t = 1.3;
  const Vector phases = h.frame_phases(t);
  const DenseMatrix expected = phases.asDiagonal() * DenseMatrix(h.potential(t)) * phases.conjugate().asDiagonal();
  EXPECT_LT(max_abs(DenseMatrix(h.interaction_matrix(t)) - expected), 1e-14);
}

TEST(TimeDependent, FramePhasesFollowFreeEnergies) {
  const TimeDependentOperator h = driven_pair(Frame::rotating);
  const double t = 0.4;
  const Vector phases = h.frame_phases(t);
  const DenseMatrix h0 = DenseMatrix(h.free_part());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    EXPECT_NEAR(std::abs(phases(i) - std::exp(cd(0.0, h0(i, i).real() * t))), 0.0, 1e-14);
  }
}

TEST(TimeDependent, VectorApplyMatchesMatrix) {
  const TimeDependentOperator h = driven_pair(Frame::rotating);
  const double t = 2.1;
  const Vector x = Vector::Random(12);
  Vector out;
  Vector scratch;
  h.apply_interaction(t, h.frame_phases(t), x, out, scratch);
  EXPECT_LT((out - h.interaction_matrix(t) * x).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(TimeDependent, DenseApplyMatchesMatrix) {
  const TimeDependentOperator h = driven_pair(Frame::lab);
  const double t = 0.9;
  const DenseMatrix x = DenseMatrix::Random(12, 5);
  DenseMatrix out;
  h.apply_interaction(t, h.frame_phases(t), x, out);
  EXPECT_LT(max_abs(out - DenseMatrix(h.interaction_matrix(t)) * x), 1e-14);
}

TEST(TimeDependent, ProductTermMatchesKroneckerProduct) {
  FockSpace s({3, 4, 2});
  TimeDependentOperator h(s, {0.0, 0.0, 0.0}, Frame::rotating, Hermiticity::general);
  const DenseMatrix f0 = DenseMatrix::Random(3, 3);
  const DenseMatrix f2 = DenseMatrix::Random(2, 2);
  h.add_product_term([](double) { return cd(0.5, 0.25); }, {f0, DenseMatrix(), f2});
  const DenseMatrix expected =
      cd(0.5, 0.25) * (embed(s, 0, f0) * embed(s, 2, f2)).dense();
  EXPECT_LT(max_abs(DenseMatrix(h.potential(0.0)) - expected), 1e-14);
  const Vector x = Vector::Random(24);
  Vector out;
  h.apply_potential(0.0, x, out);
  EXPECT_LT((out - expected * x).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(TimeDependent, ProductFactorShapeChecked) {
  FockSpace s({3, 4});
  TimeDependentOperator h(s, {0.0, 0.0}, Frame::rotating, Hermiticity::general);
  EXPECT_THROW(h.add_product_term([](double) { return cd(1.0); }, {DenseMatrix::Identity(4, 4), DenseMatrix()}),
               ArgumentError);
  EXPECT_THROW(h.add_product_term([](double) { return cd(1.0); }, {DenseMatrix()}), ArgumentError);
}

TEST(TimeDependent, AutomaticMaxFrequencyIsLargestCoupledGap) {
  const TimeDependentOperator h = driven_pair(Frame::rotating);
  EXPECT_NEAR(h.max_frequency(), 2.0, 1e-14);
}

TEST(TimeDependent, LabAtIncludesFreePart) {
  const TimeDependentOperator h = driven_pair(Frame::lab);
  const DenseMatrix lab = h.at(0.3).dense();
  const DenseMatrix expected = DenseMatrix(h.free_part()) + DenseMatrix(h.potential(0.3));
  EXPECT_LT(max_abs(lab - expected), 1e-14);
  EXPECT_LT(h.at(0.3).hermiticity_defect(), 1e-14);
}

TEST(TimeDependent, LostHermiticityDetected) {
  FockSpace s({3});
  TimeDependentOperator h(s, {1.0}, Frame::rotating, Hermiticity::hermitian);
  h.add_term([](double) { return cd(1.0); }, annihilation(s, 0).matrix());
  EXPECT_THROW(h.at(0.0), ConsistencyError);
}

TEST(TimeDependent, FrameConversionRoundTrip) {
  const TimeDependentOperator h = driven_pair(Frame::lab);
  const Vector x = Vector::Random(12);
  EXPECT_LT((h.to_lab(0.8, h.to_interaction(0.8, x)) - x).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(TimeDependent, WrongFrequencyCountRejected) {
  FockSpace s({3, 3});
  EXPECT_THROW(TimeDependentOperator(s, {1.0}, Frame::lab, Hermiticity::hermitian), ArgumentError);
}
