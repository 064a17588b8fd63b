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

#include "motsim/time_dependent.hpp"

#include <algorithm>
#include <cmath>

#include "motsim/errors.hpp"

namespace motsim {

TimeDependentOperator::TimeDependentOperator(FockSpace space, std::vector<double> free_frequencies,
                                             Frame frame, Hermiticity tag)
    : space_(std::move(space)), free_frequencies_(std::move(free_frequencies)), frame_(frame), tag_(tag) {
  if (static_cast<int>(free_frequencies_.size()) != space_.num_modes()) {
    throw ArgumentError("need one free frequency per mode");
  }
  const auto n = static_cast<Eigen::Index>(space_.total_dim());
  static_.resize(n, n);
}

void TimeDependentOperator::record_gaps(const SparseMatrix& m) {
  const Vector energies = free_part().diagonal();
  for (int r = 0; r < m.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) {
      if (it.value() == cd(0.0)) continue;
      const double gap = std::abs(energies(it.row()).real() - energies(it.col()).real());
      auto_frequency_ = std::max(auto_frequency_, gap);
    }
  }
}

void TimeDependentOperator::add_static(const SparseMatrix& m) {
  if (m.rows() != static_.rows() || m.cols() != static_.cols()) throw ArgumentError("term has wrong shape");
  static_ = static_ + m;
  static_.makeCompressed();
  has_static_ = true;
  static_kernel_ = SparseKernel(static_);
  record_gaps(m);
}

void TimeDependentOperator::add_term(Coefficient c, const SparseMatrix& m) {
  if (m.rows() != static_.rows() || m.cols() != static_.cols()) throw ArgumentError("term has wrong shape");
  SparseMatrix copy = m;
  copy.makeCompressed();
  record_gaps(copy);
  SparseKernel kernel(copy);
  terms_.push_back({std::move(c), std::move(copy), std::move(kernel)});
}

void TimeDependentOperator::add_product_term(Coefficient c, std::vector<DenseMatrix> factors) {
  if (static_cast<int>(factors.size()) != space_.num_modes()) {
    throw ArgumentError("product term needs one factor per mode");
  }
  for (int m = 0; m < space_.num_modes(); ++m) {
    const auto& f = factors[m];
    if (f.size() != 0 && (f.rows() != space_.dim(m) || f.cols() != space_.dim(m))) {
      throw ArgumentError("product factor has wrong shape");
    }
  }
  products_.push_back({std::move(c), std::move(factors)});
}

double TimeDependentOperator::max_frequency() const {
  if (max_frequency_ > 0.0) return max_frequency_;
  return auto_frequency_;
}

bool TimeDependentOperator::has_free_part() const {
  return std::any_of(free_frequencies_.begin(), free_frequencies_.end(), [](double w) { return w != 0.0; });
}

Vector TimeDependentOperator::frame_phases(double t) const {
  Vector phases = Vector::Ones(1);
  for (int m = 0; m < space_.num_modes(); ++m) {
    const int d = space_.dim(m);
    Vector local(d);
    local(0) = 1.0;
    for (int n = 1; n < d; ++n) local(n) = std::polar(1.0, free_frequencies_[m] * t * n);
    Vector next(phases.size() * d);
    for (Eigen::Index i = 0; i < phases.size(); ++i) next.segment(i * d, d) = phases(i) * local;
    phases = std::move(next);
  }
  return phases;
}

void TimeDependentOperator::apply_product(const ProductTerm& term, cd c, const Vector& in, Vector& out) const {
  using RowMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Vector work = in;
  Vector next(in.size());
  for (int m = 0; m < space_.num_modes(); ++m) {
    const DenseMatrix& f = term.factors[m];
    if (f.size() == 0) continue;
    const Eigen::Index d = space_.dim(m);
    const auto s = static_cast<Eigen::Index>(space_.stride(m));
    const Eigen::Index outer = in.size() / (d * s);
    if (s == 1) {
      Eigen::Map<const RowMat> x(work.data(), outer, d);
      Eigen::Map<RowMat> y(next.data(), outer, d);
      y.noalias() = x * f.transpose();
    } else {
      for (Eigen::Index o = 0; o < outer; ++o) {
        Eigen::Map<const RowMat> x(work.data() + o * d * s, d, s);
        Eigen::Map<RowMat> y(next.data() + o * d * s, d, s);
        y.noalias() = f * x;
      }
    }
    work.swap(next);
  }
  out += c * work;
}

void TimeDependentOperator::apply_potential(double t, const Vector& in, Vector& out) const {
  out.setZero(in.size());
  if (has_static_) static_kernel_.accumulate(1.0, in.data(), out.data());
  for (const auto& term : terms_) {
    const cd c = term.coefficient(t);
    if (c != cd(0.0)) term.kernel.accumulate(c, in.data(), out.data());
  }
  for (const auto& term : products_) {
    const cd c = term.coefficient(t);
    if (c != cd(0.0)) apply_product(term, c, in, out);
  }
}

void TimeDependentOperator::apply_interaction(double t, const Vector& phases, const Vector& in, Vector& out,
                                              Vector& scratch) const {
  scratch = phases.conjugate().cwiseProduct(in);
  apply_potential(t, scratch, out);
  out.array() *= phases.array();
}

void TimeDependentOperator::apply_interaction(double t, const Vector& phases, const DenseMatrix& in,
                                              DenseMatrix& out) const {
  thread_local DenseMatrix x;
  thread_local Vector col_out;
  x.noalias() = phases.conjugate().asDiagonal() * in;
  out.setZero(in.rows(), in.cols());
  if (has_static_) static_kernel_.accumulate(1.0, x, out);
  for (const auto& term : terms_) {
    const cd c = term.coefficient(t);
    if (c != cd(0.0)) term.kernel.accumulate(c, x, out);
  }
  if (!products_.empty()) {
    col_out.resize(in.rows());
    for (Eigen::Index j = 0; j < in.cols(); ++j) {
      col_out.setZero();
      const Vector col = x.col(j);
      for (const auto& term : products_) {
        const cd c = term.coefficient(t);
        if (c != cd(0.0)) apply_product(term, c, col, col_out);
      }
      out.col(j) += col_out;
    }
  }
  out = phases.asDiagonal() * out;
}

SparseMatrix TimeDependentOperator::potential(double t) const {
  SparseMatrix v = static_;
  for (const auto& term : terms_) v = v + term.coefficient(t) * term.matrix;
  if (!products_.empty()) {
    const auto n = static_cast<Eigen::Index>(space_.total_dim());
    DenseMatrix dense = DenseMatrix::Zero(n, n);
    Vector col_out(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      Vector e = Vector::Zero(n);
      e(j) = 1.0;
      col_out.setZero();
      for (const auto& term : products_) apply_product(term, term.coefficient(t), e, col_out);
      dense.col(j) = col_out;
    }
    v = v + SparseMatrix(dense.sparseView());
  }
  v.makeCompressed();
  return v;
}

SparseMatrix TimeDependentOperator::interaction_matrix(double t) const {
  const Vector phases = frame_phases(t);
  SparseMatrix v = potential(t);
  for (int r = 0; r < v.outerSize(); ++r) {
    for (SparseMatrix::InnerIterator it(v, r); it; ++it) {
      it.valueRef() *= phases(it.row()) * std::conj(phases(it.col()));
    }
  }
  return v;
}

SparseMatrix TimeDependentOperator::free_part() const {
  const auto n = static_cast<Eigen::Index>(space_.total_dim());
  SparseMatrix h0(n, n);
  std::vector<Eigen::Triplet<cd>> diag;
  for (std::size_t i = 0; i < space_.total_dim(); ++i) {
    const std::vector<int> occ = space_.occupations(i);
    double e = 0.0;
    for (int m = 0; m < space_.num_modes(); ++m) e += free_frequencies_[m] * occ[m];
    if (e != 0.0) diag.emplace_back(static_cast<int>(i), static_cast<int>(i), e);
  }
  h0.setFromTriplets(diag.begin(), diag.end());
  return h0;
}

Operator TimeDependentOperator::at(double t) const {
  SparseMatrix m = frame_ == Frame::lab ? SparseMatrix(free_part() + potential(t)) : interaction_matrix(t);
  if (tag_ == Hermiticity::hermitian) {
    // Entries assembled from conjugate coefficient pairs can differ by one ulp.
    SparseMatrix adj = m.adjoint();
    SparseMatrix diff = m - adj;
    double worst = 0.0;
    for (int r = 0; r < diff.outerSize(); ++r) {
      for (SparseMatrix::InnerIterator it(diff, r); it; ++it) worst = std::max(worst, std::abs(it.value()));
    }
    if (worst >= 1e-12) throw ConsistencyError("time-dependent operator lost Hermiticity");
    m = 0.5 * (m + adj);
  }
  return Operator(space_, std::move(m), tag_);
}

Vector TimeDependentOperator::to_interaction(double t, const Vector& lab) const {
  return frame_phases(t).cwiseProduct(lab);
}

Vector TimeDependentOperator::to_lab(double t, const Vector& interaction) const {
  return frame_phases(t).conjugate().cwiseProduct(interaction);
}

}  // namespace motsim
