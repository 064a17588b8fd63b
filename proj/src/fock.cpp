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

#include "motsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "motsim/errors.hpp"

namespace motsim {

FockSpace::FockSpace(std::vector<int> dims, std::vector<std::string> labels,
                     std::size_t dimension_cap)
    : dims_(std::move(dims)), labels_(std::move(labels)) {
  if (dims_.empty()) throw ArgumentError("FockSpace needs at least one mode");
  if (!labels_.empty() && labels_.size() != dims_.size()) {
    throw ArgumentError("FockSpace: label count does not match mode count");
  }
  for (int d : dims_) {
    if (d < 2) throw ArgumentError("FockSpace: every mode dimension must be >= 2");
  }
  if (labels_.empty()) {
    for (std::size_t m = 0; m < dims_.size(); ++m) labels_.push_back("m" + std::to_string(m));
  }
  strides_.assign(dims_.size(), 1);
  double total = 1.0;
  for (int m = num_modes() - 1; m >= 0; --m) {
    strides_[m] = total_;
    total *= dims_[m];
    if (total > static_cast<double>(dimension_cap)) {
      std::ostringstream msg;
      msg << "FockSpace: total dimension exceeds cap " << dimension_cap;
      throw ResourceError(msg.str());
    }
    total_ *= static_cast<std::size_t>(dims_[m]);
  }
}

void FockSpace::check_mode(int mode) const {
  if (mode < 0 || mode >= num_modes()) {
    throw ArgumentError("mode index " + std::to_string(mode) + " out of range");
  }
}

int FockSpace::dim(int mode) const {
  check_mode(mode);
  return dims_[mode];
}

std::size_t FockSpace::stride(int mode) const {
  check_mode(mode);
  return strides_[mode];
}

const std::string& FockSpace::label(int mode) const {
  check_mode(mode);
  return labels_[mode];
}

int FockSpace::mode_index(std::string_view label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw ArgumentError("unknown mode label " + std::string(label));
  return static_cast<int>(it - labels_.begin());
}

std::vector<int> FockSpace::occupations(std::size_t index) const {
  if (index >= total_) throw ArgumentError("basis index out of range");
  std::vector<int> occ(dims_.size());
  for (std::size_t m = 0; m < dims_.size(); ++m) {
    occ[m] = static_cast<int>(index / strides_[m]);
    index %= strides_[m];
  }
  return occ;
}

std::size_t FockSpace::index(const std::vector<int>& occupations) const {
  if (occupations.size() != dims_.size()) throw ArgumentError("occupation list has wrong length");
  std::size_t idx = 0;
  for (std::size_t m = 0; m < dims_.size(); ++m) {
    if (occupations[m] < 0 || occupations[m] >= dims_[m]) {
      throw ArgumentError("occupation " + std::to_string(occupations[m]) + " outside mode " +
                          std::to_string(m) + " of dim " + std::to_string(dims_[m]));
    }
    idx += static_cast<std::size_t>(occupations[m]) * strides_[m];
  }
  return idx;
}

FockSpace make_space(std::vector<int> dims, std::size_t dimension_cap) {
  return FockSpace(std::move(dims), {}, dimension_cap);
}

namespace {

double max_abs_difference(const SparseMatrix& a, const SparseMatrix& b) {
  SparseMatrix diff = a - b;
  double worst = 0.0;
  for (int k = 0; k < diff.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
  }
  return worst;
}

Hermiticity sum_tag(Hermiticity a, Hermiticity b) { return a == b ? a : Hermiticity::general; }

Hermiticity scaled_tag(Hermiticity tag, cd factor) {
  if (tag == Hermiticity::general || factor == cd(0.0)) return Hermiticity::general;
  const bool flip = factor.real() == 0.0;
  if (factor.imag() != 0.0 && !flip) return Hermiticity::general;
  if (!flip) return tag;
  return tag == Hermiticity::hermitian ? Hermiticity::anti_hermitian : Hermiticity::hermitian;
}

void require_same_space(const FockSpace& a, const FockSpace& b) {
  if (a != b) throw ArgumentError("operator spaces do not match");
}

}  // namespace

Operator::Operator(FockSpace space, SparseMatrix matrix, Hermiticity tag)
    : space_(std::move(space)), matrix_(std::move(matrix)), tag_(tag) {
  const auto n = static_cast<Eigen::Index>(space_.total_dim());
  if (matrix_.rows() != n || matrix_.cols() != n) {
    throw ArgumentError("operator matrix shape does not match space dimension");
  }
  matrix_.makeCompressed();
  if (tag_ == Hermiticity::hermitian && hermiticity_defect() >= 1e-12) {
    throw ArgumentError("operator tagged Hermitian is not Hermitian");
  }
  if (tag_ == Hermiticity::anti_hermitian) {
    SparseMatrix sum = matrix_ + SparseMatrix(matrix_.adjoint());
    double worst = 0.0;
    for (int k = 0; k < sum.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(sum, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
    }
    if (worst >= 1e-12) throw ArgumentError("operator tagged anti-Hermitian is not anti-Hermitian");
  }
}

double Operator::hermiticity_defect() const {
  return max_abs_difference(matrix_, SparseMatrix(matrix_.adjoint()));
}

Operator Operator::adjoint() const { return Operator(space_, SparseMatrix(matrix_.adjoint()), tag_); }

Operator Operator::scaled(cd factor) const {
  return Operator(space_, SparseMatrix(matrix_ * factor), scaled_tag(tag_, factor));
}

Operator Operator::operator+(const Operator& other) const {
  require_same_space(space_, other.space_);
  return Operator(space_, SparseMatrix(matrix_ + other.matrix_), sum_tag(tag_, other.tag_));
}

Operator Operator::operator-(const Operator& other) const {
  require_same_space(space_, other.space_);
  return Operator(space_, SparseMatrix(matrix_ - other.matrix_), sum_tag(tag_, other.tag_));
}

Operator Operator::operator*(const Operator& other) const {
  require_same_space(space_, other.space_);
  return Operator(space_, SparseMatrix(matrix_ * other.matrix_), Hermiticity::general);
}

Vector Operator::operator*(const Vector& v) const {
  if (v.size() != matrix_.cols()) throw ArgumentError("vector length does not match operator");
  return matrix_ * v;
}

Operator Operator::pruned(double tolerance) const {
  SparseMatrix m = matrix_;
  m.prune([tolerance](Eigen::Index, Eigen::Index, const cd& v) { return std::abs(v) > tolerance; });
  return Operator(space_, std::move(m), Hermiticity::general);
}

Operator operator*(cd factor, const Operator& op) { return op.scaled(factor); }
Operator operator*(double factor, const Operator& op) { return op.scaled(cd(factor, 0.0)); }

Operator embed(const FockSpace& space, int mode, const SparseMatrix& local, Hermiticity tag) {
  const int d = space.dim(mode);
  if (local.rows() != d || local.cols() != d) throw ArgumentError("local matrix has wrong size");
  const std::size_t inner = space.stride(mode);
  const std::size_t outer = space.total_dim() / (inner * static_cast<std::size_t>(d));
  std::vector<Eigen::Triplet<cd>> triplets;
  triplets.reserve(static_cast<std::size_t>(local.nonZeros()) * inner * outer);
  for (std::size_t o = 0; o < outer; ++o) {
    const std::size_t base = o * static_cast<std::size_t>(d) * inner;
    for (int r = 0; r < local.outerSize(); ++r) {
      for (SparseMatrix::InnerIterator it(local, r); it; ++it) {
        for (std::size_t i = 0; i < inner; ++i) {
          triplets.emplace_back(static_cast<int>(base + static_cast<std::size_t>(it.row()) * inner + i),
                                static_cast<int>(base + static_cast<std::size_t>(it.col()) * inner + i),
                                it.value());
        }
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  SparseMatrix m(n, n);
  m.setFromTriplets(triplets.begin(), triplets.end());
  if (tag != Hermiticity::general) {
    // Re-symmetrize so that roundoff in the local factor cannot break the tag.
    SparseMatrix adj = m.adjoint();
    m = tag == Hermiticity::hermitian ? SparseMatrix(0.5 * (m + adj)) : SparseMatrix(0.5 * (m - adj));
  }
  return Operator(space, std::move(m), tag);
}

Operator embed(const FockSpace& space, int mode, const DenseMatrix& local, Hermiticity tag,
               double drop_below) {
  SparseMatrix s = local.sparseView();
  s.prune([drop_below](Eigen::Index, Eigen::Index, const cd& v) { return std::abs(v) > drop_below; });
  return embed(space, mode, s, tag);
}

SparseMatrix ladder_matrix(int dim) {
  std::vector<Eigen::Triplet<cd>> t;
  for (int n = 1; n < dim; ++n) t.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
  SparseMatrix m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

DenseMatrix quadrature_matrix(int dim) {
  DenseMatrix b = DenseMatrix(ladder_matrix(dim));
  return b + b.adjoint();
}

Operator identity(const FockSpace& space) {
  const auto n = static_cast<Eigen::Index>(space.total_dim());
  SparseMatrix m(n, n);
  m.setIdentity();
  return Operator(space, std::move(m), Hermiticity::hermitian);
}

Operator annihilation(const FockSpace& space, int mode) {
  return embed(space, mode, ladder_matrix(space.dim(mode)));
}

Operator creation(const FockSpace& space, int mode) {
  return embed(space, mode, SparseMatrix(ladder_matrix(space.dim(mode)).adjoint()));
}

Operator number(const FockSpace& space, int mode) {
  const int d = space.dim(mode);
  SparseMatrix local(d, d);
  for (int n = 0; n < d; ++n) local.insert(n, n) = static_cast<double>(n);
  return embed(space, mode, local, Hermiticity::hermitian);
}

Operator position_quadrature(const FockSpace& space, int mode) {
  SparseMatrix b = ladder_matrix(space.dim(mode));
  return embed(space, mode, SparseMatrix(b + SparseMatrix(b.adjoint())), Hermiticity::hermitian);
}

Operator tensor(const Operator& a, const Operator& b) {
  std::vector<int> dims = a.space().dims();
  std::vector<std::string> labels;
  for (int m = 0; m < a.space().num_modes(); ++m) labels.push_back(a.space().label(m));
  for (int m = 0; m < b.space().num_modes(); ++m) {
    dims.push_back(b.space().dim(m));
    labels.push_back(b.space().label(m));
  }
  FockSpace space(std::move(dims), std::move(labels));
  SparseMatrix m = Eigen::kroneckerProduct(a.matrix(), b.matrix());
  const Hermiticity tag = (a.hermiticity() == Hermiticity::hermitian && b.hermiticity() == Hermiticity::hermitian)
                              ? Hermiticity::hermitian
                              : Hermiticity::general;
  return Operator(std::move(space), std::move(m), tag);
}

SparseKernel::SparseKernel(const SparseMatrix& m) : matrix_(m) {
  matrix_.makeCompressed();
  is_real_ = true;
  for (Eigen::Index k = 0; k < matrix_.nonZeros(); ++k) {
    if (matrix_.valuePtr()[k].imag() != 0.0) {
      is_real_ = false;
      break;
    }
  }
  if (is_real_) {
    real_ = matrix_.real();
    real_.makeCompressed();
  }
}

void SparseKernel::accumulate(cd c, const cd* in, cd* out) const {
  const Eigen::Index rows = matrix_.rows();
  if (is_real_) {
    const auto* outer = real_.outerIndexPtr();
    const auto* inner = real_.innerIndexPtr();
    const double* values = real_.valuePtr();
    for (Eigen::Index r = 0; r < rows; ++r) {
      double re = 0.0;
      double im = 0.0;
      for (auto k = outer[r]; k < outer[r + 1]; ++k) {
        const cd x = in[inner[k]];
        re += values[k] * x.real();
        im += values[k] * x.imag();
      }
      out[r] += c * cd(re, im);
    }
    return;
  }
  const auto* outer = matrix_.outerIndexPtr();
  const auto* inner = matrix_.innerIndexPtr();
  const cd* values = matrix_.valuePtr();
  for (Eigen::Index r = 0; r < rows; ++r) {
    cd acc = 0.0;
    for (auto k = outer[r]; k < outer[r + 1]; ++k) acc += values[k] * in[inner[k]];
    out[r] += c * acc;
  }
}

void SparseKernel::accumulate(cd c, const DenseMatrix& in, DenseMatrix& out) const {
  if (in.rows() != matrix_.cols() || out.rows() != matrix_.rows() || out.cols() != in.cols()) {
    throw ArgumentError("sparse kernel: shape mismatch");
  }
  for (Eigen::Index j = 0; j < in.cols(); ++j) accumulate(c, in.col(j).data(), out.col(j).data());
}

void SparseKernel::apply(const DenseMatrix& in, DenseMatrix& out) const {
  out.setZero(matrix_.rows(), in.cols());
  accumulate(1.0, in, out);
}

DenseMatrix matrix_exp(const DenseMatrix& a) {
  if (a.rows() != a.cols()) throw ArgumentError("matrix_exp needs a square matrix");
  DenseMatrix result = a.exp();
  if (!result.allFinite()) {
    std::ostringstream msg;
    msg << "matrix exponential produced non-finite entries (dim " << a.rows()
        << ", max |entry| of argument " << a.cwiseAbs().maxCoeff() << ")";
    throw NumericalError(msg.str());
  }
  return result;
}

Operator operator_exp(const Operator& a, cd scale, double drop_below) {
  DenseMatrix e = matrix_exp(scale * a.dense());
  SparseMatrix s = e.sparseView();
  s.prune([drop_below](Eigen::Index, Eigen::Index, const cd& v) { return std::abs(v) > drop_below; });
  return Operator(a.space(), std::move(s), Hermiticity::general);
}

}  // namespace motsim
