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

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace motsim {

using cd = std::complex<double>;
using SparseMatrix = Eigen::SparseMatrix<cd, Eigen::RowMajor>;
using DenseMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr std::size_t kDefaultDimensionCap = 1'000'000;

/// Truncated tensor product of bosonic modes. The last mode varies fastest
/// in the flattened basis index.
class FockSpace {
 public:
  explicit FockSpace(std::vector<int> dims, std::vector<std::string> labels = {},
                     std::size_t dimension_cap = kDefaultDimensionCap);

  int num_modes() const { return static_cast<int>(dims_.size()); }
  int dim(int mode) const;
  const std::vector<int>& dims() const { return dims_; }
  std::size_t total_dim() const { return total_; }
  std::size_t stride(int mode) const;
  const std::string& label(int mode) const;
  int mode_index(std::string_view label) const;

  std::vector<int> occupations(std::size_t index) const;
  std::size_t index(const std::vector<int>& occupations) const;

  /// Spaces are interchangeable when their dims agree; labels are cosmetic.
  bool operator==(const FockSpace& other) const { return dims_ == other.dims_; }
  bool operator!=(const FockSpace& other) const { return !(*this == other); }

 private:
  void check_mode(int mode) const;

  std::vector<int> dims_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> strides_;
  std::size_t total_ = 1;
};

FockSpace make_space(std::vector<int> dims, std::size_t dimension_cap = kDefaultDimensionCap);

enum class Hermiticity { general, hermitian, anti_hermitian };

/// Sparse operator bound to a FockSpace.
class Operator {
 public:
  /// Throws ArgumentError when the matrix shape does not match the space or
  /// when a Hermitian / anti-Hermitian tag is not satisfied to 1e-12.
  Operator(FockSpace space, SparseMatrix matrix, Hermiticity tag = Hermiticity::general);

  const FockSpace& space() const { return space_; }
  const SparseMatrix& matrix() const { return matrix_; }
  Hermiticity hermiticity() const { return tag_; }
  DenseMatrix dense() const { return DenseMatrix(matrix_); }

  /// max |A - A^dagger| over entries.
  double hermiticity_defect() const;

  Operator adjoint() const;
  Operator scaled(cd factor) const;
  Operator operator+(const Operator& other) const;
  Operator operator-(const Operator& other) const;
  Operator operator*(const Operator& other) const;
  Vector operator*(const Vector& v) const;

  /// Drops entries with magnitude below `tolerance`.
  Operator pruned(double tolerance) const;

 private:
  FockSpace space_;
  SparseMatrix matrix_;
  Hermiticity tag_;
};

Operator operator*(cd factor, const Operator& op);
Operator operator*(double factor, const Operator& op);

/// Embeds a single-mode matrix (dim(mode) x dim(mode)) as local ⊗ identity.
Operator embed(const FockSpace& space, int mode, const SparseMatrix& local,
               Hermiticity tag = Hermiticity::general);
Operator embed(const FockSpace& space, int mode, const DenseMatrix& local,
               Hermiticity tag = Hermiticity::general, double drop_below = 0.0);

Operator identity(const FockSpace& space);
/// Hard truncation: creation annihilates the top level of the mode.
Operator annihilation(const FockSpace& space, int mode);
Operator creation(const FockSpace& space, int mode);
Operator number(const FockSpace& space, int mode);
/// b + b^dagger on the given mode.
Operator position_quadrature(const FockSpace& space, int mode);

/// Kronecker product; the result lives on the concatenated space.
Operator tensor(const Operator& a, const Operator& b);

/// Single-mode matrices (dim x dim), used to assemble local functions of
/// position before embedding.
SparseMatrix ladder_matrix(int dim);
DenseMatrix quadrature_matrix(int dim);

/// exp(scale * A) by scaling and squaring (dense). Throws NumericalError on
/// non-finite output.
/// CSR matrix prepared for repeated products, with a real-valued fast path
/// when every entry is real.
class SparseKernel {
 public:
  SparseKernel() = default;
  explicit SparseKernel(const SparseMatrix& m);

  const SparseMatrix& matrix() const { return matrix_; }
  bool is_real() const { return is_real_; }
  Eigen::Index rows() const { return matrix_.rows(); }

  /// out += c * (M * in) for a vector of length cols().
  void accumulate(cd c, const cd* in, cd* out) const;
  /// out += c * (M * in), column by column.
  void accumulate(cd c, const DenseMatrix& in, DenseMatrix& out) const;
  /// out = M * in.
  void apply(const DenseMatrix& in, DenseMatrix& out) const;

 private:
  SparseMatrix matrix_;
  Eigen::SparseMatrix<double, Eigen::RowMajor> real_;
  bool is_real_ = false;
};

DenseMatrix matrix_exp(const DenseMatrix& a);
Operator operator_exp(const Operator& a, cd scale, double drop_below = 0.0);

}  // namespace motsim
