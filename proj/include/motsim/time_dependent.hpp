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

#include <functional>
#include <vector>

#include "motsim/fock.hpp"

namespace motsim {

/// Frame in which states and operators are reported. Integration always
/// runs in the interaction picture of the diagonal free part.
enum class Frame { lab, rotating };

/// H(t) = H0 + V(t) with H0 = sum_m w_m n_m diagonal in the Fock basis and
/// V(t) = sum_k c_k(t) V_k. The interaction-picture generator is
/// V_I(t) = e^{i H0 t} V(t) e^{-i H0 t}. In the rotating frame, at(t)
/// returns V_I(t); in the lab frame it returns H0 + V(t).
class TimeDependentOperator {
 public:
  using Coefficient = std::function<cd(double)>;

  TimeDependentOperator(FockSpace space, std::vector<double> free_frequencies, Frame frame,
                        Hermiticity tag);

  /// Time-independent contribution to V.
  void add_static(const SparseMatrix& m);
  void add_term(Coefficient c, const SparseMatrix& m);
  /// c(t) * (F_0 ⊗ F_1 ⊗ ...); an empty factor stands for the identity.
  void add_product_term(Coefficient c, std::vector<DenseMatrix> factors);

  /// Fastest oscillation in V_I(t); sets the fixed step size.
  void set_max_frequency(double w) { max_frequency_ = w; }
  double max_frequency() const;

  const FockSpace& space() const { return space_; }
  const std::vector<double>& free_frequencies() const { return free_frequencies_; }
  Frame frame() const { return frame_; }
  Hermiticity hermiticity() const { return tag_; }
  bool has_free_part() const;

  /// Diagonal of e^{i H0 t}.
  Vector frame_phases(double t) const;

  /// out = V(t) in, lab-frame potential.
  void apply_potential(double t, const Vector& in, Vector& out) const;
  /// out = V_I(t) in. `phases` must be frame_phases(t).
  void apply_interaction(double t, const Vector& phases, const Vector& in, Vector& out,
                         Vector& scratch) const;
  /// Column-wise V_I(t) applied to a dense matrix.
  void apply_interaction(double t, const Vector& phases, const DenseMatrix& in, DenseMatrix& out) const;

  SparseMatrix potential(double t) const;
  SparseMatrix interaction_matrix(double t) const;
  SparseMatrix free_part() const;
  Operator at(double t) const;

  /// Converts between lab and interaction-picture state vectors.
  Vector to_interaction(double t, const Vector& lab) const;
  Vector to_lab(double t, const Vector& interaction) const;

 private:
  struct SparseTerm {
    Coefficient coefficient;
    SparseMatrix matrix;
    SparseKernel kernel;
  };
  struct ProductTerm {
    Coefficient coefficient;
    std::vector<DenseMatrix> factors;
  };

  void record_gaps(const SparseMatrix& m);
  void apply_product(const ProductTerm& term, cd c, const Vector& in, Vector& out) const;

  FockSpace space_;
  std::vector<double> free_frequencies_;
  Frame frame_;
  Hermiticity tag_;
  SparseMatrix static_;
  bool has_static_ = false;
  SparseKernel static_kernel_;
  std::vector<SparseTerm> terms_;
  std::vector<ProductTerm> products_;
  double max_frequency_ = -1.0;
  double auto_frequency_ = 0.0;
};

}  // namespace motsim
