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

#include <vector>

#include "motsim/fock.hpp"

namespace motsim {

/// Pure state on a FockSpace. Amplitudes are stored as given; canonical
/// constructors return unit-norm states.
class StateVector {
 public:
  StateVector(FockSpace space, Vector amplitudes);

  const FockSpace& space() const { return space_; }
  const Vector& amplitudes() const { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }
  StateVector normalized() const;

 private:
  FockSpace space_;
  Vector amplitudes_;
};

/// Dense density matrix.
class DensityMatrix {
 public:
  DensityMatrix(FockSpace space, DenseMatrix entries);
  static DensityMatrix from_pure(const StateVector& psi);

  const FockSpace& space() const { return space_; }
  const DenseMatrix& entries() const { return entries_; }
  cd trace() const { return entries_.trace(); }
  double hermiticity_defect() const;
  double min_eigenvalue() const;

 private:
  FockSpace space_;
  DenseMatrix entries_;
};

/// Thresholds on the discarded probability of a truncated analytic state.
struct LeakageTolerance {
  double warn = 1e-6;
  double hard = 1e-3;
};

enum class Parity { even, odd };

StateVector fock_state(const FockSpace& space, const std::vector<int>& occupations);

/// Tensor product of per-mode amplitude vectors (one per mode, in order).
StateVector product_state(const FockSpace& space, const std::vector<Vector>& locals);

/// Single-mode truncated coherent amplitudes, renormalized.
Vector coherent_amplitudes(int dim, cd alpha, const LeakageTolerance& tol = {});
Vector cat_amplitudes(int dim, cd alpha, Parity parity, const LeakageTolerance& tol = {});

/// Product of coherent states, one amplitude per mode.
StateVector coherent_state(const FockSpace& space, const std::vector<cd>& mode_amplitudes,
                           const LeakageTolerance& tol = {});
/// Cat state on `mode`, vacuum on the other modes.
StateVector cat_state(const FockSpace& space, cd alpha, Parity parity, int mode = 0,
                      const LeakageTolerance& tol = {});
/// sum_m (-tanh r)^m / cosh r |m, m> on modes (mode_a, mode_b).
StateVector two_mode_squeezed_state(const FockSpace& space, double r, int mode_a = 0, int mode_b = 1,
                                    const LeakageTolerance& tol = {});
/// Uniform superposition of |0>..|n_max> on `mode`.
StateVector truncated_phase_state(const FockSpace& space, int n_max, int mode = 0);

/// Probability lost by truncating a Poisson distribution of mean |alpha|^2 at dim.
double coherent_leakage(int dim, cd alpha);

cd inner_product(const StateVector& bra, const StateVector& ket);
/// <psi|A|psi> without normalization.
cd expectation(const Operator& op, const StateVector& psi);
/// Tr(A rho).
cd expectation(const Operator& op, const DensityMatrix& rho);

/// Reduced state on `keep_modes` (kept in the given order).
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep_modes);
DensityMatrix partial_trace(const StateVector& psi, const std::vector<int>& keep_modes);
/// Complement form: traces out `modes`.
DensityMatrix trace_out(const DensityMatrix& rho, const std::vector<int>& modes);

/// Subspace of `space` restricted to the given modes.
FockSpace subspace(const FockSpace& space, const std::vector<int>& modes);

}  // namespace motsim
