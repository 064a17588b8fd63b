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

#include "motsim/states.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "motsim/diagnostics.hpp"
#include "motsim/errors.hpp"

namespace motsim {

StateVector::StateVector(FockSpace space, Vector amplitudes)
    : space_(std::move(space)), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != space_.total_dim()) {
    throw ArgumentError("state length does not match space dimension");
  }
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw NumericalError("cannot normalize a zero state");
  return StateVector(space_, amplitudes_ / n);
}

DensityMatrix::DensityMatrix(FockSpace space, DenseMatrix entries)
    : space_(std::move(space)), entries_(std::move(entries)) {
  const auto n = static_cast<Eigen::Index>(space_.total_dim());
  if (entries_.rows() != n || entries_.cols() != n) {
    throw ArgumentError("density matrix shape does not match space dimension");
  }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
  return DensityMatrix(psi.space(), psi.amplitudes() * psi.amplitudes().adjoint());
}

double DensityMatrix::hermiticity_defect() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(0.5 * (entries_ + entries_.adjoint()),
                                                    Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

namespace {

void check_leakage(double leakage, const LeakageTolerance& tol, const char* what) {
  if (leakage > tol.hard) {
    std::ostringstream msg;
    msg << what << ": truncation leakage " << leakage << " exceeds hard cap " << tol.hard;
    throw ArgumentError(msg.str());
  }
  if (leakage > tol.warn) {
    std::ostringstream msg;
    msg << what << ": truncation leakage " << leakage << " above tolerance " << tol.warn;
    warn(msg.str());
  }
}

// log of |alpha|^(2n) e^{-|alpha|^2} / n!
double log_poisson(int n, double mean) {
  if (mean == 0.0) return n == 0 ? 0.0 : -INFINITY;
  return n * std::log(mean) - mean - std::lgamma(n + 1.0);
}

Vector local_basis(int dim, int n) {
  Vector v = Vector::Zero(dim);
  v(n) = 1.0;
  return v;
}

}  // namespace

double coherent_leakage(int dim, cd alpha) {
  const double mean = std::norm(alpha);
  double kept = 0.0;
  for (int n = 0; n < dim; ++n) kept += std::exp(log_poisson(n, mean));
  return std::max(0.0, 1.0 - kept);
}

Vector coherent_amplitudes(int dim, cd alpha, const LeakageTolerance& tol) {
  check_leakage(coherent_leakage(dim, alpha), tol, "coherent state");
  const double mean = std::norm(alpha);
  const cd phase = std::abs(alpha) > 0 ? alpha / std::abs(alpha) : cd(1.0);
  Vector v(dim);
  cd ph = 1.0;
  for (int n = 0; n < dim; ++n) {
    v(n) = std::exp(0.5 * log_poisson(n, mean)) * ph;
    ph *= phase;
  }
  return v / v.norm();
}

Vector cat_amplitudes(int dim, cd alpha, Parity parity, const LeakageTolerance& tol) {
  const double mean = std::norm(alpha);
  const int first = parity == Parity::even ? 0 : 1;
  // Parity-restricted Poisson mass: (1 +- e^{-2|alpha|^2}) / 2.
  const double mass = parity == Parity::even ? 0.5 * (1.0 + std::exp(-2.0 * mean))
                                             : -0.5 * std::expm1(-2.0 * mean);
  if (mass <= 0.0) throw ArgumentError("odd cat state needs alpha != 0");
  const cd phase = std::abs(alpha) > 0 ? alpha / std::abs(alpha) : cd(1.0);
  Vector v = Vector::Zero(dim);
  double kept = 0.0;
  for (int n = first; n < dim; n += 2) {
    const double lp = log_poisson(n, mean) - std::log(mass);
    kept += std::exp(lp);
    v(n) = std::exp(0.5 * lp) * std::pow(phase, n);
  }
  check_leakage(std::max(0.0, 1.0 - kept), tol, "cat state");
  return v / v.norm();
}

StateVector product_state(const FockSpace& space, const std::vector<Vector>& locals) {
  if (static_cast<int>(locals.size()) != space.num_modes()) {
    throw ArgumentError("product_state needs one local vector per mode");
  }
  Vector psi = Vector::Ones(1);
  for (int m = 0; m < space.num_modes(); ++m) {
    if (locals[m].size() != space.dim(m)) throw ArgumentError("local vector has wrong dimension");
    Vector next(psi.size() * locals[m].size());
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
      next.segment(i * locals[m].size(), locals[m].size()) = psi(i) * locals[m];
    }
    psi = std::move(next);
  }
  return StateVector(space, std::move(psi));
}

StateVector fock_state(const FockSpace& space, const std::vector<int>& occupations) {
  const std::size_t idx = space.index(occupations);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(space.total_dim()));
  v(static_cast<Eigen::Index>(idx)) = 1.0;
  return StateVector(space, std::move(v));
}

StateVector coherent_state(const FockSpace& space, const std::vector<cd>& mode_amplitudes,
                           const LeakageTolerance& tol) {
  if (static_cast<int>(mode_amplitudes.size()) != space.num_modes()) {
    throw ArgumentError("coherent_state needs one amplitude per mode");
  }
  std::vector<Vector> locals;
  for (int m = 0; m < space.num_modes(); ++m) {
    locals.push_back(coherent_amplitudes(space.dim(m), mode_amplitudes[m], tol));
  }
  return product_state(space, locals);
}

StateVector cat_state(const FockSpace& space, cd alpha, Parity parity, int mode,
                      const LeakageTolerance& tol) {
  std::vector<Vector> locals;
  for (int m = 0; m < space.num_modes(); ++m) {
    locals.push_back(m == mode ? cat_amplitudes(space.dim(m), alpha, parity, tol)
                               : local_basis(space.dim(m), 0));
  }
  if (mode < 0 || mode >= space.num_modes()) throw ArgumentError("cat_state: bad mode index");
  return product_state(space, locals);
}

StateVector two_mode_squeezed_state(const FockSpace& space, double r, int mode_a, int mode_b,
                                    const LeakageTolerance& tol) {
  if (mode_a == mode_b) throw ArgumentError("two_mode_squeezed_state needs two distinct modes");
  const int d = std::min(space.dim(mode_a), space.dim(mode_b));
  const double t = std::tanh(r);
  const double lambda = t * t;
  const double leakage = std::pow(lambda, d);
  check_leakage(leakage, tol, "two-mode squeezed state");
  const double nbar = std::sinh(r) * std::sinh(r);
  const double sigma = std::sqrt(nbar * nbar + nbar);
  if (nbar + 3.0 * sigma > d - 1 && leakage <= tol.warn) {
    warn("two-mode squeezed state: mean occupation plus 3 sigma exceeds truncation");
  }
  Vector v = Vector::Zero(static_cast<Eigen::Index>(space.total_dim()));
  std::vector<int> occ(space.num_modes(), 0);
  double c = 1.0 / std::cosh(r);
  for (int m = 0; m < d; ++m) {
    occ[mode_a] = m;
    occ[mode_b] = m;
    v(static_cast<Eigen::Index>(space.index(occ))) = c;
    c *= -t;
  }
  return StateVector(space, v / v.norm());
}

StateVector truncated_phase_state(const FockSpace& space, int n_max, int mode) {
  if (n_max < 0 || n_max + 1 > space.dim(mode)) {
    throw ArgumentError("truncated_phase_state: n_max + 1 exceeds mode dimension");
  }
  std::vector<Vector> locals;
  for (int m = 0; m < space.num_modes(); ++m) {
    if (m == mode) {
      Vector v = Vector::Zero(space.dim(m));
      v.head(n_max + 1).setConstant(1.0 / std::sqrt(n_max + 1.0));
      locals.push_back(v);
    } else {
      locals.push_back(local_basis(space.dim(m), 0));
    }
  }
  return product_state(space, locals);
}

cd inner_product(const StateVector& bra, const StateVector& ket) {
  if (bra.space() != ket.space()) throw ArgumentError("inner_product: space mismatch");
  return bra.amplitudes().dot(ket.amplitudes());
}

cd expectation(const Operator& op, const StateVector& psi) {
  if (op.space() != psi.space()) throw ArgumentError("expectation: space mismatch");
  return psi.amplitudes().dot(op.matrix() * psi.amplitudes());
}

cd expectation(const Operator& op, const DensityMatrix& rho) {
  if (op.space() != rho.space()) throw ArgumentError("expectation: space mismatch");
  const SparseMatrix& a = op.matrix();
  const DenseMatrix& r = rho.entries();
  cd tr = 0.0;
  for (int row = 0; row < a.outerSize(); ++row) {
    for (SparseMatrix::InnerIterator it(a, row); it; ++it) tr += it.value() * r(it.col(), row);
  }
  return tr;
}

FockSpace subspace(const FockSpace& space, const std::vector<int>& modes) {
  std::vector<int> dims;
  std::vector<std::string> labels;
  for (int m : modes) {
    dims.push_back(space.dim(m));
    labels.push_back(space.label(m));
  }
  return FockSpace(std::move(dims), std::move(labels));
}

namespace {

// table(k, t) = full basis index of kept configuration k and traced configuration t.
Eigen::Matrix<Eigen::Index, Eigen::Dynamic, Eigen::Dynamic> split_indices(
    const FockSpace& space, const std::vector<int>& keep, const FockSpace& kept,
    const FockSpace& traced, const std::vector<int>& traced_modes) {
  std::vector<bool> seen(space.num_modes(), false);
  for (int m : keep) {
    if (m < 0 || m >= space.num_modes() || seen[m]) throw ArgumentError("partial_trace: invalid mode subset");
    seen[m] = true;
  }
  Eigen::Matrix<Eigen::Index, Eigen::Dynamic, Eigen::Dynamic> table(
      static_cast<Eigen::Index>(kept.total_dim()), static_cast<Eigen::Index>(traced.total_dim()));
  for (std::size_t i = 0; i < space.total_dim(); ++i) {
    const std::vector<int> occ = space.occupations(i);
    std::size_t k = 0;
    for (std::size_t j = 0; j < keep.size(); ++j) k += occ[keep[j]] * kept.stride(static_cast<int>(j));
    std::size_t t = 0;
    for (std::size_t j = 0; j < traced_modes.size(); ++j) {
      t += occ[traced_modes[j]] * traced.stride(static_cast<int>(j));
    }
    table(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(t)) = static_cast<Eigen::Index>(i);
  }
  return table;
}

std::vector<int> complement(const FockSpace& space, const std::vector<int>& modes) {
  std::vector<int> rest;
  for (int m = 0; m < space.num_modes(); ++m) {
    if (std::find(modes.begin(), modes.end(), m) == modes.end()) rest.push_back(m);
  }
  return rest;
}

FockSpace traced_space(const FockSpace& space, const std::vector<int>& traced) {
  // A one-level placeholder keeps the index arithmetic uniform when nothing is traced.
  if (traced.empty()) return FockSpace({2});
  return subspace(space, traced);
}

}  // namespace

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep_modes) {
  if (keep_modes.empty()) throw ArgumentError("partial_trace: keep at least one mode");
  const FockSpace& space = rho.space();
  const std::vector<int> traced = complement(space, keep_modes);
  if (traced.empty() && keep_modes.size() != static_cast<std::size_t>(space.num_modes())) {
    throw ArgumentError("partial_trace: invalid mode subset");
  }
  FockSpace kept = subspace(space, keep_modes);
  FockSpace tsp = traced_space(space, traced);
  const auto table = split_indices(space, keep_modes, kept, traced.empty() ? kept : tsp, traced);
  const Eigen::Index nk = table.rows();
  const Eigen::Index nt = traced.empty() ? 1 : table.cols();
  DenseMatrix out = DenseMatrix::Zero(nk, nk);
  const DenseMatrix& r = rho.entries();
  for (Eigen::Index b = 0; b < nk; ++b) {
    for (Eigen::Index a = 0; a < nk; ++a) {
      cd s = 0.0;
      for (Eigen::Index t = 0; t < nt; ++t) s += r(table(a, t), table(b, t));
      out(a, b) = s;
    }
  }
  return DensityMatrix(std::move(kept), std::move(out));
}

DensityMatrix partial_trace(const StateVector& psi, const std::vector<int>& keep_modes) {
  if (keep_modes.empty()) throw ArgumentError("partial_trace: keep at least one mode");
  const FockSpace& space = psi.space();
  const std::vector<int> traced = complement(space, keep_modes);
  FockSpace kept = subspace(space, keep_modes);
  FockSpace tsp = traced_space(space, traced);
  const auto table = split_indices(space, keep_modes, kept, traced.empty() ? kept : tsp, traced);
  const Eigen::Index nt = traced.empty() ? 1 : table.cols();
  DenseMatrix m(table.rows(), nt);
  for (Eigen::Index t = 0; t < nt; ++t) {
    for (Eigen::Index k = 0; k < table.rows(); ++k) m(k, t) = psi.amplitudes()(table(k, t));
  }
  return DensityMatrix(std::move(kept), m * m.adjoint());
}

DensityMatrix trace_out(const DensityMatrix& rho, const std::vector<int>& modes) {
  return partial_trace(rho, complement(rho.space(), modes));
}

}  // namespace motsim
