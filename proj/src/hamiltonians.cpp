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

#include "motsim/hamiltonians.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "motsim/errors.hpp"

namespace motsim {
namespace {

constexpr double kPrune = 1e-15;

SparseMatrix to_sparse(const DenseMatrix& m) {
  SparseMatrix s = m.sparseView();
  s.prune([](Eigen::Index, Eigen::Index, const cd& v) { return std::abs(v) > kPrune; });
  return s;
}

void validate(const TwoModeDriveParams& p) {
  if (!(p.eta_x_p > 0.0 && p.eta_x_p < 0.5 && p.eta_z_p > 0.0 && p.eta_z_p < 0.5)) {
    throw ArgumentError("projected Lamb-Dicke parameters must lie in (0, 0.5)");
  }
  if (!(p.nu_x > 0.0 && p.nu_z > 0.0)) throw ArgumentError("trap frequencies must be positive");
}

void require_modes(const FockSpace& space, int count, const char* who) {
  if (space.num_modes() != count) {
    std::ostringstream msg;
    msg << who << " needs a " << count << "-mode space";
    throw ArgumentError(msg.str());
  }
}

// Adds the interaction of one atom-cavity site to `h`.
void add_site_terms(TimeDependentOperator& h, const AtomCavityParams& p, Truncation truncation, int mot,
                    int cav) {
  const FockSpace& space = h.space();
  const int d = space.dim(mot);
  const DenseMatrix s_local = sine_of_position(d, p.eta_x, truncation);
  const DenseMatrix s2_local = truncation == Truncation::exact
                                   ? DenseMatrix(s_local * s_local)
                                   : DenseMatrix(p.eta_x * p.eta_x * quadrature_matrix(d) * quadrature_matrix(d));
  const SparseMatrix s = embed(space, mot, to_sparse(s_local)).matrix();
  const SparseMatrix s2 = embed(space, mot, to_sparse(s2_local)).matrix();
  const SparseMatrix a = annihilation(space, cav).matrix();
  const SparseMatrix ad = SparseMatrix(a.adjoint());
  const SparseMatrix n = SparseMatrix(ad * a);
  h.add_static(SparseMatrix(-p.g0_sq_over_det * (s2 * n)));
  const cd e = std::polar(1.0, -p.phi_A);
  const SparseMatrix coupling = SparseMatrix(s * SparseMatrix(e * ad + std::conj(e) * a));
  auto drive = p.drive;
  h.add_term([drive](double t) { return cd(-drive(t), 0.0); }, coupling);
}

}  // namespace

double chi_coupling(const TwoModeDriveParams& p) {
  return 4.0 * p.eta_x_p * p.eta_z_p * p.drive_strength_sq_over_det;
}

TimeDependentOperator build_two_mode_drive(const TwoModeDriveParams& p, const FockSpace& space, Frame frame) {
  validate(p);
  require_modes(space, 2, "two-mode drive");
  const DenseMatrix x = quadrature_matrix(space.dim(0));
  const DenseMatrix z = quadrature_matrix(space.dim(1));
  const cd i(0.0, 1.0);
  DenseMatrix ux_plus = matrix_exp(2.0 * i * p.eta_x_p * x);
  DenseMatrix uz_plus = matrix_exp(2.0 * i * p.eta_z_p * z);
  // X is real symmetric, so exp(-2i eta X) is the entrywise conjugate.
  DenseMatrix ux_minus = ux_plus.conjugate();
  DenseMatrix uz_minus = uz_plus.conjugate();

  TimeDependentOperator h(space, {p.nu_x, p.nu_z}, frame, Hermiticity::hermitian);
  const double s = p.drive_strength_sq_over_det;
  const double delta = p.delta_21;
  const double phi = p.phi;
  h.add_product_term([s, delta, phi](double t) { return -s * std::polar(1.0, phi - delta * t); },
                     {ux_plus, uz_plus});
  h.add_product_term([s, delta, phi](double t) { return -s * std::polar(1.0, delta * t - phi); },
                     {ux_minus, uz_minus});
  if (!p.drop_constant_shift) {
    const auto n = static_cast<Eigen::Index>(space.total_dim());
    SparseMatrix shift(n, n);
    shift.setIdentity();
    h.add_static(SparseMatrix(-2.0 * s * shift));
  }
  h.set_max_frequency(std::abs(delta) + 2.0 * std::max(p.nu_x, p.nu_z));
  return h;
}

Operator effective_mixer(double chi, double phi, const FockSpace& space) {
  require_modes(space, 2, "mixer");
  const Operator term = std::polar(chi, phi) * (creation(space, 0) * annihilation(space, 1));
  return Operator(space, SparseMatrix(term.matrix() + SparseMatrix(term.matrix().adjoint())),
                  Hermiticity::hermitian);
}

Operator effective_squeezer(double chi, double phi, const FockSpace& space) {
  require_modes(space, 2, "squeezer");
  const Operator term = std::polar(chi, phi) * (creation(space, 0) * creation(space, 1));
  return Operator(space, SparseMatrix(term.matrix() + SparseMatrix(term.matrix().adjoint())),
                  Hermiticity::hermitian);
}

DenseMatrix sine_of_position(int dim, double eta, Truncation truncation) {
  const DenseMatrix x = quadrature_matrix(dim);
  if (truncation == Truncation::third_order) {
    return eta * x - (eta * eta * eta / 6.0) * (x * x * x);
  }
  // X real symmetric: exp(i eta X) = cos(eta X) + i sin(eta X) with real parts.
  const DenseMatrix u = matrix_exp(cd(0.0, eta) * x);
  return u.imag().cast<cd>();
}

double exchange_rate(double eta_x, double drive_amplitude) { return -eta_x * drive_amplitude; }

TimeDependentOperator build_atom_cavity(const AtomCavityParams& p, const FockSpace& space, Truncation truncation,
                                        Frame frame, int motion_mode, int cavity_mode) {
  if (truncation == Truncation::exact && frame == Frame::rotating) {
    throw ArgumentError("rotating frame is defined for the third-order form only");
  }
  if (p.kappa <= 0.0) throw ArgumentError("kappa must be positive");
  if (motion_mode == cavity_mode) throw ArgumentError("motion and cavity modes must differ");
  std::vector<double> freqs(space.num_modes(), 0.0);
  freqs.at(motion_mode) = p.nu_x;
  freqs.at(cavity_mode) = p.delta_cA;
  TimeDependentOperator h(space, freqs, frame, Hermiticity::hermitian);
  add_site_terms(h, p, truncation, motion_mode, cavity_mode);
  h.set_max_frequency(3.0 * p.nu_x + std::abs(p.delta_cA));
  return h;
}

CascadedSystem build_cascaded_effective(const AtomCavityParams& site1, const AtomCavityParams& site2,
                                        const PulseSchedule& pulses, const FockSpace& space,
                                        Truncation truncation, Frame frame) {
  require_modes(space, 4, "cascaded system");
  if (truncation == Truncation::exact && frame == Frame::rotating) {
    throw ArgumentError("rotating frame is defined for the third-order form only");
  }
  if (site1.kappa <= 0.0 || site2.kappa <= 0.0) throw ArgumentError("kappa must be positive");
  AtomCavityParams s1 = site1;
  AtomCavityParams s2 = site2;
  s1.drive = [pulses, k = s1.kappa, eta = s1.eta_x](double t) { return pulses.amplitude(1, t, k, eta); };
  s2.drive = [pulses, k = s2.kappa, eta = s2.eta_x](double t) { return pulses.amplitude(2, t, k, eta); };

  TimeDependentOperator h(space, {s1.nu_x, s1.delta_cA, s2.delta_cA, s2.nu_x}, frame, Hermiticity::general);
  add_site_terms(h, s1, truncation, 0, 1);
  add_site_terms(h, s2, truncation, 3, 2);

  const SparseMatrix a1 = annihilation(space, 1).matrix();
  const SparseMatrix a2 = annihilation(space, 2).matrix();
  const SparseMatrix a1d = SparseMatrix(a1.adjoint());
  const SparseMatrix a2d = SparseMatrix(a2.adjoint());
  const double k1 = s1.kappa;
  const double k2 = s2.kappa;
  const cd i(0.0, 1.0);
  SparseMatrix damping = SparseMatrix(-i * k1 * SparseMatrix(a1d * a1) - i * k2 * SparseMatrix(a2d * a2) -
                                      2.0 * i * std::sqrt(k1 * k2) * SparseMatrix(a2d * a1));
  h.add_static(damping);
  h.set_max_frequency(std::max(3.0 * s1.nu_x + std::abs(s1.delta_cA), 3.0 * s2.nu_x + std::abs(s2.delta_cA)));

  // Each unit of cavity excitation escapes at rate 2 kappa, so the channel
  // operator carries sqrt(2 kappa) per cavity.
  Operator jump(space, SparseMatrix(std::sqrt(2.0 * k1) * a1 + std::sqrt(2.0 * k2) * a2));

  for (double t : {0.0, pulses.t_start(), pulses.t_end()}) {
    const SparseMatrix m = h.potential(t);
    SparseMatrix defect = SparseMatrix(m - SparseMatrix(m.adjoint())) + i * SparseMatrix(jump.matrix().adjoint() * jump.matrix());
    double worst = 0.0;
    for (int r = 0; r < defect.outerSize(); ++r) {
      for (SparseMatrix::InnerIterator it(defect, r); it; ++it) worst = std::max(worst, std::abs(it.value()));
    }
    if (worst > 1e-12) throw ConsistencyError("cascaded Hamiltonian violates H - H^dagger = -i C^dagger C");
  }
  return {std::move(h), std::move(jump)};
}

CollectiveCase parse_collective_case(std::string_view tag) {
  if (tag == "mix0") return CollectiveCase::mix0;
  if (tag == "sq0") return CollectiveCase::sq0;
  if (tag == "mixR") return CollectiveCase::mixR;
  if (tag == "sqR") return CollectiveCase::sqR;
  throw ArgumentError("unknown collective case '" + std::string(tag) + "'");
}

double com_lamb_dicke(double eta_z) { return eta_z / std::sqrt(2.0); }

double relative_lamb_dicke(double eta_z) { return eta_z / std::sqrt(2.0 * std::sqrt(3.0)); }

CollectiveCoupling collective_coupling(const CollectiveIonParams& p) {
  const bool relative = p.mode_case == CollectiveCase::mixR || p.mode_case == CollectiveCase::sqR;
  const bool squeezing = p.mode_case == CollectiveCase::sq0 || p.mode_case == CollectiveCase::sqR;
  CollectiveCoupling c{};
  c.eta_mode = relative ? relative_lamb_dicke(p.eta_z) : com_lamb_dicke(p.eta_z);
  c.mode_frequency = relative ? std::sqrt(3.0) * p.nu_z : p.nu_z;
  c.chi = 4.0 * (p.alpha * p.eta_x) * (p.beta * c.eta_mode) * p.drive_strength_sq_over_det;
  c.delta_21 = squeezing ? p.nu_x + c.mode_frequency : p.nu_x - c.mode_frequency;
  c.squeezing = squeezing;
  return c;
}

Operator build_collective_ion(const CollectiveIonParams& p, const FockSpace& space) {
  const CollectiveCoupling c = collective_coupling(p);
  return c.squeezing ? effective_squeezer(c.chi, p.phi, space) : effective_mixer(c.chi, p.phi, space);
}

CollectiveMode collective_mode_map(const std::vector<double>& thetas) {
  if (thetas.empty()) throw ArgumentError("collective mode needs at least one atom");
  double n_eff = 0.0;
  for (double th : thetas) n_eff += std::cos(th) * std::cos(th);
  if (n_eff < 1e-12) throw ArgumentError("no atom couples to the cavity mode (N_eff = 0)");
  CollectiveMode mode{{}, n_eff};
  for (double th : thetas) mode.weights.push_back(std::cos(th) / std::sqrt(n_eff));
  return mode;
}

double adiabatic_collective_rate(double eta_x, double drive_amplitude, double kappa,
                                 const std::vector<double>& thetas) {
  if (kappa <= 0.0) throw ArgumentError("kappa must be positive");
  const double omega = eta_x * drive_amplitude;
  return collective_mode_map(thetas).n_eff * omega * omega / kappa;
}

}  // namespace motsim
