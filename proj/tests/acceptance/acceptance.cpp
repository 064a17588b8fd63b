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

// Acceptance runner: `acceptance <criterion>` prints one PASS/FAIL line per
// check and exits non-zero when any check fails.

#include <algorithm>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "motsim/analysis.hpp"
#include "motsim/dynamics.hpp"
#include "motsim/experiments.hpp"
#include "motsim/hamiltonians.hpp"
#include "motsim/mcwf.hpp"
#include "motsim/pulses.hpp"
#include "motsim/states.hpp"

using namespace motsim;

namespace {

constexpr double kPi = std::numbers::pi;

class Report {
 public:
  explicit Report(int criterion) : criterion_(criterion) {}

  bool check(const std::string& what, bool ok, const char* fmt, ...) __attribute__((format(printf, 4, 5))) {
    char detail[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(detail, sizeof(detail), fmt, args);
    va_end(args);
    std::printf("[%s] criterion %d %s: %s\n", ok ? "PASS" : "FAIL", criterion_, what.c_str(), detail);
    std::fflush(stdout);
    all_ &= ok;
    return ok;
  }

  bool all() const { return all_; }

 private:
  int criterion_;
  bool all_ = true;
};

ExperimentResult run(const std::string& experiment, const std::map<std::string, std::string>& settings = {}) {
  ExperimentConfig config(experiment);
  for (const auto& [k, v] : settings) config.set(k, v);
  return run_experiment(config);
}

DensityMatrix projector(const StateVector& psi) { return DensityMatrix::from_pure(psi); }

double trace_distance(const DenseMatrix& a, const DenseMatrix& b) {
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(a - b);
  return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double kolmogorov_p_value(double d, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) p += 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
  return std::clamp(p, 0.0, 1.0);
}

TimeDependentOperator static_operator(const FockSpace& s, const SparseMatrix& m, Hermiticity tag) {
  TimeDependentOperator h(s, std::vector<double>(s.num_modes(), 0.0), Frame::rotating, tag);
  h.add_static(m);
  return h;
}

bool table1(Report& rep) {
  const ExperimentResult r = run("table1");
  for (const auto& row : r.rows) {
    const double f = row.value("fidelity");
    const double ref = row.value("reference_fidelity");
    rep.check(row.label, std::abs(f - ref) <= 0.005, "F=%.5f reference=%.3f |diff|=%.5f tol=0.005 dims=%dx%d t=%.1fs", f,
              ref, std::abs(f - ref), row.dims[0], row.dims[1], row.runtime_s);
  }
  return rep.all();
}

bool fig4(Report& rep) {
  const ExperimentResult r = run("fig4", {{"fig.duration", "2"}});
  std::map<double, double> worst;
  for (const auto& row : r.rows) {
    const double dev = std::abs(row.value("abs_b") - row.value("reference")) / row.value("reference");
    double& w = worst[row.value("eta")];
    w = std::max(w, dev);
  }
  const double low = worst.at(0.1);
  const double high = worst.at(0.15);
  rep.check("eta=0.1 decay", low < 0.03, "max relative deviation of |<b>| from sqrt(10)exp(-Gamma t) = %.4f tol=0.03",
            low);
  rep.check("eta=0.15 ordering", high > low, "max deviation eta=0.15 %.4f > eta=0.1 %.4f", high, low);
  return rep.all();
}

bool transfer(Report& rep) {
  for (const std::string table : {"table2", "table3", "table4", "table5"}) {
    const ExperimentResult r = run(table);
    for (const auto& row : r.rows) {
      char what[128];
      std::snprintf(what, sizeof(what), "%s eta=%g nu=%g", row.label.c_str(), row.value("eta"), row.value("nu"));
      const double norm = row.value("no_jump_norm");
      const double ref = row.value("reference_norm");
      rep.check(std::string(what) + " norm", std::abs(norm - ref) <= 0.02, "norm=%.4f reference=%.2f tol=0.02 t=%.0fs",
                norm, ref, row.runtime_s);
      rep.check(std::string(what) + " fidelity", row.value("fidelity") >= 0.99,
                "F=%.4f threshold=0.99 (rotation-aligned F=%.4f at %.4f rad per phonon)", row.value("fidelity"),
                row.value("fidelity_aligned"), row.value("aligned_rotation"));
    }
  }
  return rep.all();
}

bool cascade(Report& rep) {
  const ExperimentResult r = run("cascade_ideal", {{"cascade.windows", "8"}});
  for (const auto& row : r.rows) {
    rep.check(row.label, row.value("fidelity") >= 0.999, "F=%.6f threshold=0.999 window=+-8/Gamma",
              row.value("fidelity"));
  }
  // Single-excitation sector: c1' = -g1 c1, c2' = -g2 c2 + 2 sqrt(g1 g2) c1.
  const double gamma = 1.0;
  const int steps = 160000;
  const double t0 = -8.0, t1 = 8.0, h = (t1 - t0) / steps;
  double c1 = 1.0, c2 = 0.0;
  auto f = [&](double t, double a, double b, double& da, double& db) {
    const double g1 = gamma1(t, gamma), g2 = gamma2(t, gamma);
    da = -g1 * a;
    db = -g2 * b + 2.0 * std::sqrt(g1 * g2) * a;
  };
  for (int k = 0; k < steps; ++k) {
    const double t = t0 + k * h;
    double a1, b1, a2, b2, a3, b3, a4, b4;
    f(t, c1, c2, a1, b1);
    f(t + h / 2, c1 + h / 2 * a1, c2 + h / 2 * b1, a2, b2);
    f(t + h / 2, c1 + h / 2 * a2, c2 + h / 2 * b2, a3, b3);
    f(t + h, c1 + h * a3, c2 + h * b3, a4, b4);
    c1 += h / 6 * (a1 + 2 * a2 + 2 * a3 + a4);
    c2 += h / 6 * (b1 + 2 * b2 + 2 * b3 + b4);
  }
  for (const auto& row : r.rows) {
    if (row.label != "fock1") continue;
    const double diff = std::abs(row.value("fidelity") - c2 * c2);
    rep.check("fock1 amplitude oracle", diff < 1e-5, "F=%.8f oracle |c2|^2=%.8f |diff|=%.2e tol=1e-5",
              row.value("fidelity"), c2 * c2, diff);
  }
  return rep.all();
}

bool mcwf_equivalence(Report& rep) {
  IntegratorConfig cfg;
  cfg.dt = 0.01;
  cfg.samples = 40;
  {
    FockSpace s({8});
    const double kappa = 0.5;
    const Operator a = annihilation(s, 0);
    const Operator h = 0.4 * (a + a.adjoint()) + 0.2 * number(s, 0);
    const StateVector psi0 = fock_state(s, {2});
    const MasterPath master = evolve_master(static_operator(s, h.matrix(), Hermiticity::hermitian),
                                            {std::sqrt(kappa) * a}, projector(psi0), 0.0, 4.0, cfg);
    EnsembleOptions opt;
    opt.n_traj = 500;
    opt.master_seed = 12345;
    const EnsembleResult ens =
        mcwf_ensemble(static_operator(s, (h + cd(0.0, -kappa) * number(s, 0)).matrix(), Hermiticity::general),
                      {std::sqrt(2.0 * kappa) * a}, psi0, 0.0, 4.0, cfg, opt);
    double worst = 0.0;
    for (std::size_t k = 0; k < master.states.size(); ++k) {
      worst = std::max(worst, trace_distance(ens.states[k].entries(), master.states[k].entries()));
    }
    rep.check("driven damped cavity", worst < 0.05, "500 trajectories, max trace distance to master equation %.4f tol=0.05",
              worst);
  }
  {
    FockSpace s({3});
    const double kappa = 1.0;
    EnsembleOptions opt;
    opt.n_traj = 10000;
    opt.master_seed = 2026;
    opt.average_states = false;
    cfg.samples = 4;
    const EnsembleResult r =
        mcwf_ensemble(static_operator(s, (cd(0.0, -kappa) * number(s, 0)).matrix(), Hermiticity::general),
                      {std::sqrt(2.0 * kappa) * annihilation(s, 0)}, fock_state(s, {1}), 0.0, 10.0, cfg, opt);
    std::vector<double> waits;
    for (const auto& times : r.jump_times) waits.push_back(times.empty() ? INFINITY : times.front());
    std::sort(waits.begin(), waits.end());
    const double n = static_cast<double>(waits.size());
    double d = 0.0;
    for (std::size_t i = 0; i < waits.size(); ++i) {
      const double cdf = 1.0 - std::exp(-2.0 * kappa * waits[i]);
      d = std::max({d, cdf - i / n, (i + 1) / n - cdf});
    }
    const double p = kolmogorov_p_value(d, waits.size());
    rep.check("waiting times", p > 0.01, "KS against 2 kappa exp(-2 kappa t), n=%zu D=%.4f p=%.3f threshold=0.01",
              waits.size(), d, p);
  }
  return rep.all();
}

bool algebra(Report& rep) {
  const cd mi(0.0, -1.0);
  {
    FockSpace s({10, 10});
    const double chi = 0.25;
    const DenseMatrix u = matrix_exp(DenseMatrix(mi * (kPi / 2.0 / chi) * effective_mixer(chi, -kPi / 2.0, s).dense()));
    const DenseMatrix bx = annihilation(s, 0).dense();
    const DenseMatrix bz = annihilation(s, 1).dense();
    const DenseMatrix ex = u.adjoint() * bx * u + bz;
    const DenseMatrix ez = u.adjoint() * bz * u - bx;
    double worst = 0.0;
    for (std::size_t i = 0; i < s.total_dim(); ++i) {
      const auto occ = s.occupations(i);
      if (occ[0] + occ[1] > 8) continue;
      const auto c = static_cast<Eigen::Index>(i);
      worst = std::max({worst, ex.col(c).cwiseAbs().maxCoeff(), ez.col(c).cwiseAbs().maxCoeff()});
    }
    rep.check("beamsplitter swap", worst < 1e-8, "chi T = pi/2: b_x -> -b_z, b_z -> b_x, max error %.2e tol=1e-8", worst);
  }
  {
    FockSpace s({64, 64});
    const double chi = 0.004;
    TimeDependentOperator h(s, {0.0, 0.0}, Frame::rotating, Hermiticity::hermitian);
    h.add_static(effective_squeezer(chi, -kPi / 2.0, s).matrix());
    IntegratorConfig cfg;
    cfg.dt = 1e-4 / chi;
    cfg.samples = 4;
    const SchrodingerPath path = evolve_schrodinger(h, fock_state(s, {0, 0}), 0.0, 1.0 / chi, cfg);
    for (std::size_t k = 1; k < path.states.size(); ++k) {
      const double r = chi * path.times[k];
      const StateVector& out = path.states[k];
      const double err = (out.amplitudes() - two_mode_squeezed_state(s, r).amplitudes()).cwiseAbs().maxCoeff();
      const double n = expectation(number(s, 0), out).real();
      char what[64];
      std::snprintf(what, sizeof(what), "squeezer r=%.2f", r);
      rep.check(what, err < 1e-6, "max amplitude error vs closed form %.2e tol=1e-6 dims=64x64", err);
      rep.check(std::string(what) + " <n>", std::abs(n - std::sinh(r) * std::sinh(r)) < 1e-3,
                "<n>=%.6f sinh^2 r=%.6f tol=1e-3", n, std::sinh(r) * std::sinh(r));
    }
  }
  return rep.all();
}

bool diagnostics(Report& rep) {
  const double quoted = lamb_dicke_validity(0.15, 10.0, 3.0, 3.0);
  rep.check("lamb-dicke eta=0.15", std::abs(quoted - 0.225) < 5e-4,
            "value=%.4f (sigma rounded to 3) expected=0.225; with sigma=sqrt(10): %.4f", quoted,
            lamb_dicke_validity(0.15, 10.0, std::sqrt(10.0), 3.0));
  const double first = strong_coupling_figure(5.3, 1.0, 19.4);
  const double second = strong_coupling_figure(3.1, 0.5, 19.4);
  rep.check("strong coupling first set", std::lround(first) == 14, "value=%.3f rounds to %ld expected=14", first,
            std::lround(first));
  rep.check("strong coupling second set", std::lround(second) == 10, "value=%.3f rounds to %ld expected=10", second,
            std::lround(second));
  return rep.all();
}

bool hygiene(Report& rep) {
  {
    const ExperimentResult base = run("table1");
    const ExperimentResult fine = run("table1", {{"integrator.steps_per_period", "80"}});
    const ExperimentResult wide = run("table1", {{"table1.mode_dim", "96"}});
    for (std::size_t k = 0; k < base.rows.size(); ++k) {
      const double f = base.rows[k].value("fidelity");
      const double ddt = std::abs(fine.rows[k].value("fidelity") - f);
      const double ddim = std::abs(wide.rows[k].value("fidelity") - f);
      rep.check(base.rows[k].label + " half dt", ddt < 1e-3, "|dF|=%.2e tol=1e-3", ddt);
      rep.check(base.rows[k].label + " double dims", ddim < 5e-3, "|dF|=%.2e tol=5e-3", ddim);
    }
  }
  {
    const std::map<std::string, std::string> row = {{"transfer.rows", "1"}};
    auto with = [&](std::string key, std::string value) {
      auto s = row;
      s[key] = value;
      return run("table2", s).rows.at(0);
    };
    const ResultRow base = run("table2", row).rows.at(0);
    const int md = base.dims[0];
    const int cd_ = base.dims[1];
    const std::vector<std::pair<std::string, ResultRow>> variants = {
        {"half dt", with("integrator.steps_per_period", "80")},
        {"double motion dims", with("dims", std::to_string(2 * md) + "," + std::to_string(cd_))},
        {"double cavity dims", with("dims", std::to_string(md) + "," + std::to_string(2 * cd_))}};
    for (const auto& [name, v] : variants) {
      const double tol = name == "half dt" ? 1e-3 : 5e-3;
      for (const char* key : {"no_jump_norm", "fidelity"}) {
        const double d = std::abs(v.value(key) - base.value(key));
        rep.check(base.label + " " + key + " " + name, d < tol, "|d|=%.2e tol=%.0e", d, tol);
      }
    }
  }
  return rep.all();
}

}  // namespace

int main(int argc, char** argv) {
  const std::map<int, std::function<bool(Report&)>> criteria = {
      {1, table1}, {2, fig4}, {3, transfer}, {4, cascade}, {5, mcwf_equivalence}, {6, algebra}, {7, diagnostics},
      {8, hygiene}};
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) {
    for (const auto& [k, _] : criteria) selected.push_back(k);
  }
  bool ok = true;
  for (int c : selected) {
    const auto it = criteria.find(c);
    if (it == criteria.end()) {
      std::fprintf(stderr, "unknown criterion %d\n", c);
      return 2;
    }
    Report rep(c);
    try {
      ok &= it->second(rep);
    } catch (const std::exception& e) {
      rep.check("run", false, "error: %s", e.what());
      ok = false;
    }
  }
  return ok ? 0 : 1;
}
