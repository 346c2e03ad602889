// Copyright 2026 The mcdisc Authors
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

#include "mcdisc/qstates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "mcdisc/classical.hpp"
#include "mcdisc/lp.hpp"

namespace mcdisc::qstates {
namespace {

using std::numbers::pi;

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

void require_density(const HermitianMatrix& rho, const char* who) {
  require(rho.rows() == rho.cols() && rho.rows() >= 1, std::string(who) + ": density matrix must be square");
  require_hermitian(rho);
  detail::require_psd(eigh(rho), kDefaultPsdTolerance, who);
  require(std::abs(rho.trace() - 1.0) <= 1e-9, std::string(who) + ": density matrix must have unit trace");
}

double real_trace(const HermitianMatrix& a, const HermitianMatrix& b) {
  // tr(a b) for Hermitian a, b is real.
  return (a.cwiseProduct(b.transpose())).sum().real();
}

StateVector qubit(cplx a0, cplx a1) {
  StateVector v(2);
  v << a0, a1;
  return v;
}

}  // namespace

PureEnsemble::PureEnsemble(std::vector<StateVector> states) : states_(std::move(states)) {
  require(!states_.empty(), "ensemble needs at least one state");
  const Eigen::Index d = states_.front().size();
  require(d >= 1, "states must be nonempty vectors");
  for (const auto& s : states_) {
    require(s.size() == d, "ensemble states must share one dimension");
    require(std::abs(s.norm() - 1.0) <= 1e-12, "ensemble state is not normalized");
  }
}

HermitianMatrix PureEnsemble::density(std::size_t i) const {
  const StateVector& s = states_.at(i);
  return s * s.adjoint();
}

std::vector<HermitianMatrix> PureEnsemble::densities() const {
  std::vector<HermitianMatrix> out;
  for (std::size_t i = 0; i < size(); ++i) out.push_back(density(i));
  return out;
}

void Povm::validate() const {
  require(!effects.empty(), "POVM needs at least one effect");
  require(labels.size() == effects.size(), "POVM labels and effects differ in length");
  const Eigen::Index d = effects.front().rows();
  HermitianMatrix sum = HermitianMatrix::Zero(d, d);
  for (const auto& e : effects) {
    require(e.rows() == d && e.cols() == d, "POVM effects differ in dimension");
    detail::require_psd(eigh(e, 1e-9), kDefaultPsdTolerance, "POVM effect");
    sum += e;
  }
  const double defect = (sum - HermitianMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  require(defect <= 1e-9, "POVM effects do not sum to the identity (defect " + std::to_string(defect) + ")");
}

void AdaptiveQubitStrategy::validate() const {
  alice.validate();
  require(bob.size() == alice.effects.size(), "one Bob measurement per Alice outcome is required");
  require(decoder.size() == bob.size(), "decoder must cover every Alice outcome");
  for (std::size_t a = 0; a < bob.size(); ++a) {
    bob[a].validate();
    require(decoder[a].size() == bob[a].effects.size(), "decoder must cover every Bob outcome");
  }
}

PureEnsemble cgu_ensemble(int n) {
  require(n >= 2, "cgu_ensemble needs n >= 2");
  std::vector<StateVector> states;
  for (int i = 1; i <= n; ++i) states.push_back(qubit(std::cos(pi * i / n), std::sin(pi * i / n)));
  return PureEnsemble(std::move(states));
}

PureEnsemble trine() {
  const double h = std::sqrt(3.0) / 2.0;
  return PureEnsemble({qubit(1.0, 0.0), qubit(0.5, h), qubit(0.5, -h)});
}

PureEnsemble tetrahedron() {
  const double a = 1.0 / std::sqrt(3.0);
  const double b = std::sqrt(2.0 / 3.0);
  std::vector<StateVector> states{qubit(1.0, 0.0)};
  for (double phi : {0.0, 2.0 * pi / 3.0, -2.0 * pi / 3.0})
    states.push_back(qubit(a, b * std::polar(1.0, phi)));
  return PureEnsemble(std::move(states));
}

HermitianMatrix gram(const PureEnsemble& e, int k) {
  require(k >= 1, "gram needs k >= 1");
  const auto n = static_cast<Eigen::Index>(e.size());
  HermitianMatrix g(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      cplx ip = e[i].dot(e[j]);  // conjugates the first argument
      cplx p = 1.0;
      for (int t = 0; t < k; ++t) p *= ip;
      g(i, j) = p / static_cast<double>(n);
    }
  return g;
}

double gram_success(const PureEnsemble& e, int k) {
  const HermitianMatrix root = sqrtm_psd(gram(e, k));
  return root.diagonal().cwiseAbs2().sum();
}

HermitianMatrix average_state(const PureEnsemble& e, int k) {
  require(k >= 1, "average_state needs k >= 1");
  require(std::pow(static_cast<double>(e.dim()), k) <= 4096.0, "average_state: tensor power too large");
  HermitianMatrix avg;
  for (std::size_t i = 0; i < e.size(); ++i) {
    HermitianMatrix p = kron_power(e.density(i), k);
    avg = i == 0 ? p : HermitianMatrix(avg + p);
  }
  return avg / static_cast<double>(e.size());
}

Povm pgm(const std::vector<HermitianMatrix>& rhos, int k) {
  require(!rhos.empty(), "pgm needs at least one state");
  require(k >= 1, "pgm needs k >= 1");
  for (const auto& r : rhos) {
    require(r.rows() == rhos.front().rows(), "pgm states differ in dimension");
    require_density(r, "pgm");
  }
  require(std::pow(static_cast<double>(rhos.front().rows()), k) <= 128.0,
          "pgm: tensor power exceeds dimension 128");

  const double n = static_cast<double>(rhos.size());
  std::vector<HermitianMatrix> powers;
  for (const auto& r : rhos) powers.push_back(kron_power(r, k));
  HermitianMatrix avg = powers.front();
  for (std::size_t i = 1; i < powers.size(); ++i) avg += powers[i];
  avg /= n;

  const Spectrum<cplx> spec = eigh(avg);
  const double tol = kDefaultPsdTolerance;
  const HermitianMatrix s = spectral_apply(spec, [tol](double x) { return x <= tol ? 0.0 : 1.0 / std::sqrt(x); });
  const HermitianMatrix kernel = spectral_apply(spec, [tol](double x) { return x <= tol ? 1.0 : 0.0; });

  Povm m;
  for (std::size_t i = 0; i < powers.size(); ++i) {
    HermitianMatrix e = s * powers[i] * s / n;
    m.effects.push_back((e + e.adjoint()) / 2.0);
    m.labels.push_back(i);
  }
  m.effects.back() += kernel;
  return m;
}

double povm_success(const Povm& povm, const std::vector<HermitianMatrix>& rhos,
                    const std::vector<double>& priors) {
  require(rhos.size() == priors.size(), "povm_success: one prior per state");
  require(povm.labels.size() == povm.effects.size(), "povm_success: one label per effect");
  double total = 0.0;
  for (std::size_t j = 0; j < povm.effects.size(); ++j) {
    const std::size_t i = povm.labels[j];
    require(i < rhos.size(), "povm_success: label out of range");
    require(povm.effects[j].rows() == rhos[i].rows(), "povm_success: dimension mismatch");
    total += priors[i] * real_trace(povm.effects[j], rhos[i]);
  }
  return total;
}

double pgm_success(const PureEnsemble& e, int k) {
  const auto rhos = e.densities();
  const Povm m = pgm(rhos, k);
  std::vector<HermitianMatrix> powers;
  for (const auto& r : rhos) powers.push_back(kron_power(r, k));
  return povm_success(m, powers, std::vector<double>(e.size(), 1.0 / static_cast<double>(e.size())));
}

double trine_closed_form(int k) {
  require(k >= 1, "trine_closed_form needs k >= 1");
  const double t = std::ldexp(1.0, -k);  // 2^{-k}
  return (5.0 + 2.0 * t + 4.0 * std::sqrt(1.0 + t) * std::sqrt(t * (std::ldexp(1.0, k) - 2.0))) / 9.0;
}

double pure_upper_bound(int n, int k) {
  require(n >= 1 && k >= 1, "pure_upper_bound needs n, k >= 1");
  return std::min(1.0, static_cast<double>(k + 1) / n);
}

Rational gu_lower_bound_h_exact(int k) {
  require(k >= 1, "h(k) needs k >= 1");
  const auto uk = static_cast<unsigned>(k);
  classical::BigInt four_k = boost::multiprecision::pow(classical::BigInt(4), uk);
  return Rational(four_k, classical::binomial(2 * uk, uk));
}

double gu_lower_bound_h(int k) { return gu_lower_bound_h_exact(k).convert_to<double>(); }

double fidelity_lower_bound(const PureEnsemble& e, int k) {
  require(k >= 1, "fidelity_lower_bound needs k >= 1");
  double s = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = 0; j < e.size(); ++j)
      if (i != j) s += std::pow(std::abs(e[i].dot(e[j])), k);
  return 1.0 - s / static_cast<double>(e.size());
}

double basic_decoding_bound(int n, int d) {
  require(n >= 1 && d >= 1, "basic_decoding_bound needs n, d >= 1");
  return std::min(1.0, static_cast<double>(d) / n);
}

double helstrom(const HermitianMatrix& rho1, const HermitianMatrix& rho2, double q1, double q2) {
  require(q1 >= 0.0 && q2 >= 0.0 && std::abs(q1 + q2 - 1.0) <= 1e-12, "helstrom priors must be a distribution");
  require(rho1.rows() == rho2.rows(), "helstrom states differ in dimension");
  require_density(rho1, "helstrom");
  require_density(rho2, "helstrom");
  return 0.5 * (1.0 + trace_norm(HermitianMatrix(q1 * rho1 - q2 * rho2)));
}

Povm helstrom_measurement(const HermitianMatrix& rho1, const HermitianMatrix& rho2, double q1,
                          double q2, std::size_t label1, std::size_t label2) {
  require(rho1.rows() == rho2.rows(), "helstrom states differ in dimension");
  const auto spec = eigh(HermitianMatrix(q1 * rho1 - q2 * rho2));
  const HermitianMatrix plus = spectral_apply(spec, [](double x) { return x > 0.0 ? 1.0 : 0.0; });
  const Eigen::Index d = rho1.rows();
  Povm m;
  m.effects = {plus, HermitianMatrix::Identity(d, d) - plus};
  m.labels = {label1, label2};
  return m;
}

MinErrorResult min_error_qubit(const std::vector<HermitianMatrix>& states,
                               const std::vector<double>& priors, int resolution) {
  require(!states.empty() && states.size() == priors.size(), "min_error_qubit: one prior per state");
  require(resolution >= 2, "min_error_qubit needs resolution >= 2");
  double total = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    require(states[i].rows() == 2, "min_error_qubit handles qubit states only");
    require_density(states[i], "min_error_qubit");
    require(states[i].imag().cwiseAbs().maxCoeff() <= 1e-12, "min_error_qubit needs real states");
    require(priors[i] >= 0.0, "priors must be nonnegative");
    total += priors[i];
  }
  require(std::abs(total - 1.0) <= 1e-9, "priors must sum to 1");

  const auto n_grid = static_cast<Eigen::Index>(resolution);
  std::vector<Eigen::Matrix2d> proj(resolution);
  std::vector<double> gain(resolution);
  std::vector<std::size_t> label(resolution);
  for (int t = 0; t < resolution; ++t) {
    const double th = pi * t / resolution;
    const Eigen::Vector2d v(std::cos(th), std::sin(th));
    proj[t] = v * v.transpose();
    gain[t] = -1.0;
    for (std::size_t i = 0; i < states.size(); ++i) {
      const double g = priors[i] * v.dot(states[i].real() * v);
      if (g > gain[t]) {
        gain[t] = g;
        label[t] = i;
      }
    }
  }
  const auto top = std::max_element(priors.begin(), priors.end());
  const double id_gain = *top;
  const auto id_label = static_cast<std::size_t>(top - priors.begin());

  // Primal: weights on the grid projectors and the identity, summing to I.
  auto primal = lp::LinearProgram::with_variables(n_grid + 1);
  primal.a_eq = Eigen::MatrixXd::Zero(3, n_grid + 1);
  primal.b_eq = Eigen::Vector3d(1.0, 0.0, 1.0);
  for (Eigen::Index t = 0; t < n_grid; ++t) {
    primal.objective(t) = gain[t];
    primal.a_eq(0, t) = proj[t](0, 0);
    primal.a_eq(1, t) = proj[t](0, 1);
    primal.a_eq(2, t) = proj[t](1, 1);
  }
  primal.objective(n_grid) = id_gain;
  primal.a_eq(0, n_grid) = 1.0;
  primal.a_eq(2, n_grid) = 1.0;
  const auto sol = lp::solve_lp(primal);
  if (sol.status != lp::LpStatus::kOptimal)
    throw InternalError("min_error_qubit: primal LP " + lp::to_string(sol.status));

  MinErrorResult r;
  for (Eigen::Index t = 0; t <= n_grid; ++t) {
    if (sol.x(t) <= 0.0) continue;
    if (t < n_grid) {
      r.povm.effects.push_back(sol.x(t) * proj[t].cast<cplx>());
      r.povm.labels.push_back(label[t]);
    } else {
      r.povm.effects.push_back(sol.x(t) * HermitianMatrix::Identity(2, 2));
      r.povm.labels.push_back(id_label);
    }
  }
  r.value = povm_success(r.povm, states, priors);

  // The optimal basis multipliers (one per xx, xz, zz row) form the grid
  // dual Y: <theta|Y|theta> >= gain(theta) on the grid and tr Y >= max q.
  Eigen::Matrix2d y;
  y << sol.dual_eq(0), sol.dual_eq(1) / 2.0, sol.dual_eq(1) / 2.0, sol.dual_eq(2);
  double shift = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Eigen::Matrix2d gap = y - priors[i] * states[i].real();
    shift = std::max(shift, -Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d>(gap).eigenvalues()(0));
  }
  r.upper_bound = y.trace() + 2.0 * shift;
  return r;
}

double evaluate_adaptive(const AdaptiveQubitStrategy& s, const std::vector<HermitianMatrix>& rhos) {
  s.validate();
  require(!rhos.empty(), "evaluate_adaptive needs states");
  const double n = static_cast<double>(rhos.size());
  double total = 0.0;
  for (std::size_t a = 0; a < s.alice.effects.size(); ++a)
    for (std::size_t b = 0; b < s.bob[a].effects.size(); ++b) {
      const std::size_t i = s.decoder[a][b];
      require(i < rhos.size(), "decoder label out of range");
      total += real_trace(s.alice.effects[a], rhos[i]) * real_trace(s.bob[a].effects[b], rhos[i]);
    }
  return total / n;
}

PriorUpdate update_priors(const Povm& alice, const std::vector<HermitianMatrix>& rhos) {
  alice.validate();
  PriorUpdate u;
  const double n = static_cast<double>(rhos.size());
  for (const auto& eff : alice.effects) {
    std::vector<double> joint;
    double pa = 0.0;
    for (const auto& r : rhos) {
      joint.push_back(real_trace(eff, r) / n);
      pa += joint.back();
    }
    for (double& q : joint) q = pa > 0.0 ? q / pa : 0.0;
    u.outcome_probs.push_back(pa);
    u.posteriors.push_back(std::move(joint));
  }
  return u;
}

AdaptiveResult double_trine_adaptive() {
  const PureEnsemble t = trine();
  const auto rhos = t.densities();
  AdaptiveResult r;
  for (std::size_t i = 0; i < 3; ++i) {
    const StateVector perp = qubit(-t[i](1), t[i](0));
    r.strategy.alice.effects.push_back((2.0 / 3.0) * perp * perp.adjoint());
    r.strategy.alice.labels.push_back(i);
    const std::size_t j = (i + 1) % 3, l = (i + 2) % 3;
    Povm bob = helstrom_measurement(rhos[std::min(j, l)], rhos[std::max(j, l)], 0.5, 0.5,
                                    std::min(j, l), std::max(j, l));
    r.strategy.decoder.push_back(bob.labels);
    r.strategy.bob.push_back(std::move(bob));
  }
  r.priors = update_priors(r.strategy.alice, rhos);
  r.value = evaluate_adaptive(r.strategy, rhos);
  return r;
}

AdaptiveResult double_trine_ad1(int resolution) {
  const auto rhos = trine().densities();
  AdaptiveResult r;
  HermitianMatrix sx(2, 2);
  sx << 0.0, 1.0, 1.0, 0.0;
  const HermitianMatrix id = HermitianMatrix::Identity(2, 2);
  r.strategy.alice.effects = {(id + sx) / 2.0, (id - sx) / 2.0};
  r.strategy.alice.labels = {0, 1};
  r.priors = update_priors(r.strategy.alice, rhos);
  for (std::size_t a = 0; a < 2; ++a) {
    MinErrorResult bob = min_error_qubit(rhos, r.priors.posteriors[a], resolution);
    r.strategy.decoder.push_back(bob.povm.labels);
    r.strategy.bob.push_back(std::move(bob.povm));
  }
  r.value = evaluate_adaptive(r.strategy, rhos);
  return r;
}

}  // namespace mcdisc::qstates
