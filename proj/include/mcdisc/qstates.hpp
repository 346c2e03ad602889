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

// Multi-copy discrimination of qubit states: ensembles, Gram matrices, the
// pretty good measurement, closed-form bounds, and one-way local strategies
// on two copies.

#ifndef MCDISC_QSTATES_HPP
#define MCDISC_QSTATES_HPP

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mcdisc/numerics.hpp"

namespace mcdisc::qstates {

using StateVector = Eigen::VectorXcd;
using Rational = boost::multiprecision::cpp_rational;

/// n pure states with uniform priors.
class PureEnsemble {
 public:
  /// Throws ValidationError unless every state has unit norm (1e-12) and all
  /// states share one dimension.
  explicit PureEnsemble(std::vector<StateVector> states);

  std::size_t size() const noexcept { return states_.size(); }
  Eigen::Index dim() const noexcept { return states_.front().size(); }
  const StateVector& operator[](std::size_t i) const { return states_[i]; }
  const std::vector<StateVector>& states() const noexcept { return states_; }

  /// |psi_i><psi_i|
  HermitianMatrix density(std::size_t i) const;
  std::vector<HermitianMatrix> densities() const;

 private:
  std::vector<StateVector> states_;
};

/// Measurement with effect i announcing labels[i].
struct Povm {
  std::vector<HermitianMatrix> effects;
  std::vector<std::size_t> labels;

  /// Throws ValidationError if the effects are not PSD (1e-10) or do not sum
  /// to the identity (1e-9), or if labels and effects differ in length.
  void validate() const;
};

/// Alice measures copy 1, announces her outcome a, and Bob measures copy 2
/// with bob[a]. The guess is decoder[a][b].
struct AdaptiveQubitStrategy {
  Povm alice;
  std::vector<Povm> bob;
  std::vector<std::vector<std::size_t>> decoder;

  void validate() const;
};

/// cos(pi i / n)|0> + sin(pi i / n)|1>, i = 1..n.
PureEnsemble cgu_ensemble(int n);
/// |0>, (|0> + sqrt3|1>)/2, (|0> - sqrt3|1>)/2.
PureEnsemble trine();
/// |0> and |0>/sqrt3 + sqrt(2/3) e^{i phi}|1>, phi in {0, 2pi/3, -2pi/3}.
PureEnsemble tetrahedron();

/// G_ij = (1/n) <psi_i|psi_j>^k from the actual complex inner products.
HermitianMatrix gram(const PureEnsemble& e, int k);

/// sum_i (sqrt G)_ii^2: the PGM success probability, computed on the n x n
/// Gram matrix instead of the 2^k-dimensional average state.
double gram_success(const PureEnsemble& e, int k);

/// (1/n) sum_i rho_i^{(x)k}.
HermitianMatrix average_state(const PureEnsemble& e, int k);

/// Pretty good measurement for k copies of each density matrix.
///
/// M_i = (1/n) S rho_i^{(x)k} S with S = (rho^(k)+)^{1/2}. The projector onto
/// the kernel of rho^(k) is added to the last effect so the effects sum to
/// the identity exactly; no input state has weight there.
Povm pgm(const std::vector<HermitianMatrix>& rhos, int k);

/// Average success of the PGM on k copies of `e`, computed on the tensor
/// power (dimension dim^k, at most 128).
double pgm_success(const PureEnsemble& e, int k);

/// sum_i priors_i tr(M_{j: label j = i} rhos_i). `rhos` are the states the
/// POVM acts on (already tensor powers where relevant).
double povm_success(const Povm& povm, const std::vector<HermitianMatrix>& rhos,
                    const std::vector<double>& priors);

/// (5 + 2^{1-k} + 4 sqrt(1 + 2^{-k}) sqrt(2^{-k}(2^k - 2))) / 9.
///
/// This closed form assumes every off-diagonal Gram entry is -2^{-k}/3. For
/// the trine above that holds up to a diagonal sign change only for odd k;
/// at even k the Gram entries are all positive and the two numbers differ
/// (0.96248 vs 0.97140 at k = 2). Both are exposed; see gram_success.
double trine_closed_form(int k);

/// min(1, (k + 1) / n): projection onto the symmetric subspace.
double pure_upper_bound(int n, int k);

/// h(k) = 4^k / C(2k, k).
double gu_lower_bound_h(int k);
Rational gu_lower_bound_h_exact(int k);

/// 1 - (1/n) sum_{i != j} |<psi_i|psi_j>|^k.
double fidelity_lower_bound(const PureEnsemble& e, int k);

/// min(1, d / n).
double basic_decoding_bound(int n, int d);

/// (1 + ||q1 rho1 - q2 rho2||_1) / 2.
double helstrom(const HermitianMatrix& rho1, const HermitianMatrix& rho2, double q1, double q2);

/// Projective measurement attaining the Helstrom value: the projector onto
/// the positive part of q1 rho1 - q2 rho2 guesses label1, the rest label2.
Povm helstrom_measurement(const HermitianMatrix& rho1, const HermitianMatrix& rho2, double q1,
                          double q2, std::size_t label1 = 0, std::size_t label2 = 1);

struct MinErrorResult {
  double value = 0.0;  ///< achieved by `povm`; a lower bound on the optimum
  Povm povm;
  /// tr Y for a Y with Y >= q_i rho_i for all i (the grid dual, shifted by
  /// its worst off-grid violation); an upper bound on the optimum.
  double upper_bound = 0.0;
};

/// Minimum-error measurement for real (rebit) qubit states, as an LP over
/// effects w_theta |theta><theta| with theta on `resolution` equally spaced
/// angles in [0, pi), plus w_0 I. Each grid effect announces the state
/// maximizing q_i <theta|rho_i|theta>.
MinErrorResult min_error_qubit(const std::vector<HermitianMatrix>& states,
                               const std::vector<double>& priors, int resolution = 720);

/// sum_i (1/n) sum_{a,b : decoder[a][b] = i} tr(A_a rho_i) tr(B^a_b rho_i).
double evaluate_adaptive(const AdaptiveQubitStrategy& s, const std::vector<HermitianMatrix>& rhos);

struct PriorUpdate {
  std::vector<double> outcome_probs;            ///< p(a)
  std::vector<std::vector<double>> posteriors;  ///< posteriors[a][i] = p(i | a)
};

struct AdaptiveResult {
  double value = 0.0;
  AdaptiveQubitStrategy strategy;
  PriorUpdate priors;
};

/// Alice excludes one trine state with (2/3)|psi_i^perp><psi_i^perp|; Bob
/// applies the Helstrom measurement to the two survivors.
AdaptiveResult double_trine_adaptive();

/// Alice measures sigma_x; Bob solves min_error_qubit against the updated
/// priors for each outcome.
AdaptiveResult double_trine_ad1(int resolution = 720);

/// Outcome probabilities and posteriors of a one-copy measurement `alice` on
/// uniformly weighted `rhos`.
PriorUpdate update_priors(const Povm& alice, const std::vector<HermitianMatrix>& rhos);

}  // namespace mcdisc::qstates

#endif  // MCDISC_QSTATES_HPP
