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

// Regular-polygon generalized probabilistic theories.
//
// States and effects both live in R^3; an effect e assigns probability
// e . s to state s. The pure states of P(m) are the polygon vertices lifted
// to height 1, and the unit effect is (0, 0, 1). All user-facing state and
// effect labels are 1-based, matching the usual figures.

#ifndef MCDISC_GPT_HPP
#define MCDISC_GPT_HPP

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mcdisc::gpt {

using Vec3 = Eigen::Vector3d;

/// Shared by every "is this perfect" decision in gpt and the polygon LPs.
inline constexpr double kPerfectThreshold = 1.0 - 1e-6;

struct PolygonTheory {
  /// Number of vertices; 2 for the bit adapter.
  int m = 0;
  std::vector<Vec3> states;
  /// Every extreme effect other than 0 and the unit: e_1..e_m for even m;
  /// f_1..f_m followed by their complements for odd m.
  std::vector<Vec3> extreme_effects;
  /// Extreme rays of the effect cone (e_i or f_i), the generators used by
  /// the strategy search and the polygon LPs.
  std::vector<Vec3> ray_effects;
  Vec3 unit{0.0, 0.0, 1.0};

  /// Pure state s_i, 1-based.
  const Vec3& state(int i) const;
  /// e_i (even m) or f_i (odd m), 1-based.
  const Vec3& effect(int i) const;
  /// unit - effect(i): e_{i + m/2} for even m, f-bar_i for odd m.
  Vec3 complement(int i) const;
  /// States s_i for the given 1-based labels.
  std::vector<Vec3> pick(const std::vector<int>& labels) const;
};

/// P(m) for m >= 3, with r = sqrt(sec(pi/m)).
PolygonTheory polygon(int m);

/// The classical bit seen as a degenerate polygon: the state with weight p
/// on outcome 0 is (2p - 1, 0, 1); effects are "outcome 0" = (1/2, 0, 1/2)
/// and "outcome 1" = (-1/2, 0, 1/2). state(1) is p = 0, state(2) is p = 1.
PolygonTheory bit_theory();
/// Bit state with weight p on outcome 0.
Vec3 bit_state(double p);

/// e . s, clamped to [0, 1]. Throws ValidationError if the raw value lies
/// outside [-1e-9, 1 + 1e-9].
double eval_effect(const Vec3& effect, const Vec3& state);

/// Certificate that `effect` = sum_g w_g g + w_u unit with w >= 0 and
/// sum w <= 1 over the extreme effects g, decided by a feasibility LP.
struct MembershipCertificate {
  bool member = false;
  std::vector<double> weights;  ///< extreme effects, then the unit
  double residual = 0.0;
};
MembershipCertificate effect_membership(const PolygonTheory& t, const Vec3& effect);

struct GptMeasurement {
  std::vector<Vec3> effects;

  /// Throws ValidationError unless the effects sum to the unit (1e-10) and
  /// each passes effect_membership.
  void validate(const PolygonTheory& t) const;
};

struct PairCertificate {
  bool distinguishable = false;
  Vec3 effect = Vec3::Zero();  ///< 1 on s_i, 0 on s_j when distinguishable
};

/// Decides whether some valid effect e has e(s_i) = 1 and e(s_j) = 0, by
/// maximizing e(s_i) - e(s_j) over the effect space (1e-9 tolerance).
PairCertificate perfectly_distinguishable_pair(const PolygonTheory& t, int i, int j);

/// All triples i < j < l (1-based) whose three pairs are each perfectly
/// distinguishable, in lexicographic order.
std::vector<std::array<int, 3>> pairwise_distinguishable_triples(const PolygonTheory& t);

enum class StrategyClass { kFix, kNad, kAd, kAd1 };
std::string to_string(StrategyClass c);

using OutcomeString = std::vector<int>;  ///< 0-based outcome per copy, in copy order

/// Local strategy on k copies. Party p measures copy p with the measurement
/// keyed by the outcomes of parties 0..p-1; an entry keyed by the empty
/// string applies whatever came before (non-adaptive parties).
struct StrategyTree {
  int copies = 0;
  StrategyClass kind = StrategyClass::kFix;
  std::vector<std::map<OutcomeString, GptMeasurement>> parties;
  /// Full outcome string -> 0-based state position. Empty means
  /// maximum-likelihood decoding (ties to the lowest position).
  std::map<OutcomeString, int> decoder;

  const GptMeasurement& measurement(int party, const OutcomeString& prefix) const;
};

/// Every party uses `m`.
StrategyTree fix_tree(const GptMeasurement& m, int copies);
/// Party p uses measurements[p], unconditioned.
StrategyTree nad_tree(const std::vector<GptMeasurement>& measurements);
/// Two copies: Alice measures, Bob measures bob[a] after outcome a. Tagged
/// AD1 when Alice's measurement has two outcomes.
StrategyTree ad_tree(const GptMeasurement& alice, const std::vector<GptMeasurement>& bob);

struct StrategyValue {
  double value = 0.0;
  std::vector<double> per_state;
  StrategyClass kind = StrategyClass::kFix;
  std::map<OutcomeString, int> decoder;  ///< the decoder actually applied
};

/// (1/n) sum_j sum_{strings decoded to j} prod_p P(outcome_p | s_j).
StrategyValue evaluate_strategy(const PolygonTheory& t, const std::vector<Vec3>& states,
                                const StrategyTree& tree);

struct SearchResult {
  StrategyValue best;
  StrategyTree tree;
};

/// Best fixed strategy found among measurements whose effects are multiples
/// of 2 to 4 extreme rays summing to the unit; 4-ray families are sampled
/// at `resolution` points along their one-parameter segment. ML decoding.
/// A lower bound on the optimal fixed-strategy value. k <= 3, n <= 4.
SearchResult search_fix_strategy(const PolygonTheory& t, const std::vector<Vec3>& states, int k,
                                 int resolution);

/// Two-outcome measurements {g, unit - g} for every extreme ray g, plus the
/// certificates of every perfectly distinguishable pair.
std::vector<GptMeasurement> dichotomic_family(const PolygonTheory& t);

/// Best two-copy non-adaptive strategy over pairs from dichotomic_family,
/// never below search_fix_strategy(t, states, 2, resolution).
SearchResult search_nad_strategy(const PolygonTheory& t, const std::vector<Vec3>& states,
                                 int resolution);

/// Best two-copy adaptive strategy with Alice and each Bob branch drawn
/// from dichotomic_family, never below search_nad_strategy.
SearchResult search_ad_strategy(const PolygonTheory& t, const std::vector<Vec3>& states,
                                int resolution);

struct NamedStrategy {
  std::string name;
  PolygonTheory theory;
  std::vector<int> state_labels;  ///< 1-based
  StrategyTree tree;
  double target = 0.0;
};

/// Hexagon, states (2,4,6), M = (2/3){e2, e4, e6} on both copies with the
/// decoder 11, 12, 21 -> s2; 22, 23, 32 -> s4; 33, 31, 13 -> s6. Value 8/9.
NamedStrategy hexagon_fix();
/// Square, all four states, Alice {e2, e2-bar}, Bob {e1, e1-bar}. Value 1.
NamedStrategy square_nad();
/// Hexagon, states (2,4,6), Alice {e2, e2-bar}; Bob {e3, e3-bar} after
/// outcome e2 and {e4, e4-bar} otherwise. Value 1.
NamedStrategy hexagon_ad1();

}  // namespace mcdisc::gpt

#endif  // MCDISC_GPT_HPP
