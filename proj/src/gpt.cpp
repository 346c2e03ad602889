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

#include "mcdisc/gpt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "mcdisc/errors.hpp"
#include "mcdisc/lp.hpp"

namespace mcdisc::gpt {
namespace {

using std::numbers::pi;

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

// P[j][o] = probability of outcome o on state j.
using Table = std::vector<std::vector<double>>;

Table outcome_table(const GptMeasurement& m, const std::vector<Vec3>& states) {
  Table p(states.size(), std::vector<double>(m.effects.size()));
  for (std::size_t j = 0; j < states.size(); ++j)
    for (std::size_t o = 0; o < m.effects.size(); ++o) p[j][o] = eval_effect(m.effects[o], states[j]);
  return p;
}

// ML value of using the same measurement on k copies.
double fix_value(const Table& p, int k) {
  const std::size_t n = p.size();
  const std::size_t r = p.front().size();
  std::size_t strings = 1;
  for (int c = 0; c < k; ++c) strings *= r;
  double total = 0.0;
  std::vector<int> digits(k);
  for (std::size_t s = 0; s < strings; ++s) {
    std::size_t rest = s;
    for (int c = 0; c < k; ++c) {
      digits[c] = static_cast<int>(rest % r);
      rest /= r;
    }
    double best = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double q = 1.0;
      for (int c = 0; c < k; ++c) q *= p[j][digits[c]];
      best = std::max(best, q);
    }
    total += best;
  }
  return total / static_cast<double>(n);
}

// sum over (a, b) of max_j pa[j][a] pb[j][b], restricted to Alice outcome `a`.
double branch_value(const Table& pa, std::size_t a, const Table& pb) {
  double total = 0.0;
  for (std::size_t b = 0; b < pb.front().size(); ++b) {
    double best = 0.0;
    for (std::size_t j = 0; j < pa.size(); ++j) best = std::max(best, pa[j][a] * pb[j][b]);
    total += best;
  }
  return total;
}

struct Distribution {
  std::map<OutcomeString, std::vector<double>> probs;  // string -> per-state probability
};

void expand(const StrategyTree& tree, const std::vector<Vec3>& states, OutcomeString& prefix,
            std::vector<double>& weight, Distribution& out) {
  const int party = static_cast<int>(prefix.size());
  if (party == tree.copies) {
    out.probs[prefix] = weight;
    return;
  }
  const GptMeasurement& m = tree.measurement(party, prefix);
  for (std::size_t o = 0; o < m.effects.size(); ++o) {
    std::vector<double> next(weight.size());
    for (std::size_t j = 0; j < states.size(); ++j) next[j] = weight[j] * eval_effect(m.effects[o], states[j]);
    prefix.push_back(static_cast<int>(o));
    expand(tree, states, prefix, next, out);
    prefix.pop_back();
  }
}

void validate_tree(const StrategyTree& tree) {
  require(tree.copies >= 1, "strategy needs at least one copy");
  require(tree.parties.size() == static_cast<std::size_t>(tree.copies), "strategy needs one party per copy");
}

StrategyValue evaluate_unchecked(const std::vector<Vec3>& states, const StrategyTree& tree) {
  validate_tree(tree);
  require(!states.empty(), "strategy evaluation needs at least one state");
  Distribution dist;
  OutcomeString prefix;
  std::vector<double> weight(states.size(), 1.0);
  expand(tree, states, prefix, weight, dist);

  StrategyValue v;
  v.kind = tree.kind;
  v.per_state.assign(states.size(), 0.0);
  for (const auto& [s, p] : dist.probs) {
    int guess = 0;
    if (tree.decoder.empty()) {
      for (std::size_t j = 1; j < p.size(); ++j)
        if (p[j] > p[guess]) guess = static_cast<int>(j);
    } else {
      auto it = tree.decoder.find(s);
      require(it != tree.decoder.end(), "decoder does not cover every outcome string");
      guess = it->second;
      require(guess >= 0 && static_cast<std::size_t>(guess) < states.size(), "decoder label out of range");
    }
    v.decoder[s] = guess;
    v.per_state[guess] += p[guess];
  }
  double sum = 0.0;
  for (double x : v.per_state) sum += x;
  v.value = sum / static_cast<double>(states.size());
  return v;
}

GptMeasurement make_measurement(const std::vector<Vec3>& gens, const std::vector<std::size_t>& idx,
                                const Eigen::VectorXd& lambda) {
  GptMeasurement m;
  for (std::size_t u = 0; u < idx.size(); ++u)
    if (lambda(u) > 1e-12) m.effects.push_back(lambda(u) * gens[idx[u]]);
  return m;
}

// Fine-grained measurements: positive multiples of chosen rays summing to the unit.
std::vector<GptMeasurement> ray_measurements(const PolygonTheory& t, int resolution) {
  const auto& g = t.ray_effects;
  const std::size_t r = g.size();
  std::vector<GptMeasurement> out;
  auto columns = [&](const std::vector<std::size_t>& idx) {
    Eigen::MatrixXd a(3, idx.size());
    for (std::size_t u = 0; u < idx.size(); ++u) a.col(u) = g[idx[u]];
    return a;
  };
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a + 1; b < r; ++b) {
      const std::vector<std::size_t> idx{a, b};
      const Eigen::MatrixXd mat = columns(idx);
      Eigen::VectorXd lambda = mat.colPivHouseholderQr().solve(t.unit);
      if ((mat * lambda - t.unit).norm() > 1e-10 || lambda.minCoeff() < -1e-12) continue;
      out.push_back(make_measurement(g, idx, lambda));
    }
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a + 1; b < r; ++b)
      for (std::size_t c = b + 1; c < r; ++c) {
        const std::vector<std::size_t> idx{a, b, c};
        const Eigen::Matrix3d mat = columns(idx);
        if (std::abs(mat.determinant()) < 1e-12) continue;
        Eigen::Vector3d lambda = mat.partialPivLu().solve(t.unit);
        if (lambda.minCoeff() < -1e-12) continue;
        out.push_back(make_measurement(g, idx, lambda));
      }
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a + 1; b < r; ++b)
      for (std::size_t c = b + 1; c < r; ++c)
        for (std::size_t d = c + 1; d < r; ++d) {
          const std::vector<std::size_t> idx{a, b, c, d};
          const Eigen::MatrixXd mat = columns(idx);
          Eigen::FullPivLU<Eigen::MatrixXd> lu(mat);
          if (lu.rank() != 3) continue;
          const Eigen::VectorXd kernel = lu.kernel().col(0);
          const Eigen::VectorXd base = mat.completeOrthogonalDecomposition().solve(t.unit);
          double lo = -lp::kInf;
          double hi = lp::kInf;
          for (int u = 0; u < 4; ++u) {
            if (std::abs(kernel(u)) < 1e-14) {
              if (base(u) < -1e-12) lo = lp::kInf;
              continue;
            }
            const double bound = -base(u) / kernel(u);
            if (kernel(u) > 0) lo = std::max(lo, bound);
            else hi = std::min(hi, bound);
          }
          if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi)) continue;
          for (int s = 0; s < resolution; ++s) {
            const double tt = lo + (hi - lo) * s / (resolution - 1);
            Eigen::VectorXd lambda = (base + tt * kernel).cwiseMax(0.0);
            out.push_back(make_measurement(g, idx, lambda));
          }
        }
  return out;
}

void require_search_inputs(const std::vector<Vec3>& states, int resolution) {
  require(!states.empty() && states.size() <= 4, "strategy search supports 1 to 4 states");
  require(resolution >= 2, "strategy search needs resolution >= 2");
}

}  // namespace

const Vec3& PolygonTheory::state(int i) const {
  require(i >= 1 && static_cast<std::size_t>(i) <= states.size(), "state label out of range");
  return states[i - 1];
}

const Vec3& PolygonTheory::effect(int i) const {
  require(i >= 1 && static_cast<std::size_t>(i) <= ray_effects.size(), "effect label out of range");
  return ray_effects[i - 1];
}

Vec3 PolygonTheory::complement(int i) const { return unit - effect(i); }

std::vector<Vec3> PolygonTheory::pick(const std::vector<int>& labels) const {
  std::vector<Vec3> out;
  for (int i : labels) out.push_back(state(i));
  return out;
}

PolygonTheory polygon(int m) {
  require(m >= 3, "polygon needs m >= 3");
  PolygonTheory t;
  t.m = m;
  const double r = std::sqrt(1.0 / std::cos(pi / m));
  for (int i = 1; i <= m; ++i) {
    const double a = 2.0 * pi * i / m;
    t.states.emplace_back(r * std::cos(a), r * std::sin(a), 1.0);
  }
  if (m % 2 == 0) {
    for (int i = 1; i <= m; ++i) {
      const double a = (2.0 * i - 1.0) * pi / m;
      t.ray_effects.push_back(0.5 * Vec3(r * std::cos(a), r * std::sin(a), 1.0));
    }
    t.extreme_effects = t.ray_effects;
  } else {
    for (int i = 1; i <= m; ++i) t.ray_effects.push_back(t.states[i - 1] / (1.0 + r * r));
    t.extreme_effects = t.ray_effects;
    for (const auto& f : t.ray_effects) t.extreme_effects.push_back(t.unit - f);
  }
  return t;
}

PolygonTheory bit_theory() {
  PolygonTheory t;
  t.m = 2;
  t.states = {bit_state(0.0), bit_state(1.0)};
  t.ray_effects = {Vec3(0.5, 0.0, 0.5), Vec3(-0.5, 0.0, 0.5)};
  t.extreme_effects = t.ray_effects;
  return t;
}

Vec3 bit_state(double p) {
  require(p >= 0.0 && p <= 1.0, "bit_state needs p in [0, 1]");
  return Vec3(2.0 * p - 1.0, 0.0, 1.0);
}

double eval_effect(const Vec3& effect, const Vec3& state) {
  const double v = effect.dot(state);
  require(v >= -1e-9 && v <= 1.0 + 1e-9, "effect/state pairing outside [0, 1]");
  return std::clamp(v, 0.0, 1.0);
}

MembershipCertificate effect_membership(const PolygonTheory& t, const Vec3& effect) {
  const auto g = static_cast<Eigen::Index>(t.extreme_effects.size());
  auto p = lp::LinearProgram::with_variables(g + 1);
  p.a_eq.resize(3, g + 1);
  for (Eigen::Index u = 0; u < g; ++u) p.a_eq.col(u) = t.extreme_effects[u];
  p.a_eq.col(g) = t.unit;
  p.b_eq = effect;
  p.a_ub = Eigen::MatrixXd::Ones(1, g + 1);
  p.b_ub = Eigen::VectorXd::Ones(1);
  const lp::LpSolution s = lp::solve_lp(p);
  MembershipCertificate c;
  c.member = s.status == lp::LpStatus::kOptimal && s.max_violation <= 1e-9;
  if (c.member) {
    c.weights.assign(s.x.data(), s.x.data() + s.x.size());
    c.residual = s.max_violation;
  }
  return c;
}

void GptMeasurement::validate(const PolygonTheory& t) const {
  require(!effects.empty(), "measurement needs at least one effect");
  Vec3 sum = Vec3::Zero();
  for (const auto& e : effects) {
    require(effect_membership(t, e).member, "measurement effect is not a valid effect");
    sum += e;
  }
  require((sum - t.unit).cwiseAbs().maxCoeff() <= 1e-10, "measurement effects do not sum to the unit");
}

PairCertificate perfectly_distinguishable_pair(const PolygonTheory& t, int i, int j) {
  require(i != j, "perfectly_distinguishable_pair needs two different states");
  const Vec3 si = t.state(i);
  const Vec3 sj = t.state(j);
  const auto g = static_cast<Eigen::Index>(t.extreme_effects.size());
  auto p = lp::LinearProgram::with_variables(g + 1);
  for (Eigen::Index u = 0; u < g; ++u) p.objective(u) = t.extreme_effects[u].dot(si - sj);
  p.objective(g) = 0.0;
  p.a_ub = Eigen::MatrixXd::Ones(1, g + 1);
  p.b_ub = Eigen::VectorXd::Ones(1);
  const lp::LpSolution s = lp::solve_lp(p);
  if (s.status != lp::LpStatus::kOptimal) throw InternalError("distinguishability LP did not solve");
  PairCertificate c;
  c.distinguishable = s.value >= 1.0 - 1e-9;
  if (c.distinguishable) {
    for (Eigen::Index u = 0; u < g; ++u) c.effect += s.x(u) * t.extreme_effects[u];
    c.effect += s.x(g) * t.unit;
  }
  return c;
}

std::vector<std::array<int, 3>> pairwise_distinguishable_triples(const PolygonTheory& t) {
  const int n = static_cast<int>(t.states.size());
  std::vector<std::vector<bool>> ok(n + 1, std::vector<bool>(n + 1, false));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) ok[i][j] = perfectly_distinguishable_pair(t, i, j).distinguishable;
  std::vector<std::array<int, 3>> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int l = j + 1; l <= n; ++l)
        if (ok[i][j] && ok[i][l] && ok[j][l]) out.push_back({i, j, l});
  return out;
}

std::string to_string(StrategyClass c) {
  switch (c) {
    case StrategyClass::kFix: return "FIX";
    case StrategyClass::kNad: return "NAD";
    case StrategyClass::kAd: return "AD";
    case StrategyClass::kAd1: return "AD1";
  }
  return "?";
}

const GptMeasurement& StrategyTree::measurement(int party, const OutcomeString& prefix) const {
  require(party >= 0 && static_cast<std::size_t>(party) < parties.size(), "party out of range");
  const auto& table = parties[party];
  if (auto it = table.find(prefix); it != table.end()) return it->second;
  if (auto it = table.find({}); it != table.end()) return it->second;
  throw ValidationError("strategy has no measurement for party " + std::to_string(party) + " after this prefix");
}

StrategyTree fix_tree(const GptMeasurement& m, int copies) {
  require(copies >= 1, "fix_tree needs at least one copy");
  StrategyTree t;
  t.copies = copies;
  t.kind = StrategyClass::kFix;
  t.parties.assign(copies, {{OutcomeString{}, m}});
  return t;
}

StrategyTree nad_tree(const std::vector<GptMeasurement>& measurements) {
  require(!measurements.empty(), "nad_tree needs at least one measurement");
  StrategyTree t;
  t.copies = static_cast<int>(measurements.size());
  t.kind = StrategyClass::kNad;
  for (const auto& m : measurements) t.parties.push_back({{OutcomeString{}, m}});
  return t;
}

StrategyTree ad_tree(const GptMeasurement& alice, const std::vector<GptMeasurement>& bob) {
  require(bob.size() == alice.effects.size(), "ad_tree needs one Bob measurement per Alice outcome");
  StrategyTree t;
  t.copies = 2;
  t.kind = alice.effects.size() == 2 ? StrategyClass::kAd1 : StrategyClass::kAd;
  t.parties.push_back({{OutcomeString{}, alice}});
  t.parties.emplace_back();
  for (std::size_t a = 0; a < bob.size(); ++a) t.parties[1][OutcomeString{static_cast<int>(a)}] = bob[a];
  return t;
}

StrategyValue evaluate_strategy(const PolygonTheory& t, const std::vector<Vec3>& states,
                                const StrategyTree& tree) {
  validate_tree(tree);
  for (const auto& s : states) require(s.allFinite(), "state has non-finite entries");
  for (const auto& table : tree.parties)
    for (const auto& [prefix, m] : table) m.validate(t);
  return evaluate_unchecked(states, tree);
}

SearchResult search_fix_strategy(const PolygonTheory& t, const std::vector<Vec3>& states, int k,
                                 int resolution) {
  require(k >= 1 && k <= 3, "search_fix_strategy supports 1 to 3 copies");
  require_search_inputs(states, resolution);
  const auto candidates = ray_measurements(t, resolution);
  if (candidates.empty()) throw InternalError("theory admits no ray measurement");
  double best = -1.0;
  std::size_t arg = 0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const double v = fix_value(outcome_table(candidates[c], states), k);
    if (v > best + 1e-12) {
      best = v;
      arg = c;
    }
  }
  SearchResult r;
  r.tree = fix_tree(candidates[arg], k);
  r.best = evaluate_unchecked(states, r.tree);
  return r;
}

std::vector<GptMeasurement> dichotomic_family(const PolygonTheory& t) {
  std::vector<GptMeasurement> out;
  for (const auto& g : t.ray_effects) out.push_back({{g, t.unit - g}});
  const int n = static_cast<int>(t.states.size());
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const PairCertificate c = perfectly_distinguishable_pair(t, i, j);
      if (c.distinguishable) out.push_back({{c.effect, t.unit - c.effect}});
    }
  return out;
}

SearchResult search_nad_strategy(const PolygonTheory& t, const std::vector<Vec3>& states,
                                 int resolution) {
  SearchResult r = search_fix_strategy(t, states, 2, resolution);
  const auto family = dichotomic_family(t);
  std::vector<Table> tables;
  for (const auto& m : family) tables.push_back(outcome_table(m, states));
  const double n = static_cast<double>(states.size());
  double best = r.best.value;
  int ba = -1, bb = -1;
  for (std::size_t a = 0; a < family.size(); ++a)
    for (std::size_t b = 0; b < family.size(); ++b) {
      double v = 0.0;
      for (std::size_t o = 0; o < 2; ++o) v += branch_value(tables[a], o, tables[b]);
      v /= n;
      if (v > best + 1e-12) {
        best = v;
        ba = static_cast<int>(a);
        bb = static_cast<int>(b);
      }
    }
  if (ba >= 0) {
    r.tree = nad_tree({family[ba], family[bb]});
    r.best = evaluate_unchecked(states, r.tree);
  }
  return r;
}

SearchResult search_ad_strategy(const PolygonTheory& t, const std::vector<Vec3>& states,
                                int resolution) {
  SearchResult r = search_nad_strategy(t, states, resolution);
  const auto family = dichotomic_family(t);
  std::vector<Table> tables;
  for (const auto& m : family) tables.push_back(outcome_table(m, states));
  const double n = static_cast<double>(states.size());
  double best = r.best.value;
  int best_alice = -1;
  std::vector<std::size_t> best_bob;
  for (std::size_t a = 0; a < family.size(); ++a) {
    double v = 0.0;
    std::vector<std::size_t> bob(2, 0);
    for (std::size_t o = 0; o < 2; ++o) {
      double branch = -1.0;
      for (std::size_t b = 0; b < family.size(); ++b) {
        const double x = branch_value(tables[a], o, tables[b]);
        if (x > branch + 1e-12) {
          branch = x;
          bob[o] = b;
        }
      }
      v += branch;
    }
    v /= n;
    if (v > best + 1e-12) {
      best = v;
      best_alice = static_cast<int>(a);
      best_bob = bob;
    }
  }
  if (best_alice >= 0) {
    r.tree = ad_tree(family[best_alice], {family[best_bob[0]], family[best_bob[1]]});
    r.best = evaluate_unchecked(states, r.tree);
  }
  return r;
}

NamedStrategy hexagon_fix() {
  NamedStrategy s{"hexagon-fix", polygon(6), {2, 4, 6}, {}, 8.0 / 9.0};
  const auto& t = s.theory;
  GptMeasurement m{{2.0 / 3.0 * t.effect(2), 2.0 / 3.0 * t.effect(4), 2.0 / 3.0 * t.effect(6)}};
  s.tree = fix_tree(m, 2);
  // Each string goes to the state that makes it most likely.
  s.tree.decoder = {{{0, 0}, 0}, {{0, 1}, 0}, {{1, 0}, 0}, {{1, 1}, 1}, {{1, 2}, 1},
                    {{2, 1}, 1}, {{2, 2}, 2}, {{2, 0}, 2}, {{0, 2}, 2}};
  return s;
}

NamedStrategy square_nad() {
  NamedStrategy s{"square-nad", polygon(4), {1, 2, 3, 4}, {}, 1.0};
  const auto& t = s.theory;
  s.tree = nad_tree({GptMeasurement{{t.effect(2), t.complement(2)}}, GptMeasurement{{t.effect(1), t.complement(1)}}});
  return s;
}

NamedStrategy hexagon_ad1() {
  NamedStrategy s{"hexagon-ad1", polygon(6), {2, 4, 6}, {}, 1.0};
  const auto& t = s.theory;
  s.tree = ad_tree(GptMeasurement{{t.effect(2), t.complement(2)}},
                   {GptMeasurement{{t.effect(3), t.complement(3)}}, GptMeasurement{{t.effect(4), t.complement(4)}}});
  return s;
}

}  // namespace mcdisc::gpt
