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

#include "mcdisc/polygon_programs.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

#include "mcdisc/errors.hpp"

namespace mcdisc::lp {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

std::vector<gpt::Vec3> check_subset(const gpt::PolygonTheory& t, const std::vector<int>& subset) {
  require(!subset.empty(), "program needs a non-empty subset");
  std::set<int> seen(subset.begin(), subset.end());
  require(seen.size() == subset.size(), "subset labels must be distinct");
  return t.pick(subset);
}

std::vector<gpt::Vec3> generators(const gpt::PolygonTheory& t) {
  std::vector<gpt::Vec3> g = t.ray_effects;
  g.push_back(t.unit);
  return g;
}

Vec9 unit9(const gpt::PolygonTheory& t) { return tensor(t.unit, t.unit); }

}  // namespace

std::string to_string(ProgramKind k) { return k == ProgramKind::kSep ? "SEP" : "GLOBAL"; }

Vec9 tensor(const gpt::Vec3& a, const gpt::Vec3& b) {
  Vec9 v;
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) v(3 * p + q) = a(p) * b(q);
  return v;
}

LinearProgram sep_program(const gpt::PolygonTheory& t, const std::vector<int>& subset) {
  const auto states = check_subset(t, subset);
  const auto g = generators(t);
  const auto n = static_cast<Eigen::Index>(states.size());
  const auto pairs = static_cast<Eigen::Index>(g.size() * g.size());
  auto p = LinearProgram::with_variables(n * pairs);
  p.upper = Eigen::VectorXd::Ones(n * pairs);
  p.a_eq = Eigen::MatrixXd::Zero(9, n * pairs);
  p.b_eq = unit9(t);
  for (Eigen::Index x = 0; x < n; ++x) {
    const Vec9 target = tensor(states[x], states[x]);
    for (std::size_t a = 0; a < g.size(); ++a)
      for (std::size_t b = 0; b < g.size(); ++b) {
        const Eigen::Index col = x * pairs + static_cast<Eigen::Index>(a * g.size() + b);
        const Vec9 e = tensor(g[a], g[b]);
        p.a_eq.col(col) = e;
        p.objective(col) = e.dot(target) / static_cast<double>(n);
      }
  }
  return p;
}

LinearProgram global_program(const gpt::PolygonTheory& t, const std::vector<int>& subset) {
  const auto states = check_subset(t, subset);
  const auto n = static_cast<Eigen::Index>(states.size());
  const auto m = static_cast<Eigen::Index>(t.states.size());
  auto p = LinearProgram::with_variables(9 * n);
  p.lower = Eigen::VectorXd::Constant(9 * n, -kInf);
  p.a_eq = Eigen::MatrixXd::Zero(9, 9 * n);
  p.b_eq = unit9(t);
  p.a_ub = Eigen::MatrixXd::Zero(n * m * m, 9 * n);
  p.b_ub = Eigen::VectorXd::Zero(n * m * m);
  for (Eigen::Index x = 0; x < n; ++x) {
    p.a_eq.block(0, 9 * x, 9, 9).setIdentity();
    p.objective.segment(9 * x, 9) = tensor(states[x], states[x]) / static_cast<double>(n);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j)
        p.a_ub.block(x * m * m + i * m + j, 9 * x, 1, 9) = -tensor(t.states[i], t.states[j]).transpose();
  }
  return p;
}

ProgramResult solve_program(const gpt::PolygonTheory& t, const std::vector<int>& subset, ProgramKind kind) {
  const LinearProgram p = kind == ProgramKind::kSep ? sep_program(t, subset) : global_program(t, subset);
  const LpSolution s = solve_lp(p);
  ProgramResult r;
  r.status = s.status;
  if (s.status != LpStatus::kOptimal) return r;
  r.value = s.value;
  const auto n = static_cast<Eigen::Index>(subset.size());
  if (kind == ProgramKind::kGlobal) {
    for (Eigen::Index x = 0; x < n; ++x) r.effects.push_back(s.x.segment(9 * x, 9));
  } else {
    const Eigen::Index pairs = p.num_vars() / n;
    for (Eigen::Index x = 0; x < n; ++x)
      r.effects.push_back(p.a_eq.middleCols(x * pairs, pairs) * s.x.segment(x * pairs, pairs));
  }
  return r;
}

std::vector<int> canonical_subset(int m, std::vector<int> subset) {
  require(m >= 1, "canonical_subset needs m >= 1");
  for (int i : subset) require(i >= 1 && i <= m, "subset label out of range");
  std::vector<int> best;
  for (int reflect = 0; reflect < 2; ++reflect)
    for (int shift = 0; shift < m; ++shift) {
      std::vector<int> image;
      for (int i : subset) {
        int j = reflect ? (m - i) % m : i % m;  // 0-based position, label m is position 0
        j = (j + shift) % m;
        image.push_back(j == 0 ? m : j);
      }
      std::sort(image.begin(), image.end());
      if (best.empty() || image < best) best = image;
    }
  return best;
}

std::vector<SubsetRow> optimize_over_subsets(int m, int n, ProgramKind kind) {
  require(n >= 1 && n <= m, "optimize_over_subsets needs 1 <= n <= m");
  const gpt::PolygonTheory t = gpt::polygon(m);
  std::set<std::vector<int>> orbits;
  std::vector<bool> pick(m, false);
  std::fill(pick.begin(), pick.begin() + n, true);
  do {
    std::vector<int> s;
    for (int i = 0; i < m; ++i)
      if (pick[i]) s.push_back(i + 1);
    orbits.insert(canonical_subset(m, s));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  std::vector<SubsetRow> rows;
  for (const auto& s : orbits) {
    const ProgramResult r = solve_program(t, s, kind);
    rows.push_back({m, s, kind, r.value, r.status});
  }
  return rows;
}

std::string to_csv(const std::vector<SubsetRow>& rows) {
  std::ostringstream out;
  out << "m,subset,kind,value,status\n" << std::setprecision(12);
  for (const auto& r : rows) {
    out << r.m << ',';
    for (std::size_t i = 0; i < r.subset.size(); ++i) out << (i ? " " : "") << r.subset[i];
    out << ',' << to_string(r.kind) << ',' << r.value << ',' << to_string(r.status) << '\n';
  }
  return out.str();
}

}  // namespace mcdisc::lp
