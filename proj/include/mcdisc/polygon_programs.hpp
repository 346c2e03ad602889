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

// Two-copy discrimination programs over a polygon theory.
//
// A bipartite effect is a vector in R^9 with coordinate 3p + q pairing
// component p of the first system with component q of the second.
//
//   SEP     M_x = sum_{a,b} alpha_{x,ab} g_a (x) g_b over the extreme rays
//           g of the effect cone plus the unit, alpha >= 0.
//   GLOBAL  M_x free, M_x(s_i (x) s_j) >= 0 on every pair of pure states.
//
// Both maximize (1/n) sum_x M_x(s_x (x) s_x) subject to sum_x M_x = u (x) u.

#ifndef MCDISC_POLYGON_PROGRAMS_HPP
#define MCDISC_POLYGON_PROGRAMS_HPP

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mcdisc/gpt.hpp"
#include "mcdisc/lp.hpp"

namespace mcdisc::lp {

enum class ProgramKind { kSep, kGlobal };
std::string to_string(ProgramKind k);

using Vec9 = Eigen::Matrix<double, 9, 1>;

Vec9 tensor(const gpt::Vec3& a, const gpt::Vec3& b);

/// The program for states t.state(i), i in `subset` (1-based, distinct).
LinearProgram sep_program(const gpt::PolygonTheory& t, const std::vector<int>& subset);
LinearProgram global_program(const gpt::PolygonTheory& t, const std::vector<int>& subset);

struct ProgramResult {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  std::vector<Vec9> effects;  ///< one bipartite effect per state in the subset
};

ProgramResult solve_program(const gpt::PolygonTheory& t, const std::vector<int>& subset, ProgramKind kind);

struct SubsetRow {
  int m = 0;
  std::vector<int> subset;
  ProgramKind kind = ProgramKind::kSep;
  double value = 0.0;
  LpStatus status = LpStatus::kInfeasible;
};

/// Lexicographically smallest image of `subset` under the dihedral group of
/// the m-gon.
std::vector<int> canonical_subset(int m, std::vector<int> subset);

/// One row per dihedral orbit of n-subsets of P(m), in lexicographic order of
/// the canonical representatives.
std::vector<SubsetRow> optimize_over_subsets(int m, int n, ProgramKind kind);

/// "m,subset,kind,value,status" header plus rows; subsets are written as
/// space-separated labels and values with 12 significant digits.
std::string to_csv(const std::vector<SubsetRow>& rows);

}  // namespace mcdisc::lp

#endif  // MCDISC_POLYGON_PROGRAMS_HPP
