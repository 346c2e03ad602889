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

// Dense two-phase simplex.
//
//   maximize    c . x
//   subject to  A_eq x  = b_eq
//               A_ub x <= b_ub
//               lower <= x <= upper      (entries may be +-infinity)

#ifndef MCDISC_LP_HPP
#define MCDISC_LP_HPP

#include <cstddef>
#include <limits>
#include <string>

#include <Eigen/Dense>

namespace mcdisc::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct LinearProgram {
  Eigen::VectorXd objective;
  Eigen::MatrixXd a_eq;
  Eigen::VectorXd b_eq;
  Eigen::MatrixXd a_ub;
  Eigen::VectorXd b_ub;
  Eigen::VectorXd lower;  ///< empty means all zero
  Eigen::VectorXd upper;  ///< empty means all +infinity

  /// An empty program over `num_vars` nonnegative variables.
  static LinearProgram with_variables(Eigen::Index num_vars);

  Eigen::Index num_vars() const { return objective.size(); }
  /// Throws ValidationError on inconsistent shapes or non-finite data.
  void validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

std::string to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  double value = 0.0;
  Eigen::VectorXd x;
  /// Largest violation of any constraint or bound by x (0 when not optimal).
  double max_violation = 0.0;
  /// Multipliers of the optimal basis, c_B B^{-1}: one per equality row and
  /// one per inequality row (>= 0). Rows found redundant get 0.
  Eigen::VectorXd dual_eq;
  Eigen::VectorXd dual_ub;
  std::size_t iterations = 0;
};

struct SimplexOptions {
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-9;
  std::size_t max_iterations = 200000;
  /// After this many consecutive degenerate pivots the entering rule switches
  /// from largest reduced cost to lowest index (Bland) until progress resumes.
  std::size_t degenerate_switch = 50;
};

/// Deterministic: identical input gives bit-identical output.
LpSolution solve_lp(const LinearProgram& p, const SimplexOptions& options = {});

}  // namespace mcdisc::lp

#endif  // MCDISC_LP_HPP
