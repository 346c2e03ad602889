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

#include "mcdisc/lp.hpp"

#include <random>

#include <gtest/gtest.h>

#include "mcdisc/errors.hpp"

using namespace mcdisc;
using namespace mcdisc::lp;

namespace {

// Vertex enumeration for max c.x, A x <= b, x >= 0 in three variables.
double vertex_oracle(const Eigen::Vector3d& c, const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  const Eigen::Index m = a.rows();
  Eigen::MatrixXd all(m + 3, 3);
  Eigen::VectorXd rhs(m + 3);
  all.topRows(m) = a;
  rhs.head(m) = b;
  all.bottomRows(3) = -Eigen::Matrix3d::Identity();
  rhs.tail(3).setZero();
  double best = -kInf;
  for (Eigen::Index i = 0; i < m + 3; ++i)
    for (Eigen::Index j = i + 1; j < m + 3; ++j)
      for (Eigen::Index k = j + 1; k < m + 3; ++k) {
        Eigen::Matrix3d s;
        s << all.row(i), all.row(j), all.row(k);
        if (std::abs(s.determinant()) < 1e-10) continue;
        Eigen::Vector3d x = s.fullPivLu().solve(Eigen::Vector3d(rhs(i), rhs(j), rhs(k)));
        if (((all * x - rhs).array() <= 1e-9).all()) best = std::max(best, c.dot(x));
      }
  return best;
}

}  // namespace

TEST(SolveLp, SingleBoundedVariable) {
  auto p = LinearProgram::with_variables(1);
  p.objective << 1.0;
  p.a_ub = Eigen::MatrixXd::Ones(1, 1);
  p.b_ub = Eigen::VectorXd::Ones(1);
  auto s = solve_lp(p);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_DOUBLE_EQ(s.value, 1.0);
}

TEST(SolveLp, SimplexFace) {
  auto p = LinearProgram::with_variables(2);
  p.objective << 1.0, 1.0;
  p.a_ub = Eigen::MatrixXd::Ones(1, 2);
  p.b_ub = Eigen::VectorXd::Ones(1);
  auto s = solve_lp(p);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_DOUBLE_EQ(s.value, 1.0);
  EXPECT_LE(s.max_violation, 1e-12);
}

TEST(SolveLp, EqualitiesFreeVariablesAndBounds) {
  // max x - y  s.t. x + y = 1, -3 <= y <= 4, x free  ->  x = 4, y = -3.
  auto p = LinearProgram::with_variables(2);
  p.objective << 1.0, -1.0;
  p.a_eq = Eigen::MatrixXd::Ones(1, 2);
  p.b_eq = Eigen::VectorXd::Ones(1);
  p.lower = Eigen::Vector2d(-kInf, -3.0);
  p.upper = Eigen::Vector2d(kInf, 4.0);
  auto s = solve_lp(p);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.value, 7.0, 1e-12);
  EXPECT_NEAR(s.x(0), 4.0, 1e-12);
  EXPECT_NEAR(s.x(1), -3.0, 1e-12);
}

TEST(SolveLp, UpperBoundOnlyVariable) {
  auto p = LinearProgram::with_variables(1);
  p.objective << 2.0;
  p.lower = Eigen::VectorXd::Constant(1, -kInf);
  p.upper = Eigen::VectorXd::Constant(1, 2.5);
  auto s = solve_lp(p);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_DOUBLE_EQ(s.value, 5.0);
}

TEST(SolveLp, RedundantEqualities) {
  auto p = LinearProgram::with_variables(2);
  p.objective << 1.0, 2.0;
  p.a_eq.resize(3, 2);
  p.a_eq << 1, 1, 2, 2, 1, 1;
  p.b_eq = Eigen::Vector3d(1, 2, 1);
  auto s = solve_lp(p);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.value, 2.0, 1e-12);
}

TEST(SolveLp, Infeasible) {
  auto p = LinearProgram::with_variables(1);
  p.objective << 1.0;
  p.a_eq = Eigen::MatrixXd::Ones(1, 1);
  p.b_eq = Eigen::VectorXd::Constant(1, -1.0);
  EXPECT_EQ(solve_lp(p).status, LpStatus::kInfeasible);
}

TEST(SolveLp, Unbounded) {
  auto p = LinearProgram::with_variables(2);
  p.objective << 1.0, 0.0;
  p.a_ub.resize(1, 2);
  p.a_ub << -1.0, 1.0;
  p.b_ub = Eigen::VectorXd::Ones(1);
  EXPECT_EQ(solve_lp(p).status, LpStatus::kUnbounded);
}

TEST(SolveLp, RejectsInconsistentShapes) {
  auto p = LinearProgram::with_variables(2);
  p.a_ub = Eigen::MatrixXd::Ones(1, 3);
  p.b_ub = Eigen::VectorXd::Ones(1);
  EXPECT_THROW(solve_lp(p), ValidationError);
  auto q = LinearProgram::with_variables(1);
  q.lower = Eigen::VectorXd::Constant(1, 2.0);
  q.upper = Eigen::VectorXd::Constant(1, 1.0);
  EXPECT_THROW(solve_lp(q), ValidationError);
}

TEST(SolveLp, DegenerateCycleProneProgram) {
  // Beale's example cycles under the textbook largest-coefficient rule.
  auto p = LinearProgram::with_variables(4);
  p.objective << 0.75, -150.0, 0.02, -6.0;
  p.a_ub.resize(3, 4);
  p.a_ub << 0.25, -60.0, -0.04, 9.0, 0.5, -90.0, -0.02, 3.0, 0.0, 0.0, 1.0, 0.0;
  p.b_ub = Eigen::Vector3d(0.0, 0.0, 1.0);
  auto s = solve_lp(p);
  ASSERT_EQ(s.status, LpStatus::kOptimal);
  EXPECT_NEAR(s.value, 0.05, 1e-12);
}

TEST(SolveLp, MatchesVertexEnumeration) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + trial % 5;
    Eigen::MatrixXd a(m + 1, 3);
    Eigen::VectorXd b(m + 1);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < 3; ++j) a(i, j) = u(rng);
      b(i) = u(rng) + 0.5;
    }
    a.row(m).setOnes();  // keeps the region bounded
    b(m) = 3.0;
    Eigen::Vector3d c(u(rng), u(rng), u(rng));
    auto p = LinearProgram::with_variables(3);
    p.objective = c;
    p.a_ub = a;
    p.b_ub = b;
    const double oracle = vertex_oracle(c, a, b);
    auto s = solve_lp(p);
    if (oracle == -kInf) {
      EXPECT_EQ(s.status, LpStatus::kInfeasible) << "trial " << trial;
    } else {
      ASSERT_EQ(s.status, LpStatus::kOptimal) << "trial " << trial;
      EXPECT_NEAR(s.value, oracle, 1e-9) << "trial " << trial;
      EXPECT_LE(s.max_violation, 1e-9);
    }
  }
}

TEST(SolveLp, DualsCertifyOptimum) {
  // x >= 0 everywhere, so b . y bounds c . x and equals it at the optimum.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    auto p = LinearProgram::with_variables(12);
    p.objective = Eigen::VectorXd::NullaryExpr(12, [&] { return u(rng) - 0.3; });
    p.a_ub = Eigen::MatrixXd::NullaryExpr(6, 12, [&] { return u(rng); });
    p.b_ub = Eigen::VectorXd::Ones(6);
    p.a_eq = Eigen::MatrixXd::NullaryExpr(2, 12, [&] { return u(rng); });
    p.b_eq = Eigen::VectorXd::Constant(2, 0.5);
    auto s = solve_lp(p);
    ASSERT_EQ(s.status, LpStatus::kOptimal);
    EXPECT_NEAR(p.b_ub.dot(s.dual_ub) + p.b_eq.dot(s.dual_eq), s.value, 1e-9);
    EXPECT_GE(s.dual_ub.minCoeff(), -1e-9);
    Eigen::VectorXd reduced = p.a_ub.transpose() * s.dual_ub + p.a_eq.transpose() * s.dual_eq - p.objective;
    EXPECT_GE(reduced.minCoeff(), -1e-9);
  }
}

TEST(SolveLp, Deterministic) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto p = LinearProgram::with_variables(30);
  p.a_ub = Eigen::MatrixXd::NullaryExpr(20, 30, [&] { return u(rng); });
  p.b_ub = Eigen::VectorXd::Ones(20);
  p.objective = Eigen::VectorXd::NullaryExpr(30, [&] { return u(rng); });
  auto s1 = solve_lp(p);
  auto s2 = solve_lp(p);
  ASSERT_EQ(s1.status, LpStatus::kOptimal);
  EXPECT_EQ(s1.value, s2.value);
  EXPECT_TRUE(s1.x == s2.x);
  EXPECT_EQ(s1.iterations, s2.iterations);
}
