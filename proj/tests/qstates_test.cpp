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

#include <bit>
#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "mcdisc/classical.hpp"
#include "test_util.hpp"

using namespace mcdisc;
using namespace mcdisc::qstates;
using mcdisc::testing::max_abs;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

// n f(k) from an independent numpy evaluation, k = 2..7.
const double kTable1[] = {2.9142135624, 3.7320508076, 4.4621173071,
                          5.1173533624, 5.7103567075, 6.2520076068};

HermitianMatrix from_real(std::initializer_list<std::initializer_list<double>> rows, double scale) {
  HermitianMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double x : r) m(i, j++) = x * scale;
    ++i;
  }
  return m;
}

}  // namespace

TEST(Ensembles, CguInnerProducts) {
  auto t = cgu_ensemble(3);
  EXPECT_NEAR(t[0].dot(t[1]).real(), 0.5, 1e-15);
  EXPECT_NEAR(t[1].dot(t[2]).real(), 0.5, 1e-15);
  EXPECT_NEAR(t[0].dot(t[2]).real(), -0.5, 1e-15);
  auto two = cgu_ensemble(2);
  EXPECT_NEAR(std::abs(two[0].dot(two[1])), 0.0, 1e-15);
  auto four = cgu_ensemble(4);
  EXPECT_NEAR(four[0].dot(four[1]).real(), kSqrt2 / 2.0, 1e-15);
  EXPECT_THROW(cgu_ensemble(1), ValidationError);
}

TEST(Ensembles, TrineAndTetrahedron) {
  auto t = trine();
  EXPECT_NEAR(t[1].dot(t[2]).real(), -0.5, 1e-15);
  EXPECT_NEAR(t[0].dot(t[1]).real(), 0.5, 1e-15);
  EXPECT_LE(max_abs(average_state(t, 1) - HermitianMatrix::Identity(2, 2) / 2.0), 1e-15);
  auto tet = tetrahedron();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      if (i != j) EXPECT_NEAR(std::norm(tet[i].dot(tet[j])), 1.0 / 3.0, 1e-14);
}

TEST(Ensembles, RejectsUnnormalized) {
  StateVector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(PureEnsemble({v}), ValidationError);
}

TEST(Gram, TrineEntries) {
  auto g2 = gram(trine(), 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      EXPECT_NEAR(g2(i, j).real(), i == j ? 1.0 / 3.0 : 1.0 / 12.0, 1e-15);
  auto g3 = gram(trine(), 3);
  EXPECT_NEAR(g3(0, 1).real(), 1.0 / 24.0, 1e-15);
  EXPECT_NEAR(g3(1, 2).real(), -1.0 / 24.0, 1e-15);
  EXPECT_NEAR(g3(0, 2).real(), 1.0 / 24.0, 1e-15);
}

TEST(Gram, InvariantsOnCguGrid) {
  for (int n = 2; n <= 8; ++n)
    for (int k = 1; k <= 6; ++k) {
      auto g = gram(cgu_ensemble(n), k);
      EXPECT_NEAR(g.trace().real(), 1.0, 1e-14);
      auto spec = eigh(g);
      EXPECT_GE(spec.eigenvalues.minCoeff(), -1e-12);
      EXPECT_LE(spec.eigenvalues.maxCoeff(), 1.0 + 1e-12);
    }
}

TEST(GramSuccess, Examples) {
  EXPECT_NEAR(gram_success(trine(), 2), 0.5 + kSqrt2 / 3.0, 1e-12);
  EXPECT_NEAR(gram_success(cgu_ensemble(4), 2), (1.5 + kSqrt2) / 4.0, 1e-12);
  EXPECT_NEAR(gram_success(cgu_ensemble(2), 1), 1.0, 1e-12);
}

TEST(GramSuccess, TableOneValues) {
  for (int k = 2; k <= 7; ++k)
    EXPECT_NEAR((k + 1) * gram_success(cgu_ensemble(k + 1), k), kTable1[k - 2], 1e-9) << "k=" << k;
  EXPECT_NEAR(3 * gram_success(cgu_ensemble(3), 2), 1.5 + kSqrt2, 1e-12);
  EXPECT_NEAR(4 * gram_success(cgu_ensemble(4), 3), 2.0 + kSqrt3, 1e-12);
}

TEST(GramSuccess, IndependentOfNAboveK) {
  for (int k = 2; k <= 4; ++k) {
    const double f = (k + 1) * gram_success(cgu_ensemble(k + 1), k);
    for (int n = k + 1; n <= k + 4; ++n)
      EXPECT_NEAR(n * gram_success(cgu_ensemble(n), k), f, 1e-9) << "n=" << n << " k=" << k;
  }
}

TEST(Pgm, OrthogonalPairIsProjective) {
  auto e = cgu_ensemble(2);
  auto m = pgm(e.densities(), 1);
  ASSERT_EQ(m.effects.size(), 2u);
  EXPECT_LE(max_abs(m.effects[0] - e.density(0)), 1e-12);
  EXPECT_LE(max_abs(m.effects[1] - e.density(1)), 1e-12);
  m.validate();
}

TEST(Pgm, TetrahedronTwoCopies) {
  auto m = pgm(tetrahedron().densities(), 2);
  EXPECT_EQ(m.effects.size(), 4u);
  m.validate();
  EXPECT_NEAR(pgm_success(tetrahedron(), 2), 0.75, 1e-9);
  EXPECT_NEAR(pgm_success(tetrahedron(), 2), pure_upper_bound(4, 2), 1e-9);
}

TEST(Pgm, TrineSingleCopy) {
  auto t = trine();
  auto m = pgm(t.densities(), 1);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_LE(max_abs(m.effects[i] - (2.0 / 3.0) * t.density(i)), 1e-12);
  EXPECT_NEAR(pgm_success(t, 1), 2.0 / 3.0, 1e-12);
}

TEST(Pgm, Examples) {
  EXPECT_NEAR(pgm_success(trine(), 2), 0.5 + kSqrt2 / 3.0, 1e-9);
  EXPECT_NEAR(pgm_success(cgu_ensemble(5), 2), (1.5 + kSqrt2) / 5.0, 1e-9);
}

TEST(Pgm, NormalizedOnRankDeficientAverage) {
  // Trine at k = 3 spans only the 4-dim symmetric subspace of 8 dims.
  for (int k = 1; k <= 5; ++k) pgm(trine().densities(), k).validate();
}

TEST(Pgm, RejectsBadInput) {
  HermitianMatrix not_density = HermitianMatrix::Identity(2, 2);
  EXPECT_THROW(pgm({not_density}, 1), ValidationError);
  EXPECT_THROW(pgm(trine().densities(), 8), ValidationError);
}

TEST(Pgm, MatchesGramOnCguGrid) {
  for (int n = 3; n <= 6; ++n)
    for (int k = 1; k <= 4; ++k) {
      auto e = cgu_ensemble(n);
      EXPECT_NEAR(pgm_success(e, k), gram_success(e, k), 1e-9) << "n=" << n << " k=" << k;
    }
}

TEST(AverageState, SharesNonzeroSpectrumWithGram) {
  for (int n = 3; n <= 6; ++n)
    for (int k = 1; k <= 4; ++k) {
      auto e = cgu_ensemble(n);
      Eigen::VectorXd a = eigh(average_state(e, k)).eigenvalues;
      Eigen::VectorXd g = eigh(gram(e, k)).eigenvalues;
      const Eigen::Index r = std::min(a.size(), g.size());
      for (Eigen::Index i = 0; i < r; ++i) EXPECT_NEAR(a(i), g(i), 1e-9) << "n=" << n << " k=" << k;
      for (Eigen::Index i = r; i < a.size(); ++i) EXPECT_NEAR(a(i), 0.0, 1e-9);
      for (Eigen::Index i = r; i < g.size(); ++i) EXPECT_NEAR(g(i), 0.0, 1e-9);
    }
}

TEST(AverageState, RemarkMatrices) {
  auto r2 = from_real({{3, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 1, 0}, {1, 0, 0, 3}}, 1.0 / 8.0);
  auto r3 = from_real({{5, 0, 0, 1, 0, 1, 1, 0},
                       {0, 1, 1, 0, 1, 0, 0, 1},
                       {0, 1, 1, 0, 1, 0, 0, 1},
                       {1, 0, 0, 1, 0, 1, 1, 0},
                       {0, 1, 1, 0, 1, 0, 0, 1},
                       {1, 0, 0, 1, 0, 1, 1, 0},
                       {1, 0, 0, 1, 0, 1, 1, 0},
                       {0, 1, 1, 0, 1, 0, 0, 5}},
                      1.0 / 16.0);
  for (int n = 3; n <= 7; ++n) EXPECT_LE(max_abs(average_state(cgu_ensemble(n), 2) - r2), 1e-12) << n;
  for (int n = 4; n <= 8; ++n) EXPECT_LE(max_abs(average_state(cgu_ensemble(n), 3) - r3), 1e-12) << n;
}

TEST(AverageState, HammingBlockStructure) {
  for (int k = 2; k <= 4; ++k)
    for (int n = k + 1; n <= k + 4; ++n) {
      auto a = average_state(cgu_ensemble(n), k);
      EXPECT_NEAR(a.trace().real(), 1.0, 1e-12);
      std::map<int, cplx> by_weight;
      for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
          const int w = std::popcount(static_cast<unsigned>(i)) + std::popcount(static_cast<unsigned>(j));
          if (w % 2) {
            EXPECT_NEAR(std::abs(a(i, j)), 0.0, 1e-12);
          } else {
            EXPECT_GT(a(i, j).real(), 1e-6);
            auto [it, fresh] = by_weight.emplace(w, a(i, j));
            if (!fresh) EXPECT_NEAR(std::abs(it->second - a(i, j)), 0.0, 1e-12);
          }
        }
    }
}

TEST(Gram, EvenPowerColumnSums) {
  for (int k = 2; k <= 8; k += 2) {
    const double expected =
        std::ldexp(classical::binomial(k, k / 2).convert_to<double>(), -k);
    for (int n = k + 1; n <= k + 4; ++n) {
      auto g = gram(cgu_ensemble(n), k);
      for (Eigen::Index j = 0; j < g.cols(); ++j)
        EXPECT_NEAR(g.col(j).sum().real(), expected, 1e-12) << "n=" << n << " k=" << k;
      EXPECT_NEAR(eigh(g).eigenvalues(0), expected, 1e-12);
    }
  }
}

TEST(TrineClosedForm, Examples) {
  EXPECT_NEAR(trine_closed_form(1), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(trine_closed_form(3), 0.99158, 1e-5);
  EXPECT_NEAR(trine_closed_form(2), 0.96248, 1e-5);
}

TEST(TrineClosedForm, AgreesWithGramOnlyForOddK) {
  for (int k : {1, 3, 5, 7}) EXPECT_NEAR(trine_closed_form(k), gram_success(trine(), k), 1e-9) << k;
  EXPECT_GT(gram_success(trine(), 2) - trine_closed_form(2), 5e-3);
}

TEST(Bounds, PureUpperBound) {
  EXPECT_DOUBLE_EQ(pure_upper_bound(4, 2), 0.75);
  EXPECT_DOUBLE_EQ(pure_upper_bound(3, 2), 1.0);
  EXPECT_DOUBLE_EQ(pure_upper_bound(10, 1), 0.2);
}

TEST(Bounds, GuLowerBoundH) {
  EXPECT_EQ(gu_lower_bound_h_exact(1), Rational(2));
  EXPECT_EQ(gu_lower_bound_h_exact(2), Rational(8, 3));
  EXPECT_NEAR(gu_lower_bound_h(25), 8.906, 1e-3);
  EXPECT_GT(gu_lower_bound_h(25), classical::superbound_l(25));
}

TEST(Bounds, FidelityLowerBound) {
  EXPECT_NEAR(fidelity_lower_bound(trine(), 2), 0.5, 1e-14);
  EXPECT_NEAR(fidelity_lower_bound(cgu_ensemble(2), 5), 1.0, 1e-14);
  EXPECT_NEAR(fidelity_lower_bound(trine(), 10), 1.0 - 2.0 / 1024.0, 1e-14);
  for (int k = 1; k <= 8; ++k) EXPECT_LE(fidelity_lower_bound(trine(), k), gram_success(trine(), k) + 1e-12);
}

TEST(Bounds, BasicDecoding) {
  EXPECT_DOUBLE_EQ(basic_decoding_bound(4, 2), 0.5);
  EXPECT_DOUBLE_EQ(basic_decoding_bound(2, 2), 1.0);
  EXPECT_DOUBLE_EQ(basic_decoding_bound(3, 2), 2.0 / 3.0);
}

TEST(Bounds, QuantumAdvantageChain) {
  for (int k = 1; k <= 4; ++k)
    for (int n = std::max(3, k + 1); n <= 8; ++n) {
      const double f = n * gram_success(cgu_ensemble(n), k);
      EXPECT_LE(gu_lower_bound_h(k), f + 1e-9) << "n=" << n << " k=" << k;
      EXPECT_LE(f, k + 1 + 1e-9);
    }
  for (int k = 2; k <= 24; ++k)
    EXPECT_LT(classical::bit_upper_bound_g_exact(k), gu_lower_bound_h_exact(k)) << "k=" << k;
  EXPECT_EQ(classical::bit_upper_bound_g_exact(1), gu_lower_bound_h_exact(1));
}

TEST(Bounds, TrineBeatsBit) {
  for (int k = 2; k <= 12; ++k)
    EXPECT_GT(gram_success(trine(), k), classical::bit_exact_3_k(k).value) << "k=" << k;
}

TEST(Helstrom, Examples) {
  auto t = trine();
  EXPECT_NEAR(helstrom(t.density(0), t.density(0), 0.5, 0.5), 0.5, 1e-14);
  auto o = cgu_ensemble(2);
  EXPECT_NEAR(helstrom(o.density(0), o.density(1), 0.5, 0.5), 1.0, 1e-14);
  EXPECT_NEAR(helstrom(t.density(0), t.density(1), 0.5, 0.5), 0.5 + kSqrt3 / 4.0, 1e-14);
  EXPECT_THROW(helstrom(t.density(0), t.density(1), 0.7, 0.7), ValidationError);
}

TEST(Helstrom, MeasurementAttainsValue) {
  auto t = trine();
  auto m = helstrom_measurement(t.density(0), t.density(2), 0.3, 0.7);
  m.validate();
  EXPECT_NEAR(povm_success(m, {t.density(0), t.density(2)}, {0.3, 0.7}),
              helstrom(t.density(0), t.density(2), 0.3, 0.7), 1e-14);
}

TEST(MinError, TrineUniform) {
  auto r = min_error_qubit(trine().densities(), {1.0 / 3, 1.0 / 3, 1.0 / 3}, 720);
  EXPECT_NEAR(r.value, 2.0 / 3.0, 1e-4);
  EXPECT_GE(r.upper_bound, r.value - 1e-12);
  EXPECT_NEAR(r.upper_bound, 2.0 / 3.0, 1e-4);
  r.povm.validate();
}

TEST(MinError, OrthogonalPair) {
  auto o = cgu_ensemble(2);
  auto r = min_error_qubit(o.densities(), {0.5, 0.5}, 4);
  EXPECT_NEAR(r.value, 1.0, 1e-12);
}

TEST(MinError, TwoStatesMatchHelstrom) {
  auto t = trine();
  for (double q : {0.2, 0.5, 0.9}) {
    auto r = min_error_qubit({t.density(0), t.density(1)}, {q, 1 - q}, 720);
    const double h = helstrom(t.density(0), t.density(1), q, 1 - q);
    EXPECT_LE(r.value, h + 1e-12);
    EXPECT_NEAR(r.value, h, 1e-4);
    EXPECT_GE(r.upper_bound, h - 1e-9);
  }
}

TEST(MinError, RejectsBadInput) {
  auto t = trine();
  EXPECT_THROW(min_error_qubit(t.densities(), {0.5, 0.5}, 10), ValidationError);
  EXPECT_THROW(min_error_qubit(t.densities(), {0.5, 0.5, 0.5}, 10), ValidationError);
  EXPECT_THROW(min_error_qubit(tetrahedron().densities(), {0.25, 0.25, 0.25, 0.25}, 10), ValidationError);
}

TEST(DoubleTrine, AdaptiveExclusion) {
  auto r = double_trine_adaptive();
  EXPECT_NEAR(r.value, 0.5 + kSqrt3 / 4.0, 1e-12);
  HermitianMatrix sum = HermitianMatrix::Zero(2, 2);
  for (const auto& e : r.strategy.alice.effects) sum += e;
  EXPECT_LE(max_abs(sum - HermitianMatrix::Identity(2, 2)), 1e-14);
  for (std::size_t a = 0; a < 3; ++a) EXPECT_NEAR(r.priors.posteriors[a][a], 0.0, 1e-14);
}

TEST(DoubleTrine, SigmaXPriorsAndValue) {
  auto r = double_trine_ad1();
  EXPECT_NEAR(r.priors.outcome_probs[0], 0.5, 1e-14);
  EXPECT_NEAR(r.priors.outcome_probs[1], 0.5, 1e-14);
  const std::vector<double> plus{1.0 / 3, (2 + kSqrt3) / 6, (2 - kSqrt3) / 6};
  const std::vector<double> minus{1.0 / 3, (2 - kSqrt3) / 6, (2 + kSqrt3) / 6};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(r.priors.posteriors[0][i], plus[i], 1e-14);
    EXPECT_NEAR(r.priors.posteriors[1][i], minus[i], 1e-14);
  }
  // cvxpy SDP reference for the same split: 0.8975940487.
  EXPECT_NEAR(r.value, 0.8976, 1e-3);
  EXPECT_NEAR(r.value, 0.8975940487, 1e-5);
  EXPECT_LE(r.value, 0.8975940487 + 1e-8);
}

TEST(DoubleTrine, Ladder) {
  const double global = gram_success(trine(), 2);
  EXPECT_GT(global, double_trine_adaptive().value);
  EXPECT_GT(double_trine_adaptive().value, double_trine_ad1().value);
  EXPECT_GT(double_trine_ad1().value, classical::bit_exact_3_k(2).value);
}
