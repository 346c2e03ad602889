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

// Multi-copy discrimination with a classical bit.
//
// A bit state is diag(p, 1 - p), p being the weight on outcome 0. Measuring k
// copies in the computational basis yields a string whose probability under
// state p depends only on its number of zeros j: p^j (1 - p)^(k - j). Every
// optimal strategy post-processes that string, so the success probability
// for an ensemble {p_i} is
//
//   (1/n) * sum_j C(k, j) * max_i p_i^j (1 - p_i)^(k - j).

#ifndef MCDISC_CLASSICAL_HPP
#define MCDISC_CLASSICAL_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mcdisc/errors.hpp"

namespace mcdisc::classical {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// n bit states, each given by its weight on outcome 0.
class BitEnsemble {
 public:
  BitEnsemble() = default;
  explicit BitEnsemble(std::vector<double> probs);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const std::vector<double>& probs() const noexcept { return probs_; }

 private:
  std::vector<double> probs_;
};

/// Post-processing from measured strings to a guessed state index (0-based
/// position in the ensemble).
struct BitDecoder {
  enum class Domain {
    kZeroCount,  ///< labels[j] is the guess for any string with j zeros
    kOutcomeString  ///< labels[s] is the guess for string s; bit t of s is copy t, set = outcome 1
  };
  Domain domain = Domain::kZeroCount;
  std::vector<std::size_t> labels;

  std::size_t decode(std::uint32_t outcome_string, int k) const;
};

struct BitStrategyResult {
  double value = 0.0;
  BitEnsemble ensemble;
  BitDecoder decoder;
};

/// Classical bound numerator g(k) = 2 + sum_{j=1}^{k-1} C(k,j) (j/k)^j (1-j/k)^(k-j).
/// P_b(n, k) <= g(k) / n, with equality whenever n > k.
double bit_upper_bound_g(int k);

/// g(k) as an exact rational.
Rational bit_upper_bound_g_exact(int k);

/// Exact optimum for three states: 1 - 1 / (3 * 2^(k-1)), reached by the
/// states (0, 1/2, 1) and the decoder all-ones -> 0, all-zeros -> 2,
/// mixed -> 1.
BitStrategyResult bit_exact_3_k(int k);

struct OptimumOptions {
  /// Maximum number of term partitions to evaluate before giving up.
  std::size_t partition_budget = 1'000'000;
  /// Enumerate every set partition of the k+1 terms instead of pinning the
  /// all-zeros and all-ones terms to the states p = 1 and p = 0.
  bool full_enumeration = false;
};

/// Thrown by bit_optimum_n_le_k when the partition budget runs out.
class PartialResultError : public BudgetError {
 public:
  PartialResultError(const char* what, BitStrategyResult best)
      : BudgetError(what), best_(std::move(best)) {}
  const BitStrategyResult& best_so_far() const noexcept { return best_; }

 private:
  BitStrategyResult best_;
};

/// Optimal bit strategy for 3 <= n <= k <= 8.
///
/// Each of the k+1 binomial terms is won by exactly one state, so the
/// optimum is a maximum over assignments of terms to states of the sum of
/// per-state one-dimensional maxima.
BitStrategyResult bit_optimum_n_le_k(int n, int k, const OptimumOptions& options = {});

/// l(k) = 2 + 0.771 * sqrt(pi * k), an analytic upper bound on g(k).
double superbound_l(int k);

/// Grid-exhaustive reference optimum: the best p-vector on
/// {0, 1/grid, ..., 1}^n (sorted ascending) with maximum-likelihood decoding
/// of every k-bit outcome string, ties going to the lowest state index.
/// Requires n <= 5, k <= 5, grid <= 5001.
///
/// kLiteral visits every grid vector; kBlocks reaches the same maximum by
/// maximizing each block of terms won by one state on the grid separately.
/// kAuto goes literal while that is cheap (C(grid+n, n) <= 5e6).
enum class OracleSweep { kAuto, kLiteral, kBlocks };
BitStrategyResult brute_force_bit_oracle(int n, int k, int grid,
                                         OracleSweep sweep = OracleSweep::kAuto);

/// Average success probability of `ensemble` on k copies with `decoder`.
double bit_success(const BitEnsemble& ensemble, int k, const BitDecoder& decoder);

/// Maximum-likelihood decoder over full outcome strings (ties -> lowest index).
BitDecoder ml_string_decoder(const BitEnsemble& ensemble, int k);

/// Exact binomial coefficient.
BigInt binomial(unsigned n, unsigned k);

}  // namespace mcdisc::classical

#endif  // MCDISC_CLASSICAL_HPP
