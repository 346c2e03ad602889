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

#include "mcdisc/classical.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

namespace mcdisc::classical {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

// x^j with 0^0 = 1.
double ipow(double x, int j) {
  double r = 1.0;
  for (int t = 0; t < j; ++t) r *= x;
  return r;
}

std::vector<double> binomial_row(int k) {
  std::vector<double> row(static_cast<std::size_t>(k) + 1);
  for (int j = 0; j <= k; ++j)
    row[j] = binomial(static_cast<unsigned>(k), static_cast<unsigned>(j)).convert_to<double>();
  return row;
}

// Sum over the terms in `mask` of C(k,j) x^j (1-x)^(k-j).
double block_objective(unsigned mask, double x, int k, const std::vector<double>& binom) {
  double s = 0.0;
  for (int j = 0; j <= k; ++j)
    if (mask & (1u << j)) s += binom[j] * ipow(x, j) * ipow(1.0 - x, k - j);
  return s;
}

struct BlockMax {
  double value = -1.0;
  double argmax = 0.0;
};

// Maximum of a block objective over [0, 1]. A single term peaks at j/k. For
// several terms the objective can be bimodal, so a coarse scan picks the
// basin before golden-section refinement.
BlockMax maximize_block(unsigned mask, int k, const std::vector<double>& binom) {
  if (std::popcount(mask) == 1) {
    const int j = std::countr_zero(mask);
    const double x = static_cast<double>(j) / k;
    return {block_objective(mask, x, k, binom), x};
  }
  constexpr int kScan = 2000;
  int best_i = 0;
  double best = -1.0;
  for (int i = 0; i <= kScan; ++i) {
    const double v = block_objective(mask, static_cast<double>(i) / kScan, k, binom);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  double lo = std::max(0, best_i - 1) / static_cast<double>(kScan);
  double hi = std::min(kScan, best_i + 1) / static_cast<double>(kScan);
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = hi - inv_phi * (hi - lo);
  double b = lo + inv_phi * (hi - lo);
  double fa = block_objective(mask, a, k, binom);
  double fb = block_objective(mask, b, k, binom);
  while (hi - lo > 1e-12) {
    if (fa < fb) {
      lo = a;
      a = b;
      fa = fb;
      b = lo + inv_phi * (hi - lo);
      fb = block_objective(mask, b, k, binom);
    } else {
      hi = b;
      b = a;
      fb = fa;
      a = hi - inv_phi * (hi - lo);
      fa = block_objective(mask, a, k, binom);
    }
  }
  BlockMax out{best, static_cast<double>(best_i) / kScan};
  for (double x : {lo, hi, 0.5 * (lo + hi)}) {
    const double v = block_objective(mask, x, k, binom);
    if (v > out.value) out = {v, x};
  }
  return out;
}

// Calls visit(blocks) for every set partition of `elements` into at most
// max_blocks blocks, in restricted-growth-string order. Stops early when
// visit returns false.
void for_each_partition(const std::vector<int>& elements, int max_blocks,
                        const std::function<bool(const std::vector<unsigned>&)>& visit) {
  const int size = static_cast<int>(elements.size());
  if (size == 0) {
    visit({});
    return;
  }
  std::vector<int> rgs(size, 0);
  std::vector<unsigned> blocks;
  bool go = true;
  std::function<void(int, int)> rec = [&](int pos, int used) {
    if (!go) return;
    if (pos == size) {
      blocks.assign(used, 0u);
      for (int t = 0; t < size; ++t) blocks[rgs[t]] |= 1u << elements[t];
      go = visit(blocks);
      return;
    }
    for (int b = 0; b <= std::min(used, max_blocks - 1); ++b) {
      rgs[pos] = b;
      rec(pos + 1, std::max(used, b + 1));
      if (!go) return;
    }
  };
  rec(0, 0);
}

// Builds a result from blocks (term masks) and their maximizers; leftover
// states are parked at p = 1/2 and never guessed.
BitStrategyResult assemble(int n, int k, const std::vector<unsigned>& blocks,
                           const std::vector<double>& argmax, double total) {
  std::vector<std::pair<double, unsigned>> states;
  for (std::size_t b = 0; b < blocks.size(); ++b) states.emplace_back(argmax[b], blocks[b]);
  while (static_cast<int>(states.size()) < n) states.emplace_back(0.5, 0u);
  std::stable_sort(states.begin(), states.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  BitStrategyResult r;
  std::vector<double> probs;
  r.decoder.domain = BitDecoder::Domain::kZeroCount;
  r.decoder.labels.assign(static_cast<std::size_t>(k) + 1, 0);
  for (std::size_t i = 0; i < states.size(); ++i) {
    probs.push_back(states[i].first);
    for (int j = 0; j <= k; ++j)
      if (states[i].second & (1u << j)) r.decoder.labels[j] = i;
  }
  r.ensemble = BitEnsemble(std::move(probs));
  r.value = total / n;
  return r;
}

}  // namespace

BitEnsemble::BitEnsemble(std::vector<double> probs) : probs_(std::move(probs)) {
  require(!probs_.empty(), "bit ensemble needs at least one state");
  for (double p : probs_)
    require(p >= 0.0 && p <= 1.0, "bit state weight outside [0, 1]: " + std::to_string(p));
}

std::size_t BitDecoder::decode(std::uint32_t outcome_string, int k) const {
  if (domain == Domain::kZeroCount) {
    const int ones = std::popcount(outcome_string & ((1u << k) - 1u));
    return labels.at(static_cast<std::size_t>(k - ones));
  }
  return labels.at(outcome_string);
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

Rational bit_upper_bound_g_exact(int k) {
  require(k >= 1, "g(k) needs k >= 1");
  const auto uk = static_cast<unsigned>(k);
  BigInt kk = boost::multiprecision::pow(BigInt(uk), uk);
  BigInt num = 0;
  for (unsigned j = 1; j < uk; ++j)
    num += binomial(uk, j) * boost::multiprecision::pow(BigInt(j), j) *
           boost::multiprecision::pow(BigInt(uk - j), uk - j);
  return Rational(2) + Rational(num, kk);
}

double bit_upper_bound_g(int k) { return bit_upper_bound_g_exact(k).convert_to<double>(); }

BitStrategyResult bit_exact_3_k(int k) {
  require(k >= 1, "bit_exact_3_k needs k >= 1");
  BitStrategyResult r;
  r.ensemble = BitEnsemble({0.0, 0.5, 1.0});
  r.decoder.domain = BitDecoder::Domain::kZeroCount;
  r.decoder.labels.assign(static_cast<std::size_t>(k) + 1, 1);
  r.decoder.labels.front() = 0;  // all ones
  r.decoder.labels.back() = 2;   // all zeros
  r.value = 1.0 - 1.0 / (3.0 * std::ldexp(1.0, k - 1));
  return r;
}

double superbound_l(int k) {
  require(k >= 1, "l(k) needs k >= 1");
  return 2.0 + 0.771 * std::sqrt(std::numbers::pi * k);
}

double bit_success(const BitEnsemble& ensemble, int k, const BitDecoder& decoder) {
  require(k >= 1 && k <= 30, "bit_success needs 1 <= k <= 30");
  const std::size_t expected = decoder.domain == BitDecoder::Domain::kZeroCount
                                   ? static_cast<std::size_t>(k) + 1
                                   : std::size_t{1} << k;
  require(decoder.labels.size() == expected, "decoder is not total on its domain");
  for (std::size_t l : decoder.labels) require(l < ensemble.size(), "decoder label out of range");

  double total = 0.0;
  if (decoder.domain == BitDecoder::Domain::kZeroCount) {
    const auto binom = binomial_row(k);
    for (int j = 0; j <= k; ++j) {
      const double p = ensemble[decoder.labels[j]];
      total += binom[j] * ipow(p, j) * ipow(1.0 - p, k - j);
    }
  } else {
    for (std::uint32_t s = 0; s < (1u << k); ++s) {
      const int zeros = k - std::popcount(s);
      const double p = ensemble[decoder.labels[s]];
      total += ipow(p, zeros) * ipow(1.0 - p, k - zeros);
    }
  }
  return total / static_cast<double>(ensemble.size());
}

BitDecoder ml_string_decoder(const BitEnsemble& ensemble, int k) {
  require(k >= 1 && k <= 20, "ml_string_decoder needs 1 <= k <= 20");
  BitDecoder d;
  d.domain = BitDecoder::Domain::kOutcomeString;
  d.labels.resize(std::size_t{1} << k);
  for (std::uint32_t s = 0; s < (1u << k); ++s) {
    const int zeros = k - std::popcount(s);
    std::size_t best = 0;
    double best_l = -1.0;
    for (std::size_t i = 0; i < ensemble.size(); ++i) {
      const double l = ipow(ensemble[i], zeros) * ipow(1.0 - ensemble[i], k - zeros);
      if (l > best_l) {
        best_l = l;
        best = i;
      }
    }
    d.labels[s] = best;
  }
  return d;
}

BitStrategyResult bit_optimum_n_le_k(int n, int k, const OptimumOptions& options) {
  require(n >= 3 && n <= k && k <= 8, "bit_optimum_n_le_k needs 3 <= n <= k <= 8");
  const auto binom = binomial_row(k);
  std::vector<BlockMax> memo(std::size_t{1} << (k + 1));
  auto block = [&](unsigned mask) -> const BlockMax& {
    BlockMax& m = memo[mask];
    if (m.value < 0.0) m = maximize_block(mask, k, binom);
    return m;
  };

  std::vector<int> elements;
  int max_blocks = n;
  std::vector<unsigned> pinned;
  if (options.full_enumeration) {
    for (int j = 0; j <= k; ++j) elements.push_back(j);
  } else {
    for (int j = 1; j < k; ++j) elements.push_back(j);
    max_blocks = n - 2;
    pinned = {1u, 1u << k};  // all-ones string -> p = 0, all-zeros -> p = 1
  }

  double best_total = -1.0;
  std::vector<unsigned> best_blocks;
  std::size_t evaluated = 0;
  bool exhausted = false;
  for_each_partition(elements, max_blocks, [&](const std::vector<unsigned>& blocks) {
    if (evaluated >= options.partition_budget) {
      exhausted = true;
      return false;
    }
    ++evaluated;
    double total = 0.0;
    for (unsigned b : pinned) total += block(b).value;
    for (unsigned b : blocks) total += block(b).value;
    if (total > best_total) {
      best_total = total;
      best_blocks = blocks;
    }
    return true;
  });

  auto build = [&] {
    std::vector<unsigned> all = pinned;
    all.insert(all.end(), best_blocks.begin(), best_blocks.end());
    std::vector<double> argmax;
    for (unsigned b : all) argmax.push_back(block(b).argmax);
    return assemble(n, k, all, argmax, best_total);
  };
  if (exhausted) {
    if (best_total < 0.0) throw PartialResultError("partition budget is zero", BitStrategyResult{});
    throw PartialResultError("partition budget exceeded", build());
  }
  return build();
}

BitStrategyResult brute_force_bit_oracle(int n, int k, int grid, OracleSweep sweep) {
  require(n >= 1 && n <= 5, "oracle needs 1 <= n <= 5");
  require(k >= 1 && k <= 5, "oracle needs 1 <= k <= 5");
  require(grid >= 1 && grid <= 5001, "oracle needs 1 <= grid <= 5001");

  const auto binom = binomial_row(k);
  // weight[g][j] = C(k,j) x^j (1-x)^(k-j) at x = g / grid.
  std::vector<std::vector<double>> weight(static_cast<std::size_t>(grid) + 1,
                                          std::vector<double>(k + 1));
  for (int g = 0; g <= grid; ++g) {
    const double x = static_cast<double>(g) / grid;
    for (int j = 0; j <= k; ++j) weight[g][j] = binom[j] * ipow(x, j) * ipow(1.0 - x, k - j);
  }

  std::vector<int> best_vec;
  const double combos =
      binomial(static_cast<unsigned>(grid + n), static_cast<unsigned>(n)).convert_to<double>();
  if (sweep == OracleSweep::kLiteral || (sweep == OracleSweep::kAuto && combos <= 5e6)) {
    // Literal sweep over nondecreasing grid vectors.
    std::vector<int> v(n, 0);
    double best = -1.0;
    std::function<void(int, int)> rec = [&](int pos, int from) {
      if (pos == n) {
        double total = 0.0;
        for (int j = 0; j <= k; ++j) {
          double m = 0.0;
          for (int i = 0; i < n; ++i) m = std::max(m, weight[v[i]][j]);
          total += m;
        }
        if (total > best) {
          best = total;
          best_vec = v;
        }
        return;
      }
      for (int g = from; g <= grid; ++g) {
        v[pos] = g;
        rec(pos + 1, g);
      }
    };
    rec(0, 0);
  } else {
    // Same maximum, reorganized: every grid vector induces a partition of the
    // k+1 terms by winning state, so maximize each block on the grid
    // independently and take the best partition.
    std::vector<int> block_arg(std::size_t{1} << (k + 1), -1);
    std::vector<double> block_val(block_arg.size(), -1.0);
    auto block = [&](unsigned mask) {
      if (block_arg[mask] < 0) {
        for (int g = 0; g <= grid; ++g) {
          double s = 0.0;
          for (int j = 0; j <= k; ++j)
            if (mask & (1u << j)) s += weight[g][j];
          if (s > block_val[mask]) {
            block_val[mask] = s;
            block_arg[mask] = g;
          }
        }
      }
      return block_val[mask];
    };
    std::vector<int> elements;
    for (int j = 0; j <= k; ++j) elements.push_back(j);
    double best = -1.0;
    for_each_partition(elements, n, [&](const std::vector<unsigned>& blocks) {
      double total = 0.0;
      for (unsigned b : blocks) total += block(b);
      if (total > best) {
        best = total;
        best_vec.clear();
        for (unsigned b : blocks) best_vec.push_back(block_arg[b]);
      }
      return true;
    });
    while (static_cast<int>(best_vec.size()) < n) best_vec.push_back(0);
    std::sort(best_vec.begin(), best_vec.end());
  }

  std::vector<double> probs;
  for (int g : best_vec) probs.push_back(static_cast<double>(g) / grid);
  BitStrategyResult r;
  r.ensemble = BitEnsemble(std::move(probs));
  r.decoder = ml_string_decoder(r.ensemble, k);
  r.value = bit_success(r.ensemble, k, r.decoder);
  return r;
}

}  // namespace mcdisc::classical
