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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "mcdisc/classical.hpp"
#include "mcdisc/gpt.hpp"
#include "mcdisc/numerics.hpp"
#include "mcdisc/polygon_programs.hpp"
#include "mcdisc/qstates.hpp"

using namespace mcdisc;

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

/// Failure messages accumulate here; empty means the criterion holds.
struct Check {
  std::ostringstream detail;
  bool ok = true;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << (detail.tellp() > 0 ? "; " : "") << what;
    }
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream s;
    s << std::setprecision(12) << what << ": got " << got << ", want " << want << " +- " << tol;
    expect(std::abs(got - want) <= tol, s.str());
  }
};

std::string num(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

double max_abs(const HermitianMatrix& a) { return a.cwiseAbs().maxCoeff(); }

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

double f_value(int k) { return (k + 1) * qstates::gram_success(qstates::cgu_ensemble(k + 1), k); }

void c1(Check& c) {
  const double printed[] = {2.91, 3.73, 4.46, 5.12, 5.71, 6.25};
  for (int k = 2; k <= 7; ++k) c.near(f_value(k), printed[k - 2], 5e-3, "n f(" + std::to_string(k) + ")");
  c.near(f_value(2), 1.5 + kSqrt2, 1e-9, "n f(2) radical");
  c.near(f_value(3), 2.0 + kSqrt3, 1e-9, "n f(3) radical");
}

void c2(Check& c) {
  const auto b3 = classical::bit_exact_3_k(2);
  c.expect(b3.value == 5.0 / 6.0, "bit_exact_3_k(2) = " + num(b3.value) + " is not 5/6");
  const double want44 = 0.25 * (3.0 * kSqrt3 - 133.0 / 64.0);
  const auto b44 = classical::bit_optimum_n_le_k(4, 4);
  c.near(b44.value, want44, 1e-10, "bit_optimum_n_le_k(4,4)");
  c.near(classical::brute_force_bit_oracle(3, 2, 1000).value, b3.value, 2e-3, "grid oracle (3,2)");
  c.near(classical::brute_force_bit_oracle(4, 4, 1000).value, b44.value, 2e-3, "grid oracle (4,4)");
}

void c3(Check& c) {
  const auto trine = qstates::trine();
  const double global = 0.5 + kSqrt2 / 3.0;
  c.near(qstates::pgm_success(trine, 2), global, 1e-9, "PGM double trine");
  c.near(qstates::gram_success(trine, 2), global, 1e-9, "Gram double trine");
  c.near(qstates::double_trine_adaptive().value, 0.5 + kSqrt3 / 4.0, 1e-9, "AD double trine");
  const double ad1 = qstates::double_trine_ad1(720).value;
  c.near(ad1, 0.8976, 1e-3, "AD1 double trine");
  c.detail << (c.detail.tellp() > 0 ? "; " : "") << "AD1 = " << num(ad1);
}

void c4(Check& c) {
  const double v = qstates::pgm_success(qstates::tetrahedron(), 2);
  c.near(v, 0.75, 1e-9, "tetrahedron PGM k=2");
  c.near(v, qstates::pure_upper_bound(4, 2), 1e-9, "pure_upper_bound(4,2)");
}

double best(const std::vector<lp::SubsetRow>& rows) {
  double v = -1.0;
  for (const auto& r : rows)
    if (r.status == lp::LpStatus::kOptimal) v = std::max(v, r.value);
  return v;
}

void c5(Check& c) {
  for (int m : {4, 5, 6, 7}) {
    const double v = best(lp::optimize_over_subsets(m, 3, lp::ProgramKind::kSep));
    c.expect(v >= 1.0 - 1e-6, "SEP m=" + std::to_string(m) + " best " + num(v));
  }
  const double sep8 = best(lp::optimize_over_subsets(8, 3, lp::ProgramKind::kSep));
  c.expect(sep8 < 1.0 - 1e-6, "SEP m=8 best " + num(sep8) + " is perfect");
  const double global8 = best(lp::optimize_over_subsets(8, 3, lp::ProgramKind::kGlobal));
  c.expect(global8 >= 1.0 - 1e-8, "GLOBAL m=8 best " + num(global8));
  c.detail << (c.detail.tellp() > 0 ? "; " : "") << "SEP(8) = " << num(sep8) << ", GLOBAL(8) = " << num(global8);
}

void c6(Check& c) {
  for (const auto& s : {gpt::square_nad(), gpt::hexagon_ad1(), gpt::hexagon_fix()}) {
    const double v = gpt::evaluate_strategy(s.theory, s.theory.pick(s.state_labels), s.tree).value;
    c.near(v, s.target, 1e-12, s.name);
  }
}

void c7(Check& c) {
  const std::pair<int, std::size_t> want[] = {{6, 2}, {4, 4}, {5, 0}, {7, 0}, {8, 0}, {9, 0}, {10, 0}, {11, 0}};
  for (auto [m, count] : want) {
    const auto got = gpt::pairwise_distinguishable_triples(gpt::polygon(m)).size();
    c.expect(got == count, "m=" + std::to_string(m) + ": " + std::to_string(got) + " triples, want " +
                               std::to_string(count));
  }
}

void c8(Check& c) {
  for (int k = 1; k <= 24; ++k) {
    const auto g = classical::bit_upper_bound_g_exact(k);
    const auto h = qstates::gu_lower_bound_h_exact(k);
    c.expect(g < h, "g(" + std::to_string(k) + ") = " + g.str() + " is not < h(" + std::to_string(k) + ") = " + h.str());
  }
  for (int k = 25; k <= 60; ++k) {
    const double g = classical::bit_upper_bound_g(k), h = qstates::gu_lower_bound_h(k), l = classical::superbound_l(k);
    c.expect(l < h, "l(" + std::to_string(k) + ") >= h");
    c.expect(g < l, "g(" + std::to_string(k) + ") >= l");
  }
  for (int n = 3; n <= 6; ++n)
    for (int k = 1; k <= 4; ++k) {
      const auto e = qstates::cgu_ensemble(n);
      const std::string at = " n=" + std::to_string(n) + " k=" + std::to_string(k);
      c.near(qstates::pgm_success(e, k), qstates::gram_success(e, k), 1e-9, "PGM vs Gram" + at);
      const Eigen::VectorXd a = eigh(qstates::average_state(e, k)).eigenvalues;
      const Eigen::VectorXd g = eigh(qstates::gram(e, k)).eigenvalues;
      const Eigen::Index r = std::min(a.size(), g.size());
      const double gap = std::max({(a.head(r) - g.head(r)).cwiseAbs().maxCoeff(),
                                   a.size() > r ? a.tail(a.size() - r).cwiseAbs().maxCoeff() : 0.0,
                                   g.size() > r ? g.tail(g.size() - r).cwiseAbs().maxCoeff() : 0.0});
      c.expect(gap <= 1e-9, "spectra differ by " + num(gap) + at);
    }
}

void c9(Check& c) {
  const auto r2 = from_real({{3, 0, 0, 1}, {0, 1, 1, 0}, {0, 1, 1, 0}, {1, 0, 0, 3}}, 1.0 / 8.0);
  const auto r3 = from_real({{5, 0, 0, 1, 0, 1, 1, 0},
                             {0, 1, 1, 0, 1, 0, 0, 1},
                             {0, 1, 1, 0, 1, 0, 0, 1},
                             {1, 0, 0, 1, 0, 1, 1, 0},
                             {0, 1, 1, 0, 1, 0, 0, 1},
                             {1, 0, 0, 1, 0, 1, 1, 0},
                             {1, 0, 0, 1, 0, 1, 1, 0},
                             {0, 1, 1, 0, 1, 0, 0, 5}},
                            1.0 / 16.0);
  for (int n = 3; n <= 7; ++n)
    c.expect(max_abs(qstates::average_state(qstates::cgu_ensemble(n), 2) - r2) <= 1e-12,
             "rho^(2) mismatch n=" + std::to_string(n));
  for (int n = 4; n <= 8; ++n)
    c.expect(max_abs(qstates::average_state(qstates::cgu_ensemble(n), 3) - r3) <= 1e-12,
             "rho^(3) mismatch n=" + std::to_string(n));
  for (int n = 5; n <= 8; ++n) {
    const auto a = qstates::average_state(qstates::cgu_ensemble(n), 4);
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      for (Eigen::Index j = 0; j < a.cols(); ++j)
        if ((std::popcount(static_cast<unsigned>(i)) + std::popcount(static_cast<unsigned>(j))) % 2)
          worst = std::max(worst, std::abs(a(i, j)));
    c.expect(worst <= 1e-12, "odd-weight entry " + num(worst) + " at k=4 n=" + std::to_string(n));
  }
}

void c10(Check& c) {
  const auto trine = qstates::trine();
  for (int k : {1, 3, 5, 7})
    c.near(qstates::trine_closed_form(k), qstates::gram_success(trine, k), 1e-9, "odd k=" + std::to_string(k));
  const double cf = qstates::trine_closed_form(2), g = qstates::gram_success(trine, 2);
  c.expect(std::abs(cf - g) > 5e-3, "closed form agrees with Gram at k=2");
  c.detail << (c.detail.tellp() > 0 ? "; " : "") << "discrepancy at k=2: closed form " << num(cf) << " vs Gram "
           << num(g) << " (diff " << num(cf - g) << ")";
}

}  // namespace

int main() {
  constexpr double kNoLimit = 1e300;
  struct Criterion {
    const char* name;
    std::function<void(Check&)> run;
    double seconds;  // wall-clock limit
  };
  const Criterion criteria[] = {
      {"table 1 regression", c1, 10},
      {"classical exacts", c2, 60},
      {"double-trine ladder", c3, 120},
      {"tetrahedron PGM", c4, kNoLimit},
      {"polygon LP sweep", c5, 300},
      {"named polygon strategies", c6, kNoLimit},
      {"distinguishability census", c7, 30},
      {"bound chain and spectral suites", c8, kNoLimit},
      {"average-state structure", c9, kNoLimit},
      {"trine closed-form discrepancy", c10, kNoLimit},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, fn, limit] : criteria) {
    ++index;
    Check c;
    const auto start = std::chrono::steady_clock::now();
    try {
      fn(c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.expect(secs <= limit, "runtime " + num(secs) + " s exceeds " + num(limit) + " s");
    failed += !c.ok;
    std::cout << (c.ok ? "PASS" : "FAIL") << " " << index << " " << name << " (" << std::fixed
              << std::setprecision(2) << secs << " s)" << std::defaultfloat;
    const std::string d = c.detail.str();
    if (!d.empty()) std::cout << " -- " << d;
    std::cout << std::endl;
  }
  std::cout << (10 - failed) << "/10 criteria passed" << std::endl;
  return failed ? 1 : 0;
}
