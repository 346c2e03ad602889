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

#include "cli.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "json.hpp"
#include "mcdisc/classical.hpp"
#include "mcdisc/errors.hpp"
#include "mcdisc/gpt.hpp"
#include "mcdisc/polygon_programs.hpp"
#include "mcdisc/qstates.hpp"

namespace mcdisc::cli {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

std::string subset_label(const std::vector<int>& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + std::to_string(s[i]);
  return out;
}

int kmax_or(const RunConfig& c, int fallback) { return c.kmax > 0 ? c.kmax : fallback; }

// n f(k) = n * gram_success(cgu(n), k) at n = k + 1.
double f_value(int k) { return (k + 1) * qstates::gram_success(qstates::cgu_ensemble(k + 1), k); }

Table table1(const RunConfig& c) {
  const int kmax = kmax_or(c, 7);
  require(kmax >= 2 && kmax <= 40, "table1: kmax must be in [2, 40]");
  Table t{"table1", {"k", "n", "f", "closed_form"}, {}, {}};
  const std::map<int, std::string> closed{{2, "3/2+sqrt(2)"}, {3, "2+sqrt(3)"}};
  for (int k = 2; k <= kmax; ++k) {
    auto it = closed.find(k);
    t.rows.push_back({double(k), double(k + 1), f_value(k), it == closed.end() ? Cell{} : Cell{it->second}});
  }
  return t;
}

Table compare_fg(const RunConfig& c) {
  const int kmax = kmax_or(c, 7);
  require(kmax >= 1 && kmax <= 40, "compare-fg: kmax must be in [1, 40]");
  Table t{"compare-fg", {"k", "f", "g", "h", "l"}, {}, {}};
  for (int k = 1; k <= kmax; ++k)
    t.rows.push_back({double(k), k >= 2 ? Cell{f_value(k)} : Cell{}, classical::bit_upper_bound_g(k),
                      qstates::gu_lower_bound_h(k), classical::superbound_l(k)});
  return t;
}

Table compare_hg(const RunConfig& c) {
  const int kmax = kmax_or(c, 30);
  require(kmax >= 1 && kmax <= 200, "compare-hg: kmax must be in [1, 200]");
  Table t{"compare-hg", {"k", "g", "h", "l", "h_exceeds_l"}, {}, {}};
  int first = 0;
  for (int k = 1; k <= kmax; ++k) {
    const double h = qstates::gu_lower_bound_h(k);
    const double l = classical::superbound_l(k);
    if (h > l && first == 0) first = k;
    t.rows.push_back({double(k), classical::bit_upper_bound_g(k), h, l, std::string(h > l ? "yes" : "no")});
  }
  t.notes.emplace_back("first_k_h_exceeds_l", first ? std::to_string(first) : "none");
  return t;
}

Table trine_curves(const RunConfig& c) {
  const int kmax = kmax_or(c, 12);
  require(kmax >= 1 && kmax <= 60, "trine-curves: kmax must be in [1, 60]");
  Table t{"trine-curves", {"k", "classical", "quantum", "closed_form", "closed_form_gap"}, {}, {}};
  const auto trine = qstates::trine();
  int first_c = 0, first_q = 0;
  for (int k = 1; k <= kmax; ++k) {
    const double pc = classical::bit_exact_3_k(k).value;
    const double pq = qstates::gram_success(trine, k);
    const double cf = qstates::trine_closed_form(k);
    if (pc >= 0.999 && !first_c) first_c = k;
    if (pq >= 0.999 && !first_q) first_q = k;
    t.rows.push_back({double(k), pc, pq, cf, cf - pq});
  }
  t.notes.emplace_back("first_k_classical_ge_0.999", first_c ? std::to_string(first_c) : "none");
  t.notes.emplace_back("first_k_quantum_ge_0.999", first_q ? std::to_string(first_q) : "none");
  return t;
}

std::pair<double, std::vector<int>> best_row(const std::vector<lp::SubsetRow>& rows) {
  double v = -1.0;
  std::vector<int> s;
  for (const auto& r : rows)
    if (r.status == lp::LpStatus::kOptimal && r.value > v + 1e-12) {
      v = r.value;
      s = r.subset;
    }
  return {v, s};
}

void check_program_size(int m, int n, lp::ProgramKind kind) {
  require(m >= 3, "polygon programs need m >= 3");
  require(n >= 1 && n <= m, "polygon programs need 1 <= n <= m");
  if (kind == lp::ProgramKind::kSep)
    require(m <= 15 && n * (m + 1) * (m + 1) <= 2000, "SEP program limited to m <= 15 and 2000 variables");
  else
    require(m <= 8 && n * m * m <= 2000, "GLOBAL program limited to m <= 8 and 2000 constraints");
}

Table polygon_figure(const RunConfig& c) {
  require(c.mmax_sep >= 3 && c.mmax_global >= 3, "polygon-figure: maxima must be >= 3");
  check_program_size(c.mmax_sep, 3, lp::ProgramKind::kSep);
  check_program_size(c.mmax_global, 3, lp::ProgramKind::kGlobal);
  Table t{"polygon-figure", {"series", "m", "value", "subset"}, {}, {}};
  for (auto [kind, mmax] : {std::pair{lp::ProgramKind::kSep, c.mmax_sep}, std::pair{lp::ProgramKind::kGlobal, c.mmax_global}})
    for (int m = 3; m <= mmax; ++m) {
      auto [v, s] = best_row(lp::optimize_over_subsets(m, 3, kind));
      t.rows.push_back({lp::to_string(kind), double(m), v, subset_label(s)});
    }
  const double s2 = std::sqrt(2.0), s3 = std::sqrt(3.0);
  const std::vector<std::pair<std::string, double>> refs{{"bit", 5.0 / 6.0},
                                                         {"double-trine-sep", 0.5 + s2 / 3.0},
                                                         {"double-trine-ad", 0.5 + s3 / 4.0},
                                                         {"double-trine-ad1", 0.8976},
                                                         {"hexagon-fix", 8.0 / 9.0}};
  for (const auto& [name, v] : refs) t.rows.push_back({"reference:" + name, Cell{}, v, Cell{}});
  return t;
}

struct StrategyCheck {
  std::string name;
  std::function<double(const RunConfig&)> value;
  double target;
  double tolerance;
};

double named_gpt(const gpt::NamedStrategy& s) {
  return gpt::evaluate_strategy(s.theory, s.theory.pick(s.state_labels), s.tree).value;
}

const std::vector<StrategyCheck>& strategy_checks() {
  static const std::vector<StrategyCheck> checks{
      {"bit-3-2", [](const RunConfig&) { return classical::bit_exact_3_k(2).value; }, 5.0 / 6.0, 1e-12},
      {"double-trine-global", [](const RunConfig&) { return qstates::pgm_success(qstates::trine(), 2); },
       0.5 + std::sqrt(2.0) / 3.0, 1e-9},
      {"double-trine-ad", [](const RunConfig&) { return qstates::double_trine_adaptive().value; },
       0.5 + std::sqrt(3.0) / 4.0, 1e-9},
      {"double-trine-ad1", [](const RunConfig& c) { return qstates::double_trine_ad1(c.resolution).value; },
       0.8976, 1e-3},
      {"hexagon-fix", [](const RunConfig&) { return named_gpt(gpt::hexagon_fix()); }, 8.0 / 9.0, 1e-12},
      {"square-nad", [](const RunConfig&) { return named_gpt(gpt::square_nad()); }, 1.0, 1e-12},
      {"hexagon-ad1", [](const RunConfig&) { return named_gpt(gpt::hexagon_ad1()); }, 1.0, 1e-12},
  };
  return checks;
}

Table strategies(const RunConfig& c) {
  require(c.resolution >= 8, "strategies: resolution must be >= 8");
  Table t{"strategies", {"name", "value", "target", "tolerance", "result"}, {}, {}};
  bool found = false;
  for (const auto& s : strategy_checks()) {
    if (c.target != "all" && c.target != s.name) continue;
    found = true;
    const double v = s.value(c);
    const double tol = c.tolerance > 0.0 ? c.tolerance : s.tolerance;
    t.rows.push_back({s.name, v, s.target, tol, std::string(std::abs(v - s.target) <= tol ? "pass" : "fail")});
  }
  require(found, "strategies: unknown target '" + c.target + "'");
  return t;
}

Table classical_bound(const RunConfig& c) {
  require(c.n >= 2 && c.k >= 1, "classical-bound needs n >= 2 and k >= 1");
  require(c.k <= 500, "classical-bound needs k <= 500");
  Table t{"classical-bound", {"n", "k", "g", "upper_bound", "optimum", "method", "oracle"}, {}, {}};
  const double g = classical::bit_upper_bound_g(c.k);
  Cell optimum, method = std::string("bound only");
  if (c.n > c.k) {
    optimum = g / c.n;
    method = std::string("g/n (tight for n > k)");
  } else if (c.n == 2) {
    optimum = 1.0;
    method = std::string("perfect (p = 0, 1)");
  } else if (c.n == 3) {
    optimum = classical::bit_exact_3_k(c.k).value;
    method = std::string("exact three-state formula");
  } else if (c.k <= 8) {
    optimum = classical::bit_optimum_n_le_k(c.n, c.k).value;
    method = std::string("partition search");
  }
  Cell oracle;
  if (c.grid > 0) {
    require(c.n <= 5 && c.k <= 5 && c.grid <= 5001, "grid oracle needs n <= 5, k <= 5, grid <= 5001");
    oracle = classical::brute_force_bit_oracle(c.n, c.k, c.grid).value;
  }
  t.rows.push_back({double(c.n), double(c.k), g, std::min(1.0, g / c.n), optimum, method, oracle});
  return t;
}

Table gu_success(const RunConfig& c) {
  require(c.n >= 2 && c.k >= 1 && c.k <= 64, "gu-success needs n >= 2 and 1 <= k <= 64");
  require(c.n <= 128, "gu-success needs n <= 128");
  const auto e = qstates::cgu_ensemble(c.n);
  Table t{"gu-success", {"n", "k", "gram_success", "pgm_success", "pure_upper_bound", "fidelity_lower_bound"}, {}, {}};
  const Cell pgm = c.k <= 7 ? Cell{qstates::pgm_success(e, c.k)} : Cell{};
  t.rows.push_back({double(c.n), double(c.k), qstates::gram_success(e, c.k), pgm,
                    qstates::pure_upper_bound(c.n, c.k), qstates::fidelity_lower_bound(e, c.k)});
  return t;
}

Table pgm_run(const RunConfig& c) {
  qstates::PureEnsemble e = c.ensemble == "trine"         ? qstates::trine()
                            : c.ensemble == "tetrahedron" ? qstates::tetrahedron()
                            : c.ensemble == "cgu"         ? qstates::cgu_ensemble(c.n)
                                                          : throw ValidationError("pgm-run: unknown ensemble '" + c.ensemble + "'");
  require(c.k >= 1 && c.k <= 7, "pgm-run needs 1 <= k <= 7");
  Table t{"pgm-run", {"ensemble", "n", "k", "pgm_success", "gram_success", "pure_upper_bound"}, {}, {}};
  const int n = static_cast<int>(e.size());
  t.rows.push_back({c.ensemble, double(n), double(c.k), qstates::pgm_success(e, c.k), qstates::gram_success(e, c.k),
                    qstates::pure_upper_bound(n, c.k)});
  return t;
}

Table polygon_optimize(const RunConfig& c) {
  require(c.kind == "SEP" || c.kind == "GLOBAL", "polygon-optimize: kind must be SEP or GLOBAL");
  const auto kind = c.kind == "SEP" ? lp::ProgramKind::kSep : lp::ProgramKind::kGlobal;
  check_program_size(c.m, c.n, kind);
  Table t{"polygon-optimize", {"m", "subset", "kind", "value", "status"}, {}, {}};
  const auto rows = lp::optimize_over_subsets(c.m, c.n, kind);
  for (const auto& r : rows)
    t.rows.push_back({double(r.m), subset_label(r.subset), lp::to_string(r.kind), r.value, lp::to_string(r.status)});
  auto [v, s] = best_row(rows);
  t.notes.emplace_back("best_value", format_number(v));
  t.notes.emplace_back("best_subset", subset_label(s));
  return t;
}

std::string csv_field(const Cell& cell) {
  if (std::holds_alternative<double>(cell)) return format_number(std::get<double>(cell));
  if (std::holds_alternative<std::string>(cell)) {
    const std::string& s = std::get<std::string>(cell);
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + "\"";
  }
  return "";
}

}  // namespace

std::string format_number(double x) {
  std::ostringstream out;
  out << std::setprecision(12) << x;
  return out.str();
}

std::string to_csv(const Table& t) {
  std::ostringstream out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << '\n';
  }
  return out.str();
}

std::string to_json(const Table& t) {
  nlohmann::ordered_json j;
  j["command"] = t.command;
  j["columns"] = t.columns;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (std::holds_alternative<double>(cell))
        r.push_back(std::stod(format_number(std::get<double>(cell))));  // same digits as the CSV
      else if (std::holds_alternative<std::string>(cell))
        r.push_back(std::get<std::string>(cell));
      else
        r.push_back(nullptr);
    }
    j["rows"].push_back(r);
  }
  j["notes"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.notes) j["notes"][k] = v;
  return j.dump(2) + "\n";
}

std::string render(const Table& t, const std::string& format) {
  if (format == "csv") return to_csv(t);
  if (format == "json") return to_json(t);
  throw ValidationError("format must be csv or json");
}

std::vector<std::string> strategy_names() {
  std::vector<std::string> out;
  for (const auto& s : strategy_checks()) out.push_back(s.name);
  return out;
}

Table run(const RunConfig& c) {
  require(c.format == "csv" || c.format == "json", "format must be csv or json");
  static const std::map<std::string, std::function<Table(const RunConfig&)>> commands{
      {"table1", table1},
      {"compare-fg", compare_fg},
      {"compare-hg", compare_hg},
      {"trine-curves", trine_curves},
      {"polygon-figure", polygon_figure},
      {"strategies", strategies},
      {"classical-bound", classical_bound},
      {"gu-success", gu_success},
      {"pgm-run", pgm_run},
      {"polygon-optimize", polygon_optimize},
  };
  auto it = commands.find(c.command);
  require(it != commands.end(), "unknown command '" + c.command + "'");
  return it->second(c);
}

}  // namespace mcdisc::cli
