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

#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "mcdisc/classical.hpp"
#include "mcdisc/errors.hpp"
#include "mcdisc/polygon_programs.hpp"

using namespace mcdisc;
using namespace mcdisc::cli;

namespace {

RunConfig config(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::string field;
    std::istringstream fields(line);
    while (std::getline(fields, field, ',')) row.push_back(field);
    if (!line.empty() && line.back() == ',') row.emplace_back();
    out.push_back(row);
  }
  return out;
}

std::string note(const Table& t, const std::string& key) {
  for (const auto& [k, v] : t.notes)
    if (k == key) return v;
  return "";
}

}  // namespace

TEST(Cli, Table1Rows) {
  const Table t = run(config("table1"));
  ASSERT_EQ(t.rows.size(), 6u);
  const auto csv = parse_csv(to_csv(t));
  EXPECT_EQ(csv[0], (std::vector<std::string>{"k", "n", "f", "closed_form"}));
  EXPECT_EQ(csv[1], (std::vector<std::string>{"2", "3", "2.91421356237", "3/2+sqrt(2)"}));
  EXPECT_EQ(csv[2], (std::vector<std::string>{"3", "4", "3.73205080757", "2+sqrt(3)"}));
  EXPECT_EQ(csv[6][2], "6.25200760675");
}

TEST(Cli, CompareFgLeavesFEmptyAtOneCopy) {
  const auto csv = parse_csv(to_csv(run(config("compare-fg"))));
  EXPECT_EQ(csv[1], (std::vector<std::string>{"1", "", "2", "2", "3.36656191905"}));
  EXPECT_EQ(csv[2][2], "2.5");
}

TEST(Cli, CompareHgFlagsCrossing) {
  const Table t = run(config("compare-hg"));
  ASSERT_EQ(t.rows.size(), 30u);
  EXPECT_EQ(note(t, "first_k_h_exceeds_l"), "24");
  for (std::size_t i = 24; i < t.rows.size(); ++i) EXPECT_EQ(std::get<std::string>(t.rows[i][4]), "yes");
}

TEST(Cli, TrineCurveCrossings) {
  const Table t = run(config("trine-curves"));
  EXPECT_EQ(note(t, "first_k_classical_ge_0.999"), "10");
  EXPECT_EQ(note(t, "first_k_quantum_ge_0.999"), "5");
  EXPECT_NEAR(std::get<double>(t.rows[9][1]), 0.999348958333, 1e-12);
}

TEST(Cli, StrategiesAllPass) {
  const Table t = run(config("strategies"));
  ASSERT_EQ(t.rows.size(), strategy_names().size());
  for (const auto& row : t.rows) EXPECT_EQ(std::get<std::string>(row[4]), "pass") << std::get<std::string>(row[0]);
  RunConfig c = config("strategies");
  c.target = "hexagon-fix";
  EXPECT_EQ(run(c).rows.size(), 1u);
  c.target = "nonsense";
  EXPECT_THROW(run(c), ValidationError);
}

TEST(Cli, StrategiesToleranceOverride) {
  RunConfig c = config("strategies");
  c.target = "double-trine-ad1";
  c.tolerance = 1e-9;
  EXPECT_EQ(std::get<std::string>(run(c).rows[0][4]), "fail");
}

TEST(Cli, ClassicalBound) {
  RunConfig c = config("classical-bound");
  c.n = 3;
  c.k = 2;
  const auto csv = parse_csv(to_csv(run(c)));
  EXPECT_EQ(csv[1][4], "0.833333333333");
  c.n = 5;
  c.k = 3;
  EXPECT_EQ(std::get<double>(run(c).rows[0][4]), classical::bit_upper_bound_g(3) / 5);
  c.n = 1;
  EXPECT_THROW(run(c), ValidationError);
}

TEST(Cli, PgmRun) {
  RunConfig c = config("pgm-run");
  c.ensemble = "tetrahedron";
  c.k = 2;
  EXPECT_NEAR(std::get<double>(run(c).rows[0][3]), 0.75, 1e-12);
  c.ensemble = "square";
  EXPECT_THROW(run(c), ValidationError);
}

TEST(Cli, PolygonOptimizeMatchesLibraryCsv) {
  for (const std::string kind : {"SEP", "GLOBAL"}) {
    RunConfig c = config("polygon-optimize");
    c.m = 7;
    c.kind = kind;
    const auto k = kind == "SEP" ? lp::ProgramKind::kSep : lp::ProgramKind::kGlobal;
    EXPECT_EQ(to_csv(run(c)), lp::to_csv(lp::optimize_over_subsets(7, 3, k)));
  }
}

TEST(Cli, PolygonOptimizeLimits) {
  RunConfig c = config("polygon-optimize");
  c.m = 9;
  c.kind = "GLOBAL";
  EXPECT_THROW(run(c), ValidationError);
  c.m = 16;
  c.kind = "SEP";
  EXPECT_THROW(run(c), ValidationError);
  c.m = 6;
  c.kind = "LOCC";
  EXPECT_THROW(run(c), ValidationError);
}

TEST(Cli, PolygonFigureSeries) {
  RunConfig c = config("polygon-figure");
  c.mmax_sep = 9;
  c.mmax_global = 8;
  const Table t = run(c);
  ASSERT_EQ(t.rows.size(), 7u + 6u + 5u);
  EXPECT_EQ(std::get<std::string>(t.rows[5][0]), "SEP");
  EXPECT_EQ(std::get<double>(t.rows[5][1]), 8.0);
  EXPECT_LT(std::get<double>(t.rows[5][2]), 1.0 - 1e-6);
  EXPECT_EQ(std::get<std::string>(t.rows[5][3]), "1 3 6");
  EXPECT_GE(std::get<double>(t.rows[12][2]), 1.0 - 1e-8);  // GLOBAL, m = 8
}

TEST(Cli, UnknownCommandAndFormat) {
  EXPECT_THROW(run(config("table2")), ValidationError);
  RunConfig c = config("table1");
  c.format = "xml";
  EXPECT_THROW(run(c), ValidationError);
}

TEST(Cli, Deterministic) {
  for (const char* cmd : {"table1", "compare-fg", "trine-curves", "strategies"}) {
    EXPECT_EQ(to_csv(run(config(cmd))), to_csv(run(config(cmd)))) << cmd;
    EXPECT_EQ(to_json(run(config(cmd))), to_json(run(config(cmd)))) << cmd;
  }
}

TEST(Cli, JsonAgreesWithCsvToTwelveDigits) {
  for (const char* cmd : {"table1", "compare-fg", "compare-hg", "trine-curves", "strategies"}) {
    const Table t = run(config(cmd));
    const auto csv = parse_csv(to_csv(t));
    const auto j = nlohmann::json::parse(to_json(t));
    ASSERT_EQ(j["columns"].size(), t.columns.size());
    ASSERT_EQ(j["rows"].size() + 1, csv.size());
    for (std::size_t r = 0; r < t.rows.size(); ++r)
      for (std::size_t col = 0; col < t.columns.size(); ++col) {
        const auto& cell = j["rows"][r][col];
        const std::string& text = csv[r + 1][col];
        if (cell.is_null())
          EXPECT_EQ(text, "");
        else if (cell.is_string())
          EXPECT_EQ(text, cell.get<std::string>());
        else
          EXPECT_EQ(text, format_number(cell.get<double>())) << cmd << " row " << r;
      }
  }
}
