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

// Table-producing commands behind the mcdisc executable.

#ifndef MCDISC_TOOLS_CLI_HPP
#define MCDISC_TOOLS_CLI_HPP

#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace mcdisc::cli {

/// Empty, numeric or text.
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Summary facts (e.g. threshold crossings); JSON only.
  std::vector<std::pair<std::string, std::string>> notes;
};

struct RunConfig {
  std::string command;
  int n = 3;
  int k = 2;
  int m = 6;
  int kmax = 0;  ///< 0 selects the command's default
  int resolution = 720;
  int grid = 0;  ///< 0 skips the grid oracle
  int mmax_sep = 15;
  int mmax_global = 8;
  std::string kind = "SEP";
  std::string target = "all";
  std::string ensemble = "trine";
  std::string format = "csv";
  std::string out;
  double tolerance = 0.0;  ///< 0 keeps each check's own tolerance
};

/// 12 significant digits.
std::string format_number(double x);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);
std::string render(const Table& t, const std::string& format);

/// Throws ValidationError for unknown commands or out-of-range parameters
/// and BudgetError when a search gives up.
Table run(const RunConfig& config);

/// Names accepted by the strategies command (besides "all").
std::vector<std::string> strategy_names();

}  // namespace mcdisc::cli

#endif  // MCDISC_TOOLS_CLI_HPP
