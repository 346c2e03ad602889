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

// mcdisc: regenerate the tables and figure data as CSV or JSON.
//
// Exit codes: 0 ok, 2 bad arguments, 3 search budget exhausted, 1 other.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "cli.hpp"
#include "mcdisc/errors.hpp"

int main(int argc, char** argv) {
  using mcdisc::cli::RunConfig;
  RunConfig c;
  CLI::App app{"Multi-copy state discrimination tables"};
  app.require_subcommand(1);
  app.add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", c.out, "write to this file instead of stdout");

  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto kmax = [&](CLI::App* s) { s->add_option("--kmax", c.kmax, "largest k"); };

  kmax(sub("table1", "n f(k) for n = k + 1"));
  kmax(sub("compare-fg", "f(k), g(k), h(k), l(k)"));
  kmax(sub("compare-hg", "g(k), h(k), l(k) and where h overtakes l"));
  kmax(sub("trine-curves", "classical bit vs trine success against k"));
  auto* fig = sub("polygon-figure", "best SEP / GLOBAL value over 3-subsets against m");
  fig->add_option("--mmax-sep", c.mmax_sep);
  fig->add_option("--mmax-global", c.mmax_global);
  auto* strat = sub("strategies", "named strategy values against their targets");
  strat->add_option("--target", c.target, "strategy name or all");
  strat->add_option("--resolution", c.resolution, "angle grid for the 1-bit adaptive search");
  strat->add_option("--tolerance", c.tolerance, "override every check's tolerance");
  auto* cb = sub("classical-bound", "bit bound and optimum for (n, k)");
  cb->add_option("--n", c.n)->required();
  cb->add_option("--k", c.k)->required();
  cb->add_option("--grid", c.grid, "grid-exhaustive oracle resolution (0 = off)");
  auto* gu = sub("gu-success", "cyclic ensemble success for (n, k)");
  gu->add_option("--n", c.n)->required();
  gu->add_option("--k", c.k)->required();
  auto* pr = sub("pgm-run", "pretty good measurement on a named ensemble");
  pr->add_option("--ensemble", c.ensemble)->check(CLI::IsMember({"trine", "tetrahedron", "cgu"}));
  pr->add_option("--k", c.k)->required();
  pr->add_option("--n", c.n, "size of the cyclic ensemble");
  auto* po = sub("polygon-optimize", "per-orbit SEP or GLOBAL values");
  po->add_option("--m", c.m)->required();
  po->add_option("--kind", c.kind)->check(CLI::IsMember({"SEP", "GLOBAL"}));
  po->add_option("--n", c.n, "subset size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    const std::string text = mcdisc::cli::render(mcdisc::cli::run(c), c.format);
    if (c.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(c.out, std::ios::binary);
      if (!(f << text)) {
        std::cerr << "cannot write " << c.out << "\n";
        return 1;
      }
    }
  } catch (const mcdisc::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const mcdisc::BudgetError& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
