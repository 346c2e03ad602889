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

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "mcdisc/errors.hpp"

namespace mcdisc::lp {
namespace {

using Eigen::Index;

// Column j of the standard-form problem contributes coeff * y_j to
// original variable `var`.
struct Term {
  Index var;
  double coeff;
};

class Tableau {
 public:
  Tableau(Eigen::MatrixXd a, Eigen::VectorXd rhs, std::vector<Index> basis,
          const SimplexOptions& opt)
      : a0_(a), b0_(rhs), t_(std::move(a)), rhs_(std::move(rhs)), basis_(std::move(basis)), opt_(opt) {
    row_id_.resize(t_.rows());
    for (Index r = 0; r < t_.rows(); ++r) row_id_[r] = r;
  }

  // Residual of the current basic solution against the starting rows; grows
  // with the round-off accumulated by successive pivots.
  double drift() const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(cols());
    for (Index r = 0; r < rows(); ++r) y(basis_[r]) = rhs_(r);
    double worst = 0.0;
    for (Index r = 0; r < rows(); ++r)
      worst = std::max(worst, std::abs(a0_.row(row_id_[r]).dot(y) - b0_(row_id_[r])));
    return worst / std::max(1.0, b0_.cwiseAbs().maxCoeff());
  }

  // Rebuilds the tableau from the starting matrix and the current basis,
  // discarding that round-off.
  void reinvert() {
    const Index k = rows();
    if (k == 0 || since_reinvert_ == 0) return;
    Eigen::MatrixXd b(k, k);
    Eigen::MatrixXd a(k, a0_.cols());
    Eigen::VectorXd rhs(k);
    for (Index r = 0; r < k; ++r) {
      a.row(r) = a0_.row(row_id_[r]);
      rhs(r) = b0_(row_id_[r]);
    }
    for (Index c = 0; c < k; ++c) b.col(c) = a.col(basis_[c]);
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
    t_ = lu.solve(a);
    rhs_ = lu.solve(rhs);
    for (Index r = 0; r < k; ++r) {
      t_.col(basis_[r]).setZero();
      t_(r, basis_[r]) = 1.0;
    }
    since_reinvert_ = 0;
  }

  Index rows() const { return t_.rows(); }
  Index cols() const { return t_.cols(); }
  const std::vector<Index>& basis() const { return basis_; }
  /// Original row index of each remaining tableau row.
  const std::vector<Index>& row_ids() const { return row_id_; }
  const Eigen::VectorXd& rhs() const { return rhs_; }
  double at(Index r, Index c) const { return t_(r, c); }
  std::size_t iterations() const { return iterations_; }

  // Maximizes cost . y over columns with allowed[j]; returns kOptimal,
  // kUnbounded or kIterationLimit.
  LpStatus maximize(const Eigen::VectorXd& cost, const std::vector<bool>& allowed) {
    auto reduced = [&] {
      Eigen::VectorXd cb(rows());
      for (Index r = 0; r < rows(); ++r) cb(r) = cost(basis_[r]);
      return Eigen::RowVectorXd(cost.transpose() - cb.transpose() * t_);
    };
    auto clean = [&] { return since_reinvert_ == 0 || drift() <= kDriftTolerance; };
    if (!clean()) reinvert();
    Eigen::RowVectorXd d = reduced();
    std::size_t streak = 0;
    bool bland = false;
    while (true) {
      if (iterations_ >= opt_.max_iterations) return LpStatus::kIterationLimit;
      if (since_reinvert_ >= kReinvertPeriod && since_reinvert_ % kReinvertPeriod == 0 && !clean()) {
        reinvert();
        d = reduced();
      }
      Index enter = -1;
      double best = opt_.pivot_tolerance;
      for (Index j = 0; j < cols(); ++j) {
        if (!allowed[j] || d(j) <= opt_.pivot_tolerance) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (d(j) > best) {
          best = d(j);
          enter = j;
        }
      }
      if (enter < 0) {
        if (clean()) return LpStatus::kOptimal;
        // Confirm optimality on a rebuilt tableau before stopping.
        reinvert();
        d = reduced();
        continue;
      }

      // Two passes: the minimum ratio, then among rows within a small
      // tolerance of it the largest pivot element (lowest basic index on ties).
      double ratio = kInf;
      for (Index r = 0; r < rows(); ++r) {
        const double a = t_(r, enter);
        if (a <= opt_.pivot_tolerance) continue;
        ratio = std::min(ratio, (std::max(0.0, rhs_(r)) + opt_.feasibility_tolerance) / a);
      }
      if (ratio == kInf) return LpStatus::kUnbounded;
      Index leave = -1;
      for (Index r = 0; r < rows(); ++r) {
        const double a = t_(r, enter);
        if (a <= opt_.pivot_tolerance || std::max(0.0, rhs_(r)) / a > ratio) continue;
        if (leave < 0 || a > t_(leave, enter) * (1.0 + 1e-12) ||
            (a >= t_(leave, enter) * (1.0 - 1e-12) && basis_[r] < basis_[leave]))
          leave = r;
      }
      ratio = std::max(0.0, rhs_(leave)) / t_(leave, enter);

      if (ratio <= opt_.feasibility_tolerance) {
        if (++streak >= opt_.degenerate_switch) bland = true;
      } else {
        streak = 0;
        bland = false;
      }
      pivot(leave, enter);
      const double f = d(enter);
      d -= f * t_.row(leave);
      d(enter) = 0.0;
    }
  }

  void pivot(Index r, Index c) {
    ++iterations_;
    ++since_reinvert_;
    const double p = t_(r, c);
    t_.row(r) /= p;
    rhs_(r) /= p;
    for (Index i = 0; i < rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f == 0.0) continue;
      t_.row(i) -= f * t_.row(r);
      rhs_(i) -= f * rhs_(r);
      t_(i, c) = 0.0;
    }
    t_(r, c) = 1.0;
    basis_[r] = c;
  }

  void drop_row(Index r) {
    const Index last = rows() - 1;
    if (r != last) {
      t_.row(r) = t_.row(last);
      rhs_(r) = rhs_(last);
      basis_[r] = basis_[last];
      row_id_[r] = row_id_[last];
    }
    t_.conservativeResize(last, Eigen::NoChange);
    rhs_.conservativeResize(last);
    basis_.pop_back();
    row_id_.pop_back();
  }

 private:
  // Pivots between drift checks, and the drift that triggers a rebuild.
  static constexpr std::size_t kReinvertPeriod = 64;
  static constexpr double kDriftTolerance = 1e-10;

  Eigen::MatrixXd a0_;
  Eigen::VectorXd b0_;
  Eigen::MatrixXd t_;
  Eigen::VectorXd rhs_;
  std::vector<Index> basis_;
  std::vector<Index> row_id_;
  const SimplexOptions& opt_;
  std::size_t iterations_ = 0;
  std::size_t since_reinvert_ = 0;
};

double max_violation(const LinearProgram& p, const Eigen::VectorXd& x) {
  double v = 0.0;
  if (p.a_eq.rows() > 0) v = std::max(v, (p.a_eq * x - p.b_eq).cwiseAbs().maxCoeff());
  if (p.a_ub.rows() > 0) v = std::max(v, (p.a_ub * x - p.b_ub).maxCoeff());
  for (Index i = 0; i < x.size(); ++i) {
    const double lo = p.lower.size() ? p.lower(i) : 0.0;
    const double hi = p.upper.size() ? p.upper(i) : kInf;
    v = std::max({v, lo - x(i), x(i) - hi});
  }
  return std::max(v, 0.0);
}

}  // namespace

LinearProgram LinearProgram::with_variables(Index num_vars) {
  LinearProgram p;
  p.objective = Eigen::VectorXd::Zero(num_vars);
  p.a_eq.resize(0, num_vars);
  p.a_ub.resize(0, num_vars);
  return p;
}

void LinearProgram::validate() const {
  const Index n = num_vars();
  auto fail = [](const char* what) { throw ValidationError(what); };
  if (a_eq.cols() != n || a_ub.cols() != n) fail("constraint matrix width differs from objective");
  if (a_eq.rows() != b_eq.size() || a_ub.rows() != b_ub.size()) fail("rhs length mismatch");
  if (lower.size() != 0 && lower.size() != n) fail("lower bound length mismatch");
  if (upper.size() != 0 && upper.size() != n) fail("upper bound length mismatch");
  if (!objective.allFinite() || !a_eq.allFinite() || !a_ub.allFinite() || !b_eq.allFinite() ||
      !b_ub.allFinite())
    fail("linear program data must be finite");
  for (Index i = 0; i < n; ++i) {
    const double lo = lower.size() ? lower(i) : 0.0;
    const double hi = upper.size() ? upper(i) : kInf;
    if (std::isnan(lo) || std::isnan(hi) || lo > hi || lo == kInf || hi == -kInf)
      fail("invalid variable bounds");
  }
}

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration_limit";
  }
  return "unknown";
}

LpSolution solve_lp(const LinearProgram& p, const SimplexOptions& options) {
  p.validate();
  const Index n = p.num_vars();

  // Substitute every original variable by nonnegative standard columns.
  Eigen::VectorXd offset = Eigen::VectorXd::Zero(n);
  std::vector<std::vector<Term>> columns_of(n);
  std::vector<Term> columns;  // column -> (var, coeff)
  std::vector<std::pair<Index, double>> extra_ub;  // y_col <= value
  for (Index i = 0; i < n; ++i) {
    const double lo = p.lower.size() ? p.lower(i) : 0.0;
    const double hi = p.upper.size() ? p.upper(i) : kInf;
    auto add = [&](double coeff) {
      columns_of[i].push_back({static_cast<Index>(columns.size()), coeff});
      columns.push_back({i, coeff});
    };
    if (std::isfinite(lo)) {
      offset(i) = lo;
      add(1.0);
      if (std::isfinite(hi)) extra_ub.emplace_back(static_cast<Index>(columns.size()) - 1, hi - lo);
    } else if (std::isfinite(hi)) {
      offset(i) = hi;
      add(-1.0);
    } else {
      add(1.0);
      add(-1.0);
    }
  }
  const Index ny = static_cast<Index>(columns.size());
  auto to_std = [&](const Eigen::MatrixXd& a) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.rows(), ny);
    for (Index c = 0; c < ny; ++c) out.col(c) = columns[c].coeff * a.col(columns[c].var);
    return out;
  };

  const Index m_ub = p.a_ub.rows() + static_cast<Index>(extra_ub.size());
  const Index m_eq = p.a_eq.rows();
  const Index m = m_ub + m_eq;
  Eigen::MatrixXd a_rows(m, ny);
  Eigen::VectorXd b(m);
  if (p.a_ub.rows() > 0) {
    a_rows.topRows(p.a_ub.rows()) = to_std(p.a_ub);
    b.head(p.a_ub.rows()) = p.b_ub - p.a_ub * offset;
  }
  for (std::size_t e = 0; e < extra_ub.size(); ++e) {
    const Index r = p.a_ub.rows() + static_cast<Index>(e);
    a_rows.row(r).setZero();
    a_rows(r, extra_ub[e].first) = 1.0;
    b(r) = extra_ub[e].second;
  }
  if (m_eq > 0) {
    a_rows.bottomRows(m_eq) = to_std(p.a_eq);
    b.tail(m_eq) = p.b_eq - p.a_eq * offset;
  }

  // Columns: [y | slacks (one per ub row) | artificials].
  std::vector<Index> basis(m);
  std::vector<Index> art_rows;
  for (Index r = 0; r < m; ++r)
    if (r >= m_ub || b(r) < 0.0) art_rows.push_back(r);
  const Index n_art = static_cast<Index>(art_rows.size());
  const Index ncols = ny + m_ub + n_art;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, ncols);
  t.leftCols(ny) = a_rows;
  for (Index r = 0; r < m_ub; ++r) {
    t(r, ny + r) = 1.0;
    basis[r] = ny + r;
  }
  const Eigen::MatrixXd original = t.leftCols(ny + m_ub);  // before row sign flips
  for (Index r = 0; r < m; ++r) {
    if (b(r) < 0.0) {
      t.row(r) *= -1.0;
      b(r) = -b(r);
    }
  }
  for (Index a = 0; a < n_art; ++a) {
    t(art_rows[a], ny + m_ub + a) = 1.0;
    basis[art_rows[a]] = ny + m_ub + a;
  }

  Tableau tab(std::move(t), std::move(b), std::move(basis), options);
  LpSolution sol;
  const Index art0 = ny + m_ub;

  if (n_art > 0) {
    Eigen::VectorXd cost1 = Eigen::VectorXd::Zero(ncols);
    cost1.tail(n_art).setConstant(-1.0);
    std::vector<bool> all(ncols, true);
    const LpStatus s1 = tab.maximize(cost1, all);
    sol.iterations = tab.iterations();
    if (s1 == LpStatus::kIterationLimit) {
      sol.status = s1;
      return sol;
    }
    double infeas = 0.0;
    for (Index r = 0; r < tab.rows(); ++r)
      if (tab.basis()[r] >= art0) infeas += std::max(0.0, tab.rhs()(r));
    const double scale = std::max(1.0, p.b_eq.size() ? p.b_eq.cwiseAbs().maxCoeff() : 0.0);
    if (infeas > options.feasibility_tolerance * scale * 10.0) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }
    // Drive remaining artificials out of the basis; rows where that is
    // impossible are linearly dependent and are dropped.
    for (Index r = tab.rows() - 1; r >= 0; --r) {
      if (tab.basis()[r] < art0) continue;
      Index col = -1;
      for (Index j = 0; j < art0; ++j)
        if (std::abs(tab.at(r, j)) > options.pivot_tolerance) {
          col = j;
          break;
        }
      if (col >= 0)
        tab.pivot(r, col);
      else
        tab.drop_row(r);
    }
  }

  Eigen::VectorXd cost2 = Eigen::VectorXd::Zero(ncols);
  for (Index c = 0; c < ny; ++c) cost2(c) = columns[c].coeff * p.objective(columns[c].var);
  std::vector<bool> allowed(ncols, true);
  for (Index j = art0; j < ncols; ++j) allowed[j] = false;
  const LpStatus s2 = tab.maximize(cost2, allowed);
  sol.iterations = tab.iterations();
  sol.status = s2;
  if (s2 != LpStatus::kOptimal) return sol;

  Eigen::VectorXd y = Eigen::VectorXd::Zero(ncols);
  for (Index r = 0; r < tab.rows(); ++r) y(tab.basis()[r]) = std::max(0.0, tab.rhs()(r));
  sol.x = offset;
  for (Index c = 0; c < ny; ++c) sol.x(columns[c].var) += columns[c].coeff * y(c);
  sol.value = p.objective.dot(sol.x);
  sol.max_violation = max_violation(p, sol.x);

  // Duals from B^T pi = c_B on the unflipped rows that survived phase 1.
  const Index kept = tab.rows();
  Eigen::MatrixXd basis_t(kept, kept);
  Eigen::VectorXd cb(kept);
  for (Index c = 0; c < kept; ++c) {
    const Index col = tab.basis()[c];
    for (Index r = 0; r < kept; ++r) basis_t(c, r) = original(tab.row_ids()[r], col);
    cb(c) = cost2(col);
  }
  const Eigen::VectorXd pi = basis_t.fullPivLu().solve(cb);
  sol.dual_ub = Eigen::VectorXd::Zero(p.a_ub.rows());
  sol.dual_eq = Eigen::VectorXd::Zero(m_eq);
  for (Index r = 0; r < kept; ++r) {
    const Index id = tab.row_ids()[r];
    if (id < p.a_ub.rows())
      sol.dual_ub(id) = pi(r);
    else if (id >= m_ub)
      sol.dual_eq(id - m_ub) = pi(r);
  }
  return sol;
}

}  // namespace mcdisc::lp
