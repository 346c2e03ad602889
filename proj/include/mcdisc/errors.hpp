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

#ifndef MCDISC_ERRORS_HPP
#define MCDISC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mcdisc {

/// Input outside an operation's precondition (bad shape, out-of-range
/// parameter, invalid measurement).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix that must be positive semidefinite has an eigenvalue below -tol.
class NotPsdError : public ValidationError {
 public:
  NotPsdError(const std::string& what, double min_eigenvalue)
      : ValidationError(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// A search ran out of its enumeration budget. Subclasses carry the best
/// partial result found.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Something that cannot happen on valid input did happen (e.g. an LP that
/// must be feasible came back infeasible).
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace mcdisc

#endif  // MCDISC_ERRORS_HPP
