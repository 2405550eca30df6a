// Copyright 2026 The Optiplan Authors
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

#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "optiplan/ip_model.hpp"
#include "optiplan/solver.hpp"

namespace optiplan {

/// One reduction, in the order it was applied. Indices refer to the
/// original model.
struct Reduction {
  enum class Kind { fix, substitute };
  Kind kind = Kind::fix;
  std::size_t var = 0;
  double value = 0.0;      // fix: the value; substitute: the constant term
  double coef = 0.0;       // substitute: var = value + coef * other
  std::size_t other = 0;
};

struct PresolveReport {
  enum class Status { reduced, infeasible };
  Status status = Status::reduced;
  std::size_t vars_before = 0, vars_after = 0;
  std::size_t cons_before = 0, cons_after = 0;
  std::vector<std::pair<std::size_t, double>> fixings;
  std::vector<Reduction> substitutions;
  std::vector<std::size_t> dropped_rows;
  std::vector<Reduction> log;          // fixings and substitutions interleaved
  std::vector<std::size_t> column_map; // reduced column -> original column
  std::size_t passes = 0;
  std::string infeasible_reason;

  bool infeasible() const { return status == Status::infeasible; }
};

struct PresolveResult {
  IpModel model;
  PresolveReport report;
};

struct PresolveOptions {
  bool substitute_doubletons = true;
  bool merge_parallel_rows = true;
  bool fix_empty_columns = true;
  std::size_t max_passes = 1000;
};

/// Bound fixing, activity-based redundancy and infeasibility detection,
/// forcing rows and bound propagation, parallel-row merging, two-term
/// equality substitution with integral coefficients, and empty-column fixing,
/// repeated to a fixpoint.
/// Requires integer variables with finite bounds.
PresolveResult presolve(const IpModel& model, const PresolveOptions& opts = {});

/// Maps a solution of the reduced model back to the original columns.
IpSolution lift(const IpSolution& reduced, const PresolveReport& report);
std::vector<double> lift(std::span<const double> reduced, const PresolveReport& report);

}  // namespace optiplan
