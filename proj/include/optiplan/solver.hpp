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
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "optiplan/ip_model.hpp"

namespace optiplan {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };
std::string_view to_string(LpStatus status);

struct LpParams {
  std::size_t iteration_limit = 200000;
  double tolerance = 1e-9;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t degeneracy_streak = 50;
};

struct LpSolution {
  LpStatus status = LpStatus::infeasible;
  std::vector<double> x;
  double objective = 0.0;
  std::size_t iterations = 0;
  /// Set when the final basic solution violates a row by more than 1e-6.
  bool unstable = false;
};

/// Continuous relaxation min c x s.t. rows, lower <= x <= upper. Bounds must
/// be finite. The model's own bounds are used when `lower`/`upper` are empty.
LpSolution solve_lp(const IpModel& model, std::span<const double> lower = {},
                    std::span<const double> upper = {}, const LpParams& params = {});

enum class IpStatus { optimal, feasible, infeasible, node_limit, time_limit };
std::string_view to_string(IpStatus status);

enum class Branching { most_fractional, first_fractional };
enum class NodeOrder { depth_first_then_best_bound, best_bound, depth_first };

struct SolveParams {
  double integrality_tolerance = 1e-6;
  double feasibility_tolerance = 1e-6;
  std::size_t node_limit = std::numeric_limits<std::size_t>::max();
  double time_limit = std::numeric_limits<double>::infinity();  // seconds
  Branching branching = Branching::most_fractional;
  NodeOrder node_order = NodeOrder::depth_first_then_best_bound;
  bool first_feasible_stop = false;
  bool record_trace = false;
  LpParams lp;
};

struct NodeRecord {
  std::size_t depth = 0;
  double parent_bound = 0.0;
  double lp_bound = 0.0;  // +inf when infeasible
};

struct IpSolution {
  IpStatus status = IpStatus::infeasible;
  std::vector<double> assignment;  // 0/1 values when status is optimal or feasible
  double objective = std::numeric_limits<double>::infinity();
  std::size_t nodes = 0;  // explored nodes below the root
  double bound = -std::numeric_limits<double>::infinity();
  double root_bound = -std::numeric_limits<double>::infinity();
  std::size_t lp_iterations = 0;
  double seconds = 0.0;
  double first_feasible_seconds = std::numeric_limits<double>::infinity();
  std::vector<NodeRecord> trace;      // with record_trace
  std::vector<double> incumbents;     // objective of each new incumbent, in order

  bool has_incumbent = false;
};

/// Branch and bound over the LP relaxation of a binary (or bounded integer)
/// program.
IpSolution solve_ip(const IpModel& model, const SolveParams& params = {});

}  // namespace optiplan
