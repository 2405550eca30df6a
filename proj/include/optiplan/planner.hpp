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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "optiplan/encoder.hpp"
#include "optiplan/ip_model.hpp"
#include "optiplan/presolve.hpp"
#include "optiplan/solver.hpp"
#include "optiplan/task.hpp"

namespace optiplan {

/// Parallel plan; steps[t-1] holds the actions executed at step t.
struct Plan {
  std::vector<std::vector<ActionId>> steps;

  int makespan() const { return static_cast<int>(steps.size()); }
  std::size_t action_count() const;
  std::size_t empty_steps() const;
};

enum class Encoding { optiplan, baseline };
std::string_view to_string(Encoding e);

struct PlannerOptions {
  Encoding encoding = Encoding::optiplan;
  int max_horizon = 50;
  bool presolve = true;
  bool prove_optimal = false;
  SolveParams solver;
  Pruning pruning = Pruning::omit;
  /// Defaults: substituted for Optiplan, explicit for the baseline.
  std::optional<bool> substitute_predel;
  Step0Convention step0 = Step0Convention::init_only;
  bool permissive_baseline = true;
  /// Called with every model handed to presolve, before solving.
  std::function<void(const IpModel&, int horizon)> on_model;
};

/// Per-horizon numbers, also used for the stats block and bench CSV.
struct HorizonAttempt {
  int horizon = 0;
  std::size_t vars_before = 0, cons_before = 0;
  std::size_t vars_after = 0, cons_after = 0;
  IpStatus status = IpStatus::infeasible;
  std::size_t nodes = 0;
  std::size_t lp_iterations = 0;
  double encode_seconds = 0.0;
  double presolve_seconds = 0.0;
  double solve_seconds = 0.0;
};

struct PlanResult {
  /// invalid_plan: only from a permissive baseline run, whose model ignores
  /// some deletes; `plan` holds the rejected plan.
  enum class Status { solved, unsolvable, horizon_limit, solver_limit, invalid_plan };
  Status status = Status::unsolvable;
  Plan plan;
  double objective = 0.0;
  std::vector<HorizonAttempt> attempts;
  std::vector<std::string> diagnostics;
  double seconds = 0.0;  // wall time of the whole loop

  bool solved() const { return status == Status::solved; }
};

std::string_view to_string(PlanResult::Status s);

/// Graph to the first goal level, then encode, presolve and solve, extending
/// by one level after every infeasible horizon.
PlanResult plan(const GroundTask& task, const PlannerOptions& opts = {});

/// Actions with y_{a,t} = 1, by step. `assignment` spans the model's columns.
Plan extract_plan(const IpModel& model, std::span<const double> assignment, int horizon);

struct Validation {
  bool ok = true;
  int step = 0;  // 1-based; 0 for goal failures and T = 0
  std::optional<ActionId> action;
  std::optional<FluentId> fluent;
  std::string reason;
};

/// Independent semantic check of a parallel plan.
Validation validate_plan(const GroundTask& task, const Plan& plan);

/// "t: (act a b) (act c)" lines, one per step, 1-based.
std::string format_plan(const GroundTask& task, const Plan& plan);

}  // namespace optiplan
