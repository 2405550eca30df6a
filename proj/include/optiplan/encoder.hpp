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

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "optiplan/ip_model.hpp"
#include "optiplan/plangraph.hpp"
#include "optiplan/task.hpp"

namespace optiplan {

/// How slots that the graph proves unreachable or irrelevant are emitted.
enum class Pruning {
  none,         // every action and fluent at every step, all free
  fix_to_zero,  // same variables and rows as `none`, pruned ones bounded [0,0]
  omit,         // pruned variables and the rows that only exist for them are dropped
};

/// Which step-0 variables exist.
enum class Step0Convention {
  init_only,  // x^add_{f,0} for f in the initial state, each with an init row
  full,       // x^add, x^maintain, x^preadd at step 0 for every fluent, one init row each
};

struct EncodeOptions {
  bool substitute_predel = true;
  Pruning pruning = Pruning::fix_to_zero;
  bool include_objective = true;
  Step0Convention step0 = Step0Convention::init_only;
  /// Baseline only: encode tasks with delete-without-precondition effects,
  /// ignoring those effects, instead of failing.
  bool permissive = false;
};

class EncodeError : public std::runtime_error {
 public:
  enum class Kind { horizon_too_short, graph_too_shallow, unsupported_task };
  EncodeError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// State-change kind of action `a` with respect to fluent `f`, or nullopt if
/// `a` does not touch `f`. Requiring and adding classifies as preadd.
std::optional<VarKind> classify(const GroundAction& a, FluentId f);

std::string variable_name(const GroundTask& task, const VarId& id);

/// Graph-pruned Optiplan model at horizon T. The graph must have exactly T
/// levels with the goals pairwise non-mutex at T.
IpModel encode_optiplan(const PlanningGraph& graph, const GroundTask& task, int T,
                        const EncodeOptions& opts = {});

/// State-change baseline: no x^del family, no graph pruning. `opts.pruning` is
/// ignored. Warnings (permissive mode) are appended to `warnings`.
IpModel encode_baseline(const GroundTask& task, int T, const EncodeOptions& opts = {},
                        std::vector<std::string>* warnings = nullptr);

/// Actions that delete a fluent they do not require.
std::vector<ActionId> baseline_unsupported_actions(const GroundTask& task);

struct EncodingStats {
  std::size_t action_vars = 0;
  std::size_t state_change_vars = 0;
  std::size_t constraints = 0;
  std::size_t fixed_action_vars = 0;        // bounded [0,0]
  std::size_t fixed_state_change_vars = 0;  // bounded [0,0]

  std::size_t vars() const { return action_vars + state_change_vars; }
  std::size_t fixed() const { return fixed_action_vars + fixed_state_change_vars; }
};

EncodingStats encoding_stats(const IpModel& model);

}  // namespace optiplan
