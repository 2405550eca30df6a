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

#include <span>
#include <string>
#include <vector>

#include "optiplan/task.hpp"

namespace optiplan {

/// A node of an action layer: a ground action, or the no-op that carries a
/// fluent from one level to the next.
struct LayerNode {
  bool noop = false;
  std::uint32_t id = 0;

  static LayerNode of(ActionId a) { return {false, static_cast<std::uint32_t>(a)}; }
  static LayerNode maintain(FluentId f) { return {true, static_cast<std::uint32_t>(f)}; }
  friend bool operator==(const LayerNode&, const LayerNode&) = default;
};

/// Layered Graphplan graph with Blum & Furst mutexes.
///
/// Fluent level t (0..levels()) holds the fluents reachable after t parallel
/// steps; action layer t (1..levels()) holds the actions applicable at step t,
/// i.e. whose preconditions are present and pairwise non-mutex at level t-1.
/// Once two consecutive fluent levels coincide (including mutexes) the graph
/// has leveled off and deeper layers share the stored fixed point.
class PlanningGraph {
 public:
  enum class GoalStatus { pending, reachable, unreachable };

  /// Level 0 only: the initial state, no mutexes.
  explicit PlanningGraph(const GroundTask& task);

  /// Extends until all goals appear pairwise non-mutex, or until the graph
  /// levels off without that happening (status() == unreachable).
  static PlanningGraph build_to_goal_level(const GroundTask& task);

  /// Adds one action layer and one fluent level. Invalidates relevance.
  void extend();

  /// Backward closure from `goals` at the top level. Throws
  /// std::invalid_argument if a goal is absent from the top level.
  void compute_relevance(std::span<const FluentId> goals);

  int levels() const { return levels_; }
  GoalStatus status() const { return status_; }
  bool leveled_off() const { return leveled_off_; }
  /// Number of distinct stored levels (the fixed point index once leveled off).
  int stored_levels() const { return static_cast<int>(fluent_levels_.size()) - 1; }

  bool has_fluent(int t, FluentId f) const;
  std::vector<FluentId> fluents(int t) const;
  bool fluent_mutex(int t, FluentId f, FluentId g) const;

  bool has_action(int t, ActionId a) const;
  std::vector<ActionId> actions(int t) const;
  bool node_mutex(int t, LayerNode x, LayerNode y) const;
  bool action_mutex(int t, ActionId a, ActionId b) const {
    return node_mutex(t, LayerNode::of(a), LayerNode::of(b));
  }

  /// Goals present at level t and pairwise non-mutex.
  bool goals_nonmutex(int t, std::span<const FluentId> goals) const;

  bool has_relevance() const { return relevance_levels_ >= 0; }
  bool relevant_action(int t, ActionId a) const;
  bool relevant_fluent(int t, FluentId f) const;

  /// Line-oriented text dump: LEVEL, F, MUTEXF, A, MUTEXA records.
  std::string dump() const;

  const GroundTask& task() const { return *task_; }

 private:
  struct FluentLevel {
    std::vector<char> present;
    std::vector<FluentId> list;
    std::vector<bool> mutex;  // num_fluents x num_fluents, symmetric

    friend bool operator==(const FluentLevel&, const FluentLevel&) = default;
  };
  struct ActionLayer {
    std::vector<LayerNode> nodes;
    std::vector<int> action_slot;  // per action id, -1 when absent
    std::vector<int> noop_slot;    // per fluent id, -1 when absent
    std::vector<bool> mutex;       // nodes x nodes
  };

  int clamp(int t) const;
  int slot(const ActionLayer& layer, LayerNode n) const;
  std::span<const FluentId> pre_of(LayerNode n) const;
  std::span<const FluentId> add_of(LayerNode n) const;
  std::span<const FluentId> del_of(LayerNode n) const;
  bool fmutex(const FluentLevel& level, FluentId f, FluentId g) const;

  const GroundTask* task_;
  std::size_t nf_;
  std::vector<FluentLevel> fluent_levels_;
  std::vector<ActionLayer> action_layers_;  // index 0 unused
  int levels_ = 0;
  bool leveled_off_ = false;
  GoalStatus status_ = GoalStatus::pending;

  int relevance_levels_ = -1;
  std::vector<std::vector<char>> relevant_actions_;
  std::vector<std::vector<char>> relevant_fluents_;
  std::vector<std::vector<FluentId>> noop_sets_;  // {f} per fluent, for spans
};

}  // namespace optiplan
