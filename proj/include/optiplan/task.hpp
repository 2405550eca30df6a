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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace optiplan {

enum class FluentId : std::uint32_t {};
enum class ActionId : std::uint32_t {};

constexpr std::size_t index(FluentId f) { return static_cast<std::size_t>(f); }
constexpr std::size_t index(ActionId a) { return static_cast<std::size_t>(a); }

/// A ground atom such as (at truck1 loc1).
struct Atom {
  std::string predicate;
  std::vector<std::string> args;

  friend bool operator==(const Atom&, const Atom&) = default;
  friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// "(at truck1 loc1)"
std::string to_pddl(const Atom& atom);
/// "at_truck1_loc1", used for IP variable names.
std::string identifier(const Atom& atom);

/// A schema instantiated with objects. The fluent-id sets are sorted and
/// duplicate-free; add and del are disjoint.
struct GroundAction {
  std::string schema;
  std::vector<std::string> args;
  std::vector<FluentId> pre;
  std::vector<FluentId> add;
  std::vector<FluentId> del;

  bool requires_fluent(FluentId f) const;
  bool adds(FluentId f) const;
  bool deletes(FluentId f) const;
};

std::string to_pddl(const GroundAction& action);
std::string identifier(const GroundAction& action);

/// Propositional STRIPS task. Fluent and action ids are dense indices into
/// `fluents` and `actions`.
struct GroundTask {
  std::vector<Atom> fluents;
  std::vector<GroundAction> actions;
  std::vector<FluentId> init;
  std::vector<FluentId> goal;
  /// Normalization messages produced while grounding (add/del collisions).
  std::vector<std::string> notes;

  std::size_t num_fluents() const { return fluents.size(); }
  std::size_t num_actions() const { return actions.size(); }
  const GroundAction& action(ActionId a) const { return actions[index(a)]; }
  const Atom& fluent(FluentId f) const { return fluents[index(f)]; }

  bool in_init(FluentId f) const;
  bool in_goal(FluentId f) const;
};

/// Per-fluent transposed views pre_f, add_f, del_f.
class FluentIndex {
 public:
  explicit FluentIndex(const GroundTask& task);

  std::span<const ActionId> pre(FluentId f) const { return pre_[index(f)]; }
  std::span<const ActionId> add(FluentId f) const { return add_[index(f)]; }
  std::span<const ActionId> del(FluentId f) const { return del_[index(f)]; }

 private:
  std::vector<std::vector<ActionId>> pre_;
  std::vector<std::vector<ActionId>> add_;
  std::vector<std::vector<ActionId>> del_;
};

/// Throws std::invalid_argument when an id is out of range, a set is unsorted
/// or add and del overlap.
void check_well_formed(const GroundTask& task);

}  // namespace optiplan
