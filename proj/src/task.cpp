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

#include "optiplan/task.hpp"

#include <algorithm>
#include <stdexcept>

namespace optiplan {

namespace {

template <typename Id>
bool contains(const std::vector<Id>& sorted, Id id) {
  return std::binary_search(sorted.begin(), sorted.end(), id);
}

template <typename Id>
void check_set(const std::vector<Id>& ids, std::size_t bound,
               const std::string& what) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (static_cast<std::size_t>(ids[i]) >= bound)
      throw std::invalid_argument(what + ": id out of range");
    if (i > 0 && !(ids[i - 1] < ids[i]))
      throw std::invalid_argument(what + ": ids not sorted and unique");
  }
}

}  // namespace

std::string to_pddl(const Atom& atom) {
  std::string out = "(" + atom.predicate;
  for (const auto& a : atom.args) out += " " + a;
  return out + ")";
}

std::string identifier(const Atom& atom) {
  std::string out = atom.predicate;
  for (const auto& a : atom.args) out += "_" + a;
  return out;
}

bool GroundAction::requires_fluent(FluentId f) const { return contains(pre, f); }
bool GroundAction::adds(FluentId f) const { return contains(add, f); }
bool GroundAction::deletes(FluentId f) const { return contains(del, f); }

std::string to_pddl(const GroundAction& action) {
  std::string out = "(" + action.schema;
  for (const auto& a : action.args) out += " " + a;
  return out + ")";
}

std::string identifier(const GroundAction& action) {
  std::string out = action.schema;
  for (const auto& a : action.args) out += "_" + a;
  return out;
}

bool GroundTask::in_init(FluentId f) const { return contains(init, f); }
bool GroundTask::in_goal(FluentId f) const { return contains(goal, f); }

FluentIndex::FluentIndex(const GroundTask& task)
    : pre_(task.num_fluents()), add_(task.num_fluents()), del_(task.num_fluents()) {
  for (std::size_t i = 0; i < task.num_actions(); ++i) {
    const auto id = static_cast<ActionId>(i);
    const auto& a = task.actions[i];
    for (auto f : a.pre) pre_[index(f)].push_back(id);
    for (auto f : a.add) add_[index(f)].push_back(id);
    for (auto f : a.del) del_[index(f)].push_back(id);
  }
}

void check_well_formed(const GroundTask& task) {
  const auto n = task.num_fluents();
  check_set(task.init, n, "init");
  check_set(task.goal, n, "goal");
  for (const auto& a : task.actions) {
    const auto name = to_pddl(a);
    check_set(a.pre, n, name + " pre");
    check_set(a.add, n, name + " add");
    check_set(a.del, n, name + " del");
    for (auto f : a.add)
      if (contains(a.del, f))
        throw std::invalid_argument(name + ": fluent both added and deleted");
  }
}

}  // namespace optiplan
