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

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "optiplan/pddl.hpp"

namespace optiplan::pddl {

namespace {

class FluentTable {
 public:
  FluentId intern(const Atom& atom) {
    auto [it, inserted] = ids_.try_emplace(atom, static_cast<FluentId>(atoms_.size()));
    if (inserted) atoms_.push_back(atom);
    return it->second;
  }

  std::vector<Atom> release() { return std::move(atoms_); }

 private:
  std::map<Atom, FluentId> ids_;
  std::vector<Atom> atoms_;
};

std::vector<FluentId> sorted_unique(std::vector<FluentId> ids) {
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

Atom bind_literal(const Literal& lit, const std::vector<TypedName>& params,
          const std::vector<const TypedName*>& binding) {
  Atom atom{lit.predicate, {}};
  atom.args.reserve(lit.args.size());
  for (const auto& term : lit.args) {
    if (!term.empty() && term[0] == '?') {
      auto it = std::find_if(params.begin(), params.end(),
                             [&](const TypedName& p) { return p.name == term; });
      atom.args.push_back(binding[static_cast<std::size_t>(it - params.begin())]->name);
    } else {
      atom.args.push_back(term);
    }
  }
  return atom;
}

}  // namespace

GroundTask ground(const DomainDef& domain, const ProblemDef& problem,
                  const GroundOptions& options) {
  GroundTask task;
  FluentTable table;

  std::vector<FluentId> init;
  for (const auto& a : problem.init) init.push_back(table.intern(a));
  std::vector<FluentId> goal;
  for (const auto& a : problem.goal) goal.push_back(table.intern(a));
  task.init = sorted_unique(std::move(init));
  task.goal = sorted_unique(std::move(goal));

  std::vector<TypedName> objects = domain.constants;
  objects.insert(objects.end(), problem.objects.begin(), problem.objects.end());

  for (const auto& schema : domain.actions) {
    std::vector<std::vector<const TypedName*>> candidates;
    for (const auto& p : schema.params) {
      auto& c = candidates.emplace_back();
      for (const auto& o : objects)
        if (domain.is_subtype(o.type, p.type)) c.push_back(&o);
    }
    if (std::any_of(candidates.begin(), candidates.end(),
                    [](const auto& c) { return c.empty(); }))
      continue;

    // Odometer over parameter choices, first parameter most significant.
    std::vector<std::size_t> choice(schema.params.size(), 0);
    std::vector<const TypedName*> binding(schema.params.size());
    for (bool more = true; more;) {
      for (std::size_t i = 0; i < choice.size(); ++i) binding[i] = candidates[i][choice[i]];

      bool admissible = true;
      if (options.distinct_bindings) {
        for (std::size_t i = 0; i < binding.size() && admissible; ++i)
          for (std::size_t j = i + 1; j < binding.size(); ++j)
            if (binding[i] == binding[j]) {
              admissible = false;
              break;
            }
      }

      if (admissible) {
        GroundAction action;
        action.schema = schema.name;
        for (const auto* b : binding) action.args.push_back(b->name);
        for (const auto& l : schema.pre) action.pre.push_back(table.intern(bind_literal(l, schema.params, binding)));
        for (const auto& l : schema.add) action.add.push_back(table.intern(bind_literal(l, schema.params, binding)));
        for (const auto& l : schema.del) action.del.push_back(table.intern(bind_literal(l, schema.params, binding)));
        action.pre = sorted_unique(std::move(action.pre));
        action.add = sorted_unique(std::move(action.add));
        action.del = sorted_unique(std::move(action.del));
        std::vector<FluentId> clash;
        std::set_intersection(action.add.begin(), action.add.end(), action.del.begin(),
                              action.del.end(), std::back_inserter(clash));
        if (!clash.empty()) {
          std::erase_if(action.del, [&](FluentId f) {
            return std::binary_search(clash.begin(), clash.end(), f);
          });
          task.notes.push_back(to_pddl(action) + ": " + std::to_string(clash.size()) +
                               " effect(s) both added and deleted; kept as add");
        }
        task.actions.push_back(std::move(action));
      }

      more = false;
      for (std::size_t i = choice.size(); i-- > 0;) {
        if (++choice[i] < candidates[i].size()) {
          more = true;
          break;
        }
        choice[i] = 0;
      }
    }
  }
  task.fluents = table.release();
  return task;
}

std::pair<std::string, std::string> print_task(const GroundTask& task) {
  auto name_of = [&](FluentId f) { return "(" + identifier(task.fluent(f)) + ")"; };
  std::ostringstream domain;
  domain << "(define (domain ground)\n  (:requirements :strips)\n  (:predicates";
  for (std::size_t i = 0; i < task.num_fluents(); ++i)
    domain << "\n    " << name_of(static_cast<FluentId>(i));
  domain << ")\n";
  for (std::size_t i = 0; i < task.num_actions(); ++i) {
    const auto& a = task.actions[i];
    domain << "  (:action " << identifier(a) << "\n    :parameters ()\n    :precondition (and";
    for (auto f : a.pre) domain << " " << name_of(f);
    domain << ")\n    :effect (and";
    for (auto f : a.add) domain << " " << name_of(f);
    for (auto f : a.del) domain << " (not " << name_of(f) << ")";
    domain << "))\n";
  }
  domain << ")\n";

  std::ostringstream problem;
  problem << "(define (problem ground-problem)\n  (:domain ground)\n  (:init";
  for (auto f : task.init) problem << " " << name_of(f);
  problem << ")\n  (:goal (and";
  for (auto f : task.goal) problem << " " << name_of(f);
  problem << ")))\n";
  return {domain.str(), problem.str()};
}

}  // namespace optiplan::pddl
