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

#include "optiplan/encoder.hpp"

#include <algorithm>

namespace optiplan {

namespace {

// Which variables exist, and which of those are fixed at zero.
struct Layout {
  int T = 0;
  bool with_del = true;
  bool emit_pruned = true;  // false: omit pruned variables
  std::vector<std::vector<char>> action_live;  // [t][a], t in 1..T
  std::vector<std::vector<char>> slot_live;    // [t][f], t in 1..T
};

class Builder {
 public:
  Builder(const GroundTask& task, const Layout& layout, const EncodeOptions& opts)
      : task_(task), fx_(task), layout_(layout), opts_(opts) {}

  IpModel build() {
    const int T = layout_.T;
    add_step0();
    for (int t = 1; t <= T; ++t) {
      for (std::size_t a = 0; a < task_.num_actions(); ++a) {
        if (!exists_action(t, a)) continue;
        add_var({VarKind::action, static_cast<std::uint32_t>(a), t}, live_action(t, a),
                opts_.include_objective ? 1.0 : 0.0);
      }
      for (std::size_t f = 0; f < task_.num_fluents(); ++f) {
        if (!exists_slot(t, f)) continue;
        const bool live = live_slot(t, f);
        const auto s = static_cast<std::uint32_t>(f);
        add_var({VarKind::add, s, t}, live);
        if (layout_.with_del) add_var({VarKind::del, s, t}, live);
        add_var({VarKind::preadd, s, t}, live);
        if (!opts_.substitute_predel) add_var({VarKind::predel, s, t}, live);
        add_var({VarKind::maintain, s, t}, live);
      }
    }
    for (int t = 1; t <= T; ++t)
      for (std::size_t f = 0; f < task_.num_fluents(); ++f)
        if (exists_slot(t, f)) add_slot_rows(t, static_cast<FluentId>(f));
    for (auto g : task_.goal) {
      std::vector<Term> terms;
      push(terms, {VarKind::add, u(g), T}, 1.0);
      push(terms, {VarKind::maintain, u(g), T}, 1.0);
      push(terms, {VarKind::preadd, u(g), T}, 1.0);
      model_.add_constraint(row_name("goal", g, T), std::move(terms), Sense::ge, 1.0);
    }
    return std::move(model_);
  }

 private:
  static std::uint32_t u(FluentId f) { return static_cast<std::uint32_t>(f); }

  bool exists_action(int t, std::size_t a) const {
    return layout_.emit_pruned || layout_.action_live[t][a];
  }
  bool live_action(int t, std::size_t a) const { return layout_.action_live[t][a] != 0; }
  bool exists_slot(int t, std::size_t f) const {
    return layout_.emit_pruned || layout_.slot_live[t][f];
  }
  bool live_slot(int t, std::size_t f) const { return layout_.slot_live[t][f] != 0; }

  void add_var(const VarId& id, bool live, double objective = 0.0) {
    Variable v;
    v.name = variable_name(task_, id);
    v.upper = live ? 1.0 : 0.0;
    v.objective = objective;
    v.id = id;
    model_.add_variable(std::move(v));
  }

  // Appends coef * var(id) when the variable exists; absent variables are zero.
  void push(std::vector<Term>& terms, const VarId& id, double coef) const {
    if (auto j = model_.find(id)) terms.push_back({*j, coef});
  }

  std::string row_name(std::string_view family, FluentId f, int t) const {
    std::string s(family);
    s += '_';
    s += identifier(task_.fluent(f));
    s += '_';
    s += std::to_string(t);
    return s;
  }

  void add_step0() {
    if (opts_.step0 == Step0Convention::init_only) {
      for (auto f : task_.init) {
        add_var({VarKind::add, u(f), 0}, true);
        std::vector<Term> terms;
        push(terms, {VarKind::add, u(f), 0}, 1.0);
        model_.add_constraint(row_name("init", f, 0), std::move(terms), Sense::eq, 1.0);
      }
      return;
    }
    for (std::size_t i = 0; i < task_.num_fluents(); ++i) {
      const auto f = static_cast<FluentId>(i);
      const bool init = task_.in_init(f);
      add_var({VarKind::add, u(f), 0}, true);
      add_var({VarKind::maintain, u(f), 0}, !init);
      add_var({VarKind::preadd, u(f), 0}, !init);
      std::vector<Term> terms;
      push(terms, {VarKind::add, u(f), 0}, 1.0);
      if (!init) {
        push(terms, {VarKind::maintain, u(f), 0}, 1.0);
        push(terms, {VarKind::preadd, u(f), 0}, 1.0);
      }
      model_.add_constraint(row_name("init", f, 0), std::move(terms), Sense::eq, init ? 1.0 : 0.0);
    }
  }

  // Lower-bound row sum(y) >= x plus one y <= x row per action.
  void link_family(int t, FluentId f, VarKind kind, std::string_view family,
                   const std::vector<ActionId>& acts) {
    const VarId xid{kind, u(f), t};
    std::vector<Term> lb;
    for (auto a : acts) push(lb, {VarKind::action, static_cast<std::uint32_t>(a), t}, 1.0);
    push(lb, xid, -1.0);
    model_.add_constraint(row_name(std::string(family) + "_lb", f, t), std::move(lb), Sense::ge, 0.0);
    for (auto a : acts) {
      std::vector<Term> ub;
      push(ub, {VarKind::action, static_cast<std::uint32_t>(a), t}, 1.0);
      push(ub, xid, -1.0);
      std::string name = std::string(family) + "_ub_" + identifier(task_.fluent(f)) + "_" +
                         identifier(task_.action(a)) + "_" + std::to_string(t);
      model_.add_constraint(std::move(name), std::move(ub), Sense::le, 0.0);
    }
  }

  void add_slot_rows(int t, FluentId f) {
    std::vector<ActionId> add_only, del_only, preadd, predel;
    auto present = [&](ActionId a) { return exists_action(t, index(a)); };
    for (auto a : fx_.add(f))
      if (present(a) && !task_.action(a).requires_fluent(f)) add_only.push_back(a);
    for (auto a : fx_.del(f))
      if (present(a) && !task_.action(a).requires_fluent(f)) del_only.push_back(a);
    for (auto a : fx_.pre(f)) {
      if (!present(a)) continue;
      (task_.action(a).deletes(f) ? predel : preadd).push_back(a);
    }

    link_family(t, f, VarKind::add, "eff_add", add_only);
    if (layout_.with_del) link_family(t, f, VarKind::del, "eff_del", del_only);
    link_family(t, f, VarKind::preadd, "eff_preadd", preadd);

    // x^predel as a variable, or as the sum it equals.
    auto push_predel = [&](std::vector<Term>& terms, double coef) {
      if (!opts_.substitute_predel) {
        push(terms, {VarKind::predel, u(f), t}, coef);
        return;
      }
      for (auto a : predel) push(terms, {VarKind::action, static_cast<std::uint32_t>(a), t}, coef);
    };
    if (!opts_.substitute_predel) {
      std::vector<Term> eq;
      for (auto a : predel) push(eq, {VarKind::action, static_cast<std::uint32_t>(a), t}, 1.0);
      push(eq, {VarKind::predel, u(f), t}, -1.0);
      model_.add_constraint(row_name("eff_predel_eq", f, t), std::move(eq), Sense::eq, 0.0);
    }

    std::vector<Term> ma;
    push(ma, {VarKind::add, u(f), t}, 1.0);
    push(ma, {VarKind::maintain, u(f), t}, 1.0);
    push(ma, {VarKind::del, u(f), t}, 1.0);
    push_predel(ma, 1.0);
    model_.add_constraint(row_name("mutex_a", f, t), std::move(ma), Sense::le, 1.0);

    std::vector<Term> mp;
    push(mp, {VarKind::preadd, u(f), t}, 1.0);
    push(mp, {VarKind::maintain, u(f), t}, 1.0);
    push(mp, {VarKind::del, u(f), t}, 1.0);
    push_predel(mp, 1.0);
    model_.add_constraint(row_name("mutex_p", f, t), std::move(mp), Sense::le, 1.0);

    std::vector<Term> ch;
    push(ch, {VarKind::preadd, u(f), t}, 1.0);
    push(ch, {VarKind::maintain, u(f), t}, 1.0);
    push_predel(ch, 1.0);
    push(ch, {VarKind::preadd, u(f), t - 1}, -1.0);
    push(ch, {VarKind::add, u(f), t - 1}, -1.0);
    push(ch, {VarKind::maintain, u(f), t - 1}, -1.0);
    model_.add_constraint(row_name("chain", f, t), std::move(ch), Sense::le, 0.0);
  }

  const GroundTask& task_;
  FluentIndex fx_;
  const Layout& layout_;
  const EncodeOptions& opts_;
  IpModel model_;
};

Layout full_layout(const GroundTask& task, int T) {
  Layout layout;
  layout.T = T;
  layout.action_live.assign(static_cast<std::size_t>(T) + 1,
                            std::vector<char>(task.num_actions(), 1));
  layout.slot_live.assign(static_cast<std::size_t>(T) + 1, std::vector<char>(task.num_fluents(), 1));
  return layout;
}

}  // namespace

std::optional<VarKind> classify(const GroundAction& a, FluentId f) {
  const bool pre = a.requires_fluent(f);
  const bool del = a.deletes(f);
  if (pre) return del ? VarKind::predel : VarKind::preadd;
  if (a.adds(f)) return VarKind::add;
  if (del) return VarKind::del;
  return std::nullopt;
}

std::string variable_name(const GroundTask& task, const VarId& id) {
  std::string s;
  if (id.kind == VarKind::action) {
    s = "y_" + identifier(task.action(static_cast<ActionId>(id.subject)));
  } else {
    s = "x_";
    s += to_string(id.kind);
    s += '_';
    s += identifier(task.fluent(static_cast<FluentId>(id.subject)));
  }
  s += '_';
  s += std::to_string(id.step);
  return s;
}

IpModel encode_optiplan(const PlanningGraph& graph, const GroundTask& task, int T,
                        const EncodeOptions& opts) {
  if (T < 0 || graph.levels() < T)
    throw EncodeError(EncodeError::Kind::graph_too_shallow,
                      "planning graph has fewer levels than the requested horizon");
  if (!graph.goals_nonmutex(T, task.goal))
    throw EncodeError(EncodeError::Kind::horizon_too_short,
                      "goals are not pairwise non-mutex at horizon " + std::to_string(T));

  Layout layout = full_layout(task, T);
  layout.with_del = true;
  layout.emit_pruned = opts.pruning != Pruning::omit;
  if (opts.pruning != Pruning::none) {
    const PlanningGraph* g = &graph;
    std::optional<PlanningGraph> local;
    if (graph.levels() != T || !graph.has_relevance()) {
      local.emplace(task);
      for (int t = 0; t < T; ++t) local->extend();
      local->compute_relevance(task.goal);
      g = &*local;
    }
    for (int t = 1; t <= T; ++t) {
      auto& acts = layout.action_live[t];
      auto& slots = layout.slot_live[t];
      for (std::size_t a = 0; a < task.num_actions(); ++a) {
        const auto id = static_cast<ActionId>(a);
        acts[a] = g->has_action(t, id) && g->relevant_action(t, id);
      }
      for (std::size_t f = 0; f < task.num_fluents(); ++f) {
        const auto id = static_cast<FluentId>(f);
        slots[f] = g->has_fluent(t, id) && g->relevant_fluent(t, id);
      }
      for (std::size_t a = 0; a < task.num_actions(); ++a) {
        if (!acts[a]) continue;
        const auto& act = task.actions[a];
        for (auto f : act.pre) slots[index(f)] = 1;
        for (auto f : act.add) slots[index(f)] = 1;
        for (auto f : act.del) slots[index(f)] = 1;
      }
    }
  }
  return Builder(task, layout, opts).build();
}

std::vector<ActionId> baseline_unsupported_actions(const GroundTask& task) {
  std::vector<ActionId> out;
  for (std::size_t a = 0; a < task.num_actions(); ++a) {
    const auto& act = task.actions[a];
    const bool bad = std::any_of(act.del.begin(), act.del.end(),
                                 [&](FluentId f) { return !act.requires_fluent(f); });
    if (bad) out.push_back(static_cast<ActionId>(a));
  }
  return out;
}

IpModel encode_baseline(const GroundTask& task, int T, const EncodeOptions& opts,
                        std::vector<std::string>* warnings) {
  if (T < 0) throw EncodeError(EncodeError::Kind::graph_too_shallow, "negative horizon");
  const auto bad = baseline_unsupported_actions(task);
  if (!bad.empty()) {
    const std::string first = to_pddl(task.action(bad.front()));
    if (!opts.permissive)
      throw EncodeError(EncodeError::Kind::unsupported_task,
                        "baseline encoding cannot express deletes without preconditions: " + first);
    if (warnings)
      warnings->push_back(std::to_string(bad.size()) +
                          " action(s) delete fluents they do not require; those deletes are "
                          "ignored by the baseline encoding (first: " + first + ")");
  }
  Layout layout = full_layout(task, T);
  layout.with_del = false;
  layout.emit_pruned = true;
  return Builder(task, layout, opts).build();
}

EncodingStats encoding_stats(const IpModel& model) {
  EncodingStats s;
  s.constraints = model.num_constraints();
  for (const auto& v : model.variables()) {
    const bool is_action = v.id ? v.id->kind == VarKind::action : v.name.starts_with("y_");
    const bool fixed = v.upper == 0.0 && v.lower == 0.0;
    if (is_action) {
      ++s.action_vars;
      s.fixed_action_vars += fixed;
    } else {
      ++s.state_change_vars;
      s.fixed_state_change_vars += fixed;
    }
  }
  return s;
}

}  // namespace optiplan
