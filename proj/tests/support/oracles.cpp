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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "optiplan/pddl.hpp"

namespace optiplan::testing {

namespace {

State mask(const std::vector<FluentId>& fs) {
  State m = 0;
  for (auto f : fs) m |= State{1} << index(f);
  return m;
}

struct Masks {
  std::vector<State> pre, add, del;
  explicit Masks(const GroundTask& task) {
    if (task.num_fluents() > 64) throw std::invalid_argument("oracle limited to 64 fluents");
    for (const auto& a : task.actions) {
      pre.push_back(mask(a.pre));
      add.push_back(mask(a.add));
      del.push_back(mask(a.del));
    }
  }
};

}  // namespace

std::string data_path(const std::string& relative) {
  return std::string(OPTIPLAN_DATA_DIR) + "/" + relative;
}

State initial_state(const GroundTask& task) { return mask(task.init); }

bool satisfies_goal(const GroundTask& task, State s) {
  const State g = mask(task.goal);
  return (s & g) == g;
}

std::vector<std::vector<ActionId>> parallel_steps(const GroundTask& task, State s) {
  const Masks m(task);
  std::vector<std::size_t> applicable;
  for (std::size_t a = 0; a < task.num_actions(); ++a)
    if ((m.pre[a] & s) == m.pre[a]) applicable.push_back(a);
  std::vector<std::vector<ActionId>> out;
  const std::size_t k = applicable.size();
  if (k > 20) throw std::invalid_argument("too many applicable actions for subset enumeration");
  for (std::uint32_t bits = 0; bits < (1u << k); ++bits) {
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      if (!(bits >> i & 1)) continue;
      const auto a = applicable[i];
      for (std::size_t j = 0; j < k; ++j) {
        if (i == j || !(bits >> j & 1)) continue;
        const auto b = applicable[j];
        if (m.del[a] & (m.pre[b] | m.add[b])) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    std::vector<ActionId> step;
    for (std::size_t i = 0; i < k; ++i)
      if (bits >> i & 1) step.push_back(static_cast<ActionId>(applicable[i]));
    out.push_back(std::move(step));
  }
  return out;
}

State apply_step(const GroundTask& task, State s, const std::vector<ActionId>& step) {
  State dels = 0, adds = 0;
  for (auto a : step) {
    dels |= mask(task.action(a).del);
    adds |= mask(task.action(a).add);
  }
  return (s & ~dels) | adds;
}

std::set<State> reachable_states(const GroundTask& task, int t) {
  std::set<State> frontier{initial_state(task)};
  std::set<State> all = frontier;
  for (int k = 0; k < t; ++k) {
    std::set<State> next;
    for (auto s : frontier)
      for (const auto& step : parallel_steps(task, s)) {
        const State n = apply_step(task, s, step);
        if (all.insert(n).second) next.insert(n);
      }
    frontier = std::move(next);
  }
  return all;
}

std::optional<int> min_parallel_makespan(const GroundTask& task, int max_t) {
  std::set<State> seen{initial_state(task)};
  std::vector<State> frontier{initial_state(task)};
  for (int t = 0; t <= max_t; ++t) {
    for (auto s : frontier)
      if (satisfies_goal(task, s)) return t;
    std::vector<State> next;
    for (auto s : frontier)
      for (const auto& step : parallel_steps(task, s)) {
        const State n = apply_step(task, s, step);
        if (seen.insert(n).second) next.push_back(n);
      }
    frontier = std::move(next);
  }
  return std::nullopt;
}

std::vector<Plan> all_plans(const GroundTask& task, int t, std::size_t limit) {
  std::vector<Plan> out;
  Plan current;
  auto rec = [&](auto&& self, State s, int depth) -> void {
    if (out.size() >= limit) return;
    if (depth == t) {
      if (satisfies_goal(task, s)) out.push_back(current);
      return;
    }
    for (const auto& step : parallel_steps(task, s)) {
      current.steps.push_back(step);
      self(self, apply_step(task, s, step), depth + 1);
      current.steps.pop_back();
    }
  };
  rec(rec, initial_state(task), 0);
  return out;
}

GroundTask random_task(std::mt19937& rng, const RandomTaskParams& p) {
  std::uniform_int_distribution<int> nf_dist(2, p.max_fluents);
  std::uniform_int_distribution<int> na_dist(1, p.max_actions);
  const int nf = nf_dist(rng);
  const int na = na_dist(rng);
  GroundTask task;
  for (int f = 0; f < nf; ++f) task.fluents.push_back(Atom{"p" + std::to_string(f), {}});
  std::uniform_int_distribution<int> fl(0, nf - 1);
  auto pick = [&](int max_n, std::vector<FluentId>& out) {
    std::uniform_int_distribution<int> cnt(0, max_n);
    const int k = cnt(rng);
    for (int i = 0; i < k; ++i) out.push_back(static_cast<FluentId>(fl(rng)));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  };
  for (int a = 0; a < na; ++a) {
    GroundAction act;
    act.schema = "a" + std::to_string(a);
    pick(p.max_pre, act.pre);
    pick(p.max_add, act.add);
    pick(p.max_del, act.del);
    if (!p.allow_del_without_pre)
      std::erase_if(act.del, [&](FluentId f) { return !std::binary_search(act.pre.begin(), act.pre.end(), f); });
    std::erase_if(act.del, [&](FluentId f) { return std::binary_search(act.add.begin(), act.add.end(), f); });
    task.actions.push_back(std::move(act));
  }
  pick(std::max(1, nf / 2), task.init);
  std::vector<FluentId> goal;
  std::uniform_int_distribution<int> gcnt(1, std::min(3, nf));
  const int gk = gcnt(rng);
  for (int i = 0; i < gk; ++i) goal.push_back(static_cast<FluentId>(fl(rng)));
  std::sort(goal.begin(), goal.end());
  goal.erase(std::unique(goal.begin(), goal.end()), goal.end());
  task.goal = std::move(goal);
  return task;
}

GroundTask triangle_task(std::mt19937& rng) {
  RandomTaskParams p;
  p.max_fluents = 5;
  p.max_actions = 4;
  GroundTask task = random_task(rng, p);
  const auto base = static_cast<int>(task.num_fluents());
  std::uniform_int_distribution<int> fl(0, base - 1);
  std::bernoulli_distribution coin(0.5);
  auto some_pre = [&](int max_k) {
    std::vector<FluentId> out;
    std::uniform_int_distribution<int> cnt(0, max_k);
    for (int k = cnt(rng); k > 0; --k) out.push_back(static_cast<FluentId>(fl(rng)));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  std::vector<FluentId> g;
  for (int i = 0; i < 3; ++i) {
    task.fluents.push_back(Atom{"g" + std::to_string(i), {}});
    g.push_back(static_cast<FluentId>(base + i));
  }
  for (int i = 0; i < 3; ++i) {
    GroundAction a;
    a.schema = "rot" + std::to_string(i);
    a.pre = some_pre(1);
    a.add = {g[i], g[(i + 1) % 3]};
    std::sort(a.add.begin(), a.add.end());
    a.del = {g[(i + 2) % 3]};
    task.actions.push_back(std::move(a));
  }
  if (coin(rng)) {
    GroundAction a;
    a.schema = "shortcut";
    a.pre = some_pre(2);
    a.add = g;
    task.actions.push_back(std::move(a));
  }
  if (coin(rng)) task.goal.clear();  // only the triple
  task.goal.insert(task.goal.end(), g.begin(), g.end());
  std::sort(task.goal.begin(), task.goal.end());
  task.goal.erase(std::unique(task.goal.begin(), task.goal.end()), task.goal.end());
  return task;
}

IpModel random_binary_program(std::mt19937& rng, int max_vars, int max_rows) {
  std::uniform_int_distribution<int> nd(1, max_vars);
  std::uniform_int_distribution<int> md(0, max_rows);
  std::uniform_int_distribution<int> cd(-3, 3);
  std::uniform_int_distribution<int> od(-5, 5);
  std::uniform_int_distribution<int> sd(0, 2);
  std::bernoulli_distribution bit(0.5);
  std::bernoulli_distribution slack(0.8);
  const int n = nd(rng);
  const int m = md(rng);
  IpModel model;
  model.name = "random";
  std::vector<int> x0(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    Variable v;
    v.name = "v" + std::to_string(j);
    v.objective = od(rng);
    model.add_variable(v);
    x0[static_cast<std::size_t>(j)] = bit(rng);
  }
  for (int i = 0; i < m; ++i) {
    std::vector<Term> terms;
    int act = 0;
    for (int j = 0; j < n; ++j) {
      if (!bit(rng)) continue;
      const int c = cd(rng);
      if (c == 0) continue;
      terms.push_back({static_cast<std::size_t>(j), static_cast<double>(c)});
      act += c * x0[static_cast<std::size_t>(j)];
    }
    const int s = sd(rng);
    // Mostly satisfied by x0; sometimes shifted to make the program tight or infeasible.
    const int shift = slack(rng) ? 0 : (bit(rng) ? 1 : -1);
    const Sense sense = s == 0 ? Sense::le : s == 1 ? Sense::ge : Sense::eq;
    const int rhs = act + shift;
    model.add_constraint("r" + std::to_string(i), std::move(terms), sense, rhs);
  }
  return model;
}

std::optional<double> enumerate_optimum(const IpModel& model) {
  const std::size_t n = model.num_variables();
  if (n > 24) throw std::invalid_argument("enumeration limited to 24 variables");
  std::optional<double> best;
  std::vector<double> x(n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    for (std::size_t j = 0; j < n; ++j) x[j] = static_cast<double>(bits >> j & 1);
    if (!model.is_feasible(x, 1e-9)) continue;
    const double z = model.objective_value(x);
    if (!best || z < *best) best = z;
  }
  return best;
}

std::vector<std::vector<double>> enumerate_feasible(const IpModel& model) {
  const std::size_t n = model.num_variables();
  if (n > 20) throw std::invalid_argument("enumeration limited to 20 variables");
  std::vector<std::vector<double>> out;
  std::vector<double> x(n);
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
    for (std::size_t j = 0; j < n; ++j) x[j] = static_cast<double>(bits >> j & 1);
    if (model.is_feasible(x, 1e-9)) out.push_back(x);
  }
  return out;
}

bool plan_is_valid(const GroundTask& task, const Plan& plan) {
  State s = initial_state(task);
  for (const auto& raw : plan.steps) {
    auto step = raw;
    std::sort(step.begin(), step.end());
    const auto options = parallel_steps(task, s);
    if (std::find(options.begin(), options.end(), step) == options.end()) return false;
    s = apply_step(task, s, step);
  }
  return satisfies_goal(task, s);
}

Plan plan_from_assignment(const IpModel& model, std::span<const double> x, int T) {
  Plan plan;
  plan.steps.resize(static_cast<std::size_t>(T));
  for (std::size_t j = 0; j < model.num_variables(); ++j) {
    const auto& id = model.variable(j).id;
    if (!id || id->kind != VarKind::action || x[j] < 0.5) continue;
    plan.steps[static_cast<std::size_t>(id->step - 1)].push_back(static_cast<ActionId>(id->subject));
  }
  for (auto& step : plan.steps) std::sort(step.begin(), step.end());
  return plan;
}

std::vector<double> induced_assignment(const IpModel& model, const GroundTask& task,
                                       const Plan& plan) {
  const int T = plan.makespan();
  const std::size_t nf = task.num_fluents();
  std::vector<double> x(model.num_variables(), 0.0);
  auto set = [&](VarKind k, std::size_t subject, int t) {
    if (auto j = model.find({k, static_cast<std::uint32_t>(subject), t})) x[*j] = 1.0;
  };

  // touched[t][f]: how step t uses f (0 = untouched, 1 = requires, 2 = other).
  std::vector<std::vector<int>> touched(static_cast<std::size_t>(T) + 1, std::vector<int>(nf, 0));
  for (int t = 1; t <= T; ++t) {
    for (auto a : plan.steps[static_cast<std::size_t>(t - 1)]) {
      set(VarKind::action, index(a), t);
      const auto& act = task.action(a);
      for (std::size_t f = 0; f < nf; ++f) {
        const auto id = static_cast<FluentId>(f);
        const bool pre = std::binary_search(act.pre.begin(), act.pre.end(), id);
        const bool add = std::binary_search(act.add.begin(), act.add.end(), id);
        const bool del = std::binary_search(act.del.begin(), act.del.end(), id);
        if (pre && del) set(VarKind::predel, f, t);
        else if (pre) set(VarKind::preadd, f, t);
        else if (add) set(VarKind::add, f, t);
        else if (del) set(VarKind::del, f, t);
        if (pre) touched[t][f] = 1;
        else if ((add || del) && touched[t][f] == 0) touched[t][f] = 2;
      }
    }
  }
  for (auto f : task.init) {
    set(VarKind::add, index(f), 0);
  }

  // Truth before each step, and whether the persisted value is needed later.
  State s = initial_state(task);
  std::vector<State> before(static_cast<std::size_t>(T) + 2, 0);
  for (int t = 1; t <= T; ++t) {
    before[t] = s;
    s = apply_step(task, s, plan.steps[static_cast<std::size_t>(t - 1)]);
  }
  for (std::size_t f = 0; f < nf; ++f) {
    const bool goal = std::binary_search(task.goal.begin(), task.goal.end(), static_cast<FluentId>(f));
    bool needed = goal;  // needed after step T
    for (int t = T; t >= 1; --t) {
      const bool holds = before[t] >> f & 1;
      if (touched[t][f] == 0) {
        if (holds && needed) set(VarKind::maintain, f, t);
      } else {
        needed = touched[t][f] == 1;
      }
    }
  }
  // Substituted predel: nothing to set, the y values carry it.
  return x;
}

GroundTask load_logistics_toy() {
  pddl::GroundOptions o;
  o.distinct_bindings = true;
  return pddl::load_task(data_path("logistics/domain.pddl"), data_path("logistics/toy.pddl"), o);
}

GroundTask load_sussman() {
  pddl::GroundOptions o;
  o.distinct_bindings = true;
  return pddl::load_task(data_path("blocksworld/domain.pddl"), data_path("blocksworld/sussman.pddl"),
                         o);
}

}  // namespace optiplan::testing
