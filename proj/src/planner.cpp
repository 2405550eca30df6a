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

#include "optiplan/planner.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "optiplan/plangraph.hpp"

namespace optiplan {

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::size_t Plan::action_count() const {
  std::size_t n = 0;
  for (const auto& s : steps) n += s.size();
  return n;
}

std::size_t Plan::empty_steps() const {
  return static_cast<std::size_t>(
      std::count_if(steps.begin(), steps.end(), [](const auto& s) { return s.empty(); }));
}

std::string_view to_string(Encoding e) { return e == Encoding::optiplan ? "optiplan" : "baseline"; }

std::string_view to_string(PlanResult::Status s) {
  switch (s) {
    case PlanResult::Status::solved: return "solved";
    case PlanResult::Status::unsolvable: return "unsolvable";
    case PlanResult::Status::horizon_limit: return "horizon_limit";
    case PlanResult::Status::solver_limit: return "solver_limit";
    case PlanResult::Status::invalid_plan: return "invalid_plan";
  }
  return "?";
}

PlanResult plan(const GroundTask& task, const PlannerOptions& opts) {
  const auto t0 = Clock::now();
  PlanResult result;
  if (opts.max_horizon < 1) throw std::invalid_argument("max_horizon must be at least 1");

  EncodeOptions enc;
  enc.pruning = opts.pruning;
  enc.step0 = opts.step0;
  enc.permissive = opts.permissive_baseline;
  enc.substitute_predel = opts.substitute_predel.value_or(opts.encoding == Encoding::optiplan);

  const bool lossy = opts.encoding == Encoding::baseline && opts.permissive_baseline &&
                     !baseline_unsupported_actions(task).empty();

  SolveParams sp = opts.solver;
  sp.first_feasible_stop = !opts.prove_optimal;

  PlanningGraph graph = PlanningGraph::build_to_goal_level(task);
  if (graph.status() == PlanningGraph::GoalStatus::unreachable) {
    result.status = PlanResult::Status::unsolvable;
    result.diagnostics.push_back("goals unreachable: planning graph leveled off at level " +
                                 std::to_string(graph.stored_levels()));
    result.seconds = since(t0);
    return result;
  }

  for (int T = graph.levels(); T <= opts.max_horizon; ++T, graph.extend()) {
    HorizonAttempt at;
    at.horizon = T;
    auto t1 = Clock::now();
    IpModel model;
    if (opts.encoding == Encoding::optiplan) {
      if (!graph.goals_nonmutex(T, task.goal)) {
        result.attempts.push_back(at);
        continue;
      }
      graph.compute_relevance(task.goal);
      model = encode_optiplan(graph, task, T, enc);
    } else {
      std::vector<std::string> warnings;
      model = encode_baseline(task, T, enc, &warnings);
      if (result.attempts.empty())
        for (auto& w : warnings) result.diagnostics.push_back(std::move(w));
    }
    at.encode_seconds = since(t1);
    at.vars_before = model.num_variables();
    at.cons_before = model.num_constraints();
    if (opts.on_model) opts.on_model(model, T);

    t1 = Clock::now();
    std::optional<PresolveResult> reduced;
    if (opts.presolve) reduced = presolve(model);
    at.presolve_seconds = since(t1);
    const IpModel& target = reduced ? reduced->model : model;
    at.vars_after = target.num_variables();
    at.cons_after = target.num_constraints();

    IpSolution sol;
    if (reduced && reduced->report.infeasible()) {
      sol.status = IpStatus::infeasible;
    } else {
      sol = solve_ip(target, sp);
      if (reduced) sol = lift(sol, reduced->report);
    }
    at.solve_seconds = sol.seconds;
    at.status = sol.status;
    at.nodes = sol.nodes;
    at.lp_iterations = sol.lp_iterations;
    result.attempts.push_back(at);

    if (sol.status == IpStatus::infeasible) continue;
    if (!sol.has_incumbent) {
      result.status = PlanResult::Status::solver_limit;
      result.diagnostics.push_back("solver stopped at horizon " + std::to_string(T) + ": " +
                                   std::string(to_string(sol.status)));
      result.seconds = since(t0);
      return result;
    }
    result.plan = extract_plan(model, sol.assignment, T);
    result.objective = sol.objective;
    const auto v = validate_plan(task, result.plan);
    if (!v.ok) {
      if (!lossy) throw std::logic_error("extracted plan failed validation: " + v.reason);
      result.status = PlanResult::Status::invalid_plan;
      result.diagnostics.push_back("plan at horizon " + std::to_string(T) +
                                   " is invalid under the full semantics: " + v.reason);
      result.seconds = since(t0);
      return result;
    }
    if (result.plan.empty_steps() > 0)
      result.diagnostics.push_back(std::to_string(result.plan.empty_steps()) +
                                   " empty step(s) in the plan");
    if (sol.status != IpStatus::optimal && opts.prove_optimal)
      result.diagnostics.push_back("action count not proven minimal: " +
                                   std::string(to_string(sol.status)));
    result.status = PlanResult::Status::solved;
    result.seconds = since(t0);
    return result;
  }
  result.status = PlanResult::Status::horizon_limit;
  result.diagnostics.push_back("no plan up to horizon " + std::to_string(opts.max_horizon));
  result.seconds = since(t0);
  return result;
}

Plan extract_plan(const IpModel& model, std::span<const double> assignment, int horizon) {
  Plan p;
  p.steps.resize(static_cast<std::size_t>(horizon));
  for (std::size_t j = 0; j < model.num_variables(); ++j) {
    const auto& v = model.variable(j);
    if (!v.id || v.id->kind != VarKind::action) continue;
    if (v.id->step < 1 || v.id->step > horizon) continue;
    if (assignment[j] > 0.5)
      p.steps[static_cast<std::size_t>(v.id->step - 1)].push_back(static_cast<ActionId>(v.id->subject));
  }
  for (auto& s : p.steps) std::sort(s.begin(), s.end());
  return p;
}

Validation validate_plan(const GroundTask& task, const Plan& plan) {
  auto reject = [](int step, std::optional<ActionId> a, std::optional<FluentId> f, std::string why) {
    Validation v;
    v.ok = false;
    v.step = step;
    v.action = a;
    v.fluent = f;
    v.reason = std::move(why);
    return v;
  };
  std::set<FluentId> state(task.init.begin(), task.init.end());
  for (std::size_t s = 0; s < plan.steps.size(); ++s) {
    const int step = static_cast<int>(s) + 1;
    std::vector<ActionId> acts = plan.steps[s];
    std::sort(acts.begin(), acts.end());
    acts.erase(std::unique(acts.begin(), acts.end()), acts.end());
    for (auto a : acts) {
      if (index(a) >= task.num_actions()) return reject(step, a, std::nullopt, "unknown action id");
      for (auto f : task.action(a).pre)
        if (!state.count(f))
          return reject(step, a, f,
                        "precondition " + to_pddl(task.fluent(f)) + " of " +
                            to_pddl(task.action(a)) + " does not hold at step " +
                            std::to_string(step));
    }
    for (auto a : acts) {
      for (auto b : acts) {
        if (a == b) continue;
        const auto& A = task.action(a);
        const auto& B = task.action(b);
        for (auto f : A.del) {
          if (B.requires_fluent(f))
            return reject(step, a, f,
                          to_pddl(A) + " deletes " + to_pddl(task.fluent(f)) + " required by " +
                              to_pddl(B));
          if (B.adds(f))
            return reject(step, a, f,
                          to_pddl(A) + " deletes " + to_pddl(task.fluent(f)) + " added by " +
                              to_pddl(B));
        }
      }
    }
    std::set<FluentId> next = state;
    for (auto a : acts)
      for (auto f : task.action(a).del) next.erase(f);
    for (auto a : acts)
      for (auto f : task.action(a).add) next.insert(f);
    state = std::move(next);
  }
  for (auto g : task.goal)
    if (!state.count(g))
      return reject(0, std::nullopt, g, "goal " + to_pddl(task.fluent(g)) + " not reached");
  return {};
}

std::string format_plan(const GroundTask& task, const Plan& plan) {
  std::ostringstream out;
  for (std::size_t s = 0; s < plan.steps.size(); ++s) {
    out << s + 1 << ":";
    for (auto a : plan.steps[s]) out << " " << to_pddl(task.action(a));
    out << "\n";
  }
  return out.str();
}

}  // namespace optiplan
