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

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "optiplan/encoder.hpp"
#include "optiplan/solver.hpp"
#include "oracles.hpp"

namespace optiplan {
namespace {

GroundAction make_action(std::vector<FluentId> pre, std::vector<FluentId> add,
                         std::vector<FluentId> del) {
  GroundAction a;
  a.schema = "a";
  a.pre = std::move(pre);
  a.add = std::move(add);
  a.del = std::move(del);
  return a;
}

TEST(Classify, FourFamilies) {
  const FluentId f{0}, g{1};
  EXPECT_EQ(classify(make_action({f}, {}, {f}), f), VarKind::predel);
  EXPECT_EQ(classify(make_action({f}, {}, {}), f), VarKind::preadd);
  EXPECT_EQ(classify(make_action({g}, {f}, {}), f), VarKind::add);
  EXPECT_EQ(classify(make_action({g}, {}, {f}), f), VarKind::del);
  EXPECT_EQ(classify(make_action({g}, {}, {}), f), std::nullopt);
  // Required and re-added counts as preadd.
  EXPECT_EQ(classify(make_action({f}, {f}, {}), f), VarKind::preadd);
}

struct Counts {
  std::size_t action_vars, state_vars, rows;
};

// Closed-form size of the unpruned model, straight from the task.
Counts expected_unpruned(const GroundTask& task, int T, bool with_del, bool substitute) {
  Counts c{0, 0, 0};
  const std::size_t per_fluent = 3 + (with_del ? 1 : 0) + (substitute ? 0 : 1);
  c.action_vars = static_cast<std::size_t>(T) * task.num_actions();
  c.state_vars = task.init.size() + static_cast<std::size_t>(T) * task.num_fluents() * per_fluent;
  std::size_t per_step = 0;
  for (std::size_t f = 0; f < task.num_fluents(); ++f) {
    const FluentId id{static_cast<std::uint32_t>(f)};
    per_step += 2 + (with_del ? 1 : 0) + (substitute ? 0 : 1) + 3;  // lb rows, predel eq, mutex x2, chain
    for (const auto& a : task.actions) {
      const auto k = classify(a, id);
      if (k == VarKind::add || k == VarKind::preadd || (with_del && k == VarKind::del)) ++per_step;
    }
  }
  c.rows = task.init.size() + static_cast<std::size_t>(T) * per_step + task.goal.size();
  return c;
}

IpModel encode_mode(const GroundTask& task, int T, Pruning p, bool substitute = true) {
  auto g = PlanningGraph::build_to_goal_level(task);
  while (g.levels() < T) g.extend();
  g.compute_relevance(task.goal);
  EncodeOptions o;
  o.pruning = p;
  o.substitute_predel = substitute;
  return encode_optiplan(g, task, T, o);
}

TEST(Encoder, UnprunedSizeMatchesClosedForm) {
  for (const auto& task : {testing::load_logistics_toy(), testing::load_sussman()}) {
    const int T = PlanningGraph::build_to_goal_level(task).levels();
    for (bool substitute : {true, false}) {
      const auto s = encoding_stats(encode_mode(task, T, Pruning::none, substitute));
      const auto e = expected_unpruned(task, T, true, substitute);
      EXPECT_EQ(s.action_vars, e.action_vars);
      EXPECT_EQ(s.state_change_vars, e.state_vars);
      EXPECT_EQ(s.constraints, e.rows);
      EncodeOptions o;
      o.substitute_predel = substitute;
      const auto b = encoding_stats(encode_baseline(task, T, o));
      const auto eb = expected_unpruned(task, T, false, substitute);
      EXPECT_EQ(b.action_vars, eb.action_vars);
      EXPECT_EQ(b.state_change_vars, eb.state_vars);
      EXPECT_EQ(b.constraints, eb.rows);
    }
  }
}

// Frozen from the closed form above and from the pruning rules on these tasks.
TEST(Encoder, GoldenSizes) {
  const auto log = testing::load_logistics_toy();
  const auto none = encoding_stats(encode_mode(log, 3, Pruning::none));
  EXPECT_EQ(none.action_vars, 36u);
  EXPECT_EQ(none.state_change_vars, 99u);
  EXPECT_EQ(none.constraints, 208u);
  const auto fixed = encoding_stats(encode_mode(log, 3, Pruning::fix_to_zero));
  EXPECT_EQ(fixed.vars(), 135u);
  EXPECT_EQ(fixed.constraints, 208u);
  EXPECT_EQ(fixed.fixed_action_vars, 26u);
  EXPECT_EQ(fixed.fixed_state_change_vars, 20u);
  const auto omit = encoding_stats(encode_mode(log, 3, Pruning::omit));
  EXPECT_EQ(omit.vars(), 89u);
  EXPECT_EQ(omit.constraints, 134u);

  const auto sus = testing::load_sussman();
  const auto so = encoding_stats(encode_mode(sus, 6, Pruning::omit));
  EXPECT_EQ(so.vars(), 353u);
  EXPECT_EQ(so.constraints, 572u);
}

TEST(Encoder, OmitKeepsExactlyTheLiveColumns) {
  const auto task = testing::load_sussman();
  const auto fixed = encode_mode(task, 6, Pruning::fix_to_zero);
  const auto omit = encode_mode(task, 6, Pruning::omit);
  std::set<std::string> live;
  for (const auto& v : fixed.variables())
    if (v.upper > 0) live.insert(v.name);
  std::set<std::string> kept;
  for (const auto& v : omit.variables()) kept.insert(v.name);
  EXPECT_EQ(kept, live);
}

TEST(Encoder, LogisticsGoalRow) {
  const auto task = testing::load_logistics_toy();
  const auto m = encode_mode(task, 3, Pruning::none);
  FluentId goal = task.goal.at(0);
  const auto row = m.find_constraint("goal_" + identifier(task.fluent(goal)) + "_3");
  ASSERT_TRUE(row);
  const auto& c = m.constraint(*row);
  EXPECT_EQ(c.sense, Sense::ge);
  EXPECT_EQ(c.rhs, 1.0);
  std::set<VarKind> kinds;
  for (const auto& t : c.terms) {
    const auto& id = m.variable(t.var).id;
    ASSERT_TRUE(id);
    EXPECT_EQ(id->subject, static_cast<std::uint32_t>(goal));
    EXPECT_EQ(id->step, 3);
    EXPECT_EQ(t.coef, 1.0);
    kinds.insert(id->kind);
  }
  EXPECT_EQ(kinds, (std::set<VarKind>{VarKind::add, VarKind::preadd, VarKind::maintain}));
}

TEST(Encoder, PredelEqualityRowWhenKept) {
  const auto task = testing::load_logistics_toy();
  const auto m = encode_mode(task, 3, Pruning::none, false);
  // Truck positions are required and deleted by drive.
  std::optional<FluentId> truck_at;
  for (std::size_t f = 0; f < task.num_fluents(); ++f)
    if (task.fluents[f].predicate == "truck-at") truck_at = static_cast<FluentId>(f);
  ASSERT_TRUE(truck_at);
  const auto row = m.find_constraint("eff_predel_eq_" + identifier(task.fluent(*truck_at)) + "_2");
  ASSERT_TRUE(row);
  const auto& c = m.constraint(*row);
  EXPECT_EQ(c.sense, Sense::eq);
  int ys = 0, xs = 0;
  for (const auto& t : c.terms) {
    if (m.variable(t.var).id->kind == VarKind::action) {
      ++ys;
      EXPECT_EQ(t.coef, 1.0);
      EXPECT_TRUE(task.action(static_cast<ActionId>(m.variable(t.var).id->subject)).deletes(*truck_at));
    } else {
      ++xs;
      EXPECT_EQ(m.variable(t.var).id->kind, VarKind::predel);
      EXPECT_EQ(t.coef, -1.0);
    }
  }
  EXPECT_EQ(xs, 1);
  EXPECT_EQ(ys, 1);  // distinct bindings: one drive away from each location
  EXPECT_FALSE(encode_mode(task, 3, Pruning::none, true)
                   .find_constraint("eff_predel_eq_" + identifier(task.fluent(*truck_at)) + "_2"));
}

TEST(Encoder, ZeroHorizonWhenGoalHoldsInitially) {
  GroundTask t;
  t.fluents = {{"p", {}}};
  t.actions = {make_action({FluentId{0}}, {}, {FluentId{0}})};
  t.init = {FluentId{0}};
  t.goal = {FluentId{0}};
  const auto g = PlanningGraph::build_to_goal_level(t);
  ASSERT_EQ(g.levels(), 0);
  const auto m = encode_optiplan(g, t, 0);
  EXPECT_EQ(m.num_variables(), 1u);
  EXPECT_EQ(m.num_constraints(), 2u);  // init row, goal row over x^add at step 0
  EXPECT_TRUE(m.is_feasible(std::vector<double>{1.0}));
  EXPECT_FALSE(m.is_feasible(std::vector<double>{0.0}));
}

TEST(Encoder, HorizonBelowGoalLevelIsRejected) {
  const auto task = testing::load_logistics_toy();
  const auto g = PlanningGraph::build_to_goal_level(task);
  try {
    encode_optiplan(g, task, 2);
    FAIL();
  } catch (const EncodeError& e) {
    EXPECT_EQ(e.kind(), EncodeError::Kind::horizon_too_short);
  }
  try {
    encode_optiplan(g, task, 4);
    FAIL();
  } catch (const EncodeError& e) {
    EXPECT_EQ(e.kind(), EncodeError::Kind::graph_too_shallow);
  }
}

TEST(Encoder, BaselineRejectsDeleteWithoutPrecondition) {
  GroundTask t;
  t.fluents = {{"p", {}}, {"q", {}}};
  t.actions = {make_action({FluentId{0}}, {FluentId{0}}, {FluentId{1}})};
  t.actions[0].add = {};
  t.actions[0].pre = {FluentId{0}};
  t.init = {FluentId{0}, FluentId{1}};
  t.goal = {FluentId{0}};
  check_well_formed(t);
  EXPECT_EQ(baseline_unsupported_actions(t).size(), 1u);
  try {
    encode_baseline(t, 1);
    FAIL();
  } catch (const EncodeError& e) {
    EXPECT_EQ(e.kind(), EncodeError::Kind::unsupported_task);
  }
  EncodeOptions o;
  o.permissive = true;
  std::vector<std::string> warnings;
  const auto m = encode_baseline(t, 1, o, &warnings);
  EXPECT_EQ(warnings.size(), 1u);
  EXPECT_GT(m.num_variables(), 0u);
}

TEST(Encoder, Deterministic) {
  const auto task = testing::load_sussman();
  for (auto p : {Pruning::none, Pruning::fix_to_zero, Pruning::omit}) {
    std::string why;
    EXPECT_TRUE(structurally_equal(encode_mode(task, 6, p), encode_mode(task, 6, p), &why)) << why;
  }
}

TEST(Encoder, NamesFollowIdentifiers) {
  const auto task = testing::load_logistics_toy();
  const auto m = encode_mode(task, 3, Pruning::none);
  for (const auto& v : m.variables()) {
    ASSERT_TRUE(v.id);
    EXPECT_EQ(v.name, variable_name(task, *v.id));
    EXPECT_TRUE(v.name.starts_with(v.id->kind == VarKind::action ? "y_" : "x_")) << v.name;
    EXPECT_TRUE(v.integer);
    EXPECT_EQ(v.objective, v.id->kind == VarKind::action ? 1.0 : 0.0);
  }
}

// Every plan of the right length induces a feasible point of the unpruned
// model, and of the pruned models when the plan has no superfluous actions.
bool tight(const GroundTask& task, const Plan& plan) {
  std::set<FluentId> need(task.goal.begin(), task.goal.end());
  for (int t = plan.makespan(); t >= 1; --t) {
    std::set<FluentId> below;
    std::set<ActionId> used;
    for (auto f : need) {
      bool added = false;
      for (auto a : plan.steps[t - 1])
        if (task.action(a).adds(f)) {
          added = true;
          used.insert(a);
          below.insert(task.action(a).pre.begin(), task.action(a).pre.end());
        }
      if (!added) below.insert(f);
    }
    if (used.size() != plan.steps[t - 1].size()) return false;
    need = std::move(below);
  }
  return true;
}

TEST(Encoder, CompleteOnRandomTasks) {
  std::mt19937 rng(21);
  int checked = 0, tight_checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto task = testing::random_task(rng);
    auto g = PlanningGraph::build_to_goal_level(task);
    if (g.status() != PlanningGraph::GoalStatus::reachable) continue;
    for (int extra = 0; extra < 2; ++extra) {
      const int T = g.levels();
      g.compute_relevance(task.goal);
      std::vector<IpModel> models;
      for (auto p : {Pruning::none, Pruning::fix_to_zero, Pruning::omit}) {
        EncodeOptions o;
        o.pruning = p;
        models.push_back(encode_optiplan(g, task, T, o));
      }
      EncodeOptions full;
      full.pruning = Pruning::none;
      full.step0 = Step0Convention::full;
      const auto full_model = encode_optiplan(g, task, T, full);
      for (const auto& plan : testing::all_plans(task, T, 300)) {
        ASSERT_TRUE(testing::plan_is_valid(task, plan));
        const auto x = testing::induced_assignment(models[0], task, plan);
        ASSERT_TRUE(models[0].is_feasible(x))
            << "trial " << trial << " row " << models[0].constraint(*models[0].first_violation(x)).name;
        ASSERT_TRUE(full_model.is_feasible(testing::induced_assignment(full_model, task, plan)));
        EXPECT_DOUBLE_EQ(models[0].objective_value(x), plan.action_count());
        ++checked;
        if (!tight(task, plan)) continue;
        for (std::size_t k = 1; k < models.size(); ++k) {
          const auto xk = testing::induced_assignment(models[k], task, plan);
          ASSERT_TRUE(models[k].is_feasible(xk)) << "trial " << trial << " mode " << k;
        }
        ++tight_checked;
      }
      g.extend();
    }
  }
  EXPECT_GT(checked, 200);
  EXPECT_GT(tight_checked, 100);
}

// Every feasible point of a small model decodes to a valid plan.
TEST(Encoder, SoundOnSmallModelsByEnumeration) {
  std::mt19937 rng(22);
  testing::RandomTaskParams params;
  params.max_fluents = 4;
  params.max_actions = 4;
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 60; ++trial) {
    const auto task = testing::random_task(rng, params);
    auto g = PlanningGraph::build_to_goal_level(task);
    if (g.status() != PlanningGraph::GoalStatus::reachable || g.levels() == 0) continue;
    g.compute_relevance(task.goal);
    EncodeOptions o;
    o.pruning = Pruning::omit;
    const auto m = encode_optiplan(g, task, g.levels(), o);
    if (m.num_variables() > 18) continue;
    for (const auto& x : testing::enumerate_feasible(m))
      ASSERT_TRUE(testing::plan_is_valid(task, testing::plan_from_assignment(m, x, g.levels())))
          << "trial " << trial;
    ++checked;
  }
  EXPECT_GE(checked, 30);
}

// Larger models: optimise random action weights and check the decoded plan.
TEST(Encoder, SoundUnderRandomObjectives) {
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> w(-3, 5);
  int checked = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const auto task = testing::random_task(rng);
    auto g = PlanningGraph::build_to_goal_level(task);
    if (g.status() != PlanningGraph::GoalStatus::reachable) continue;
    g.extend();
    g.compute_relevance(task.goal);
    for (auto p : {Pruning::none, Pruning::omit}) {
      for (bool substitute : {true, false}) {
        EncodeOptions o;
        o.pruning = p;
        o.substitute_predel = substitute;
        auto m = encode_optiplan(g, task, g.levels(), o);
        for (std::size_t j = 0; j < m.num_variables(); ++j)
          m.set_objective(j, w(rng));
        const auto sol = solve_ip(m);
        ASSERT_EQ(sol.status, IpStatus::optimal);
        ASSERT_TRUE(m.is_feasible(sol.assignment));
        ASSERT_TRUE(testing::plan_is_valid(task, testing::plan_from_assignment(m, sol.assignment, g.levels())))
            << "trial " << trial;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Encoder, PredelSubstitutionKeepsPlanSet) {
  std::mt19937 rng(24);
  testing::RandomTaskParams params;
  params.max_fluents = 4;
  params.max_actions = 4;
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 40; ++trial) {
    const auto task = testing::random_task(rng, params);
    auto g = PlanningGraph::build_to_goal_level(task);
    if (g.status() != PlanningGraph::GoalStatus::reachable || g.levels() == 0) continue;
    g.compute_relevance(task.goal);
    std::set<std::vector<std::vector<ActionId>>> plans[2];
    bool small = true;
    for (int k = 0; k < 2; ++k) {
      EncodeOptions o;
      o.pruning = Pruning::omit;
      o.substitute_predel = k == 0;
      const auto m = encode_optiplan(g, task, g.levels(), o);
      if (m.num_variables() > 18) {
        small = false;
        break;
      }
      for (const auto& x : testing::enumerate_feasible(m))
        plans[k].insert(testing::plan_from_assignment(m, x, g.levels()).steps);
    }
    if (!small) continue;
    EXPECT_EQ(plans[0], plans[1]) << "trial " << trial;
    ++checked;
  }
  EXPECT_GE(checked, 20);
}

IpModel drop_del_columns(const IpModel& m) {
  IpModel out;
  out.name = m.name;
  std::vector<std::optional<std::size_t>> map(m.num_variables());
  for (std::size_t j = 0; j < m.num_variables(); ++j) {
    const auto& v = m.variable(j);
    if (v.id && v.id->kind == VarKind::del) continue;
    map[j] = out.add_variable(v);
  }
  for (const auto& c : m.constraints()) {
    if (c.name.starts_with("eff_del_")) continue;
    std::vector<Term> terms;
    for (const auto& t : c.terms)
      if (map[t.var]) terms.push_back({*map[t.var], t.coef});
    out.add_constraint(c.name, std::move(terms), c.sense, c.rhs);
  }
  return out;
}

TEST(Encoder, BaselineMatchesUnprunedWhenDeletesAreRequired) {
  std::mt19937 rng(25);
  testing::RandomTaskParams params;
  params.allow_del_without_pre = false;
  for (int trial = 0; trial < 60; ++trial) {
    const auto task = testing::random_task(rng, params);
    ASSERT_TRUE(baseline_unsupported_actions(task).empty());
    auto g = PlanningGraph::build_to_goal_level(task);
    if (g.status() != PlanningGraph::GoalStatus::reachable) continue;
    const int T = g.levels();
    EncodeOptions o;
    o.pruning = Pruning::none;
    const auto opt = drop_del_columns(encode_optiplan(g, task, T, o));
    std::string why;
    EXPECT_TRUE(structurally_equal(encode_baseline(task, T, o), opt, &why)) << why;
  }
}

}  // namespace
}  // namespace optiplan
