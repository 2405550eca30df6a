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

#include "optiplan/plangraph.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace optiplan {

namespace {

bool intersects(std::span<const FluentId> a, std::span<const FluentId> b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

}  // namespace

PlanningGraph::PlanningGraph(const GroundTask& task) : task_(&task), nf_(task.num_fluents()) {
  noop_sets_.resize(nf_);
  for (std::size_t f = 0; f < nf_; ++f) noop_sets_[f] = {static_cast<FluentId>(f)};

  FluentLevel level0;
  level0.present.assign(nf_, 0);
  level0.mutex.assign(nf_ * nf_, false);
  for (auto f : task.init) level0.present[index(f)] = 1;
  for (std::size_t f = 0; f < nf_; ++f)
    if (level0.present[f]) level0.list.push_back(static_cast<FluentId>(f));
  fluent_levels_.push_back(std::move(level0));
  action_layers_.emplace_back();
  if (goals_nonmutex(0, task.goal)) status_ = GoalStatus::reachable;
}

PlanningGraph PlanningGraph::build_to_goal_level(const GroundTask& task) {
  PlanningGraph graph(task);
  for (;;) {
    if (graph.goals_nonmutex(graph.levels(), task.goal)) {
      graph.status_ = GoalStatus::reachable;
      return graph;
    }
    if (graph.leveled_off()) {
      graph.status_ = GoalStatus::unreachable;
      return graph;
    }
    graph.extend();
  }
}

int PlanningGraph::clamp(int t) const {
  if (t < 0 || t > levels_) throw std::out_of_range("planning graph level out of range");
  return std::min(t, stored_levels());
}

std::span<const FluentId> PlanningGraph::pre_of(LayerNode n) const {
  if (n.noop) return noop_sets_[n.id];
  return task_->actions[n.id].pre;
}

std::span<const FluentId> PlanningGraph::add_of(LayerNode n) const {
  if (n.noop) return noop_sets_[n.id];
  return task_->actions[n.id].add;
}

std::span<const FluentId> PlanningGraph::del_of(LayerNode n) const {
  if (n.noop) return {};
  return task_->actions[n.id].del;
}

bool PlanningGraph::fmutex(const FluentLevel& level, FluentId f, FluentId g) const {
  return level.mutex[index(f) * nf_ + index(g)];
}

void PlanningGraph::extend() {
  ++levels_;
  relevance_levels_ = -1;
  relevant_actions_.clear();
  relevant_fluents_.clear();
  if (leveled_off_) return;

  const FluentLevel& prev = fluent_levels_.back();
  ActionLayer layer;
  layer.action_slot.assign(task_->num_actions(), -1);
  layer.noop_slot.assign(nf_, -1);
  for (std::size_t i = 0; i < task_->num_actions(); ++i) {
    const auto& a = task_->actions[i];
    bool ok = std::all_of(a.pre.begin(), a.pre.end(),
                          [&](FluentId f) { return prev.present[index(f)] != 0; });
    for (std::size_t p = 0; ok && p < a.pre.size(); ++p)
      for (std::size_t q = p + 1; q < a.pre.size(); ++q)
        if (fmutex(prev, a.pre[p], a.pre[q])) {
          ok = false;
          break;
        }
    if (!ok) continue;
    layer.action_slot[i] = static_cast<int>(layer.nodes.size());
    layer.nodes.push_back(LayerNode::of(static_cast<ActionId>(i)));
  }
  for (auto f : prev.list) {
    layer.noop_slot[index(f)] = static_cast<int>(layer.nodes.size());
    layer.nodes.push_back(LayerNode::maintain(f));
  }

  const std::size_t n = layer.nodes.size();
  layer.mutex.assign(n * n, false);
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = layer.nodes[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto y = layer.nodes[j];
      bool mx = intersects(del_of(x), add_of(y)) || intersects(del_of(y), add_of(x)) ||
                intersects(del_of(x), pre_of(y)) || intersects(del_of(y), pre_of(x));
      if (!mx) {
        for (auto p : pre_of(x)) {
          for (auto q : pre_of(y))
            if (p != q && fmutex(prev, p, q)) {
              mx = true;
              break;
            }
          if (mx) break;
        }
      }
      if (mx) {
        layer.mutex[i * n + j] = true;
        layer.mutex[j * n + i] = true;
      }
    }
  }

  FluentLevel next;
  next.present.assign(nf_, 0);
  next.mutex.assign(nf_ * nf_, false);
  std::vector<std::vector<std::size_t>> producers(nf_);
  for (std::size_t i = 0; i < n; ++i)
    for (auto f : add_of(layer.nodes[i])) {
      next.present[index(f)] = 1;
      producers[index(f)].push_back(i);
    }
  for (std::size_t f = 0; f < nf_; ++f)
    if (next.present[f]) next.list.push_back(static_cast<FluentId>(f));
  for (std::size_t a = 0; a < next.list.size(); ++a) {
    const auto f = index(next.list[a]);
    for (std::size_t b = a + 1; b < next.list.size(); ++b) {
      const auto g = index(next.list[b]);
      bool all_mutex = true;
      for (auto x : producers[f]) {
        for (auto y : producers[g])
          if (x == y || !layer.mutex[x * n + y]) {
            all_mutex = false;
            break;
          }
        if (!all_mutex) break;
      }
      if (all_mutex) {
        next.mutex[f * nf_ + g] = true;
        next.mutex[g * nf_ + f] = true;
      }
    }
  }

  const bool fixed_point = next == prev;
  action_layers_.push_back(std::move(layer));
  if (fixed_point) {
    // Level t equals level t-1, so layer t+1 equals layer t and so on; the
    // last stored action layer and the previous fluent level serve all
    // deeper indices.
    leveled_off_ = true;
    fluent_levels_.push_back(fluent_levels_.back());
    return;
  }
  fluent_levels_.push_back(std::move(next));
}

bool PlanningGraph::has_fluent(int t, FluentId f) const {
  return fluent_levels_[clamp(t)].present[index(f)] != 0;
}

std::vector<FluentId> PlanningGraph::fluents(int t) const { return fluent_levels_[clamp(t)].list; }

bool PlanningGraph::fluent_mutex(int t, FluentId f, FluentId g) const {
  const auto& level = fluent_levels_[clamp(t)];
  if (!level.present[index(f)] || !level.present[index(g)]) return false;
  return fmutex(level, f, g);
}

int PlanningGraph::slot(const ActionLayer& layer, LayerNode n) const {
  return n.noop ? layer.noop_slot[n.id] : layer.action_slot[n.id];
}

bool PlanningGraph::has_action(int t, ActionId a) const {
  if (t < 1) return false;
  return action_layers_[clamp(t)].action_slot[index(a)] >= 0;
}

std::vector<ActionId> PlanningGraph::actions(int t) const {
  std::vector<ActionId> out;
  if (t < 1) return out;
  for (const auto& n : action_layers_[clamp(t)].nodes)
    if (!n.noop) out.push_back(static_cast<ActionId>(n.id));
  return out;
}

bool PlanningGraph::node_mutex(int t, LayerNode x, LayerNode y) const {
  if (t < 1) return false;
  const auto& layer = action_layers_[clamp(t)];
  const int i = slot(layer, x);
  const int j = slot(layer, y);
  if (i < 0 || j < 0) return false;
  return layer.mutex[static_cast<std::size_t>(i) * layer.nodes.size() + static_cast<std::size_t>(j)];
}

bool PlanningGraph::goals_nonmutex(int t, std::span<const FluentId> goals) const {
  for (std::size_t i = 0; i < goals.size(); ++i) {
    if (!has_fluent(t, goals[i])) return false;
    for (std::size_t j = i + 1; j < goals.size(); ++j)
      if (fluent_mutex(t, goals[i], goals[j])) return false;
  }
  return true;
}

void PlanningGraph::compute_relevance(std::span<const FluentId> goals) {
  const int top = levels_;
  for (auto g : goals)
    if (!has_fluent(top, g))
      throw std::invalid_argument("goal fluent absent from the top planning graph level");

  relevant_fluents_.assign(static_cast<std::size_t>(top) + 1, std::vector<char>(nf_, 0));
  relevant_actions_.assign(static_cast<std::size_t>(top) + 1,
                           std::vector<char>(task_->num_actions(), 0));
  for (auto g : goals) relevant_fluents_[top][index(g)] = 1;
  for (int t = top; t >= 1; --t) {
    auto& below = relevant_fluents_[t - 1];
    const auto& here = relevant_fluents_[t];
    for (std::size_t f = 0; f < nf_; ++f)
      if (here[f] && has_fluent(t - 1, static_cast<FluentId>(f))) below[f] = 1;
    for (auto a : actions(t)) {
      const auto& act = task_->action(a);
      const bool useful = std::any_of(act.add.begin(), act.add.end(),
                                      [&](FluentId f) { return here[index(f)] != 0; });
      if (!useful) continue;
      relevant_actions_[t][index(a)] = 1;
      for (auto p : act.pre) below[index(p)] = 1;
    }
  }
  relevance_levels_ = top;
}

bool PlanningGraph::relevant_action(int t, ActionId a) const {
  if (!has_relevance()) throw std::logic_error("relevance not computed");
  if (t < 1 || t > relevance_levels_) return false;
  return relevant_actions_[t][index(a)] != 0;
}

bool PlanningGraph::relevant_fluent(int t, FluentId f) const {
  if (!has_relevance()) throw std::logic_error("relevance not computed");
  if (t < 0 || t > relevance_levels_) return false;
  return relevant_fluents_[t][index(f)] != 0;
}

std::string PlanningGraph::dump() const {
  std::ostringstream out;
  auto node_name = [&](LayerNode n) {
    return n.noop ? "noop_" + identifier(task_->fluents[n.id])
                  : identifier(task_->actions[n.id]);
  };
  for (int t = 0; t <= levels_; ++t) {
    out << "LEVEL " << t << "\n";
    if (t >= 1) {
      const auto& layer = action_layers_[clamp(t)];
      out << "A";
      for (auto a : actions(t)) out << " " << identifier(task_->action(a));
      out << "\n";
      const auto n = layer.nodes.size();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (layer.mutex[i * n + j])
            out << "MUTEXA " << node_name(layer.nodes[i]) << " " << node_name(layer.nodes[j])
                << "\n";
    }
    const auto fl = fluents(t);
    out << "F";
    for (auto f : fl) out << " " << identifier(task_->fluent(f));
    out << "\n";
    for (std::size_t i = 0; i < fl.size(); ++i)
      for (std::size_t j = i + 1; j < fl.size(); ++j)
        if (fluent_mutex(t, fl[i], fl[j]))
          out << "MUTEXF " << identifier(task_->fluent(fl[i])) << " "
              << identifier(task_->fluent(fl[j])) << "\n";
  }
  return out.str();
}

}  // namespace optiplan
