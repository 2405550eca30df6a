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
#include <chrono>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "optiplan/solver.hpp"

namespace optiplan {

std::string_view to_string(IpStatus status) {
  switch (status) {
    case IpStatus::optimal: return "optimal";
    case IpStatus::feasible: return "feasible";
    case IpStatus::infeasible: return "infeasible";
    case IpStatus::node_limit: return "node_limit";
    case IpStatus::time_limit: return "time_limit";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

struct Node {
  std::vector<std::pair<std::size_t, double>> fixes;  // (var, value) on top of root bounds
  double bound = -std::numeric_limits<double>::infinity();  // parent LP value
  std::size_t depth = 0;
  std::size_t seq = 0;
};

struct WorseBound {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.seq > b.seq;
  }
};

bool integral_objective(const IpModel& model) {
  if (model.objective_offset != std::floor(model.objective_offset)) return false;
  for (const auto& v : model.variables())
    if (v.objective != 0.0 && (!v.integer || v.objective != std::floor(v.objective))) return false;
  return true;
}

class Search {
 public:
  Search(const IpModel& model, const SolveParams& params)
      : model_(model), params_(params), start_(Clock::now()),
        integral_obj_(integral_objective(model)) {
    for (const auto& v : model.variables()) {
      root_lo_.push_back(v.lower);
      root_up_.push_back(v.upper);
    }
  }

  IpSolution run() {
    Node root;
    auto lp = solve_node(root);
    out_.root_bound = lp.status == LpStatus::optimal ? lp.objective : out_.root_bound;
    std::vector<Node> stack;
    std::priority_queue<Node, std::vector<Node>, WorseBound> heap;
    bool best_first = params_.node_order == NodeOrder::best_bound;

    auto push_children = [&](const Node& parent, double value, std::size_t var, double lp_value) {
      const bool up_first = lp_value >= 0.5;
      for (int k = 0; k < 2; ++k) {
        // Depth-first pops the last pushed child first.
        const bool up = (k == 1) == up_first;
        Node child = parent;
        child.fixes.emplace_back(var, up ? std::ceil(lp_value) : std::floor(lp_value));
        child.bound = value;
        child.depth = parent.depth + 1;
        child.seq = seq_++;
        if (best_first) {
          heap.push(std::move(child));
        } else {
          stack.push_back(std::move(child));
        }
      }
    };

    bool limit_hit = false;
    auto handle = [&](const Node& node, LpSolution& sol) -> bool {
      // Returns true when the search should stop.
      if (sol.status == LpStatus::iteration_limit) {
        throw std::runtime_error("LP iteration limit reached");
      }
      if (sol.status != LpStatus::optimal) return false;
      if (prunable(sol.objective)) return false;
      const auto branch = pick_branch(sol.x);
      if (!branch) {
        auto rounded = sol.x;
        for (std::size_t j = 0; j < rounded.size(); ++j)
          if (model_.variable(j).integer) rounded[j] = std::round(rounded[j]);
        if (model_.is_feasible(rounded, params_.feasibility_tolerance)) {
          new_incumbent(std::move(rounded));
          if (params_.first_feasible_stop) return true;
          if (params_.node_order == NodeOrder::depth_first_then_best_bound && !best_first) {
            best_first = true;
            for (auto& n : stack) heap.push(std::move(n));
            stack.clear();
          }
          return false;
        }
        // Rounding broke a row; branch on the least integral variable instead.
        const auto j = least_integral(sol.x);
        if (!j) return false;
        push_children(node, sol.objective, *j, sol.x[*j]);
        return false;
      }
      push_children(node, sol.objective, *branch, sol.x[*branch]);
      return false;
    };

    bool stop = handle(root, lp);
    while (!stop) {
      if (best_first ? heap.empty() : stack.empty()) break;
      if (out_.nodes >= params_.node_limit) {
        out_.status = IpStatus::node_limit;
        limit_hit = true;
        break;
      }
      if (elapsed() > params_.time_limit) {
        out_.status = IpStatus::time_limit;
        limit_hit = true;
        break;
      }
      Node node;
      if (best_first) {
        node = heap.top();
        heap.pop();
      } else {
        node = std::move(stack.back());
        stack.pop_back();
      }
      if (prunable(node.bound)) continue;
      ++out_.nodes;
      auto sol = solve_node(node);
      if (params_.record_trace)
        out_.trace.push_back({node.depth, node.bound,
                              sol.status == LpStatus::optimal
                                  ? sol.objective
                                  : std::numeric_limits<double>::infinity()});
      stop = handle(node, sol);
    }

    double open_bound = std::numeric_limits<double>::infinity();
    for (const auto& n : stack) open_bound = std::min(open_bound, n.bound);
    if (!heap.empty()) open_bound = std::min(open_bound, heap.top().bound);

    if (out_.has_incumbent) {
      if (!limit_hit) out_.status = stop ? IpStatus::feasible : IpStatus::optimal;
      out_.bound = out_.status == IpStatus::optimal ? out_.objective
                                                    : std::min(open_bound, out_.objective);
    } else if (!limit_hit) {
      out_.status = IpStatus::infeasible;
      out_.bound = std::numeric_limits<double>::infinity();
    } else {
      out_.bound = open_bound;
    }
    if (out_.status == IpStatus::feasible && out_.bound >= out_.objective - 1e-9)
      out_.status = IpStatus::optimal;
    out_.seconds = elapsed();
    return std::move(out_);
  }

 private:
  double elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }

  LpSolution solve_node(const Node& node) {
    lo_ = root_lo_;
    up_ = root_up_;
    for (const auto& [j, v] : node.fixes) {
      lo_[j] = v;
      up_[j] = v;
    }
    auto sol = solve_lp(model_, lo_, up_, params_.lp);
    out_.lp_iterations += sol.iterations;
    return sol;
  }

  bool prunable(double value) const {
    if (!out_.has_incumbent) return false;
    double v = value;
    if (integral_obj_) v = std::ceil(v - 1e-6);
    return v >= out_.objective - 1e-9;
  }

  std::optional<std::size_t> pick_branch(const std::vector<double>& x) const {
    std::optional<std::size_t> best;
    double best_frac = params_.integrality_tolerance;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!model_.variable(j).integer) continue;
      const double frac = std::abs(x[j] - std::round(x[j]));
      if (frac <= params_.integrality_tolerance) continue;
      if (params_.branching == Branching::first_fractional) return j;
      if (frac > best_frac + 1e-12) {
        best_frac = frac;
        best = j;
      }
    }
    return best;
  }

  std::optional<std::size_t> least_integral(const std::vector<double>& x) const {
    std::optional<std::size_t> best;
    double best_frac = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!model_.variable(j).integer || lo_[j] == up_[j]) continue;
      const double frac = std::abs(x[j] - std::round(x[j]));
      if (frac > best_frac) {
        best_frac = frac;
        best = j;
      }
    }
    return best;
  }

  void new_incumbent(std::vector<double> x) {
    const double z = model_.objective_value(x);
    if (out_.has_incumbent && z >= out_.objective - 1e-9) return;
    if (!out_.has_incumbent) out_.first_feasible_seconds = elapsed();
    out_.has_incumbent = true;
    out_.assignment = std::move(x);
    out_.objective = z;
    out_.incumbents.push_back(z);
  }

  const IpModel& model_;
  const SolveParams& params_;
  Clock::time_point start_;
  bool integral_obj_;
  std::vector<double> root_lo_, root_up_, lo_, up_;
  std::size_t seq_ = 0;
  IpSolution out_;
};

}  // namespace

IpSolution solve_ip(const IpModel& model, const SolveParams& params) {
  if (params.integrality_tolerance <= 0 || params.feasibility_tolerance <= 0)
    throw std::invalid_argument("solver tolerances must be positive");
  Search search(model, params);
  return search.run();
}

}  // namespace optiplan
