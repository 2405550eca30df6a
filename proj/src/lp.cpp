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

// Dense bounded-variable primal simplex, two phases.

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "optiplan/solver.hpp"

namespace optiplan {

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "?";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Tableau {
 public:
  Tableau(const IpModel& model, std::span<const double> lower, std::span<const double> upper,
          const LpParams& params)
      : model_(model), params_(params), n_(model.num_variables()), m_(model.num_constraints()) {
    // Columns: structurals, one slack per row, then artificials as needed.
    lo_.assign(lower.begin(), lower.end());
    up_.assign(upper.begin(), upper.end());
    for (std::size_t i = 0; i < m_; ++i) {
      switch (model.constraint(i).sense) {
        case Sense::le: lo_.push_back(0.0), up_.push_back(kInf); break;
        case Sense::ge: lo_.push_back(-kInf), up_.push_back(0.0); break;
        case Sense::eq: lo_.push_back(0.0), up_.push_back(0.0); break;
      }
    }
    x_.assign(n_ + m_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      if (!std::isfinite(lo_[j]) || !std::isfinite(up_[j]))
        throw std::invalid_argument("solve_lp requires finite variable bounds");
      x_[j] = lo_[j];
    }

    // Slack i takes the residual when it fits its bounds, otherwise it sits at
    // the violated bound and an artificial absorbs the rest.
    std::vector<double> residual(m_);
    std::vector<double> sign(m_, 0.0);
    std::size_t artificials = 0;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& row = model.constraint(i);
      double r = row.rhs;
      for (const auto& t : row.terms) r -= t.coef * x_[t.var];
      residual[i] = r;
      const std::size_t s = n_ + i;
      if (r >= lo_[s] - params_.tolerance && r <= up_[s] + params_.tolerance) {
        x_[s] = r;
      } else {
        x_[s] = r < lo_[s] ? lo_[s] : up_[s];
        sign[i] = r - x_[s] > 0 ? 1.0 : -1.0;
        ++artificials;
      }
    }
    cols_ = n_ + m_ + artificials;
    lo_.resize(cols_, 0.0);
    up_.resize(cols_, kInf);
    x_.resize(cols_, 0.0);
    cost_.assign(cols_, 0.0);
    tab_.assign(m_ * cols_, 0.0);
    head_.assign(m_, 0);
    basic_row_.assign(cols_, -1);

    std::size_t next_art = n_ + m_;
    for (std::size_t i = 0; i < m_; ++i) {
      const auto& row = model.constraint(i);
      double* r = &tab_[i * cols_];
      const std::size_t s = n_ + i;
      if (sign[i] == 0.0) {
        for (const auto& t : row.terms) r[t.var] = t.coef;
        r[s] = 1.0;
        head_[i] = s;
      } else {
        // a x + s + sign*art = b, scaled by sign so the artificial has +1.
        for (const auto& t : row.terms) r[t.var] = sign[i] * t.coef;
        r[s] = sign[i];
        const std::size_t a = next_art++;
        r[a] = 1.0;
        x_[a] = sign[i] * (residual[i] - x_[s]);
        cost_[a] = 1.0;
        head_[i] = a;
      }
      basic_row_[head_[i]] = static_cast<int>(i);
    }
  }

  LpSolution solve() {
    LpSolution out;
    if (cols_ > n_ + m_) {
      compute_reduced_costs();
      const auto st = iterate(out.iterations);
      if (st == LpStatus::iteration_limit) {
        out.status = st;
        return out;
      }
      double infeas = 0.0;
      for (std::size_t j = n_ + m_; j < cols_; ++j) infeas += x_[j];
      if (infeas > 1e-7) {
        out.status = LpStatus::infeasible;
        return out;
      }
      for (std::size_t j = n_ + m_; j < cols_; ++j) {
        up_[j] = 0.0;
        cost_[j] = 0.0;
      }
    }
    for (std::size_t j = 0; j < n_; ++j) cost_[j] = model_.variable(j).objective;
    compute_reduced_costs();
    out.status = iterate(out.iterations);
    if (out.status != LpStatus::optimal) return out;
    out.x.assign(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(n_));
    for (std::size_t j = 0; j < n_; ++j) out.x[j] = std::clamp(out.x[j], lo_[j], up_[j]);
    out.objective = model_.objective_value(out.x);
    out.unstable = model_.first_violation(out.x, 1e-6).has_value();
    return out;
  }

 private:
  void compute_reduced_costs() {
    d_ = cost_;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost_[head_[i]];
      if (cb == 0.0) continue;
      const double* r = &tab_[i * cols_];
      for (std::size_t j = 0; j < cols_; ++j) d_[j] -= cb * r[j];
    }
  }

  // Entering column and direction (+1 increase, -1 decrease), or npos.
  std::size_t price(bool bland, double& dir) const {
    const double tol = params_.tolerance;
    std::size_t best = npos;
    double best_score = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (basic_row_[j] >= 0 || lo_[j] == up_[j]) continue;
      double score = 0.0;
      double dj = d_[j];
      if (dj < -tol && x_[j] < up_[j] - tol) {
        score = -dj;
      } else if (dj > tol && x_[j] > lo_[j] + tol) {
        score = dj;
      } else {
        continue;
      }
      if (bland) {
        dir = dj < 0 ? 1.0 : -1.0;
        return j;
      }
      if (score > best_score) {
        best_score = score;
        best = j;
        dir = dj < 0 ? 1.0 : -1.0;
      }
    }
    return best;
  }

  LpStatus iterate(std::size_t& iterations) {
    const double tol = params_.tolerance;
    std::size_t degenerate = 0;
    for (;;) {
      if (iterations >= params_.iteration_limit) return LpStatus::iteration_limit;
      const bool bland = degenerate >= params_.degeneracy_streak;
      double dir = 0.0;
      const std::size_t q = price(bland, dir);
      if (q == npos) return LpStatus::optimal;
      ++iterations;

      // Ratio test. Basic i moves by -dir * theta * a_iq.
      double theta = up_[q] - lo_[q];
      std::size_t leave_row = npos;
      double best_pivot = 0.0;
      for (std::size_t i = 0; i < m_; ++i) {
        const double a = tab_[i * cols_ + q] * dir;
        if (std::abs(a) <= tol) continue;
        const std::size_t b = head_[i];
        double limit;
        if (a > 0) {
          if (!std::isfinite(lo_[b])) continue;
          limit = std::max(0.0, (x_[b] - lo_[b]) / a);
        } else {
          if (!std::isfinite(up_[b])) continue;
          limit = std::max(0.0, (up_[b] - x_[b]) / -a);
        }
        if (limit < theta - tol) {
          theta = limit;
          leave_row = i;
          best_pivot = std::abs(a);
        } else if (limit <= theta + tol && leave_row != npos &&
                   (bland ? head_[i] < head_[leave_row] : std::abs(a) > best_pivot)) {
          theta = std::min(theta, limit);
          leave_row = i;
          best_pivot = std::abs(a);
        }
      }
      if (!std::isfinite(theta)) return LpStatus::unbounded;
      degenerate = theta <= tol ? degenerate + 1 : 0;

      if (theta != 0.0) {
        for (std::size_t i = 0; i < m_; ++i) {
          const double a = tab_[i * cols_ + q];
          if (a != 0.0) x_[head_[i]] -= dir * theta * a;
        }
        x_[q] += dir * theta;
      }
      if (leave_row == npos) {
        // Bound flip.
        x_[q] = dir > 0 ? up_[q] : lo_[q];
        continue;
      }
      const std::size_t out = head_[leave_row];
      const double a_out = tab_[leave_row * cols_ + q] * dir;
      x_[out] = a_out > 0 ? lo_[out] : up_[out];
      pivot(leave_row, q);
    }
  }

  void pivot(std::size_t r, std::size_t q) {
    double* pr = &tab_[r * cols_];
    const double inv = 1.0 / pr[q];
    for (std::size_t j = 0; j < cols_; ++j) pr[j] *= inv;
    pr[q] = 1.0;
    nz_.clear();
    for (std::size_t j = 0; j < cols_; ++j)
      if (std::abs(pr[j]) > 1e-14) nz_.push_back(j);
      else pr[j] = 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      double* ri = &tab_[i * cols_];
      const double f = ri[q];
      if (f == 0.0) continue;
      for (auto j : nz_) ri[j] -= f * pr[j];
      ri[q] = 0.0;
    }
    const double fd = d_[q];
    if (fd != 0.0) {
      for (auto j : nz_) d_[j] -= fd * pr[j];
      d_[q] = 0.0;
    }
    basic_row_[head_[r]] = -1;
    head_[r] = q;
    basic_row_[q] = static_cast<int>(r);
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  const IpModel& model_;
  const LpParams& params_;
  std::size_t n_, m_, cols_ = 0;
  std::vector<double> lo_, up_, x_, cost_, d_, tab_;
  std::vector<std::size_t> head_;
  std::vector<int> basic_row_;
  std::vector<std::size_t> nz_;
};

}  // namespace

LpSolution solve_lp(const IpModel& model, std::span<const double> lower,
                    std::span<const double> upper, const LpParams& params) {
  std::vector<double> lo, up;
  if (lower.empty() || upper.empty()) {
    for (const auto& v : model.variables()) {
      lo.push_back(v.lower);
      up.push_back(v.upper);
    }
    if (lower.empty()) lower = lo;
    if (upper.empty()) upper = up;
  }
  if (lower.size() != model.num_variables() || upper.size() != model.num_variables())
    throw std::invalid_argument("bound vector size mismatch");
  for (std::size_t j = 0; j < lower.size(); ++j)
    if (lower[j] > upper[j]) {
      LpSolution out;
      out.status = LpStatus::infeasible;
      return out;
    }
  Tableau tableau(model, lower, upper, params);
  return tableau.solve();
}

}  // namespace optiplan
