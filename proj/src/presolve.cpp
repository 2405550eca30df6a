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

#include "optiplan/presolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace optiplan {

namespace {

constexpr double kTol = 1e-9;

bool is_integral(double v) { return std::abs(v - std::round(v)) <= kTol; }

struct Row {
  std::vector<Term> terms;
  Sense sense = Sense::ge;
  double rhs = 0.0;
  bool alive = true;
};

struct Infeasible {
  std::string reason;
};

class Presolver {
 public:
  Presolver(const IpModel& model, const PresolveOptions& opts) : model_(model), opts_(opts) {
    const std::size_t n = model.num_variables();
    for (const auto& v : model.variables()) {
      if (!v.integer || !std::isfinite(v.lower) || !std::isfinite(v.upper))
        throw std::invalid_argument("presolve requires integer variables with finite bounds: " +
                                    v.name);
      lo_.push_back(std::ceil(v.lower - kTol));
      up_.push_back(std::floor(v.upper + kTol));
      obj_.push_back(v.objective);
    }
    alive_.assign(n, 1);
    col_rows_.resize(n);
    offset_ = model.objective_offset;
    for (std::size_t i = 0; i < model.num_constraints(); ++i) {
      const auto& c = model.constraint(i);
      rows_.push_back(Row{c.terms, c.sense, c.rhs, true});
      for (const auto& t : c.terms) col_rows_[t.var].push_back(i);
    }
  }

  PresolveResult run() {
    PresolveReport& rep = report_;
    rep.vars_before = model_.num_variables();
    rep.cons_before = model_.num_constraints();
    try {
      bool changed = true;
      while (changed && rep.passes < opts_.max_passes) {
        ++rep.passes;
        changed = false;
        changed |= fix_fixed_columns();
        changed |= scan_rows();
        changed |= fix_fixed_columns();
        if (opts_.merge_parallel_rows) changed |= merge_parallel_rows();
        if (opts_.substitute_doubletons) changed |= substitute_doubletons();
        if (opts_.fix_empty_columns) changed |= fix_empty_columns();
      }
    } catch (const Infeasible& e) {
      rep.status = PresolveReport::Status::infeasible;
      rep.infeasible_reason = e.reason;
      IpModel out;
      out.name = model_.name;
      out.add_constraint("infeasible", {}, Sense::ge, 1.0);
      rep.vars_after = 0;
      rep.cons_after = 1;
      return {std::move(out), std::move(rep)};
    }
    return {build(), std::move(rep)};
  }

 private:
  void drop_row(std::size_t i) {
    rows_[i].alive = false;
    report_.dropped_rows.push_back(i);
  }

  // Removes column j from row i, returning its coefficient (0 if absent).
  double take(std::size_t i, std::size_t j) {
    auto& terms = rows_[i].terms;
    auto it = std::find_if(terms.begin(), terms.end(), [&](const Term& t) { return t.var == j; });
    if (it == terms.end()) return 0.0;
    const double c = it->coef;
    terms.erase(it);
    return c;
  }

  void fix(std::size_t j, double v) {
    for (auto i : col_rows_[j]) {
      if (!rows_[i].alive) continue;
      rows_[i].rhs -= take(i, j) * v;
    }
    offset_ += obj_[j] * v;
    alive_[j] = 0;
    lo_[j] = up_[j] = v;
    Reduction r;
    r.kind = Reduction::Kind::fix;
    r.var = j;
    r.value = v;
    report_.log.push_back(r);
    report_.fixings.emplace_back(j, v);
  }

  bool fix_fixed_columns() {
    bool changed = false;
    for (std::size_t j = 0; j < lo_.size(); ++j) {
      if (!alive_[j]) continue;
      if (lo_[j] > up_[j] + kTol) throw Infeasible{"empty domain for " + model_.variable(j).name};
      if (lo_[j] == up_[j]) {
        fix(j, lo_[j]);
        changed = true;
      }
    }
    return changed;
  }

  // Tightens bounds from sum(a x) <= b. Returns true when a bound moved.
  bool propagate_le(const std::vector<Term>& terms, double sign, double b) {
    double min_act = 0.0;
    for (const auto& t : terms) {
      const double a = sign * t.coef;
      min_act += a > 0 ? a * lo_[t.var] : a * up_[t.var];
    }
    bool changed = false;
    for (const auto& t : terms) {
      const double a = sign * t.coef;
      const std::size_t j = t.var;
      const double rest = min_act - (a > 0 ? a * lo_[j] : a * up_[j]);
      const double lim = (b - rest) / a;
      if (a > 0) {
        const double nu = std::floor(lim + kTol);
        if (nu < up_[j]) {
          up_[j] = nu;
          changed = true;
        }
      } else {
        const double nl = std::ceil(lim - kTol);
        if (nl > lo_[j]) {
          lo_[j] = nl;
          changed = true;
        }
      }
      if (lo_[j] > up_[j]) throw Infeasible{"row propagation empties " + model_.variable(j).name};
    }
    return changed;
  }

  bool scan_rows() {
    bool changed = false;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Row& r = rows_[i];
      if (!r.alive) continue;
      double min_act = 0.0, max_act = 0.0;
      for (const auto& t : r.terms) {
        min_act += std::min(t.coef * lo_[t.var], t.coef * up_[t.var]);
        max_act += std::max(t.coef * lo_[t.var], t.coef * up_[t.var]);
      }
      const bool le = r.sense != Sense::ge;
      const bool ge = r.sense != Sense::le;
      if ((le && min_act > r.rhs + kTol) || (ge && max_act < r.rhs - kTol))
        throw Infeasible{"row " + model_.constraint(i).name + " cannot be satisfied"};
      const bool le_slack = !le || max_act <= r.rhs + kTol;
      const bool ge_slack = !ge || min_act >= r.rhs - kTol;
      if (le_slack && ge_slack) {
        drop_row(i);
        changed = true;
        continue;
      }
      if (le && !le_slack) changed |= propagate_le(r.terms, 1.0, r.rhs);
      if (ge && !ge_slack) changed |= propagate_le(r.terms, -1.0, -r.rhs);
    }
    return changed;
  }

  void substitute(std::size_t row, std::size_t k, double alpha, double beta, std::size_t j) {
    drop_row(row);
    for (auto i : col_rows_[k]) {
      Row& r = rows_[i];
      if (!r.alive) continue;
      const double c = take(i, k);
      if (c == 0.0) continue;
      r.rhs -= c * alpha;
      auto it = std::find_if(r.terms.begin(), r.terms.end(), [&](const Term& t) { return t.var == j; });
      if (it == r.terms.end()) {
        r.terms.push_back({j, c * beta});
        std::sort(r.terms.begin(), r.terms.end(),
                  [](const Term& a, const Term& b) { return a.var < b.var; });
        col_rows_[j].push_back(i);
      } else {
        it->coef += c * beta;
        if (std::abs(it->coef) <= kTol) r.terms.erase(it);
      }
    }
    offset_ += obj_[k] * alpha;
    obj_[j] += obj_[k] * beta;
    alive_[k] = 0;
    Reduction red;
    red.kind = Reduction::Kind::substitute;
    red.var = k;
    red.value = alpha;
    red.coef = beta;
    red.other = j;
    report_.log.push_back(red);
    report_.substitutions.push_back(red);
  }

  // Rows whose coefficient vectors are equal up to a scale factor collapse
  // into one row when their combined range is representable.
  bool merge_parallel_rows() {
    bool changed = false;
    std::map<std::vector<std::pair<std::size_t, double>>, std::size_t> seen;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Row& r = rows_[i];
      if (!r.alive || r.terms.empty()) continue;
      const double scale = r.terms.front().coef;
      std::vector<std::pair<std::size_t, double>> key;
      for (const auto& t : r.terms) key.emplace_back(t.var, t.coef / scale);
      double lo = -std::numeric_limits<double>::infinity();
      double hi = std::numeric_limits<double>::infinity();
      interval(r, scale, lo, hi);
      auto [it, fresh] = seen.emplace(std::move(key), i);
      if (fresh) continue;
      Row& keep = rows_[it->second];
      const double kscale = keep.terms.front().coef;
      double klo = -std::numeric_limits<double>::infinity();
      double khi = std::numeric_limits<double>::infinity();
      interval(keep, kscale, klo, khi);
      const double nlo = std::max(lo, klo);
      const double nhi = std::min(hi, khi);
      if (nlo > nhi + kTol)
        throw Infeasible{"parallel rows " + model_.constraint(it->second).name + " and " +
                         model_.constraint(i).name + " conflict"};
      // Express the merged range in the kept row's own scaling.
      if (std::abs(nlo - nhi) <= kTol) {
        keep.sense = Sense::eq;
        keep.rhs = nlo * kscale;
      } else if (std::isinf(nlo)) {
        keep.sense = kscale > 0 ? Sense::le : Sense::ge;
        keep.rhs = nhi * kscale;
      } else if (std::isinf(nhi)) {
        keep.sense = kscale > 0 ? Sense::ge : Sense::le;
        keep.rhs = nlo * kscale;
      } else {
        continue;  // a ranged row; leave both
      }
      drop_row(i);
      changed = true;
    }
    return changed;
  }

  // Range of (row activity / scale) allowed by the row.
  static void interval(const Row& r, double scale, double& lo, double& hi) {
    const double b = r.rhs / scale;
    Sense s = r.sense;
    if (scale < 0 && s != Sense::eq) s = s == Sense::le ? Sense::ge : Sense::le;
    if (s != Sense::ge) hi = b;
    if (s != Sense::le) lo = b;
  }

  bool substitute_doubletons() {
    bool changed = false;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      Row& r = rows_[i];
      if (!r.alive || r.sense != Sense::eq || r.terms.size() != 2) continue;
      // Eliminate the later column when possible.
      for (int pick = 1; pick >= 0; --pick) {
        const Term tk = r.terms[static_cast<std::size_t>(pick)];
        const Term tj = r.terms[static_cast<std::size_t>(1 - pick)];
        const double alpha = r.rhs / tk.coef;
        const double beta = -tj.coef / tk.coef;
        if (!is_integral(alpha) || !is_integral(beta)) continue;
        const double v_lo = alpha + beta * lo_[tj.var];
        const double v_hi = alpha + beta * up_[tj.var];
        const double lo = lo_[tk.var], up = up_[tk.var];
        if (std::min(v_lo, v_hi) < lo - kTol || std::max(v_lo, v_hi) > up + kTol) continue;
        substitute(i, tk.var, std::round(alpha), std::round(beta), tj.var);
        changed = true;
        break;
      }
    }
    return changed;
  }

  bool fix_empty_columns() {
    bool changed = false;
    for (std::size_t j = 0; j < lo_.size(); ++j) {
      if (!alive_[j]) continue;
      const bool used = std::any_of(col_rows_[j].begin(), col_rows_[j].end(), [&](std::size_t i) {
        if (!rows_[i].alive) return false;
        const auto& terms = rows_[i].terms;
        return std::any_of(terms.begin(), terms.end(), [&](const Term& t) { return t.var == j; });
      });
      if (used) continue;
      fix(j, obj_[j] >= 0.0 ? lo_[j] : up_[j]);
      changed = true;
    }
    return changed;
  }

  IpModel build() {
    IpModel out;
    out.name = model_.name;
    out.objective_offset = offset_;
    std::vector<std::size_t> remap(lo_.size(), static_cast<std::size_t>(-1));
    for (std::size_t j = 0; j < lo_.size(); ++j) {
      if (!alive_[j]) continue;
      Variable v = model_.variable(j);
      v.lower = lo_[j];
      v.upper = up_[j];
      v.objective = obj_[j];
      remap[j] = out.add_variable(std::move(v));
      report_.column_map.push_back(j);
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Row& r = rows_[i];
      if (!r.alive) continue;
      std::vector<Term> terms;
      for (const auto& t : r.terms) terms.push_back({remap[t.var], t.coef});
      out.add_constraint(model_.constraint(i).name, std::move(terms), r.sense, r.rhs);
    }
    report_.vars_after = out.num_variables();
    report_.cons_after = out.num_constraints();
    return out;
  }

  const IpModel& model_;
  const PresolveOptions& opts_;
  std::vector<double> lo_, up_, obj_;
  std::vector<char> alive_;
  std::vector<std::vector<std::size_t>> col_rows_;
  std::vector<Row> rows_;
  double offset_ = 0.0;
  PresolveReport report_;
};

}  // namespace

PresolveResult presolve(const IpModel& model, const PresolveOptions& opts) {
  return Presolver(model, opts).run();
}

std::vector<double> lift(std::span<const double> reduced, const PresolveReport& report) {
  if (report.vars_before == 0 && report.log.empty()) return {reduced.begin(), reduced.end()};
  if (reduced.size() != report.column_map.size())
    throw std::invalid_argument("reduced solution does not match the presolve report");
  std::vector<double> x(report.vars_before, 0.0);
  for (std::size_t i = 0; i < reduced.size(); ++i) x[report.column_map[i]] = reduced[i];
  for (auto it = report.log.rbegin(); it != report.log.rend(); ++it) {
    if (it->kind == Reduction::Kind::fix) {
      x[it->var] = it->value;
    } else {
      x[it->var] = it->value + it->coef * x[it->other];
    }
  }
  return x;
}

IpSolution lift(const IpSolution& reduced, const PresolveReport& report) {
  IpSolution out = reduced;
  if (reduced.has_incumbent) out.assignment = lift(reduced.assignment, report);
  return out;
}

}  // namespace optiplan
