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

#include "optiplan/ip_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace optiplan {

std::string_view to_string(VarKind kind) {
  switch (kind) {
    case VarKind::action: return "action";
    case VarKind::add: return "add";
    case VarKind::del: return "del";
    case VarKind::preadd: return "preadd";
    case VarKind::predel: return "predel";
    case VarKind::maintain: return "maintain";
  }
  return "?";
}

std::size_t IpModel::add_variable(Variable v) {
  if (var_by_name_.count(v.name)) throw std::invalid_argument("duplicate variable name: " + v.name);
  if (v.id && var_by_id_.count(*v.id))
    throw std::invalid_argument("duplicate variable id for " + v.name);
  const std::size_t j = vars_.size();
  var_by_name_.emplace(v.name, j);
  if (v.id) var_by_id_.emplace(*v.id, j);
  vars_.push_back(std::move(v));
  return j;
}

std::size_t IpModel::add_constraint(std::string row_name, std::vector<Term> terms, Sense sense,
                                    double rhs) {
  if (row_by_name_.count(row_name))
    throw std::invalid_argument("duplicate constraint name: " + row_name);
  for (const auto& t : terms)
    if (t.var >= vars_.size())
      throw std::invalid_argument("constraint " + row_name + " references an undeclared variable");
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.var < b.var; });
  std::vector<Term> merged;
  for (const auto& t : terms) {
    if (!merged.empty() && merged.back().var == t.var) {
      merged.back().coef += t.coef;
    } else {
      merged.push_back(t);
    }
  }
  std::erase_if(merged, [](const Term& t) { return t.coef == 0.0; });
  const std::size_t i = rows_.size();
  row_by_name_.emplace(row_name, i);
  rows_.push_back(Constraint{std::move(row_name), std::move(merged), sense, rhs});
  return i;
}

void IpModel::set_bounds(std::size_t j, double lower, double upper) {
  auto& v = vars_.at(j);
  v.lower = lower;
  v.upper = upper;
}

std::optional<std::size_t> IpModel::find_variable(std::string_view var_name) const {
  auto it = var_by_name_.find(std::string(var_name));
  if (it == var_by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> IpModel::find(const VarId& id) const {
  auto it = var_by_id_.find(id);
  if (it == var_by_id_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> IpModel::find_constraint(std::string_view row_name) const {
  auto it = row_by_name_.find(std::string(row_name));
  if (it == row_by_name_.end()) return std::nullopt;
  return it->second;
}

bool IpModel::all_binary() const {
  return std::all_of(vars_.begin(), vars_.end(), [](const Variable& v) {
    return v.integer && v.lower >= 0.0 && v.upper <= 1.0 && v.lower <= v.upper;
  });
}

double IpModel::objective_value(std::span<const double> x) const {
  double z = objective_offset;
  for (std::size_t j = 0; j < vars_.size(); ++j) z += vars_[j].objective * x[j];
  return z;
}

double IpModel::activity(std::size_t row, std::span<const double> x) const {
  double s = 0.0;
  for (const auto& t : rows_.at(row).terms) s += t.coef * x[t.var];
  return s;
}

std::optional<std::size_t> IpModel::first_violation(std::span<const double> x, double tol) const {
  if (x.size() != vars_.size()) throw std::invalid_argument("assignment size mismatch");
  for (std::size_t j = 0; j < vars_.size(); ++j)
    if (x[j] < vars_[j].lower - tol || x[j] > vars_[j].upper + tol) return rows_.size() + j;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const double s = activity(i, x);
    const auto& r = rows_[i];
    const bool ok = r.sense == Sense::le   ? s <= r.rhs + tol
                    : r.sense == Sense::ge ? s >= r.rhs - tol
                                           : std::abs(s - r.rhs) <= tol;
    if (!ok) return i;
  }
  return std::nullopt;
}

bool structurally_equal(const IpModel& a, const IpModel& b, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (a.name != b.name) return fail("model name differs");
  if (a.objective_offset != b.objective_offset) return fail("objective offset differs");
  if (a.num_variables() != b.num_variables()) return fail("variable count differs");
  if (a.num_constraints() != b.num_constraints()) return fail("constraint count differs");
  for (std::size_t j = 0; j < a.num_variables(); ++j) {
    const auto& u = a.variable(j);
    const auto& v = b.variable(j);
    if (u.name != v.name || u.lower != v.lower || u.upper != v.upper || u.integer != v.integer ||
        u.objective != v.objective)
      return fail("variable " + std::to_string(j) + " (" + u.name + ") differs");
  }
  for (std::size_t i = 0; i < a.num_constraints(); ++i) {
    const auto& r = a.constraint(i);
    const auto& s = b.constraint(i);
    if (r.name != s.name || r.sense != s.sense || r.rhs != s.rhs || r.terms != s.terms)
      return fail("constraint " + std::to_string(i) + " (" + r.name + ") differs");
  }
  return true;
}

}  // namespace optiplan
