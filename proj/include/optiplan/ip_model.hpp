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

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace optiplan {

/// Variable families of the state-change encodings.
enum class VarKind { action, add, del, preadd, predel, maintain };

std::string_view to_string(VarKind kind);

/// Identity of an encoder variable: y_{a,t} when kind == action (subject is an
/// action id), x^kind_{f,t} otherwise (subject is a fluent id).
struct VarId {
  VarKind kind = VarKind::action;
  std::uint32_t subject = 0;
  int step = 0;

  friend bool operator==(const VarId&, const VarId&) = default;
  friend auto operator<=>(const VarId&, const VarId&) = default;
};

struct Variable {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
  bool integer = true;
  double objective = 0.0;
  std::optional<VarId> id;
};

enum class Sense { le, ge, eq };

struct Term {
  std::size_t var = 0;
  double coef = 0.0;

  friend bool operator==(const Term&, const Term&) = default;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;  // sorted by var, merged, no zero coefficients
  Sense sense = Sense::ge;
  double rhs = 0.0;
};

/// min c x + offset subject to rows and bounds. Variables are referenced by
/// dense index; names are unique.
class IpModel {
 public:
  std::string name = "optiplan";
  double objective_offset = 0.0;

  /// Throws std::invalid_argument on a duplicate name or VarId.
  std::size_t add_variable(Variable v);
  /// Sorts and merges terms; throws std::invalid_argument on an undeclared
  /// variable index or a duplicate row name.
  std::size_t add_constraint(std::string row_name, std::vector<Term> terms, Sense sense, double rhs);

  std::size_t num_variables() const { return vars_.size(); }
  std::size_t num_constraints() const { return rows_.size(); }
  const std::vector<Variable>& variables() const { return vars_; }
  const std::vector<Constraint>& constraints() const { return rows_; }
  const Variable& variable(std::size_t j) const { return vars_.at(j); }
  const Constraint& constraint(std::size_t i) const { return rows_.at(i); }

  void set_bounds(std::size_t j, double lower, double upper);
  void set_objective(std::size_t j, double c) { vars_.at(j).objective = c; }

  std::optional<std::size_t> find_variable(std::string_view var_name) const;
  std::optional<std::size_t> find(const VarId& id) const;
  std::optional<std::size_t> find_constraint(std::string_view row_name) const;

  bool all_binary() const;
  double objective_value(std::span<const double> x) const;
  double activity(std::size_t row, std::span<const double> x) const;
  /// First violated row, or nullopt; bounds are checked first and reported
  /// as num_constraints() + j.
  std::optional<std::size_t> first_violation(std::span<const double> x, double tol = 1e-6) const;
  bool is_feasible(std::span<const double> x, double tol = 1e-6) const {
    return !first_violation(x, tol).has_value();
  }

 private:
  std::vector<Variable> vars_;
  std::vector<Constraint> rows_;
  std::unordered_map<std::string, std::size_t> var_by_name_;
  std::unordered_map<std::string, std::size_t> row_by_name_;
  std::map<VarId, std::size_t> var_by_id_;
};

/// Same name, offset, variables (name, bounds, integrality, objective) and
/// rows in the same order. VarId tags are ignored since they do not survive
/// serialization.
bool structurally_equal(const IpModel& a, const IpModel& b, std::string* why = nullptr);

}  // namespace optiplan
