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

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "optiplan/task.hpp"

namespace optiplan::pddl {

class PddlError : public std::runtime_error {
 public:
  enum class Kind { syntax, unsupported_feature, undeclared, invalid };

  PddlError(Kind kind, const std::string& message, int line = 0, int column = 0);

  Kind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  Kind kind_;
  int line_;
  int column_;
};

struct TypedName {
  std::string name;
  std::string type;  // "object" when untyped

  friend bool operator==(const TypedName&, const TypedName&) = default;
};

/// An atom whose arguments are variables (leading '?') or constants.
struct Literal {
  std::string predicate;
  std::vector<std::string> args;

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct PredicateDecl {
  std::string name;
  std::vector<TypedName> params;
};

struct ActionSchema {
  std::string name;
  std::vector<TypedName> params;
  std::vector<Literal> pre;
  std::vector<Literal> add;
  std::vector<Literal> del;
};

struct DomainDef {
  std::string name;
  std::vector<std::string> requirements;
  /// (type, parent) pairs; "object" is the implicit root.
  std::vector<std::pair<std::string, std::string>> types;
  std::vector<TypedName> constants;
  std::vector<PredicateDecl> predicates;
  std::vector<ActionSchema> actions;
  std::vector<std::string> notes;

  const PredicateDecl* find_predicate(std::string_view name) const;
  bool has_type(std::string_view type) const;
  /// True when `type` equals `ancestor` or descends from it.
  bool is_subtype(std::string_view type, std::string_view ancestor) const;
};

struct ProblemDef {
  std::string name;
  std::string domain;
  std::vector<TypedName> objects;
  std::vector<Atom> init;
  std::vector<Atom> goal;
};

/// Accepts the `:strips` and `:typing` subset. Negative effects are folded
/// into `del`; a literal that is both added and deleted is kept as an add.
DomainDef parse_domain(std::string_view text);
ProblemDef parse_problem(std::string_view text, const DomainDef& domain);

struct GroundOptions {
  /// Graphplan convention: distinct parameters of one schema never bind the
  /// same object.
  bool distinct_bindings = false;
};

GroundTask ground(const DomainDef& domain, const ProblemDef& problem,
                  const GroundOptions& options = {});

/// Canonical PDDL rendering of a ground task: one 0-ary predicate per fluent and
/// one parameterless action per ground action.
std::pair<std::string, std::string> print_task(const GroundTask& task);

/// Reads, parses and grounds a domain/problem pair from disk.
GroundTask load_task(const std::string& domain_path, const std::string& problem_path,
                     const GroundOptions& options = {});

}  // namespace optiplan::pddl
