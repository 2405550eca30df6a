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
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "optiplan/pddl.hpp"

namespace optiplan::pddl {

PddlError::PddlError(Kind kind, const std::string& message, int line, int column)
    : std::runtime_error(line > 0 ? message + " at line " + std::to_string(line) +
                                        ", column " + std::to_string(column)
                                  : message),
      kind_(kind),
      line_(line),
      column_(column) {}

namespace {

struct Sexp {
  bool is_list = false;
  std::string atom;
  std::vector<Sexp> items;
  int line = 0;
  int column = 0;

  bool is(std::string_view s) const { return !is_list && atom == s; }
  /// The head symbol of a list, or "" for atoms and empty lists.
  std::string_view head() const {
    if (!is_list || items.empty() || items[0].is_list) return {};
    return items[0].atom;
  }
};

[[noreturn]] void fail(PddlError::Kind kind, const std::string& msg, const Sexp& at) {
  throw PddlError(kind, msg, at.line, at.column);
}

[[noreturn]] void syntax(const std::string& msg, const Sexp& at) {
  fail(PddlError::Kind::syntax, msg, at);
}

[[noreturn]] void unsupported(const std::string& requirement, const Sexp& at) {
  fail(PddlError::Kind::unsupported_feature,
       "unsupported PDDL feature " + requirement, at);
}

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  Sexp read_document() {
    skip_space();
    if (pos_ >= text_.size()) throw PddlError(PddlError::Kind::syntax, "empty input", 1, 1);
    Sexp root = read();
    skip_space();
    if (pos_ < text_.size())
      throw PddlError(PddlError::Kind::syntax, "trailing input after definition", line_, col_);
    return root;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Sexp read() {
    skip_space();
    Sexp node;
    node.line = line_;
    node.column = col_;
    if (pos_ >= text_.size())
      throw PddlError(PddlError::Kind::syntax, "unexpected end of input", line_, col_);
    const char c = text_[pos_];
    if (c == ')') throw PddlError(PddlError::Kind::syntax, "unexpected ')'", line_, col_);
    if (c == '(') {
      advance();
      node.is_list = true;
      for (;;) {
        skip_space();
        if (pos_ >= text_.size())
          throw PddlError(PddlError::Kind::syntax, "unbalanced '(' opened", node.line,
                          node.column);
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        node.items.push_back(read());
      }
      return node;
    }
    while (pos_ < text_.size()) {
      const char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d)))
        break;
      node.atom.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(d))));
      advance();
    }
    return node;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

const Sexp& expect_list(const Sexp& s, const std::string& what) {
  if (!s.is_list) syntax("expected " + what, s);
  return s;
}

const std::string& expect_symbol(const Sexp& s, const std::string& what) {
  if (s.is_list || s.atom.empty()) syntax("expected " + what, s);
  return s.atom;
}

void check_requirements(const Sexp& section, std::vector<std::string>& out) {
  for (std::size_t i = 1; i < section.items.size(); ++i) {
    const auto& r = expect_symbol(section.items[i], "requirement flag");
    if (r != ":strips" && r != ":typing") unsupported(r, section.items[i]);
    out.push_back(r);
  }
}

// Typed list: a b - t c - u d. `(either ...)` types are rejected.
std::vector<TypedName> parse_typed_list(const Sexp& list, std::size_t first) {
  std::vector<TypedName> out;
  std::size_t pending = 0;
  for (std::size_t i = first; i < list.items.size(); ++i) {
    const auto& item = list.items[i];
    if (item.is("-")) {
      if (i + 1 >= list.items.size()) syntax("type expected after '-'", item);
      const auto& t = list.items[i + 1];
      if (t.is_list) {
        if (t.head() == "either") unsupported("either-types", t);
        syntax("expected type name", t);
      }
      if (pending == 0) syntax("'-' without preceding names", item);
      for (std::size_t k = out.size() - pending; k < out.size(); ++k) out[k].type = t.atom;
      pending = 0;
      ++i;
      continue;
    }
    out.push_back({expect_symbol(item, "name"), "object"});
    ++pending;
  }
  return out;
}

struct SchemaScope {
  const DomainDef& domain;
  const std::vector<TypedName>& params;

  bool known_term(const std::string& term) const {
    if (!term.empty() && term[0] == '?') {
      return std::any_of(params.begin(), params.end(),
                         [&](const TypedName& p) { return p.name == term; });
    }
    return std::any_of(domain.constants.begin(), domain.constants.end(),
                       [&](const TypedName& c) { return c.name == term; });
  }
};

Literal parse_atom(const Sexp& s, const SchemaScope& scope) {
  const auto pred = std::string(s.head());
  if (pred.empty()) syntax("expected atom", s);
  const auto* decl = scope.domain.find_predicate(pred);
  if (decl == nullptr) fail(PddlError::Kind::undeclared, "undeclared predicate " + pred, s);
  Literal lit{pred, {}};
  for (std::size_t i = 1; i < s.items.size(); ++i) {
    const auto& term = expect_symbol(s.items[i], "term");
    if (!scope.known_term(term))
      fail(PddlError::Kind::undeclared, "undeclared variable or constant " + term, s.items[i]);
    lit.args.push_back(term);
  }
  if (lit.args.size() != decl->params.size())
    fail(PddlError::Kind::invalid, "wrong number of arguments for " + pred, s);
  return lit;
}

void reject_formula_head(std::string_view head, const Sexp& s) {
  if (head == "not") unsupported(":negative-preconditions", s);
  if (head == "=") unsupported(":equality", s);
  if (head == "or" || head == "imply") unsupported(":disjunctive-preconditions", s);
  if (head == "exists") unsupported(":existential-preconditions", s);
  if (head == "forall") unsupported(":universal-preconditions", s);
  if (head == "<" || head == ">" || head == "<=" || head == ">=")
    unsupported(":numeric-fluents", s);
}

void parse_precondition(const Sexp& s, const SchemaScope& scope, std::vector<Literal>& out) {
  expect_list(s, "precondition formula");
  if (s.items.empty()) return;
  const auto head = s.head();
  if (head == "and") {
    for (std::size_t i = 1; i < s.items.size(); ++i) parse_precondition(s.items[i], scope, out);
    return;
  }
  reject_formula_head(head, s);
  out.push_back(parse_atom(s, scope));
}

void parse_effect(const Sexp& s, const SchemaScope& scope, std::vector<Literal>& add,
                  std::vector<Literal>& del) {
  expect_list(s, "effect formula");
  if (s.items.empty()) return;
  const auto head = s.head();
  if (head == "and") {
    for (std::size_t i = 1; i < s.items.size(); ++i) parse_effect(s.items[i], scope, add, del);
    return;
  }
  if (head == "not") {
    if (s.items.size() != 2) syntax("'not' takes one atom", s);
    del.push_back(parse_atom(expect_list(s.items[1], "atom"), scope));
    return;
  }
  if (head == "when") unsupported(":conditional-effects", s);
  if (head == "forall") unsupported(":adl", s);
  if (head == "increase" || head == "decrease" || head == "assign" || head == "scale-up" ||
      head == "scale-down")
    unsupported(":numeric-fluents", s);
  add.push_back(parse_atom(s, scope));
}

void dedupe(std::vector<Literal>& lits) {
  std::vector<Literal> out;
  for (auto& l : lits)
    if (std::find(out.begin(), out.end(), l) == out.end()) out.push_back(std::move(l));
  lits = std::move(out);
}

ActionSchema parse_action(const Sexp& s, DomainDef& domain) {
  if (s.items.size() < 2) syntax("action name expected", s);
  ActionSchema schema;
  schema.name = expect_symbol(s.items[1], "action name");
  const Sexp* pre = nullptr;
  const Sexp* eff = nullptr;
  for (std::size_t i = 2; i < s.items.size(); i += 2) {
    const auto& key = expect_symbol(s.items[i], "action keyword");
    if (i + 1 >= s.items.size()) syntax("missing value for " + key, s.items[i]);
    const auto& value = s.items[i + 1];
    if (key == ":parameters") {
      schema.params = parse_typed_list(expect_list(value, "parameter list"), 0);
      for (const auto& p : schema.params) {
        if (p.name.empty() || p.name[0] != '?') syntax("parameter must start with '?'", value);
        if (!domain.has_type(p.type))
          fail(PddlError::Kind::undeclared, "undeclared type " + p.type, value);
      }
    } else if (key == ":precondition") {
      pre = &value;
    } else if (key == ":effect") {
      eff = &value;
    } else {
      syntax("unknown action keyword " + key, s.items[i]);
    }
  }
  const SchemaScope scope{domain, schema.params};
  if (pre != nullptr) parse_precondition(*pre, scope, schema.pre);
  if (eff != nullptr) parse_effect(*eff, scope, schema.add, schema.del);
  dedupe(schema.pre);
  dedupe(schema.add);
  dedupe(schema.del);
  std::erase_if(schema.del, [&](const Literal& d) {
    if (std::find(schema.add.begin(), schema.add.end(), d) == schema.add.end()) return false;
    std::string atom = "(" + d.predicate;
    for (const auto& a : d.args) atom += " " + a;
    domain.notes.push_back("action " + schema.name + ": " + atom +
                           ") is both added and deleted; kept as add");
    return true;
  });
  return schema;
}

std::string read_name_header(const Sexp& s, std::string_view keyword) {
  if (s.head() != keyword || s.items.size() != 2)
    syntax("expected (" + std::string(keyword) + " <name>)", s);
  return expect_symbol(s.items[1], std::string(keyword) + " name");
}

}  // namespace

const PredicateDecl* DomainDef::find_predicate(std::string_view name) const {
  for (const auto& p : predicates)
    if (p.name == name) return &p;
  return nullptr;
}

bool DomainDef::has_type(std::string_view type) const {
  if (type == "object") return true;
  return std::any_of(types.begin(), types.end(),
                     [&](const auto& t) { return t.first == type; });
}

bool DomainDef::is_subtype(std::string_view type, std::string_view ancestor) const {
  std::string current(type);
  for (std::size_t guard = 0; guard <= types.size() + 1; ++guard) {
    if (current == ancestor) return true;
    if (current == "object") return false;
    auto it = std::find_if(types.begin(), types.end(),
                           [&](const auto& t) { return t.first == current; });
    if (it == types.end()) return false;
    current = it->second;
  }
  return false;
}

DomainDef parse_domain(std::string_view text) {
  const Sexp root = Reader(text).read_document();
  if (root.head() != "define" || root.items.size() < 2) syntax("expected (define ...)", root);
  DomainDef domain;
  domain.name = read_name_header(expect_list(root.items[1], "(domain <name>)"), "domain");
  std::vector<const Sexp*> actions;
  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const auto& section = expect_list(root.items[i], "domain section");
    const auto head = section.head();
    if (head == ":requirements") {
      check_requirements(section, domain.requirements);
    } else if (head == ":types") {
      for (auto& t : parse_typed_list(section, 1)) domain.types.emplace_back(t.name, t.type);
    } else if (head == ":constants") {
      domain.constants = parse_typed_list(section, 1);
    } else if (head == ":predicates") {
      for (std::size_t k = 1; k < section.items.size(); ++k) {
        const auto& p = expect_list(section.items[k], "predicate declaration");
        PredicateDecl decl;
        decl.name = std::string(p.head());
        if (decl.name.empty()) syntax("predicate name expected", p);
        decl.params = parse_typed_list(p, 1);
        domain.predicates.push_back(std::move(decl));
      }
    } else if (head == ":action") {
      actions.push_back(&section);
    } else if (head == ":functions") {
      unsupported(":numeric-fluents", section);
    } else if (head == ":derived") {
      unsupported(":derived-predicates", section);
    } else if (head == ":durative-action") {
      unsupported(":durative-actions", section);
    } else {
      syntax("unknown domain section " + std::string(head), section);
    }
  }
  for (const auto& [type, parent] : domain.types)
    if (!domain.has_type(parent))
      throw PddlError(PddlError::Kind::undeclared, "undeclared parent type " + parent +
                                                       " of type " + type);
  for (const auto& c : domain.constants)
    if (!domain.has_type(c.type))
      throw PddlError(PddlError::Kind::undeclared, "undeclared type " + c.type);
  for (const auto& p : domain.predicates)
    for (const auto& arg : p.params)
      if (!domain.has_type(arg.type))
        throw PddlError(PddlError::Kind::undeclared,
                        "undeclared type " + arg.type + " in predicate " + p.name);
  for (const auto* a : actions) domain.actions.push_back(parse_action(*a, domain));
  return domain;
}

namespace {

Atom parse_ground_atom(const Sexp& s, const DomainDef& domain,
                       const std::vector<TypedName>& objects) {
  const auto pred = std::string(s.head());
  if (pred.empty()) syntax("expected ground atom", s);
  const auto* decl = domain.find_predicate(pred);
  if (decl == nullptr) fail(PddlError::Kind::undeclared, "undeclared predicate " + pred, s);
  Atom atom{pred, {}};
  for (std::size_t i = 1; i < s.items.size(); ++i) {
    const auto& name = expect_symbol(s.items[i], "object name");
    auto it = std::find_if(objects.begin(), objects.end(),
                           [&](const TypedName& o) { return o.name == name; });
    if (it == objects.end())
      fail(PddlError::Kind::undeclared, "undeclared object " + name, s.items[i]);
    if (atom.args.size() < decl->params.size() &&
        !domain.is_subtype(it->type, decl->params[atom.args.size()].type))
      fail(PddlError::Kind::invalid,
           "object " + name + " has the wrong type for predicate " + pred, s.items[i]);
    atom.args.push_back(name);
  }
  if (atom.args.size() != decl->params.size())
    fail(PddlError::Kind::invalid, "wrong number of arguments for " + pred, s);
  return atom;
}

void parse_goal(const Sexp& s, const DomainDef& domain, const std::vector<TypedName>& objects,
                std::vector<Atom>& out) {
  expect_list(s, "goal formula");
  if (s.items.empty()) return;
  const auto head = s.head();
  if (head == "and") {
    for (std::size_t i = 1; i < s.items.size(); ++i) parse_goal(s.items[i], domain, objects, out);
    return;
  }
  reject_formula_head(head, s);
  out.push_back(parse_ground_atom(s, domain, objects));
}

}  // namespace

ProblemDef parse_problem(std::string_view text, const DomainDef& domain) {
  const Sexp root = Reader(text).read_document();
  if (root.head() != "define" || root.items.size() < 2) syntax("expected (define ...)", root);
  ProblemDef problem;
  problem.name = read_name_header(expect_list(root.items[1], "(problem <name>)"), "problem");
  std::vector<TypedName> known = domain.constants;
  const Sexp* init = nullptr;
  const Sexp* goal = nullptr;
  for (std::size_t i = 2; i < root.items.size(); ++i) {
    const auto& section = expect_list(root.items[i], "problem section");
    const auto head = section.head();
    if (head == ":domain") {
      problem.domain = read_name_header(section, ":domain");
      if (problem.domain != domain.name)
        fail(PddlError::Kind::invalid,
             "problem refers to domain " + problem.domain + ", loaded " + domain.name, section);
    } else if (head == ":requirements") {
      std::vector<std::string> ignored;
      check_requirements(section, ignored);
    } else if (head == ":objects") {
      problem.objects = parse_typed_list(section, 1);
      for (const auto& o : problem.objects) {
        if (!domain.has_type(o.type))
          fail(PddlError::Kind::undeclared, "undeclared type " + o.type + " of object " + o.name,
               section);
        if (std::any_of(known.begin(), known.end(),
                        [&](const TypedName& k) { return k.name == o.name; }))
          fail(PddlError::Kind::invalid, "object " + o.name + " declared twice", section);
        known.push_back(o);
      }
    } else if (head == ":init") {
      init = &section;
    } else if (head == ":goal") {
      goal = &section;
    } else if (head == ":metric") {
      unsupported(":numeric-fluents", section);
    } else {
      syntax("unknown problem section " + std::string(head), section);
    }
  }
  if (init != nullptr) {
    for (std::size_t k = 1; k < init->items.size(); ++k) {
      const auto& a = expect_list(init->items[k], "init atom");
      if (a.head() == "=") unsupported(":numeric-fluents", a);
      if (a.head() == "not") syntax("negated init atom", a);
      Atom atom = parse_ground_atom(a, domain, known);
      if (std::find(problem.init.begin(), problem.init.end(), atom) == problem.init.end())
        problem.init.push_back(std::move(atom));
    }
  }
  if (goal == nullptr) syntax("problem has no :goal", root);
  if (goal->items.size() != 2) syntax("(:goal <formula>) expected", *goal);
  parse_goal(goal->items[1], domain, known, problem.goal);
  return problem;
}

GroundTask load_task(const std::string& domain_path, const std::string& problem_path,
                     const GroundOptions& options) {
  auto slurp = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PddlError(PddlError::Kind::invalid, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  const auto domain = parse_domain(slurp(domain_path));
  const auto problem = parse_problem(slurp(problem_path), domain);
  return ground(domain, problem, options);
}

}  // namespace optiplan::pddl
