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

#include "optiplan/mps.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace optiplan {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string unique_name(std::string base, std::unordered_set<std::string>& taken) {
  if (base.empty()) base = "_";
  std::string name = base;
  for (int k = 2; taken.count(name); ++k) name = base + "_" + std::to_string(k);
  taken.insert(name);
  return name;
}

std::vector<std::string> tokenize(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::string sanitize_name(std::string_view name) {
  std::string out(name);
  for (auto& c : out)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') c = '_';
  return out;
}

IpModel sanitize_names(const IpModel& model) {
  IpModel out;
  out.name = sanitize_name(model.name);
  out.objective_offset = model.objective_offset;
  std::unordered_set<std::string> taken;
  for (const auto& v : model.variables()) {
    Variable w = v;
    w.name = unique_name(sanitize_name(v.name), taken);
    out.add_variable(std::move(w));
  }
  taken.clear();
  for (const auto& r : model.constraints())
    out.add_constraint(unique_name(sanitize_name(r.name), taken), r.terms, r.sense, r.rhs);
  return out;
}

std::string write_mps(const IpModel& input) {
  const IpModel model = sanitize_names(input);
  std::unordered_set<std::string> row_names;
  for (const auto& r : model.constraints()) row_names.insert(r.name);
  std::string obj = "OBJ";
  while (row_names.count(obj)) obj += "_";

  std::ostringstream out;
  out << "NAME";
  if (!model.name.empty()) out << " " << model.name;
  out << "\nROWS\n N " << obj << "\n";
  for (const auto& r : model.constraints()) {
    const char* s = r.sense == Sense::le ? "L" : r.sense == Sense::ge ? "G" : "E";
    out << " " << s << " " << r.name << "\n";
  }

  std::vector<std::vector<std::pair<std::size_t, double>>> cols(model.num_variables());
  for (std::size_t i = 0; i < model.num_constraints(); ++i)
    for (const auto& t : model.constraint(i).terms) cols[t.var].emplace_back(i, t.coef);

  out << "COLUMNS\n";
  bool in_int = false;
  int marker = 0;
  for (std::size_t j = 0; j < model.num_variables(); ++j) {
    const auto& v = model.variable(j);
    if (v.integer != in_int) {
      out << "    MARKER" << ++marker << " 'MARKER' " << (v.integer ? "'INTORG'" : "'INTEND'")
          << "\n";
      in_int = v.integer;
    }
    if (v.objective != 0.0 || cols[j].empty())
      out << "    " << v.name << " " << obj << " " << number(v.objective) << "\n";
    for (const auto& [i, c] : cols[j])
      out << "    " << v.name << " " << model.constraint(i).name << " " << number(c) << "\n";
  }
  if (in_int) out << "    MARKER" << ++marker << " 'MARKER' 'INTEND'\n";

  out << "RHS\n";
  if (model.objective_offset != 0.0)
    out << "    RHS " << obj << " " << number(-model.objective_offset) << "\n";
  for (const auto& r : model.constraints())
    if (r.rhs != 0.0) out << "    RHS " << r.name << " " << number(r.rhs) << "\n";

  std::ostringstream bounds;
  for (const auto& v : model.variables()) {
    if (v.integer && v.lower == 0.0 && v.upper == 1.0) {
      bounds << " BV BND " << v.name << "\n";
      continue;
    }
    if (v.lower == v.upper) {
      bounds << " FX BND " << v.name << " " << number(v.lower) << "\n";
      continue;
    }
    if (v.lower == -kInf && v.upper == kInf) {
      bounds << " FR BND " << v.name << "\n";
      continue;
    }
    if (v.lower == -kInf) {
      bounds << " MI BND " << v.name << "\n";
    } else if (v.lower != 0.0) {
      bounds << " LO BND " << v.name << " " << number(v.lower) << "\n";
    }
    if (v.upper != kInf) bounds << " UP BND " << v.name << " " << number(v.upper) << "\n";
  }
  const std::string b = bounds.str();
  if (!b.empty()) out << "BOUNDS\n" << b;
  out << "ENDATA\n";
  return out.str();
}

IpModel read_mps(std::string_view text, std::vector<std::string>* warnings) {
  enum class Section { none, name, rows, columns, rhs, bounds, objsense, done };
  auto warn = [&](std::size_t line, const std::string& msg) {
    if (warnings) warnings->push_back("line " + std::to_string(line) + ": " + msg);
  };

  std::string model_name;
  std::string obj_row;
  std::unordered_set<std::string> ignored_rows;
  std::vector<std::string> row_names;
  std::vector<Sense> row_sense;
  std::unordered_map<std::string, std::size_t> row_index;
  std::vector<double> rhs;
  double offset = 0.0;

  std::vector<Variable> vars;
  std::unordered_map<std::string, std::size_t> col_index;
  std::vector<std::map<std::size_t, double>> entries;  // per column: row -> coef

  auto parse_number = [&](const std::string& s, std::size_t line) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
      const std::string u = upper(s);
      if (u == "INF" || u == "INFINITY" || u == "+INF") return kInf;
      if (u == "-INF" || u == "-INFINITY") return -kInf;
      throw MpsError(MpsError::Kind::malformed_section, "bad number '" + s + "'", line);
    }
    if (v >= 1e30) return kInf;
    if (v <= -1e30) return -kInf;
    return v;
  };
  auto column = [&](const std::string& name, std::size_t line) -> std::size_t {
    auto it = col_index.find(name);
    if (it == col_index.end())
      throw MpsError(MpsError::Kind::unknown_column, "unknown column '" + name + "'", line);
    return it->second;
  };

  Section section = Section::none;
  bool in_int = false;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size() && section != Section::done) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line[0] == '*') {
      if (end == text.size()) break;
      continue;
    }
    auto tok = tokenize(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }

    if (!std::isspace(static_cast<unsigned char>(line[0]))) {
      const std::string head = upper(tok[0]);
      if (head == "NAME") {
        section = Section::name;
        for (std::size_t k = 1; k < tok.size(); ++k) model_name += (k > 1 ? " " : "") + tok[k];
        continue;
      }
      if (head == "ROWS") { section = Section::rows; continue; }
      if (head == "COLUMNS") { section = Section::columns; continue; }
      if (head == "RHS") { section = Section::rhs; continue; }
      if (head == "BOUNDS") { section = Section::bounds; continue; }
      if (head == "ENDATA") { section = Section::done; continue; }
      if (head == "RANGES")
        throw MpsError(MpsError::Kind::unsupported, "RANGES section is not supported", lineno);
      if (head == "OBJSENSE") {
        section = Section::objsense;
        if (tok.size() > 1 && upper(tok[1]) != "MIN" && upper(tok[1]) != "MINIMIZE")
          throw MpsError(MpsError::Kind::unsupported, "only minimization is supported", lineno);
        continue;
      }
      if (section == Section::none || section == Section::name)
        throw MpsError(MpsError::Kind::malformed_section, "unknown section '" + tok[0] + "'",
                       lineno);
    }

    switch (section) {
      case Section::none:
      case Section::name:
      case Section::done:
        throw MpsError(MpsError::Kind::malformed_section, "data outside a section", lineno);
      case Section::objsense:
        if (upper(tok[0]) != "MIN" && upper(tok[0]) != "MINIMIZE")
          throw MpsError(MpsError::Kind::unsupported, "only minimization is supported", lineno);
        break;
      case Section::rows: {
        if (tok.size() != 2)
          throw MpsError(MpsError::Kind::malformed_section, "ROWS entry needs type and name", lineno);
        const std::string type = upper(tok[0]);
        if (type == "N") {
          if (obj_row.empty()) {
            obj_row = tok[1];
          } else {
            ignored_rows.insert(tok[1]);
            warn(lineno, "extra objective row '" + tok[1] + "' ignored");
          }
          break;
        }
        Sense s;
        if (type == "L") s = Sense::le;
        else if (type == "G") s = Sense::ge;
        else if (type == "E") s = Sense::eq;
        else throw MpsError(MpsError::Kind::malformed_section, "bad row type '" + tok[0] + "'", lineno);
        if (row_index.count(tok[1]) || tok[1] == obj_row)
          throw MpsError(MpsError::Kind::malformed_section, "duplicate row '" + tok[1] + "'", lineno);
        row_index.emplace(tok[1], row_names.size());
        row_names.push_back(tok[1]);
        row_sense.push_back(s);
        rhs.push_back(0.0);
        break;
      }
      case Section::columns: {
        if (tok.size() >= 3 && upper(tok[1]) == "'MARKER'") {
          const std::string m = upper(tok[2]);
          if (m == "'INTORG'") in_int = true;
          else if (m == "'INTEND'") in_int = false;
          else throw MpsError(MpsError::Kind::malformed_section, "bad marker", lineno);
          break;
        }
        if (tok.size() != 3 && tok.size() != 5)
          throw MpsError(MpsError::Kind::malformed_section, "COLUMNS entry needs 1 or 2 pairs", lineno);
        auto it = col_index.find(tok[0]);
        std::size_t j;
        if (it == col_index.end()) {
          j = vars.size();
          Variable v;
          v.name = tok[0];
          v.integer = in_int;
          v.lower = 0.0;
          v.upper = kInf;
          vars.push_back(std::move(v));
          entries.emplace_back();
          col_index.emplace(tok[0], j);
        } else {
          j = it->second;
        }
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          const double val = parse_number(tok[k + 1], lineno);
          if (tok[k] == obj_row) {
            vars[j].objective = val;
            continue;
          }
          if (ignored_rows.count(tok[k])) continue;
          auto r = row_index.find(tok[k]);
          if (r == row_index.end())
            throw MpsError(MpsError::Kind::unknown_row, "unknown row '" + tok[k] + "'", lineno);
          if (entries[j].count(r->second))
            warn(lineno, "duplicate entry for column '" + tok[0] + "' in row '" + tok[k] +
                             "'; last value wins");
          entries[j][r->second] = val;
        }
        break;
      }
      case Section::rhs: {
        const std::size_t first = tok.size() % 2;  // odd count: leading set name
        if (tok.size() < 2 || tok.size() > 5)
          throw MpsError(MpsError::Kind::malformed_section, "bad RHS entry", lineno);
        for (std::size_t k = first; k + 1 < tok.size(); k += 2) {
          const double val = parse_number(tok[k + 1], lineno);
          if (tok[k] == obj_row) {
            offset = -val;
            continue;
          }
          if (ignored_rows.count(tok[k])) continue;
          auto r = row_index.find(tok[k]);
          if (r == row_index.end())
            throw MpsError(MpsError::Kind::unknown_row, "unknown row '" + tok[k] + "'", lineno);
          rhs[r->second] = val;
        }
        break;
      }
      case Section::bounds: {
        const std::string type = upper(tok[0]);
        const bool valued = type == "UP" || type == "LO" || type == "FX" || type == "LI" ||
                            type == "UI";
        const bool flag = type == "BV" || type == "MI" || type == "PL" || type == "FR";
        if (!valued && !flag)
          throw MpsError(MpsError::Kind::malformed_section, "bad bound type '" + tok[0] + "'", lineno);
        std::string col;
        double val = 0.0;
        if (valued) {
          if (tok.size() == 4) col = tok[2];
          else if (tok.size() == 3) col = tok[1];
          else throw MpsError(MpsError::Kind::malformed_section, "bad BOUNDS entry", lineno);
          val = parse_number(tok.back(), lineno);
        } else {
          if (tok.size() == 2) col = tok[1];
          else if (tok.size() == 3 || tok.size() == 4) col = tok[2];
          else throw MpsError(MpsError::Kind::malformed_section, "bad BOUNDS entry", lineno);
        }
        Variable& v = vars[column(col, lineno)];
        if (type == "UP" || type == "UI") {
          v.upper = val;
          if (type == "UI") v.integer = true;
          if (val < 0 && v.lower == 0.0) {
            v.lower = -kInf;
            warn(lineno, "negative upper bound on '" + col + "' with zero lower; lower set to -inf");
          }
        } else if (type == "LO" || type == "LI") {
          v.lower = val;
          if (type == "LI") v.integer = true;
        } else if (type == "FX") {
          v.lower = v.upper = val;
        } else if (type == "BV") {
          v.integer = true;
          v.lower = 0.0;
          v.upper = 1.0;
        } else if (type == "MI") {
          v.lower = -kInf;
        } else if (type == "PL") {
          v.upper = kInf;
        } else {
          v.lower = -kInf;
          v.upper = kInf;
        }
        break;
      }
    }
    if (end == text.size()) break;
  }
  if (section != Section::done) warn(lineno, "missing ENDATA");

  IpModel model;
  model.name = model_name;
  model.objective_offset = offset;
  for (auto& v : vars) model.add_variable(std::move(v));
  std::vector<std::vector<Term>> rows(row_names.size());
  for (std::size_t j = 0; j < entries.size(); ++j)
    for (const auto& [i, c] : entries[j])
      if (c != 0.0) rows[i].push_back({j, c});
  for (std::size_t i = 0; i < row_names.size(); ++i)
    model.add_constraint(row_names[i], std::move(rows[i]), row_sense[i], rhs[i]);
  return model;
}

}  // namespace optiplan
