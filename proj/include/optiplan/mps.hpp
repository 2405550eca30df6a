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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "optiplan/ip_model.hpp"

namespace optiplan {

class MpsError : public std::runtime_error {
 public:
  enum class Kind { malformed_section, unknown_row, unknown_column, unsupported };
  MpsError(Kind kind, const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), kind_(kind), line_(line) {}
  Kind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

/// Replaces every character other than [A-Za-z0-9_] with '_'.
std::string sanitize_name(std::string_view name);

/// Copy of `model` with sanitized, still-unique variable and row names.
IpModel sanitize_names(const IpModel& model);

/// Free-format MPS, minimization. Names are sanitized on output.
std::string write_mps(const IpModel& model);

/// Parses free-format MPS. Recoverable oddities (missing ENDATA, duplicate
/// coefficients, extra objective rows) are reported through `warnings`.
IpModel read_mps(std::string_view text, std::vector<std::string>* warnings = nullptr);

}  // namespace optiplan
