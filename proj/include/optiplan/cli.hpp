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

#include <iosfwd>
#include <string>
#include <vector>

#include "optiplan/planner.hpp"
#include "optiplan/pddl.hpp"

namespace optiplan::cli {

enum ExitCode : int { kPlanFound = 0, kUnsolvable = 1, kLimit = 2, kUsageError = 3 };

/// Parses argv and runs the planner or the benchmark harness.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

struct BenchEntry {
  std::string name;
  std::string domain;
  std::string problem;
};

/// Manifest lines: `domain problem [name]`, paths relative to the manifest's
/// directory; blank lines and `#` comments ignored.
std::vector<BenchEntry> read_manifest(const std::string& path);

struct BenchOptions {
  std::vector<Encoding> encodings{Encoding::optiplan, Encoding::baseline};
  PlannerOptions planner;
  pddl::GroundOptions ground;
  int repeats = 1;  // time column is the minimum over repeats
};

struct BenchRow {
  std::string problem;
  Encoding encoding = Encoding::optiplan;
  bool ok = false;
  std::size_t vars_before = 0, cons_before = 0, vars_after = 0, cons_after = 0;
  std::size_t nodes = 0;
  double time_to_first_feasible = 0.0;
  std::string error;
};

BenchRow bench_one(const BenchEntry& entry, Encoding encoding, const BenchOptions& opts);
std::vector<BenchRow> bench(const std::vector<BenchEntry>& entries, const BenchOptions& opts);

inline constexpr const char* kBenchHeader =
    "problem,encoding,vars_before,cons_before,vars_after,cons_after,nodes,time_to_first_feasible";
std::string bench_csv(const std::vector<BenchRow>& rows);

/// `key: value` lines describing a planner run.
std::string stats_block(const PlanResult& result, Encoding encoding, bool per_horizon);

}  // namespace optiplan::cli
