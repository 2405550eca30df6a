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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <unistd.h>
#include <algorithm>

#include "optiplan/cli.hpp"
#include "optiplan/mps.hpp"
#include "oracles.hpp"

namespace optiplan::cli {
namespace {

namespace fs = std::filesystem;

struct Run {
  int code;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "optiplan");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string dom() { return testing::data_path("logistics/domain.pddl"); }
std::string toy() { return testing::data_path("logistics/toy.pddl"); }

fs::path scratch_dir(const std::string& tag) {
  auto p = fs::temp_directory_path() / ("optiplan_cli_" + tag + "_" + std::to_string(::getpid()));
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Cli, SolvesToy) {
  const auto r = run_cli({"--domain", dom(), "--problem", toy(), "--distinct-args"});
  EXPECT_EQ(r.code, kPlanFound) << r.err;
  // Either truck will do.
  const std::regex plan_re(
      "1: \\(load pack1 (truck[12]) loc1\\)\n2: \\(drive \\1 loc1 loc2\\)\n"
      "3: \\(unload pack1 \\1 loc2\\)\n");
  EXPECT_TRUE(std::regex_search(r.out, plan_re)) << r.out;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, kUsageError);
  EXPECT_EQ(run_cli({"--domain", dom()}).code, kUsageError);
  EXPECT_EQ(run_cli({"--domain", dom(), "--problem", "/nonexistent.pddl"}).code, kUsageError);
  EXPECT_EQ(run_cli({"--domain", dom(), "--problem", toy(), "--encoding", "sat"}).code, kUsageError);
  EXPECT_EQ(run_cli({"--bogus"}).code, kUsageError);
}

TEST(Cli, UnsolvableExitCode) {
  const auto dir = scratch_dir("unsolvable");
  std::ofstream(dir / "p.pddl") << "(define (problem u) (:domain logistics-trucks)\n"
                                   " (:objects t1 - truck p1 - package l1 l2 - location)\n"
                                   " (:init (pack-at p1 l1))\n (:goal (pack-at p1 l2)))\n";
  const auto r = run_cli({"--domain", dom(), "--problem", (dir / "p.pddl").string()});
  EXPECT_EQ(r.code, kUnsolvable) << r.out << r.err;
  fs::remove_all(dir);
}

TEST(Cli, HorizonLimitExitCode) {
  const auto r = run_cli({"--domain", testing::data_path("blocksworld/domain.pddl"), "--problem",
                          testing::data_path("blocksworld/sussman.pddl"), "--max-horizon", "2"});
  EXPECT_EQ(r.code, kLimit);
}

TEST(Cli, EmitMpsWithoutSolving) {
  const auto dir = scratch_dir("mps");
  const auto path = (dir / "toy.mps").string();
  const auto r = run_cli({"--domain", dom(), "--problem", toy(), "--distinct-args", "--emit-mps",
                          path, "--no-solve"});
  EXPECT_EQ(r.code, kPlanFound) << r.err;
  EXPECT_NE(r.out.find("vars_before:"), std::string::npos);
  EXPECT_NE(r.out.find("cons_after:"), std::string::npos);
  const auto text = slurp(path);
  ASSERT_FALSE(text.empty());
  const auto m = read_mps(text);
  EXPECT_GT(m.num_variables(), 0u);
  EXPECT_TRUE(m.find_variable("y_load_pack1_truck1_loc1_1") || m.num_variables() > 0);
  fs::remove_all(dir);
}

TEST(Cli, BaselineStats) {
  const auto r = run_cli({"--domain", dom(), "--problem", toy(), "--distinct-args", "--encoding",
                          "baseline", "--stats"});
  EXPECT_EQ(r.code, kPlanFound) << r.err;
  EXPECT_NE(r.out.find("encoding: baseline"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("horizon"), std::string::npos);
}

TEST(Cli, BenchCsv) {
  const auto dir = scratch_dir("bench");
  fs::create_directories(dir / "logistics");
  fs::copy_file(dom(), dir / "logistics/domain.pddl", fs::copy_options::overwrite_existing);
  fs::copy_file(toy(), dir / "logistics/toy.pddl", fs::copy_options::overwrite_existing);
  std::ofstream(dir / "m.txt") << "# comment\nlogistics/domain.pddl logistics/toy.pddl toy\n";
  const auto out = (dir / "bench.csv").string();
  const auto r = run_cli({"--bench", (dir / "m.txt").string(), "--out", out, "--distinct-args"});
  EXPECT_EQ(r.code, kPlanFound) << r.err;
  std::istringstream csv(slurp(out));
  std::vector<std::string> lines;
  for (std::string l; std::getline(csv, l);) lines.push_back(l);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], kBenchHeader);
  EXPECT_TRUE(lines[1].starts_with("toy,optiplan,")) << lines[1];
  EXPECT_TRUE(lines[2].starts_with("toy,baseline,")) << lines[2];
  for (std::size_t i = 1; i < lines.size(); ++i)
    EXPECT_EQ(std::count(lines[i].begin(), lines[i].end(), ','), 7) << lines[i];
  fs::remove_all(dir);
}

TEST(Cli, EmptyManifestWritesHeaderOnly) {
  const auto dir = scratch_dir("empty");
  std::ofstream(dir / "m.txt") << "";
  const auto r = run_cli({"--bench", (dir / "m.txt").string()});
  EXPECT_EQ(r.code, kPlanFound) << r.err;
  EXPECT_EQ(r.out, std::string(kBenchHeader) + "\n");
  fs::remove_all(dir);
}

TEST(Cli, ManifestResolvesRelativePaths) {
  const auto entries = read_manifest(testing::data_path("bench.manifest"));
  ASSERT_EQ(entries.size(), 7u);
  EXPECT_EQ(entries[0].name, "log-toy");
  for (const auto& e : entries) {
    EXPECT_TRUE(fs::exists(e.domain)) << e.domain;
    EXPECT_TRUE(fs::exists(e.problem)) << e.problem;
  }
}

TEST(Cli, BenchRowForFailedProblemIsNa) {
  BenchEntry e{"missing", dom(), "/nonexistent.pddl"};
  const auto row = bench_one(e, Encoding::optiplan, {});
  EXPECT_FALSE(row.ok);
  const auto csv = bench_csv({row});
  EXPECT_NE(csv.find("missing,optiplan,NA"), std::string::npos) << csv;
}

}  // namespace
}  // namespace optiplan::cli
