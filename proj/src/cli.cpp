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

#include "optiplan/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "optiplan/mps.hpp"
#include "optiplan/plangraph.hpp"

namespace optiplan::cli {

namespace {

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(6);
  o << std::fixed << s;
  return o.str();
}

bool write_file(const std::string& path, const std::string& data, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    err << "error: cannot write " << path << "\n";
    return false;
  }
  f << data;
  return static_cast<bool>(f);
}

}  // namespace

std::vector<BenchEntry> read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest " + path);
  const auto base = std::filesystem::path(path).parent_path();
  std::vector<BenchEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    std::istringstream ls(line);
    BenchEntry e;
    if (!(ls >> e.domain)) continue;
    if (!(ls >> e.problem))
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected domain and problem");
    ls >> e.name;
    if (e.name.empty()) e.name = std::filesystem::path(e.problem).stem().string();
    e.domain = (base / e.domain).string();
    e.problem = (base / e.problem).string();
    out.push_back(std::move(e));
  }
  return out;
}

BenchRow bench_one(const BenchEntry& entry, Encoding encoding, const BenchOptions& opts) {
  BenchRow row;
  row.problem = entry.name;
  row.encoding = encoding;
  try {
    const GroundTask task = pddl::load_task(entry.domain, entry.problem, opts.ground);
    PlannerOptions po = opts.planner;
    po.encoding = encoding;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < std::max(1, opts.repeats); ++r) {
      const auto res = plan(task, po);
      if (!res.solved()) {
        row.error = std::string(to_string(res.status));
        return row;
      }
      const auto& last = res.attempts.back();
      row.vars_before = last.vars_before;
      row.cons_before = last.cons_before;
      row.vars_after = last.vars_after;
      row.cons_after = last.cons_after;
      row.nodes = 0;
      for (const auto& a : res.attempts) row.nodes += a.nodes;
      best = std::min(best, res.seconds);
    }
    row.time_to_first_feasible = best;
    row.ok = true;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<BenchRow> bench(const std::vector<BenchEntry>& entries, const BenchOptions& opts) {
  std::vector<BenchRow> rows;
  for (const auto& e : entries)
    for (auto enc : opts.encodings) rows.push_back(bench_one(e, enc, opts));
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << kBenchHeader << "\n";
  for (const auto& r : rows) {
    out << r.problem << "," << to_string(r.encoding) << ",";
    if (!r.ok) {
      out << "NA,NA,NA,NA,NA,NA\n";
      continue;
    }
    out << r.vars_before << "," << r.cons_before << "," << r.vars_after << "," << r.cons_after
        << "," << r.nodes << "," << fmt_seconds(r.time_to_first_feasible) << "\n";
  }
  return out.str();
}

std::string stats_block(const PlanResult& result, Encoding encoding, bool per_horizon) {
  std::ostringstream out;
  out << "encoding: " << to_string(encoding) << "\n";
  out << "status: " << to_string(result.status) << "\n";
  if (result.solved()) {
    out << "makespan: " << result.plan.makespan() << "\n";
    out << "actions: " << result.plan.action_count() << "\n";
  }
  std::size_t nodes = 0, iters = 0;
  for (const auto& a : result.attempts) {
    nodes += a.nodes;
    iters += a.lp_iterations;
  }
  if (!result.attempts.empty()) {
    const auto& last = result.attempts.back();
    out << "horizon: " << last.horizon << "\n";
    out << "vars_before: " << last.vars_before << "\n";
    out << "cons_before: " << last.cons_before << "\n";
    out << "vars_after: " << last.vars_after << "\n";
    out << "cons_after: " << last.cons_after << "\n";
    out << "solver_status: " << to_string(last.status) << "\n";
  }
  out << "horizons_tried: " << result.attempts.size() << "\n";
  out << "nodes: " << nodes << "\n";
  out << "lp_iterations: " << iters << "\n";
  out << "seconds: " << fmt_seconds(result.seconds) << "\n";
  if (per_horizon) {
    for (const auto& a : result.attempts) {
      out << "horizon_" << a.horizon << ": vars_before=" << a.vars_before
          << " cons_before=" << a.cons_before << " vars_after=" << a.vars_after
          << " cons_after=" << a.cons_after << " status=" << to_string(a.status)
          << " nodes=" << a.nodes << " solve_seconds=" << fmt_seconds(a.solve_seconds) << "\n";
    }
  }
  for (const auto& d : result.diagnostics) out << "note: " << d << "\n";
  return out.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"STRIPS planner compiling planning graphs into 0-1 integer programs"};
  std::string domain, problem, encoding_name, emit_mps, bench_manifest, out_path;
  int max_horizon = 50;
  bool prove_optimal = false, no_presolve = false, no_solve = false, stats = false;
  bool distinct_args = false;
  double time_limit = std::numeric_limits<double>::infinity();
  std::size_t node_limit = std::numeric_limits<std::size_t>::max();
  int repeats = 1;

  app.add_option("--domain", domain, "PDDL domain file");
  app.add_option("--problem", problem, "PDDL problem file");
  app.add_option("--encoding", encoding_name, "optiplan or baseline")
      ->check(CLI::IsMember({"optiplan", "baseline"}));
  app.add_option("--max-horizon", max_horizon, "largest horizon to try")->check(CLI::PositiveNumber);
  app.add_flag("--prove-optimal", prove_optimal, "prove action-count minimality at the makespan");
  app.add_flag("--no-presolve", no_presolve, "solve the encoded model directly");
  app.add_option("--emit-mps", emit_mps, "write the model at the final horizon as MPS");
  app.add_flag("--no-solve", no_solve, "encode the first horizon only, do not solve");
  app.add_flag("--stats", stats, "per-horizon statistics");
  app.add_option("--bench", bench_manifest, "run the benchmark manifest");
  app.add_option("--out", out_path, "CSV output for --bench (default stdout)");
  app.add_option("--time-limit", time_limit, "solver time limit per horizon, seconds");
  app.add_option("--node-limit", node_limit, "branch-and-bound node limit per horizon");
  app.add_option("--repeats", repeats, "bench timing repeats (minimum is reported)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--distinct-args", distinct_args,
               "ground only bindings with pairwise distinct objects");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kPlanFound;
    }
    err << "error: " << e.what() << "\n" << "run with --help for usage\n";
    return kUsageError;
  }

  PlannerOptions po;
  po.max_horizon = max_horizon;
  po.presolve = !no_presolve;
  po.prove_optimal = prove_optimal;
  po.solver.time_limit = time_limit;
  po.solver.node_limit = node_limit;
  pddl::GroundOptions go;
  go.distinct_bindings = distinct_args;

  if (!bench_manifest.empty()) {
    BenchOptions bo;
    bo.planner = po;
    bo.ground = go;
    bo.repeats = repeats;
    if (!encoding_name.empty())
      bo.encodings = {encoding_name == "baseline" ? Encoding::baseline : Encoding::optiplan};
    std::vector<BenchEntry> entries;
    try {
      entries = read_manifest(bench_manifest);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return kUsageError;
    }
    const auto rows = bench(entries, bo);
    for (const auto& r : rows)
      if (!r.ok) err << "bench: " << r.problem << " (" << to_string(r.encoding) << "): " << r.error << "\n";
    const auto csv = bench_csv(rows);
    if (out_path.empty()) {
      out << csv;
    } else if (!write_file(out_path, csv, err)) {
      return kUsageError;
    }
    return kPlanFound;
  }

  if (domain.empty() || problem.empty()) {
    err << "error: --domain and --problem are required (or --bench)\n";
    return kUsageError;
  }
  const Encoding encoding = encoding_name == "baseline" ? Encoding::baseline : Encoding::optiplan;
  po.encoding = encoding;

  GroundTask task;
  try {
    task = pddl::load_task(domain, problem, go);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  for (const auto& n : task.notes) err << "note: " << n << "\n";

  try {
    if (no_solve) {
      PlanningGraph graph = PlanningGraph::build_to_goal_level(task);
      if (graph.status() == PlanningGraph::GoalStatus::unreachable) {
        err << "goals unreachable: planning graph leveled off\n";
        return kUnsolvable;
      }
      const int T = graph.levels();
      EncodeOptions eo;
      eo.pruning = po.pruning;
      eo.permissive = po.permissive_baseline;
      std::vector<std::string> warnings;
      IpModel model;
      if (encoding == Encoding::optiplan) {
        graph.compute_relevance(task.goal);
        model = encode_optiplan(graph, task, T, eo);
      } else {
        eo.substitute_predel = false;
        model = encode_baseline(task, T, eo, &warnings);
      }
      for (const auto& w : warnings) err << "warning: " << w << "\n";
      if (!emit_mps.empty() && !write_file(emit_mps, write_mps(model), err)) return kUsageError;
      out << "encoding: " << to_string(encoding) << "\n";
      out << "horizon: " << T << "\n";
      out << "vars_before: " << model.num_variables() << "\n";
      out << "cons_before: " << model.num_constraints() << "\n";
      if (!no_presolve) {
        const auto reduced = presolve(model);
        out << "vars_after: " << reduced.report.vars_after << "\n";
        out << "cons_after: " << reduced.report.cons_after << "\n";
        if (reduced.report.infeasible()) out << "presolve: infeasible\n";
      }
      return kPlanFound;
    }

    std::string last_mps;
    if (!emit_mps.empty()) po.on_model = [&](const IpModel& m, int) { last_mps = write_mps(m); };
    const auto result = plan(task, po);
    if (!emit_mps.empty() && !last_mps.empty() && !write_file(emit_mps, last_mps, err))
      return kUsageError;
    if (result.solved()) out << format_plan(task, result.plan);
    out << stats_block(result, encoding, stats);
    switch (result.status) {
      case PlanResult::Status::solved: return kPlanFound;
      case PlanResult::Status::unsolvable: return kUnsolvable;
      default: return kLimit;
    }
  } catch (const EncodeError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace optiplan::cli
