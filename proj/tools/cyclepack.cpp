// Copyright 2026 The cyclepack Authors
//
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

// cyclepack command-line tool.
//
// Exit codes:
//   0  success (feasible / valid / found / all rows agree)
//   1  negative answer (infeasible / invalid / predicate false / disagreement)
//   2  usage or parse error
//   3  search budget exhausted (build, decompose)
//   4  sweep finished but some rows hit the search budget
//   5  decompose: predicate true but exhaustive search found nothing
//
// CYCLEPACK_NODE_BUDGET sets the default search node budget.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cyclepack/constructor.hpp"
#include "cyclepack/decomposer.hpp"
#include "cyclepack/feasibility.hpp"
#include "cyclepack/io.hpp"
#include "cyclepack/sweep.hpp"

namespace {

using namespace cyclepack;

constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;
constexpr int kBudget = 3;
constexpr int kSweepBudget = 4;
constexpr int kDefect = 5;

struct InstanceArgs {
  int lambda = 0;
  int v = 0;
  std::string lengths;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--lambda", lambda, "edge multiplicity")->required();
    cmd->add_option("--v", v, "number of vertices")->required();
    cmd->add_option("--lengths", lengths, "comma-separated cycle lengths, e.g. 3,3,4")->required();
  }
  Instance instance() const { return Instance(lambda, v, parse_lengths(lengths)); }
};

SearchConfig search_config(const std::optional<std::uint64_t>& budget) {
  SearchConfig cfg = default_search_config();
  if (budget) cfg.node_budget = *budget;
  return cfg;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
}

json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

int cmd_check(const InstanceArgs& a) {
  Instance inst = a.instance();
  auto verdict = check_packing_feasibility(inst);
  std::cout << to_json(verdict, inst).dump() << '\n';
  return verdict.feasible ? kOk : kNo;
}

int cmd_build(const InstanceArgs& a, const std::string& out_path, const std::string& trace_path,
              const std::optional<std::uint64_t>& budget) {
  Instance inst = a.instance();
  auto verdict = check_packing_feasibility(inst);
  if (!verdict.feasible) {
    std::cerr << to_json(verdict, inst).dump() << '\n';
    return kNo;
  }
  BuildResult built;
  try {
    built = build_packing(inst, search_provider(search_config(budget)));
  } catch (const ProviderFailure& e) {
    std::cerr << "search budget exhausted: " << e.what() << '\n';
    return kBudget;
  }
  std::string doc = to_json(built.packing).dump() + "\n";
  if (out_path.empty())
    std::cout << doc;
  else
    write_file(out_path, doc);
  if (!trace_path.empty()) write_file(trace_path, write_trace(built.trace));
  return kOk;
}

const char* violation_name(Violation v) {
  switch (v) {
    case Violation::None: return "None";
    case Violation::VertexRange: return "VertexRange";
    case Violation::BadLength: return "BadLength";
    case Violation::OverusedEdge: return "OverusedEdge";
    case Violation::LengthMismatch: return "LengthMismatch";
  }
  return "?";
}

int cmd_verify(const std::string& instance_path, const std::string& packing_path) {
  Instance inst = instance_from_json(parse_json(read_file(instance_path), "instance"));
  PackingFile file;
  try {
    file = packing_from_json(parse_json(read_file(packing_path), "packing"));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("packing: ") + e.what());
  }
  if (file.lambda != inst.lambda || file.v != inst.v) {
    std::cout << "InstanceMismatch: packing is for lambda=" << file.lambda << " v=" << file.v << '\n';
    return kNo;
  }
  Verdict verdict = validate_packing(inst, file.cycles, true);
  if (!verdict) {
    std::cout << violation_name(verdict.violation) << ": " << verdict.message << '\n';
    return kNo;
  }
  std::vector<Pair> leave = leave_of(inst, file.cycles).edge_list();
  std::vector<Pair> stated = file.leave;
  std::sort(stated.begin(), stated.end());
  if (stated != leave) {
    std::cout << "LeaveMismatch: stated leave differs from the computed leave\n";
    return kNo;
  }
  std::cout << "valid\n";
  return kOk;
}

int cmd_decompose(const InstanceArgs& a, bool with_factor, const std::string& out_path,
                  const std::optional<std::uint64_t>& budget) {
  Instance inst = a.instance();
  if (!check_decomposition_feasibility(inst, with_factor)) {
    std::cerr << "no decomposition: predicate is false\n";
    return kNo;
  }
  auto outcome = decompose(inst, with_factor, search_config(budget));
  if (outcome.status == SearchStatus::BudgetExceeded) {
    std::cerr << "search budget exhausted after " << outcome.nodes << " nodes\n";
    return kBudget;
  }
  if (!outcome.found()) {
    std::cerr << "DEFECT: predicate true but search found no decomposition (" << outcome.nodes << " nodes)\n";
    return kDefect;
  }
  std::string doc = to_json(*outcome.value, inst).dump() + "\n";
  if (out_path.empty())
    std::cout << doc;
  else
    write_file(out_path, doc);
  return kOk;
}

struct SweepArgs {
  std::vector<int> lambdas;
  std::vector<int> vs;
  bool oracle = false;
  bool construct = false;
  std::optional<std::size_t> sample;
  std::uint64_t seed = 0;
  std::string out;
  unsigned threads = 0;
  std::optional<std::uint64_t> budget;
};

int cmd_sweep(const SweepArgs& a) {
  std::vector<Instance> instances;
  for (int lambda : a.lambdas)
    for (int v : a.vs) {
      if (lambda < 1 || v < 1) throw InvalidArgument("lambda and v must be positive");
      auto lists = enumerate_packing_lists(lambda, v);
      if (a.sample) {
        for (std::size_t i : sample_indices(lists.size(), *a.sample, a.seed))
          instances.emplace_back(lambda, v, lists[i]);
      } else {
        for (auto& l : lists) instances.emplace_back(lambda, v, std::move(l));
      }
    }
  SweepOptions opt;
  opt.oracle = a.oracle;
  opt.construct = a.construct;
  opt.search = search_config(a.budget);
  opt.threads = a.threads;
  auto rows = run_sweep(instances, opt);
  if (a.out.empty()) {
    write_csv(std::cout, rows);
  } else {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw Error("cannot write " + a.out);
    write_csv(out, rows);
  }
  auto s = summarize(rows);
  std::cerr << "rows=" << s.rows << " disagreements=" << s.disagreements << " budget=" << s.budget_rows << '\n';
  return s.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cyclepack: cycle packings of complete multigraphs"};
  app.require_subcommand(1);

  InstanceArgs check_args, build_args, decompose_args;
  std::string build_out, build_trace, decompose_out, verify_instance, verify_packing;
  std::optional<std::uint64_t> build_budget, decompose_budget;
  bool one_factor = false;
  SweepArgs sweep;

  auto* check = app.add_subcommand("check", "evaluate the packing feasibility conditions");
  check_args.add_to(check);

  auto* build = app.add_subcommand("build", "construct a packing");
  build_args.add_to(build);
  build->add_option("--out", build_out, "packing file (default: stdout)");
  build->add_option("--trace", build_trace, "write the build trace here");
  build->add_option("--budget", build_budget, "search node budget");

  auto* verify = app.add_subcommand("verify", "validate a packing file against an instance file");
  verify->add_option("instance", verify_instance, "instance JSON")->required();
  verify->add_option("packing", verify_packing, "packing JSON")->required();

  auto* dec = app.add_subcommand("decompose", "search for a cycle decomposition");
  decompose_args.add_to(dec);
  dec->add_flag("--one-factor", one_factor, "decompose lambda K_v minus a 1-factor");
  dec->add_option("--out", decompose_out, "decomposition file (default: stdout)");
  dec->add_option("--budget", decompose_budget, "search node budget");

  auto* sw = app.add_subcommand("sweep", "cross-validate predicate, oracle and constructor");
  sw->add_option("--lambda", sweep.lambdas, "lambda values")->required()->delimiter(',');
  sw->add_option("--v", sweep.vs, "v values")->required()->delimiter(',');
  sw->add_flag("--oracle", sweep.oracle, "run the exhaustive oracle");
  sw->add_flag("--construct", sweep.construct, "build and validate feasible instances");
  sw->add_option("--sample", sweep.sample, "random sample size per (lambda, v)");
  sw->add_option("--seed", sweep.seed, "sampling seed");
  sw->add_option("--out", sweep.out, "CSV report (default: stdout)");
  sw->add_option("--threads", sweep.threads, "worker threads (0: all cores)");
  sw->add_option("--budget", sweep.budget, "search node budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(check_args);
    if (*build) return cmd_build(build_args, build_out, build_trace, build_budget);
    if (*verify) return cmd_verify(verify_instance, verify_packing);
    if (*dec) return cmd_decompose(decompose_args, one_factor, decompose_out, decompose_budget);
    if (*sw) return cmd_sweep(sweep);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const ParityMismatch& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
