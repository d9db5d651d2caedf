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

// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cyclepack/constructor.hpp"
#include "cyclepack/decomposer.hpp"
#include "cyclepack/feasibility.hpp"
#include "cyclepack/io.hpp"
#include "cyclepack/sweep.hpp"
#include "cyclepack/switching.hpp"
#include "support.hpp"

using namespace cyclepack;
using namespace cyclepack::testing;

namespace {

constexpr std::uint64_t kSampleSeed = 7;
constexpr std::size_t kSampleSize = 200;

std::string describe(const Instance& inst) {
  return "(lambda=" + std::to_string(inst.lambda) + ", v=" + std::to_string(inst.v) + ", M={" +
         join_lengths(inst.lengths) + "})";
}

class Criterion {
 public:
  explicit Criterion(std::string name) : name_(std::move(name)), start_(std::chrono::steady_clock::now()) {}

  void fail(const std::string& what) {
    ++failures_;
    if (shown_ < 10) {
      ++shown_;
      details_.push_back("failure: " + what);
    }
  }
  void detail(const std::string& what) { details_.push_back(what); }
  bool ok() const { return failures_ == 0; }

  bool report() const {
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1fs", secs);
    std::cout << (ok() ? "PASS " : "FAIL ") << name_ << " [" << buf << "]";
    if (!ok()) std::cout << " (" << failures_ << " failures)";
    std::cout << '\n';
    for (const auto& d : details_) std::cout << "    " << d << '\n';
    std::cout.flush();
    return ok();
  }

 private:
  std::string name_;
  std::chrono::steady_clock::time_point start_;
  std::size_t failures_ = 0;
  std::size_t shown_ = 0;
  std::vector<std::string> details_;
};

// Invariant collector for criterion 7: every packing seen anywhere.
struct InvariantLog {
  std::size_t packings = 0;
  std::size_t parity_failures = 0;
  std::size_t size_failures = 0;
  std::vector<std::string> examples;

  void check(const Packing& pk, const std::string& where) {
    ++packings;
    const auto& inst = pk.instance();
    const int want = (inst.lambda * (inst.v - 1)) % 2;
    bool parity = true;
    for (int d : pk.leave().degrees()) parity = parity && d % 2 == want;
    if (!parity) {
      ++parity_failures;
      if (examples.size() < 5) examples.push_back("leave parity broken in " + where + " " + describe(inst));
    }
    if (want == 1 && pk.leave().edge_count() < inst.v / 2) {
      ++size_failures;
      if (examples.size() < 5) examples.push_back("odd leave smaller than v/2 in " + where + " " + describe(inst));
    }
  }
};

InvariantLog invariants;

struct Domain {
  int lambda;
  int v;
  bool exhaustive;
};

std::vector<Instance> domain_instances(const Domain& d) {
  auto lists = enumerate_packing_lists(d.lambda, d.v);
  std::vector<Instance> out;
  if (d.exhaustive) {
    for (auto& l : lists) out.emplace_back(d.lambda, d.v, std::move(l));
  } else {
    for (auto i : sample_indices(lists.size(), kSampleSize, kSampleSeed)) out.emplace_back(d.lambda, d.v, lists[i]);
  }
  return out;
}

std::vector<Domain> criterion1_domains() {
  std::vector<Domain> out;
  for (int lambda = 1; lambda <= 3; ++lambda)
    for (int v = 2; v <= 5; ++v) out.push_back({lambda, v, true});
  out.push_back({1, 6, true});
  out.push_back({2, 6, false});
  out.push_back({3, 6, false});
  out.push_back({1, 7, false});
  return out;
}

// --- criterion 1 ------------------------------------------------------------

bool criterion1(std::vector<Instance>& feasible) {
  Criterion c("criterion 1: predicate agrees with exhaustive oracle");
  for (const auto& d : criterion1_domains()) {
    std::size_t rows = 0, yes = 0;
    for (const auto& inst : domain_instances(d)) {
      ++rows;
      auto verdict = check_packing_feasibility(inst);
      auto oracle = brute_force_pack(inst);
      if (oracle.status == SearchStatus::BudgetExceeded) {
        c.fail("oracle budget on " + describe(inst));
        continue;
      }
      if (verdict.feasible != oracle.found())
        c.fail(describe(inst) + " predicate=" + (verdict.feasible ? "feasible" : "infeasible") +
               " oracle=" + status_name(oracle.status));
      if (oracle.found()) {
        if (!validate_packing(inst, oracle.value->cycles(), true).ok()) c.fail("oracle packing invalid " + describe(inst));
        invariants.check(*oracle.value, "oracle");
      }
      if (verdict.feasible) {
        ++yes;
        feasible.push_back(inst);
      }
    }
    c.detail("lambda=" + std::to_string(d.lambda) + " v=" + std::to_string(d.v) +
             (d.exhaustive ? " exhaustive: " : " sample(seed 7): ") + std::to_string(rows) + " lists, " +
             std::to_string(yes) + " feasible");
  }
  return c.report();
}

// --- criterion 2 and replay part of 7 -----------------------------------------

struct BuildRecord {
  Instance inst;
  BuildResult result;
};

bool criterion2(const std::vector<Instance>& feasible, std::vector<BuildRecord>& builds) {
  Criterion c("criterion 2: constructor output is a valid packing on every feasible instance");
  std::map<std::string, std::size_t> routes;
  for (const auto& inst : feasible) {
    try {
      auto r = build_packing(inst);
      auto v = validate_packing(inst, r.packing.cycles(), true);
      if (!v) c.fail(describe(inst) + ": " + v.message);
      if (r.packing.leave().edge_count() != delta_of(inst)) c.fail(describe(inst) + ": leave size != delta");
      invariants.check(r.packing, "build");
      for (const auto& s : r.trace.steps)
        if (auto* n = std::get_if<trace_step::Note>(&s)) {
          auto key = n->text.substr(0, n->text.find_first_of(":="));
          if (key.rfind("instance", 0) != 0) ++routes[key];
        }
      builds.push_back({inst, std::move(r)});
    } catch (const std::exception& e) {
      c.fail(describe(inst) + ": " + e.what());
    }
  }
  c.detail(std::to_string(feasible.size()) + " feasible instances built");
  for (const auto& [k, n] : routes) c.detail("route '" + k + "': " + std::to_string(n));
  return c.report();
}

// --- criterion 3 ------------------------------------------------------------

bool criterion3() {
  Criterion c("criterion 3: named infeasible families rejected by predicate and oracle");
  struct Family {
    std::string name;
    std::function<bool(const Instance&, std::int64_t)> member;
    std::size_t members = 0;
    std::size_t rejected = 0;
    std::vector<std::string> exceptions;
  };
  std::vector<Family> families{
      {"delta=1 with lambda(v-1) even",
       [](const Instance& i, std::int64_t d) { return d == 1 && (i.lambda * (i.v - 1)) % 2 == 0; }},
      {"delta=2 with lambda=1", [](const Instance& i, std::int64_t d) { return d == 2 && i.lambda == 1; }},
      {"delta < v/2 with lambda(v-1) odd",
       [](const Instance& i, std::int64_t d) { return 2 * d < i.v && (i.lambda * (i.v - 1)) % 2 == 1; }},
  };
  auto test = [&](Family& f, const Instance& inst) {
    ++f.members;
    bool pred = check_packing_feasibility(inst).feasible;
    auto oracle = brute_force_pack(inst);
    if (!pred && oracle.status == SearchStatus::NotFound) {
      ++f.rejected;
      return;
    }
    std::string what = describe(inst) + " predicate=" + (pred ? "feasible" : "infeasible") +
                       " oracle=" + status_name(oracle.status);
    if (oracle.found()) {
      std::string cyc;
      for (const auto& cy : oracle.value->cycles()) cyc += cy.str();
      what += " packing " + cyc;
    }
    f.exceptions.push_back(what);
    c.fail(f.name + ": " + what);
  };
  for (int lambda = 1; lambda <= 3; ++lambda)
    for (int v = 2; v <= (lambda == 1 ? 8 : 6); ++v)
      for (const auto& l : enumerate_packing_lists(lambda, v)) {
        Instance inst(lambda, v, l);
        auto d = delta_of(inst);
        if (d > 3) continue;
        for (auto& f : families)
          if (f.member(inst, d)) test(f, inst);
      }
  for (auto& f : families)
    c.detail(f.name + ": " + std::to_string(f.rejected) + "/" + std::to_string(f.members) +
             " rejected (lambda<=3, v<=6; lambda=1 up to v=8)");

  std::vector<int> iii(10, 2);
  iii.insert(iii.end(), {4, 4});
  for (const auto& [name, inst, cond] :
       {std::tuple{std::string("(iii) instance"), Instance(3, 5, iii), Condition::III},
        std::tuple{std::string("(iv) instance"), Instance(2, 4, {2, 2, 2, 2, 4}), Condition::IV}}) {
    auto verdict = check_packing_feasibility(inst);
    auto oracle = brute_force_pack(inst);
    bool names_it = std::find(verdict.failed_conditions.begin(), verdict.failed_conditions.end(), cond) !=
                    verdict.failed_conditions.end();
    bool ok = !verdict.feasible && names_it && oracle.status == SearchStatus::NotFound;
    if (!ok) c.fail(name + " " + describe(inst));
    c.detail(name + " " + describe(inst) + ": " + (ok ? "rejected" : "NOT rejected") + ", fails " +
             condition_name(cond) + ", oracle " + status_name(oracle.status));
  }
  return c.report();
}

// --- criterion 4 ------------------------------------------------------------

bool criterion4() {
  Criterion c("criterion 4: switch postconditions on random packings");
  Rng rng(0x5eed0004);
  std::size_t cases = 0, parallel = 0;
  while (cases < 12000) {
    int lambda = uniform(rng, 1, 3);
    int v = uniform(rng, 3, 8);
    auto pk = random_packing(rng, lambda, v, uniform(rng, 0, 3 * v));
    auto cands = switch_candidates(pk.leave());
    if (cands.empty()) continue;
    auto req = cands[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(cands.size()) - 1))];
    ++cases;
    try {
      auto r = perform_switch(pk, req);
      if (auto bad = switch_violation(pk, r, req))
        c.fail(*bad + " " + describe(pk.instance()));
      if (r.terminus == req.origin) ++parallel;
      invariants.check(r.packing, "switch");
    } catch (const std::exception& e) {
      c.fail(std::string(e.what()) + " " + describe(pk.instance()));
    }
  }
  c.detail(std::to_string(cases) + " switches, lambda<=3, v<=8; " + std::to_string(parallel) +
           " with terminus = origin");
  return c.report();
}

// --- criterion 5 ------------------------------------------------------------

std::string histogram(const std::map<std::size_t, std::size_t>& h) {
  std::string out;
  for (const auto& [k, n] : h) out += " " + std::to_string(k) + ":" + std::to_string(n);
  return out;
}

bool criterion5() {
  Criterion c("criterion 5: lasso_to_cycle and chord_to_lasso properties");
  Rng rng(0x5eed0005);
  // Packings saturated around a planted structure; an input counts as nontrivial
  // when the procedure has real work to do.
  const std::size_t kTarget = 1000;
  std::size_t lassos = 0, lasso_trivial = 0;
  std::map<std::size_t, std::size_t> lasso_switches;
  while (lassos < kTarget) {
    int lambda = uniform(rng, 1, 3);
    int v = uniform(rng, 5, 8);
    int s = uniform(rng, 3, v - 2);
    int p = uniform(rng, 2, v - 1);
    if (s % 2 == 0 && p % 2) continue;
    if (p == 2 && lambda < 2) continue;
    int q = std::max(1, s + 2 - p);
    if (p + q > v) continue;
    auto reserved = random_lasso_graph(rng, lambda, v, p, q);
    auto pk = saturate(random_packing(rng, lambda, v, uniform(rng, 0, 40 * v), reserved), reserved);
    if (find_cycle_of_length(pk.leave(), s)) {
      if (lasso_trivial >= kTarget / 10) continue;
      ++lasso_trivial;
    } else {
      ++lassos;
    }
    try {
      auto r = lasso_to_cycle(pk, s);
      auto expect = pk.length_multiset();
      expect.push_back(s);
      std::sort(expect.begin(), expect.end());
      if (r.packing.length_multiset() != expect) c.fail("lasso_to_cycle multiset " + describe(pk.instance()));
      if (r.packing.leave().edge_count() != pk.leave().edge_count() - s)
        c.fail("lasso_to_cycle leave size " + describe(pk.instance()));
      if (!validate_packing(r.packing.instance(), r.packing.cycles(), false).ok())
        c.fail("lasso_to_cycle invalid packing " + describe(pk.instance()));
      if (r.switches > r.initial_order) c.fail("lasso_to_cycle switches exceed p+q");
      ++lasso_switches[r.switches];
      Packing as_instance(Instance(lambda, v, r.packing.length_multiset()), r.packing.cycles());
      invariants.check(as_instance, "lasso_to_cycle");
    } catch (const std::exception& e) {
      c.fail(std::string("lasso_to_cycle: ") + e.what() + " " + describe(pk.instance()));
    }
  }
  c.detail("lasso_to_cycle: " + std::to_string(lassos) + " inputs without an s-cycle, " +
           std::to_string(lasso_trivial) + " with one; switches per run" + histogram(lasso_switches));

  std::size_t chords = 0, chord_trivial = 0, chord_switches = 0;
  std::map<std::size_t, std::size_t> by_e;
  while (chords < kTarget) {
    int lambda = uniform(rng, 1, 3);
    int v = uniform(rng, 4, 8);
    int s = uniform(rng, 3, v - 1);
    int e = uniform(rng, lambda >= 2 ? 2 : 3, s);
    auto reserved = random_chorded_cycle(rng, v, s, e);
    auto pk = saturate(random_packing(rng, lambda, v, uniform(rng, 0, 40 * v), reserved), reserved);
    auto comp = component_of(pk.leave(), reserved.edge_list().front().u);
    std::vector<bool> mask(static_cast<std::size_t>(v), false);
    for (Vertex x : comp) mask[static_cast<std::size_t>(x)] = true;
    if (find_lasso_exact(pk.leave().induced(mask), s, 1)) {
      if (chord_trivial >= kTarget / 10) continue;
      ++chord_trivial;
    } else {
      ++chords;
    }
    try {
      auto r = chord_to_lasso(pk, comp, s);
      ++by_e[r.initial_e];
      chord_switches += r.switches;
      const auto& before = pk.leave();
      const auto& after = r.packing.leave();
      std::vector<bool> in(static_cast<std::size_t>(v), false);
      for (Vertex x : comp) in[static_cast<std::size_t>(x)] = true;
      Multigraph h0 = before.induced(in), h1 = after.induced(in);
      std::vector<bool> out(in.size());
      for (std::size_t i = 0; i < in.size(); ++i) out[i] = !in[i];
      if (!(before.induced(out) == after.induced(out)) ||
          before.edge_count() - h0.edge_count() != after.edge_count() - h1.edge_count())
        c.fail("chord_to_lasso touched edges outside H " + describe(pk.instance()));
      if (h0.edge_count() != h1.edge_count()) c.fail("chord_to_lasso changed |E(H)| " + describe(pk.instance()));
      for (Vertex x = 0; x < v; ++x)
        if (!in[static_cast<std::size_t>(x)] && h1.degree(x) > 0) c.fail("chord_to_lasso grew V(H)");
      if (r.lasso.p() != static_cast<std::size_t>(s) || r.lasso.q() != 1) c.fail("chord_to_lasso wrong lasso shape");
      if (!contains_edges(h1, r.lasso.edges())) c.fail("chord_to_lasso lasso not in H'");
      for (Vertex x : r.lasso.cycle.vertices())
        if (h1.degree(x) < h0.degree(x))
          c.fail("degree dropped at " + std::to_string(x) + " " + describe(pk.instance()));
      if (r.packing.length_multiset() != pk.length_multiset()) c.fail("chord_to_lasso changed the multiset");
      std::size_t bound = r.initial_e >= 4 ? r.initial_e - 3 : r.initial_e == 2 ? 1 : 0;
      if (r.switches > bound)
        c.fail("chord_to_lasso used " + std::to_string(r.switches) + " switches with e=" +
               std::to_string(r.initial_e));
      Packing as_instance(Instance(lambda, v, r.packing.length_multiset()), r.packing.cycles());
      invariants.check(as_instance, "chord_to_lasso");
    } catch (const std::exception& ex) {
      c.fail(std::string("chord_to_lasso: ") + ex.what() + " " + describe(pk.instance()));
    }
  }
  c.detail("chord_to_lasso: " + std::to_string(chords) + " inputs without an (s,1)-lasso, " +
           std::to_string(chord_trivial) + " with one; " + std::to_string(chord_switches) +
           " switches; starting e" + histogram(by_e));
  return c.report();
}

// --- criterion 6 ------------------------------------------------------------

bool criterion6() {
  Criterion c("criterion 6: decomposition predicate agrees with exhaustive decomposer");
  for (int lambda = 1; lambda <= 2; ++lambda)
    for (int v = 2; v <= 6; ++v) {
      const bool lv_odd = (lambda * (v - 1)) % 2 == 1;
      for (bool factor : {false, true}) {
        if (factor && !lv_odd) continue;
        std::int64_t total = lambda * choose2(v) - (factor ? v / 2 : 0);
        std::size_t rows = 0, yes = 0;
        for (const auto& l : enumerate_exact_lists(v, total)) {
          Instance inst(lambda, v, l);
          ++rows;
          bool pred = check_decomposition_feasibility(inst, factor);
          auto out = decompose(inst, factor);
          if (out.status == SearchStatus::BudgetExceeded) {
            c.fail("budget on " + describe(inst));
            continue;
          }
          if (pred != out.found())
            c.fail(describe(inst) + (factor ? " minus 1-factor" : "") + " predicate=" + (pred ? "1" : "0") +
                   " search=" + status_name(out.status));
          if (out.found()) {
            ++yes;
            auto leave = leave_of(inst, out.value->cycles);
            if (out.value->one_factor)
              for (const auto& e : *out.value->one_factor) leave.remove(e.u, e.w);
            if (!leave.empty()) c.fail("decomposition does not cover the host " + describe(inst));
            invariants.check(Packing(inst, out.value->cycles), "decompose");
          }
        }
        c.detail("lambda=" + std::to_string(lambda) + " v=" + std::to_string(v) +
                 (factor ? " minus 1-factor: " : " plain: ") + std::to_string(rows) + " lists, " +
                 std::to_string(yes) + " decomposable");
      }
    }
  return c.report();
}

// --- criterion 7 ------------------------------------------------------------

bool criterion7(const std::vector<BuildRecord>& builds) {
  Criterion c("criterion 7: leave invariants, trace replay, format round-trips");
  std::size_t replays = 0;
  for (const auto& b : builds) {
    try {
      if (!(replay_trace(b.inst, b.result.trace) == b.result.packing))
        c.fail("replay differs " + describe(b.inst));
      auto text = write_trace(b.result.trace);
      auto back = read_trace(text);
      if (!(back == b.result.trace) || write_trace(back) != text) c.fail("trace round-trip " + describe(b.inst));
      if (!(replay_trace(b.inst, back) == b.result.packing)) c.fail("replay of parsed trace differs");
      auto file = to_file(b.result.packing);
      auto pj = to_json(file).dump();
      auto pback = packing_from_json(json::parse(pj));
      if (!(pback == file) || to_json(pback).dump() != pj) c.fail("packing JSON round-trip " + describe(b.inst));
      auto ij = to_json(b.inst).dump();
      if (!(instance_from_json(json::parse(ij)) == b.inst)) c.fail("instance JSON round-trip");
      ++replays;
    } catch (const std::exception& e) {
      c.fail(describe(b.inst) + ": " + e.what());
    }
  }
  if (invariants.parity_failures) c.fail(std::to_string(invariants.parity_failures) + " leave parity failures");
  if (invariants.size_failures) c.fail(std::to_string(invariants.size_failures) + " undersized odd leaves");
  for (const auto& e : invariants.examples) c.detail(e);
  c.detail(std::to_string(invariants.packings) + " packings checked for leave parity and minimum odd leave size");
  c.detail(std::to_string(replays) + " builds replayed and round-tripped through JSON and trace text");
  return c.report();
}

}  // namespace

int main() {
  std::vector<Instance> feasible;
  std::vector<BuildRecord> builds;
  int failed = 0;
  failed += !criterion1(feasible);
  failed += !criterion2(feasible, builds);
  failed += !criterion3();
  failed += !criterion4();
  failed += !criterion5();
  failed += !criterion6();
  failed += !criterion7(builds);
  std::cout << (failed ? "ACCEPTANCE: " + std::to_string(failed) + " criteria failed" : std::string("ACCEPTANCE: all criteria passed"))
            << '\n';
  return failed ? 1 : 0;
}
