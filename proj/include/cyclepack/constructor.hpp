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

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cyclepack/decomposer.hpp"
#include "cyclepack/feasibility.hpp"
#include "cyclepack/multigraph.hpp"
#include "cyclepack/switching.hpp"
#include "cyclepack/trace.hpp"

namespace cyclepack {

/// Extra cycle lengths appended to M so that a full decomposition exists;
/// removing them afterwards leaves exactly `total` edges (beyond any 1-factor).
struct SurplusList {
  std::vector<int> entries;
  std::int64_t total = 0;

  bool operator==(const SurplusList&) const = default;
};

namespace detail {

inline void push_repeat(std::vector<int>& out, int value, std::int64_t times) {
  for (std::int64_t i = 0; i < times; ++i) out.push_back(value);
}

}  // namespace detail

/// Surplus list for lambda odd when the leave only needs cycles removed
/// (v odd, or eps >= 3).
inline SurplusList compute_surplus_list_odd(const Instance& inst, std::int64_t eps) {
  if (inst.lambda % 2 == 0) throw CaseMismatch("odd surplus list needs lambda odd");
  if (eps < 1) throw CaseMismatch("odd surplus list needs eps >= 1");
  const int v = inst.v;
  if (v < 3) throw CaseMismatch("odd surplus list needs v >= 3");
  if (v % 2 == 0 && eps < 3) throw CaseMismatch("v even with eps in {1,2} is handled by cycle repairs");
  if (eps == 1) throw InvalidArgument("eps = 1 with v odd is infeasible");
  SurplusList out;
  out.total = eps;
  if (v == 3) {
    if (eps % 2 == 0) {
      detail::push_repeat(out.entries, 2, eps / 2);
    } else {
      detail::push_repeat(out.entries, 2, (eps - 3) / 2);
      out.entries.push_back(3);
    }
    return out;
  }
  const std::int64_t q = eps / v;
  const int r = static_cast<int>(eps % v);
  if (q == 0 || (r != 1 && r != 2)) {
    if (r) out.entries.push_back(r);
    detail::push_repeat(out.entries, v, q);
  } else {
    out.entries.push_back(3);
    out.entries.push_back(v - 3 + r);
    detail::push_repeat(out.entries, v, q - 1);
  }
  return out;
}

/// Surplus list for lambda even and delta >= 2.
inline SurplusList compute_surplus_list_even(std::int64_t delta, int m_tau) {
  if (delta < 2 || m_tau < 2) throw InvalidArgument("even surplus list needs delta >= 2 and m_tau >= 2");
  if (m_tau == 2 && delta % 2) throw InvalidArgument("odd delta needs a cycle longer than 2");
  SurplusList out;
  out.total = delta;
  if (delta < m_tau) {
    out.entries.push_back(static_cast<int>(delta));
  } else if ((delta - m_tau) % 2 == 0) {
    detail::push_repeat(out.entries, 2, (delta - m_tau) / 2);
    out.entries.push_back(m_tau);
  } else {
    detail::push_repeat(out.entries, 2, (delta - m_tau + 1) / 2);
    out.entries.push_back(m_tau - 1);
  }
  return out;
}

/// Least odd entry of M, or failing that the least entry that is at least 4.
inline int select_m(const std::vector<int>& lengths) {
  for (int m : lengths)
    if (m % 2) return m;
  for (int m : lengths)
    if (m >= 4) return m;
  throw NoQualifyingEntry("no odd entry and no entry >= 4");
}

/// Source of base decompositions: (lengths, remove 1-factor) -> outcome.
using DecompositionProvider = std::function<SearchOutcome<Decomposition>(const Instance&, bool)>;

inline DecompositionProvider search_provider(SearchConfig cfg = {}) {
  return [cfg](const Instance& inst, bool remove_one_factor) { return decompose(inst, remove_one_factor, cfg); };
}

struct BuildResult {
  Packing packing;
  BuildTrace trace;
};

namespace detail {

class Builder {
 public:
  Builder(const Instance& inst, DecompositionProvider provider)
      : inst_(inst), provider_(std::move(provider)), verdict_(check_packing_feasibility(inst)) {}

  BuildResult run() {
    if (!verdict_.feasible) throw InfeasibleInstance("instance fails the packing conditions");
    trace_.note("instance lambda=" + std::to_string(inst_.lambda) + " v=" + std::to_string(inst_.v) +
                " delta=" + std::to_string(verdict_.delta));
    if (inst_.lengths.empty()) {
      cur_ = Packing(inst_, {});
      trace_.base({});
    } else if (inst_.lambda % 2 == 0) {
      build_even();
    } else {
      build_odd();
    }
    auto check = validate_packing(inst_, cur_.cycles(), true);
    if (!check) throw LogicError("build produced an invalid packing: " + check.message);
    return {std::move(cur_), std::move(trace_)};
  }

 private:
  void build_even() {
    const std::int64_t delta = verdict_.delta;
    if (delta == 0) {
      trace_.note("lambda even, delta=0: plain decomposition");
      start(inst_.lengths, false);
      return;
    }
    auto n = compute_surplus_list_even(delta, inst_.lengths.back());
    trace_.note("lambda even: N=" + join_lengths(n.entries));
    start(with(inst_.lengths, n.entries), false);
    remove_lengths(n.entries);
  }

  void build_odd() {
    const int v = inst_.v;
    const std::int64_t eps = *verdict_.epsilon;
    const bool factor = v % 2 == 0;
    if (eps == 0) {
      trace_.note("lambda odd, eps=0: decomposition" + std::string(factor ? " of lambda K_v - I" : ""));
      start(inst_.lengths, factor);
      return;
    }
    if (v == 2) {
      std::vector<int> n;
      push_repeat(n, 2, eps / 2);
      trace_.note("lambda odd, v=2: N=" + join_lengths(n));
      start(with(inst_.lengths, n), true);
      remove_lengths(n);
      return;
    }
    if (v % 2 == 1 || eps >= 3) {
      auto n = compute_surplus_list_odd(inst_, eps);
      trace_.note("lambda odd, case 1: eps=" + std::to_string(eps) + " N=" + join_lengths(n.entries));
      start(with(inst_.lengths, n.entries), factor);
      remove_lengths(n.entries);
      return;
    }
    build_odd_small_surplus(static_cast<int>(eps));
  }

  // v even and eps in {1, 2}.
  void build_odd_small_surplus(int eps) {
    const int v = inst_.v;
    const int m = select_m(inst_.lengths);
    trace_.note("lambda odd, case 2: eps=" + std::to_string(eps) + " m=" + std::to_string(m));
    CYCLEPACK_ASSERT(eps == 2 || m % 2 == 1, "eps = 1 forces an odd m");
    if (m + eps <= v) {
      trace_.note("case 2a");
      start(with(without(inst_.lengths, {m}), {m + eps}), true);
      const Cycle removed = remove_smallest(m + eps);
      if (find_lasso_exact(cur_.leave(), m + eps, 1)) {
        CYCLEPACK_ASSERT(m % 2 == 1 || eps == 2, "even m needs eps = 2");
        trace_.note("lasso_to_cycle s=" + std::to_string(m));
        auto r = lasso_to_cycle(cur_, m, &trace_);
        cur_ = std::move(r.packing);
        return;
      }
      CYCLEPACK_ASSERT((m + eps) % 2 == 0, "no lasso forces an even cycle");
      auto comp = component_of(removed.vertices().front());
      trace_.note("chord_to_lasso s=" + std::to_string(m + eps - 1));
      auto r = chord_to_lasso(cur_, comp, m + eps - 1, &trace_);
      cur_ = std::move(r.packing);
      if (eps == 1) {
        add(r.lasso.cycle);
        return;
      }
      comp = component_of(r.lasso.cycle.vertices().front());
      trace_.note("chord_to_lasso s=" + std::to_string(m));
      auto r2 = chord_to_lasso(cur_, comp, m, &trace_);
      cur_ = std::move(r2.packing);
      add(r2.lasso.cycle);
      return;
    }
    CYCLEPACK_ASSERT(eps == 2 && m >= v - 1, "case 2b shape");
    if (m == v) {
      trace_.note("case 2b, m=v");
      start(with(inst_.lengths, {2}), true);
      remove_smallest(2);
      return;
    }
    trace_.note("case 2b, m=v-1");
    start(with(without(inst_.lengths, {v - 1, v - 1}), {v, v}), true);
    remove_smallest(v);
    all_vertices_chord_step(v - 1);
    remove_smallest(v);
    all_vertices_chord_step(v - 1);
  }

  void all_vertices_chord_step(int s) {
    auto comps = components(cur_.leave());
    auto it = std::max_element(comps.begin(), comps.end(),
                               [](const auto& a, const auto& b) { return a.size() < b.size(); });
    if (it == comps.end()) throw LogicError("empty leave in case 2b");
    trace_.note("chord_to_lasso s=" + std::to_string(s));
    auto r = chord_to_lasso(cur_, *it, s, &trace_);
    cur_ = std::move(r.packing);
    add(r.lasso.cycle);
  }

  std::vector<Vertex> component_of(Vertex x) const {
    for (auto& c : components(cur_.leave()))
      if (std::find(c.begin(), c.end(), x) != c.end()) return c;
    throw LogicError("vertex " + std::to_string(x) + " isolated in the leave");
  }

  static std::vector<int> with(std::vector<int> base, const std::vector<int>& extra) {
    base.insert(base.end(), extra.begin(), extra.end());
    std::sort(base.begin(), base.end());
    return base;
  }

  static std::vector<int> without(std::vector<int> base, const std::vector<int>& drop) {
    for (int d : drop) {
      auto it = std::find(base.begin(), base.end(), d);
      if (it == base.end()) throw LogicError("length " + std::to_string(d) + " not in list");
      base.erase(it);
    }
    return base;
  }

  void start(const std::vector<int>& lengths, bool remove_one_factor) {
    Instance req(inst_.lambda, inst_.v, lengths);
    if (!check_decomposition_feasibility(req, remove_one_factor))
      throw LogicError("base decomposition conditions fail for {" + join_lengths(lengths) + "}");
    auto res = provider_(req, remove_one_factor);
    if (res.status == SearchStatus::BudgetExceeded)
      throw ProviderFailure("decomposition search hit its node budget after " + std::to_string(res.nodes) +
                            " nodes for {" + join_lengths(lengths) + "}");
    if (!res.found()) throw LogicError("no decomposition found for {" + join_lengths(lengths) + "}");
    // The provider is outside the trust boundary: re-check what it returned.
    auto check = validate_packing(req, res.value->cycles, true);
    if (!check) throw LogicError("provider returned an invalid decomposition: " + check.message);
    cur_ = Packing(inst_, res.value->cycles);
    Multigraph expected(inst_.v);
    if (remove_one_factor)
      for (const auto& e : one_factor(inst_.v)) expected.add(e.u, e.w);
    if (!(cur_.leave() == expected)) throw LogicError("provider decomposition does not cover the host");
    trace_.base(cur_.cycles());
  }

  Cycle remove_smallest(int len) {
    const Cycle* best = nullptr;
    for (const auto& c : cur_.cycles())
      if (static_cast<int>(c.length()) == len && (!best || c < *best)) best = &c;
    if (!best) throw LogicError("no " + std::to_string(len) + "-cycle to remove");
    Cycle c = *best;
    cur_.remove(c);
    trace_.remove(c);
    return c;
  }

  void remove_lengths(const std::vector<int>& lengths) {
    for (int n : lengths) remove_smallest(n);
  }

  void add(const Cycle& c) {
    cur_.add(c);
    trace_.add(c);
  }

  Instance inst_;
  DecompositionProvider provider_;
  FeasibilityVerdict verdict_;
  Packing cur_;
  BuildTrace trace_;
};

}  // namespace detail

/// Builds a packing with exactly the instance's cycle lengths, together with
/// a replayable trace. Throws InfeasibleInstance when the conditions fail.
inline BuildResult build_packing(const Instance& inst, DecompositionProvider provider = search_provider()) {
  return detail::Builder(inst, std::move(provider)).run();
}

/// Re-executes a trace from its base decomposition.
inline Packing replay_trace(const Instance& inst, const BuildTrace& trace) {
  std::optional<Packing> cur;
  auto need = [&]() -> Packing& {
    if (!cur) throw InvalidArgument("trace step before base decomposition");
    return *cur;
  };
  for (const auto& step : trace.steps) {
    if (auto* b = std::get_if<trace_step::Base>(&step)) {
      cur = Packing(inst, b->cycles);
    } else if (auto* r = std::get_if<trace_step::Remove>(&step)) {
      need().remove(r->cycle);
    } else if (auto* a = std::get_if<trace_step::Add>(&step)) {
      need().add(a->cycle);
    } else if (auto* s = std::get_if<trace_step::Switch>(&step)) {
      auto res = perform_switch(need(), {s->alpha, s->beta, s->origin});
      if (res.terminus != s->terminus)
        throw LogicError("replayed switch ended at " + std::to_string(res.terminus) + ", trace says " +
                         std::to_string(s->terminus));
      cur = std::move(res.packing);
    }
  }
  if (!cur) throw InvalidArgument("trace has no base decomposition");
  return *cur;
}

}  // namespace cyclepack
