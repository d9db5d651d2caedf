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

// Random instance generators and postcondition checks shared by the unit
// tests and the acceptance binary.

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cyclepack/multigraph.hpp"
#include "cyclepack/switching.hpp"

namespace cyclepack::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Random packing of lambda K_v that leaves `reserved` untouched: random
/// cycles are tried `attempts` times and kept when they fit.
inline Packing random_packing(Rng& rng, int lambda, int v, int attempts, const Multigraph& reserved) {
  Multigraph room = complete_multigraph(lambda, v);
  for (const auto& e : reserved.edge_list()) room.remove(e.u, e.w);
  std::vector<Cycle> cycles;
  std::vector<Vertex> vs(static_cast<std::size_t>(v));
  for (int t = 0; t < attempts; ++t) {
    int m = uniform(rng, 2, v);
    std::iota(vs.begin(), vs.end(), 0);
    std::shuffle(vs.begin(), vs.end(), rng);
    Cycle c(std::vector<Vertex>(vs.begin(), vs.begin() + m));
    auto edges = c.edges();
    if (!contains_edges(room, edges)) continue;
    for (const auto& e : edges) room.remove(e.u, e.w);
    cycles.push_back(c);
  }
  std::vector<int> lengths;
  for (const auto& c : cycles) lengths.push_back(static_cast<int>(c.length()));
  std::sort(lengths.begin(), lengths.end());
  return Packing(Instance(lambda, v, lengths), cycles);
}

inline Packing random_packing(Rng& rng, int lambda, int v, int attempts) {
  return random_packing(rng, lambda, v, attempts, Multigraph(v));
}

/// Adds cycles found in the leave minus `keep` until that part is a forest.
inline Packing saturate(const Packing& pk, const Multigraph& keep) {
  std::vector<Cycle> cycles = pk.cycles();
  Multigraph rest = pk.leave();
  for (const auto& e : keep.edge_list()) rest.remove(e.u, e.w);
  for (int m = 2; m <= rest.order();) {
    auto c = find_cycle_of_length(rest, m);
    if (!c) {
      ++m;
      continue;
    }
    for (const auto& e : c->edges()) rest.remove(e.u, e.w);
    cycles.push_back(*c);
  }
  std::vector<int> lengths;
  for (const auto& c : cycles) lengths.push_back(static_cast<int>(c.length()));
  std::sort(lengths.begin(), lengths.end());
  return Packing(Instance(pk.instance().lambda, pk.instance().v, lengths), cycles);
}

/// Checks L' = L - {x1y1, x2y2} + {pi(x1)pi(y1), pi(x2)pi(y2)} edge by edge.
inline std::optional<std::string> leave_relation_violation(const Packing& before, const SwitchResult& r,
                                                           const SwitchRequest& req) {
  Multigraph expect = before.leave();
  try {
    expect.remove(r.removed_first.u, r.removed_first.w);
    expect.remove(r.removed_second.u, r.removed_second.w);
  } catch (const MissingEdge&) {
    return "reported removed edges are not in the old leave";
  }
  auto pi = [&](Vertex z) { return z == req.alpha ? req.beta : z == req.beta ? req.alpha : z; };
  auto image = [&](const Pair& p) { return Pair(pi(p.u), pi(p.w)); };
  if (image(r.removed_first) != r.added_first || image(r.removed_second) != r.added_second)
    return "added edges are not the images of the removed edges";
  for (const Pair& p : {r.removed_first, r.removed_second}) {
    for (Vertex z : {p.u, p.w})
      if (z != req.alpha && z != req.beta && z != req.origin && z != r.terminus)
        return "switched edge touches a vertex outside {alpha, beta, origin, terminus}";
  }
  if (!r.removed_first.has(req.origin)) return "first removed edge does not meet the origin";
  expect.add(r.added_first.u, r.added_first.w);
  expect.add(r.added_second.u, r.added_second.w);
  if (!(expect == r.packing.leave())) return "new leave differs from the expected leave";
  return std::nullopt;
}

/// Full postcondition check for one switch.
inline std::optional<std::string> switch_violation(const Packing& before, const SwitchResult& r,
                                                   const SwitchRequest& req) {
  if (auto bad = leave_relation_violation(before, r, req)) return bad;
  const Packing& after = r.packing;
  if (after.length_multiset() != before.length_multiset()) return "cycle-length multiset changed";
  if (after.leave().edge_count() != before.leave().edge_count()) return "leave edge count changed";
  if (!validate_packing(after.instance(), after.cycles(), true).ok()) return "packing is no longer valid";
  if (!(leave_of(after.instance(), after.cycles()) == after.leave())) return "stored leave out of sync";
  // Both removed edges may meet the same one of alpha, beta, moving two units
  // of degree across; only the pair total and every parity are fixed.
  auto d0 = before.leave().degrees();
  auto d1 = after.leave().degrees();
  for (Vertex x = 0; x < static_cast<Vertex>(d0.size()); ++x) {
    if ((d0[x] - d1[x]) % 2) return "leave degree parity changed";
    if (x != req.alpha && x != req.beta && d0[x] != d1[x]) return "leave degree changed off {alpha, beta}";
  }
  if (d0[req.alpha] + d0[req.beta] != d1[req.alpha] + d1[req.beta]) return "alpha+beta leave degree changed";
  return std::nullopt;
}

/// Pairs (alpha, beta) with a nonempty surplus set, and an origin for each.
inline std::vector<SwitchRequest> switch_candidates(const Multigraph& leave) {
  std::vector<SwitchRequest> out;
  const int v = leave.order();
  for (Vertex a = 0; a < v; ++a)
    for (Vertex b = 0; b < v; ++b) {
      if (a == b || leave.degree(a) == 0 || leave.degree(b) == 0) continue;
      for (const auto& s : surplus_set(leave, a, b)) out.push_back({a, b, s.x});
    }
  return out;
}

/// A leave-resident graph for lasso_to_cycle: a random (p, q)-lasso on
/// random vertices of K_v. Returns the reserved edges.
inline Multigraph random_lasso_graph(Rng& rng, int lambda, int v, int p, int q) {
  std::vector<Vertex> vs(static_cast<std::size_t>(v));
  std::iota(vs.begin(), vs.end(), 0);
  std::shuffle(vs.begin(), vs.end(), rng);
  Multigraph g(v);
  if (p == 2) {
    if (lambda < 2) return g;
    g.add(vs[0], vs[1], 2);
  } else {
    for (int i = 0; i < p; ++i) g.add(vs[i], vs[(i + 1) % p]);
  }
  Vertex prev = vs[p - 1];
  for (int j = 0; j < q; ++j) {
    g.add(prev, vs[p + j]);
    prev = vs[p + j];
  }
  return g;
}

/// An (s+1)-cycle with a chord x_1 x_e (e = 2 means a parallel edge).
inline Multigraph random_chorded_cycle(Rng& rng, int v, int s, int e) {
  std::vector<Vertex> vs(static_cast<std::size_t>(v));
  std::iota(vs.begin(), vs.end(), 0);
  std::shuffle(vs.begin(), vs.end(), rng);
  Multigraph g(v);
  for (int i = 0; i <= s; ++i) g.add(vs[i], vs[(i + 1) % (s + 1)]);
  g.add(vs[0], vs[e - 1]);
  return g;
}

/// Vertices of the leave component containing x.
inline std::vector<Vertex> component_of(const Multigraph& g, Vertex x) {
  for (auto& comp : components(g))
    if (std::find(comp.begin(), comp.end(), x) != comp.end()) return comp;
  return {};
}

}  // namespace cyclepack::testing
