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
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cyclepack/multigraph.hpp"
#include "cyclepack/trace.hpp"

namespace cyclepack {

// ---------------------------------------------------------------------------
// Cycle switching
//
// For distinct leave vertices alpha and beta, the surplus set E holds, for
// every other vertex x, the excess copies of x-alpha over x-beta (or vice
// versa). Taking one surplus edge at the origin x and a partner surplus edge
// at the terminus y, the switch moves both to their images under the
// transposition (alpha beta) and repairs the packing: every cycle through
// exactly one of alpha, beta is kept or mapped by the transposition, and
// every cycle through both has each of its two alpha-beta paths kept or
// mapped independently. Such a repair is guaranteed to exist for a suitable
// partner; we find it by bounded search.
// ---------------------------------------------------------------------------

struct SwitchRequest {
  Vertex alpha = 0;
  Vertex beta = 0;
  Vertex origin = 0;
};

struct SwitchResult {
  Packing packing;
  Vertex terminus = 0;
  /// The two leave edges consumed, origin edge first.
  Pair removed_first;
  Pair removed_second;
  /// Their images under the transposition, in the same order.
  Pair added_first;
  Pair added_second;
};

/// `count` surplus copies of the pair {x, end}, end being alpha or beta.
struct SurplusEdge {
  Vertex x = 0;
  Vertex end = 0;
  int count = 0;
};

/// The surplus set E, ordered by x.
inline std::vector<SurplusEdge> surplus_set(const Multigraph& leave, Vertex alpha, Vertex beta) {
  std::vector<SurplusEdge> out;
  for (Vertex x = 0; x < leave.order(); ++x) {
    if (x == alpha || x == beta) continue;
    int a = leave.mult(x, alpha);
    int b = leave.mult(x, beta);
    if (a > b) out.push_back({x, alpha, a - b});
    if (b > a) out.push_back({x, beta, b - a});
  }
  return out;
}

namespace detail {

inline Vertex transpose(Vertex z, Vertex a, Vertex b) { return z == a ? b : z == b ? a : z; }

inline std::vector<Vertex> transpose_all(std::vector<Vertex> vs, Vertex a, Vertex b) {
  for (auto& z : vs) z = transpose(z, a, b);
  return vs;
}

// Joins two paths with the same end set {u, w} into one cycle.
inline Cycle join_paths(const std::vector<Vertex>& q, std::vector<Vertex> q_star) {
  if (q_star.front() != q.back()) std::reverse(q_star.begin(), q_star.end());
  std::vector<Vertex> vs = q;
  vs.insert(vs.end(), q_star.begin() + 1, q_star.end() - 1);
  return Cycle(std::move(vs));
}

// Candidate replacements for one cycle, keep-first.
inline std::vector<Cycle> switch_options(const Cycle& c, Vertex a, Vertex b) {
  const bool has_a = c.contains(a);
  const bool has_b = c.contains(b);
  std::vector<Cycle> opts{c};
  auto push = [&](Cycle x) {
    if (std::find(opts.begin(), opts.end(), x) == opts.end()) opts.push_back(std::move(x));
  };
  if (has_a != has_b) {
    push(Cycle(transpose_all(c.vertices(), a, b)));
    return opts;
  }
  std::vector<Vertex> r = c.vertices();
  std::rotate(r.begin(), std::find(r.begin(), r.end(), a), r.end());
  const auto k = static_cast<std::size_t>(std::find(r.begin(), r.end(), b) - r.begin());
  std::vector<Vertex> p(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(k) + 1);
  std::vector<Vertex> p_star(r.begin() + static_cast<std::ptrdiff_t>(k), r.end());
  p_star.push_back(a);
  for (int mask = 0; mask < 4; ++mask) {
    auto q = mask & 1 ? transpose_all(p, a, b) : p;
    auto qs = mask & 2 ? transpose_all(p_star, a, b) : p_star;
    push(join_paths(q, qs));
  }
  return opts;
}

// Finds one option per affected cycle so that, for each x, the change in
// uses of x-alpha equals target[x].
class SwitchSolver {
 public:
  SwitchSolver(const std::vector<std::vector<std::vector<int>>>& deltas, std::vector<int> target)
      : deltas_(deltas), target_(std::move(target)) {
    const std::size_t n = deltas_.size();
    const std::size_t v = target_.size();
    lo_.assign(n + 1, std::vector<int>(v, 0));
    hi_.assign(n + 1, std::vector<int>(v, 0));
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t x = 0; x < v; ++x) {
        int mn = 0, mx = 0;
        bool first = true;
        for (const auto& d : deltas_[i]) {
          mn = first ? d[x] : std::min(mn, d[x]);
          mx = first ? d[x] : std::max(mx, d[x]);
          first = false;
        }
        lo_[i][x] = lo_[i + 1][x] + mn;
        hi_[i][x] = hi_[i + 1][x] + mx;
      }
    }
  }

  std::optional<std::vector<std::size_t>> solve() {
    std::vector<int> cur(target_.size(), 0);
    choice_.assign(deltas_.size(), 0);
    if (go(0, cur)) return choice_;
    return std::nullopt;
  }

 private:
  bool go(std::size_t i, std::vector<int>& cur) {
    for (std::size_t x = 0; x < cur.size(); ++x) {
      int need = target_[x] - cur[x];
      if (need < lo_[i][x] || need > hi_[i][x]) return false;
    }
    if (i == deltas_.size()) return true;
    std::vector<int> key = cur;
    key.push_back(static_cast<int>(i));
    if (failed_.count(key)) return false;
    for (std::size_t o = 0; o < deltas_[i].size(); ++o) {
      for (std::size_t x = 0; x < cur.size(); ++x) cur[x] += deltas_[i][o][x];
      choice_[i] = o;
      bool ok = go(i + 1, cur);
      for (std::size_t x = 0; x < cur.size(); ++x) cur[x] -= deltas_[i][o][x];
      if (ok) return true;
    }
    failed_.insert(std::move(key));
    return false;
  }

  const std::vector<std::vector<std::vector<int>>>& deltas_;
  std::vector<int> target_;
  std::vector<std::vector<int>> lo_, hi_;
  std::vector<std::size_t> choice_;
  std::set<std::vector<int>> failed_;
};

}  // namespace detail

/// Performs the (alpha, beta)-switch with the given origin. Partners are
/// tried in surplus-set order; the first that admits a repair is used, and
/// within it the first repair in keep-first order.
inline SwitchResult perform_switch(const Packing& pk, const SwitchRequest& req, BuildTrace* trace = nullptr) {
  const Multigraph& leave = pk.leave();
  const int v = pk.instance().v;
  const Vertex a = req.alpha, b = req.beta, origin = req.origin;
  auto in_range = [&](Vertex z) { return z >= 0 && z < v; };
  if (!in_range(a) || !in_range(b) || !in_range(origin) || a == b || origin == a || origin == b)
    throw InvalidArgument("switch needs distinct alpha, beta, origin within range");

  const auto surplus = surplus_set(leave, a, b);
  auto at_origin = std::find_if(surplus.begin(), surplus.end(), [&](const auto& s) { return s.x == origin; });
  if (at_origin == surplus.end())
    throw NoSurplusAtOrigin("no surplus edge at origin " + std::to_string(origin) + " for (" +
                            std::to_string(a) + "," + std::to_string(b) + ")-switch");
  const Vertex first_end = at_origin->end;

  std::vector<std::size_t> affected;
  std::vector<std::vector<Cycle>> options;
  std::vector<std::vector<std::vector<int>>> deltas;
  for (std::size_t i = 0; i < pk.cycles().size(); ++i) {
    const Cycle& c = pk.cycles()[i];
    if (!c.contains(a) && !c.contains(b)) continue;
    affected.push_back(i);
    options.push_back(detail::switch_options(c, a, b));
    std::vector<std::vector<int>> ds;
    for (const auto& o : options.back()) {
      std::vector<int> d(static_cast<std::size_t>(v), 0);
      for (Vertex x = 0; x < v; ++x)
        if (x != a && x != b) d[x] = o.uses(x, a) - c.uses(x, a);
      ds.push_back(std::move(d));
    }
    deltas.push_back(std::move(ds));
  }

  for (const auto& partner : surplus) {
    if (partner.x == origin && partner.count < 2) continue;
    const Vertex y = partner.x;
    std::vector<int> target(static_cast<std::size_t>(v), 0);
    target[origin] += first_end == a ? 1 : -1;
    target[y] += partner.end == a ? 1 : -1;

    detail::SwitchSolver solver(deltas, target);
    auto choice = solver.solve();
    if (!choice) continue;

    std::vector<Cycle> next = pk.cycles();
    for (std::size_t j = 0; j < affected.size(); ++j) next[affected[j]] = options[j][(*choice)[j]];

    SwitchResult out;
    out.terminus = y;
    out.removed_first = Pair(origin, first_end);
    out.removed_second = Pair(y, partner.end);
    out.added_first = Pair(origin, detail::transpose(first_end, a, b));
    out.added_second = Pair(y, detail::transpose(partner.end, a, b));

    Multigraph expected = leave;
    expected.remove(out.removed_first.u, out.removed_first.w);
    expected.remove(out.removed_second.u, out.removed_second.w);
    expected.add(out.added_first.u, out.added_first.w);
    expected.add(out.added_second.u, out.added_second.w);
    out.packing = Packing(pk.instance(), std::move(next));
    if (!(out.packing.leave() == expected)) throw LogicError("switch repair does not realise the leave relation");
    if (trace) trace->switched(a, b, origin, y);
    return out;
  }
  throw InternalExhaustion("no partner admits a repair for the (" + std::to_string(a) + "," +
                           std::to_string(b) + ")-switch with origin " + std::to_string(origin));
}

// ---------------------------------------------------------------------------
// Lasso to cycle
// ---------------------------------------------------------------------------

struct LassoToCycleResult {
  Packing packing;
  Cycle added;
  std::size_t switches = 0;
  /// Order p + q of the lasso the procedure started from.
  std::size_t initial_order = 0;
};

namespace detail {

// Lasso with the cycle listed x_1..x_p so that x_p is the attachment vertex,
// and the path y_1..y_q hanging off x_p.
struct LabeledLasso {
  std::vector<Vertex> xs;
  std::vector<Vertex> ys;

  static LabeledLasso from(const Lasso& l) {
    LabeledLasso out;
    auto c = l.cycle.vertices();
    auto at = std::find(c.begin(), c.end(), l.attach());
    std::rotate(c.begin(), at + 1, c.end());
    out.xs = std::move(c);
    out.ys.assign(l.path.vertices().begin() + 1, l.path.vertices().end());
    return out;
  }

  std::vector<Pair> edges() const {
    std::vector<Pair> e;
    for (std::size_t i = 0; i < xs.size(); ++i) e.emplace_back(xs[i], xs[(i + 1) % xs.size()]);
    Vertex prev = xs.back();
    for (Vertex y : ys) {
      e.emplace_back(prev, y);
      prev = y;
    }
    return e;
  }

  // 1-based accessors matching the usual x_i / y_j labelling.
  Vertex x(std::size_t i) const { return xs[i - 1]; }
  Vertex y(std::size_t j) const { return ys[j - 1]; }
  std::size_t p() const { return xs.size(); }
  std::size_t q() const { return ys.size(); }
};

inline void require_lasso(const Multigraph& leave, const LabeledLasso& l, const char* where) {
  if (!contains_edges(leave, l.edges())) throw LogicError(std::string("expected lasso missing after ") + where);
}

}  // namespace detail

/// Turns a lasso of order at least s + 2 in the leave into an extra s-cycle
/// of the packing. When s is even the lasso's cycle must be even.
inline LassoToCycleResult lasso_to_cycle(const Packing& pk, int s, BuildTrace* trace = nullptr) {
  if (s < 3) throw PreconditionViolated("lasso_to_cycle needs s >= 3");
  auto start = find_lasso(pk.leave(), s + 2, s % 2 == 0);
  if (!start)
    throw PreconditionViolated("leave has no lasso of order >= " + std::to_string(s + 2) +
                               (s % 2 == 0 ? " with an even cycle" : ""));
  const auto su = static_cast<std::size_t>(s);
  LassoToCycleResult out;
  out.initial_order = start->order();
  Packing cur = pk;
  auto lasso = detail::LabeledLasso::from(*start);
  bool expect_cycle = false;

  auto done = [&]() -> bool {
    if (auto c = find_cycle_of_length(cur.leave(), s)) {
      cur.add(*c);
      if (trace) trace->add(*c);
      out.added = *c;
      return true;
    }
    if (expect_cycle) throw LogicError("switch terminus implies an s-cycle but none is present");
    return false;
  };
  auto run = [&](Vertex alpha, Vertex beta, Vertex origin) {
    auto r = perform_switch(cur, {alpha, beta, origin}, trace);
    cur = std::move(r.packing);
    ++out.switches;
    return r.terminus;
  };

  while (!done()) {
    const std::size_t p = lasso.p();
    CYCLEPACK_ASSERT(p != su, "an s-cycle lasso would have been taken");
    if (p < su) {
      lasso.ys.resize(su + 2 - p);
      const std::size_t q = lasso.q();
      if (p == 2 || (su - p) % 2 == 0) {
        // Case 1.
        CYCLEPACK_ASSERT(cur.leave().mult(lasso.x(2), lasso.y(q - 1)) == 0, "case 1: x2 ~ y_{q-1}");
        Vertex t = run(lasso.x(1), lasso.y(q - 1), lasso.x(2));
        if (t != lasso.y(q - 2)) {
          expect_cycle = true;
          continue;
        }
        detail::LabeledLasso next;
        next.xs.assign(lasso.ys.begin(), lasso.ys.begin() + static_cast<std::ptrdiff_t>(q) - 2);
        next.xs.push_back(lasso.x(1));
        next.xs.push_back(lasso.x(p));
        for (std::size_t i = p - 1; i >= 2; --i) next.ys.push_back(lasso.x(i));
        next.ys.push_back(lasso.y(q - 1));
        next.ys.push_back(lasso.y(q));
        lasso = std::move(next);
        detail::require_lasso(cur.leave(), lasso, "case 1 first switch");
        if (p == 2) {
          expect_cycle = true;
          continue;
        }
        if (done()) break;
        // Second switch on the (q, p)-lasso.
        const std::size_t p2 = lasso.p(), q2 = lasso.q();
        CYCLEPACK_ASSERT(cur.leave().mult(lasso.x(3), lasso.y(q2)) == 0, "case 1: x'3 ~ y'p");
        t = run(lasso.x(2), lasso.y(q2), lasso.x(3));
        if (t != lasso.y(q2 - 1)) {
          expect_cycle = true;
          continue;
        }
        next = {};
        next.xs.assign(lasso.ys.begin(), lasso.ys.begin() + static_cast<std::ptrdiff_t>(q2) - 1);
        next.xs.push_back(lasso.x(2));
        next.xs.push_back(lasso.x(1));
        next.xs.push_back(lasso.x(p2));
        for (std::size_t i = p2 - 1; i >= 3; --i) next.ys.push_back(lasso.x(i));
        next.ys.push_back(lasso.y(q2));
        lasso = std::move(next);
        detail::require_lasso(cur.leave(), lasso, "case 1 second switch");
      } else {
        // Case 2: s odd, p even and at least 4.
        CYCLEPACK_ASSERT(s % 2 == 1 && p % 2 == 0 && p >= 4, "case 2 parity");
        CYCLEPACK_ASSERT(cur.leave().mult(lasso.x(3), lasso.y(q)) == 0, "case 2: x3 ~ y_q");
        Vertex t = run(lasso.x(2), lasso.y(q), lasso.x(3));
        if (t != lasso.y(q - 1)) {
          expect_cycle = true;
          continue;
        }
        detail::LabeledLasso next;
        next.xs.assign(lasso.ys.begin(), lasso.ys.begin() + static_cast<std::ptrdiff_t>(q) - 1);
        next.xs.push_back(lasso.x(2));
        next.xs.push_back(lasso.x(1));
        next.xs.push_back(lasso.x(p));
        for (std::size_t i = p - 1; i >= 3; --i) next.ys.push_back(lasso.x(i));
        next.ys.push_back(lasso.y(q));
        lasso = std::move(next);
        detail::require_lasso(cur.leave(), lasso, "case 2 switch");
      }
    } else {
      // Case 3: shrink the cycle part by s - 2.
      const std::size_t k = p - su + 1;
      CYCLEPACK_ASSERT(cur.leave().mult(lasso.x(k + 1), lasso.y(1)) == 0, "case 3: x_{p-s+2} ~ y1");
      Vertex t = run(lasso.x(k), lasso.y(1), lasso.x(k + 1));
      if (t != lasso.x(p)) {
        expect_cycle = true;
        continue;
      }
      detail::LabeledLasso next;
      next.xs.assign(lasso.xs.begin(), lasso.xs.begin() + static_cast<std::ptrdiff_t>(k));
      next.xs.push_back(lasso.x(p));
      for (std::size_t i = p - 1; i >= k + 1; --i) next.ys.push_back(lasso.x(i));
      next.ys.insert(next.ys.end(), lasso.ys.begin(), lasso.ys.end());
      lasso = std::move(next);
      detail::require_lasso(cur.leave(), lasso, "case 3 switch");
    }
  }
  out.packing = std::move(cur);
  return out;
}

// ---------------------------------------------------------------------------
// Chord to lasso
// ---------------------------------------------------------------------------

struct ChordToLassoResult {
  Packing packing;
  /// An (s,1)-lasso of the new leave inside the component.
  Lasso lasso;
  std::size_t switches = 0;
  /// Chord position e of the cycle the procedure started from (0 when the
  /// component already held an (s,1)-lasso).
  std::size_t initial_e = 0;
};

namespace detail {

// An (s+1)-cycle x_1..x_{s+1} with chord x_1 x_e, e >= 2 as small as possible.
struct ChordedCycle {
  std::vector<Vertex> xs;
  std::size_t e = 0;
};

inline std::optional<ChordedCycle> find_chorded_cycle(const Multigraph& leave, int len,
                                                      const std::vector<bool>& allowed) {
  std::optional<ChordedCycle> best;
  for_each_cycle(leave, len, allowed, [&](const std::vector<Vertex>& c) {
    const std::size_t n = c.size();
    Cycle cyc(c);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        if (leave.mult(c[i], c[j]) <= cyc.uses(c[i], c[j])) continue;
        std::size_t d = std::min(j - i, n - (j - i));
        std::size_t e = d + 1;
        if (best && best->e <= e) continue;
        // Walk from c[i] towards c[j] along the short side.
        ChordedCycle cc;
        cc.e = e;
        const bool forward = (j - i) == d;
        for (std::size_t s = 0; s < n; ++s)
          cc.xs.push_back(forward ? c[(i + s) % n] : c[(i + n - s) % n]);
        best = std::move(cc);
      }
    return best && best->e == 2;
  });
  return best;
}

inline Lasso make_lasso(std::vector<Vertex> cycle, Vertex attach, Vertex tail) {
  return Lasso(Cycle(std::move(cycle)), Path({attach, tail}));
}

}  // namespace detail

/// Rearranges the packing so that the leave component on `component`, which
/// holds an (s+1)-cycle with a chord, comes to contain an (s,1)-lasso.
inline ChordToLassoResult chord_to_lasso(const Packing& pk, const std::vector<Vertex>& component, int s,
                                         BuildTrace* trace = nullptr) {
  if (s < 3) throw PreconditionViolated("chord_to_lasso needs s >= 3");
  std::vector<bool> allowed(static_cast<std::size_t>(pk.instance().v), false);
  for (Vertex x : component) allowed.at(static_cast<std::size_t>(x)) = true;

  ChordToLassoResult out;
  if (auto l = find_lasso_exact(pk.leave(), s, 1, allowed)) {
    out.packing = pk;
    out.lasso = *l;
    return out;
  }
  auto chorded = detail::find_chorded_cycle(pk.leave(), s + 1, allowed);
  if (!chorded)
    throw PreconditionViolated("component has no " + std::to_string(s + 1) + "-cycle with a chord");
  out.initial_e = chorded->e;

  Packing cur = pk;
  auto xs = chorded->xs;
  std::size_t e = chorded->e;
  auto x = [&](std::size_t i) { return xs[i - 1]; };
  const auto su = static_cast<std::size_t>(s);

  while (true) {
    if (e == 3) {
      // The chord closes (x_1, x_3, ..., x_{s+1}) and x_2 hangs off it.
      std::vector<Vertex> cyc(xs);
      cyc.erase(cyc.begin() + 1);
      out.lasso = detail::make_lasso(cyc, x(1), x(2));
      break;
    }
    if (e == 2) {
      CYCLEPACK_ASSERT(cur.leave().mult(x(2), x(4)) == 0, "e=2: x2 ~ x4");
      auto r = perform_switch(cur, {x(3), x(2), x(4)}, trace);
      cur = std::move(r.packing);
      ++out.switches;
      std::vector<Vertex> cyc(xs.begin() + 3, xs.end());
      cyc.push_back(x(1));
      cyc.push_back(x(2));
      out.lasso = detail::make_lasso(cyc, x(2), x(3));
      break;
    }
    CYCLEPACK_ASSERT(cur.leave().mult(x(e - 2), x(e)) == 0, "e>=4: x_{e-2} ~ x_e");
    auto r = perform_switch(cur, {x(e - 1), x(e), x(e - 2)}, trace);
    cur = std::move(r.packing);
    ++out.switches;
    if (r.terminus != x(e + 1)) {
      std::vector<Vertex> cyc(xs.begin() + static_cast<std::ptrdiff_t>(e), xs.end());
      cyc.insert(cyc.end(), xs.begin(), xs.begin() + static_cast<std::ptrdiff_t>(e) - 2);
      cyc.push_back(x(e));
      out.lasso = detail::make_lasso(cyc, x(e), x(e - 1));
      break;
    }
    std::swap(xs[e - 2], xs[e - 1]);
    --e;
    CYCLEPACK_ASSERT(e >= 3 && e <= su, "chord position stays in range");
  }
  if (!contains_edges(cur.leave(), out.lasso.edges())) throw LogicError("chord_to_lasso: expected lasso missing");
  out.packing = std::move(cur);
  return out;
}

}  // namespace cyclepack
