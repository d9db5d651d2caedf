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
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cyclepack/errors.hpp"

namespace cyclepack {

using Vertex = int;

/// Unordered vertex pair, always stored with u < w.
struct Pair {
  Vertex u = 0;
  Vertex w = 0;

  Pair() = default;
  Pair(Vertex a, Vertex b) : u(std::min(a, b)), w(std::max(a, b)) {
    if (a == b) throw InvalidArgument("pair endpoints must differ");
  }

  Vertex other(Vertex x) const { return x == u ? w : u; }
  bool has(Vertex x) const { return x == u || x == w; }

  auto operator<=>(const Pair&) const = default;
};

inline std::int64_t choose2(std::int64_t n) { return n * (n - 1) / 2; }

/// A packing problem: cycles of the given lengths in lambda copies of K_v.
struct Instance {
  int lambda = 1;
  int v = 1;
  std::vector<int> lengths;

  Instance() = default;
  Instance(int lambda_, int v_, std::vector<int> lengths_)
      : lambda(lambda_), v(v_), lengths(std::move(lengths_)) {
    if (lambda < 1) throw InvalidArgument("lambda must be at least 1");
    if (v < 1) throw InvalidArgument("v must be at least 1");
    if (!std::is_sorted(lengths.begin(), lengths.end()))
      throw InvalidArgument("lengths must be nondecreasing");
  }

  int tau() const { return static_cast<int>(lengths.size()); }
  std::int64_t host_edges() const { return lambda * choose2(v); }

  bool operator==(const Instance&) const = default;
};

inline std::string join_lengths(std::span<const int> lengths, char sep = ',') {
  std::string out;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(lengths[i]);
  }
  return out;
}

/// Edge multiset over vertices 0..v-1. Pairs of multiplicity zero are absent.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int v) : v_(v) {}

  int order() const { return v_; }

  int mult(Vertex x, Vertex y) const {
    if (x == y) return 0;
    auto it = mult_.find(Pair(x, y));
    return it == mult_.end() ? 0 : it->second;
  }
  int mult(const Pair& p) const { return mult(p.u, p.w); }

  void add(Vertex x, Vertex y, int k = 1) {
    check_vertex(x);
    check_vertex(y);
    if (k <= 0) return;
    mult_[Pair(x, y)] += k;
  }

  /// Removes k copies of xy; throws MissingEdge if fewer are present.
  void remove(Vertex x, Vertex y, int k = 1) {
    if (k <= 0) return;
    auto it = mult_.find(Pair(x, y));
    if (it == mult_.end() || it->second < k) throw MissingEdge(x, y);
    it->second -= k;
    if (it->second == 0) mult_.erase(it);
  }

  int degree(Vertex x) const {
    int d = 0;
    for (const auto& [p, m] : mult_)
      if (p.has(x)) d += m;
    return d;
  }

  std::vector<int> degrees() const {
    std::vector<int> d(static_cast<std::size_t>(v_), 0);
    for (const auto& [p, m] : mult_) {
      d[p.u] += m;
      d[p.w] += m;
    }
    return d;
  }

  std::int64_t edge_count() const {
    std::int64_t n = 0;
    for (const auto& [p, m] : mult_) n += m;
    return n;
  }

  bool empty() const { return mult_.empty(); }

  /// Neighbours of x in increasing order (each listed once).
  std::vector<Vertex> neighbors(Vertex x) const {
    std::vector<Vertex> out;
    for (const auto& [p, m] : mult_)
      if (p.has(x)) out.push_back(p.other(x));
    std::sort(out.begin(), out.end());
    return out;
  }

  const std::map<Pair, int>& pairs() const { return mult_; }

  /// Edge list with each pair repeated per multiplicity, in pair order.
  std::vector<Pair> edge_list() const {
    std::vector<Pair> out;
    for (const auto& [p, m] : mult_)
      for (int i = 0; i < m; ++i) out.push_back(p);
    return out;
  }

  /// Subgraph keeping only pairs with both ends in `keep`.
  Multigraph induced(const std::vector<bool>& keep) const {
    Multigraph g(v_);
    for (const auto& [p, m] : mult_)
      if (keep[p.u] && keep[p.w]) g.mult_[p] = m;
    return g;
  }

  bool operator==(const Multigraph&) const = default;

 private:
  void check_vertex(Vertex x) const {
    if (x < 0 || x >= v_) throw InvalidArgument("vertex out of range: " + std::to_string(x));
  }

  int v_ = 0;
  std::map<Pair, int> mult_;
};

inline Multigraph complete_multigraph(int lambda, int v) {
  if (lambda < 1 || v < 1) throw InvalidArgument("complete_multigraph needs lambda, v >= 1");
  Multigraph g(v);
  for (Vertex x = 0; x < v; ++x)
    for (Vertex y = x + 1; y < v; ++y) g.add(x, y, lambda);
  return g;
}

/// Cycle stored in canonical form: minimum vertex first, then the
/// lexicographically smaller of the two directions.
class Cycle {
 public:
  Cycle() = default;
  explicit Cycle(std::vector<Vertex> vs) : vs_(canonicalize(std::move(vs))) {}

  static std::vector<Vertex> canonicalize(std::vector<Vertex> vs) {
    if (vs.size() < 2) throw InvalidArgument("a cycle needs at least 2 vertices");
    {
      std::vector<Vertex> sorted = vs;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw InvalidArgument("cycle vertices must be distinct");
      if (sorted.front() < 0) throw InvalidArgument("negative vertex in cycle");
    }
    auto mn = std::min_element(vs.begin(), vs.end());
    std::rotate(vs.begin(), mn, vs.end());
    if (vs.size() > 2 && vs.back() < vs[1]) std::reverse(vs.begin() + 1, vs.end());
    return vs;
  }

  std::size_t length() const { return vs_.size(); }
  const std::vector<Vertex>& vertices() const { return vs_; }

  bool contains(Vertex x) const { return std::find(vs_.begin(), vs_.end(), x) != vs_.end(); }

  /// Edges of the cycle; a 2-cycle yields its pair twice.
  std::vector<Pair> edges() const {
    std::vector<Pair> out;
    out.reserve(vs_.size());
    for (std::size_t i = 0; i < vs_.size(); ++i) out.emplace_back(vs_[i], vs_[(i + 1) % vs_.size()]);
    return out;
  }

  /// Number of times this cycle uses the pair xy.
  int uses(Vertex x, Vertex y) const {
    int n = 0;
    for (const auto& e : edges())
      if (e == Pair(x, y)) ++n;
    return n;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < vs_.size(); ++i) s += (i ? "," : "") + std::to_string(vs_[i]);
    return s + ")";
  }

  auto operator<=>(const Cycle&) const = default;

 private:
  std::vector<Vertex> vs_;
};

class Path {
 public:
  Path() = default;
  explicit Path(std::vector<Vertex> vs) : vs_(std::move(vs)) {
    if (vs_.size() < 2) throw InvalidArgument("a path needs at least 2 vertices");
    std::vector<Vertex> sorted = vs_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidArgument("path vertices must be distinct");
  }

  std::size_t length() const { return vs_.size() - 1; }
  const std::vector<Vertex>& vertices() const { return vs_; }
  Vertex front() const { return vs_.front(); }
  Vertex back() const { return vs_.back(); }

  std::vector<Pair> edges() const {
    std::vector<Pair> out;
    for (std::size_t i = 0; i + 1 < vs_.size(); ++i) out.emplace_back(vs_[i], vs_[i + 1]);
    return out;
  }

  auto operator<=>(const Path&) const = default;

 private:
  std::vector<Vertex> vs_;
};

/// A p-cycle and a q-path meeting in exactly one vertex, which is the
/// first vertex of the path.
struct Lasso {
  Cycle cycle;
  Path path;

  Lasso() = default;
  Lasso(Cycle c, Path pth) : cycle(std::move(c)), path(std::move(pth)) {
    if (!cycle.contains(path.front())) throw InvalidArgument("lasso path must start on the cycle");
    for (std::size_t i = 1; i < path.vertices().size(); ++i)
      if (cycle.contains(path.vertices()[i]))
        throw InvalidArgument("lasso cycle and path share more than one vertex");
  }

  std::size_t p() const { return cycle.length(); }
  std::size_t q() const { return path.length(); }
  std::size_t order() const { return p() + q(); }
  Vertex attach() const { return path.front(); }

  std::vector<Pair> edges() const {
    auto e = cycle.edges();
    auto pe = path.edges();
    e.insert(e.end(), pe.begin(), pe.end());
    return e;
  }

  std::string str() const {
    std::string s = cycle.str() + "[";
    for (std::size_t i = 0; i < path.vertices().size(); ++i)
      s += (i ? "," : "") + std::to_string(path.vertices()[i]);
    return s + "]";
  }

  auto operator<=>(const Lasso&) const = default;
};

/// True when every edge of `edges` (with repetition) is present in g.
inline bool contains_edges(const Multigraph& g, std::span<const Pair> edges) {
  std::map<Pair, int> need;
  for (const auto& e : edges) ++need[e];
  for (const auto& [p, k] : need)
    if (g.mult(p) < k) return false;
  return true;
}

inline Multigraph leave_of(const Instance& inst, std::span<const Cycle> cycles) {
  Multigraph leave = complete_multigraph(inst.lambda, inst.v);
  for (const auto& c : cycles) {
    for (Vertex x : c.vertices())
      if (x >= inst.v) throw InvalidArgument("cycle vertex out of range: " + std::to_string(x));
    for (const auto& e : c.edges()) {
      if (leave.mult(e) == 0) throw OverusedEdge(e.u, e.w);
      leave.remove(e.u, e.w);
    }
  }
  return leave;
}

/// An instance, a list of cycles, and the induced leave. The cycle list
/// keeps insertion order; `add` appends and `remove` erases in place.
class Packing {
 public:
  Packing() = default;
  Packing(Instance inst, std::vector<Cycle> cycles)
      : inst_(std::move(inst)), cycles_(std::move(cycles)), leave_(leave_of(inst_, cycles_)) {}

  const Instance& instance() const { return inst_; }
  const std::vector<Cycle>& cycles() const { return cycles_; }
  const Multigraph& leave() const { return leave_; }

  void add(const Cycle& c) {
    for (Vertex x : c.vertices())
      if (x >= inst_.v) throw InvalidArgument("cycle vertex out of range");
    Multigraph next = leave_;
    for (const auto& e : c.edges()) {
      if (next.mult(e) == 0) throw OverusedEdge(e.u, e.w);
      next.remove(e.u, e.w);
    }
    leave_ = std::move(next);
    cycles_.push_back(c);
  }

  /// Removes the first cycle equal to c.
  void remove(const Cycle& c) {
    auto it = std::find(cycles_.begin(), cycles_.end(), c);
    if (it == cycles_.end()) throw InvalidArgument("cycle not in packing: " + c.str());
    for (const auto& e : c.edges()) leave_.add(e.u, e.w);
    cycles_.erase(it);
  }

  /// Replaces the whole cycle list, recomputing the leave.
  void assign(std::vector<Cycle> cycles) {
    Multigraph next = leave_of(inst_, cycles);
    cycles_ = std::move(cycles);
    leave_ = std::move(next);
  }

  std::vector<int> length_multiset() const {
    std::vector<int> out;
    for (const auto& c : cycles_) out.push_back(static_cast<int>(c.length()));
    std::sort(out.begin(), out.end());
    return out;
  }

  bool operator==(const Packing&) const = default;

 private:
  Instance inst_;
  std::vector<Cycle> cycles_;
  Multigraph leave_;
};

enum class Violation { None, VertexRange, BadLength, OverusedEdge, LengthMismatch };

struct Verdict {
  Violation violation = Violation::None;
  std::string message;

  bool ok() const { return violation == Violation::None; }
  explicit operator bool() const { return ok(); }
};

/// Checks, in order: vertex range, cycle lengths in [2, v], edge overuse,
/// and (when strict) the length multiset. Reports the first violation.
inline Verdict validate_packing(const Instance& inst, std::span<const Cycle> cycles, bool strict) {
  for (const auto& c : cycles)
    for (Vertex x : c.vertices())
      if (x < 0 || x >= inst.v)
        return {Violation::VertexRange, "vertex " + std::to_string(x) + " out of range in " + c.str()};
  for (const auto& c : cycles)
    if (c.length() < 2 || static_cast<int>(c.length()) > inst.v)
      return {Violation::BadLength, "cycle length " + std::to_string(c.length()) + " outside [2, v]"};
  try {
    (void)leave_of(inst, cycles);
  } catch (const OverusedEdge& e) {
    return {Violation::OverusedEdge, e.what()};
  }
  if (strict) {
    std::vector<int> got;
    for (const auto& c : cycles) got.push_back(static_cast<int>(c.length()));
    std::sort(got.begin(), got.end());
    if (got != inst.lengths)
      return {Violation::LengthMismatch,
              "cycle lengths {" + join_lengths(got) + "} != {" + join_lengths(inst.lengths) + "}"};
  }
  return {};
}

inline int degree(const Multigraph& g, Vertex x) { return g.degree(x); }

/// Connected components over non-isolated vertices, each sorted, ordered by
/// smallest member.
inline std::vector<std::vector<Vertex>> components(const Multigraph& g) {
  const int n = g.order();
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<bool> touched(static_cast<std::size_t>(n), false);
  for (const auto& [p, m] : g.pairs()) {
    touched[p.u] = touched[p.w] = true;
    parent[find(p.u)] = find(p.w);
  }
  std::map<int, std::vector<Vertex>> groups;
  for (int x = 0; x < n; ++x)
    if (touched[x]) groups[find(x)].push_back(x);
  std::vector<std::vector<Vertex>> out;
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// Enumerates canonical cycles of length s in lexicographic order, restricted
// to vertices with allowed[x]. The callback returns true to stop.
inline bool for_each_cycle(const Multigraph& g, int s, const std::vector<bool>& allowed,
                           const std::function<bool(const std::vector<Vertex>&)>& visit) {
  const int n = g.order();
  if (s == 2) {
    for (const auto& [p, m] : g.pairs())
      if (m >= 2 && allowed[p.u] && allowed[p.w])
        if (visit({p.u, p.w})) return true;
    return false;
  }
  if (s < 3 || s > n) return false;
  std::vector<std::vector<Vertex>> nbr(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x)
    if (allowed[x]) {
      for (Vertex y : g.neighbors(x))
        if (allowed[y]) nbr[x].push_back(y);
    }
  std::vector<Vertex> seq;
  std::vector<bool> used(static_cast<std::size_t>(n), false);
  std::function<bool()> extend = [&]() -> bool {
    const Vertex last = seq.back();
    if (static_cast<int>(seq.size()) == s) {
      if (seq[1] < seq.back() && g.mult(last, seq.front()) > 0) return visit(seq);
      return false;
    }
    for (Vertex y : nbr[last]) {
      if (y <= seq.front() || used[y]) continue;
      used[y] = true;
      seq.push_back(y);
      bool stop = extend();
      seq.pop_back();
      used[y] = false;
      if (stop) return true;
    }
    return false;
  };
  for (Vertex x0 = 0; x0 < n; ++x0) {
    if (!allowed[x0]) continue;
    seq = {x0};
    used[x0] = true;
    bool stop = extend();
    used[x0] = false;
    if (stop) return true;
  }
  return false;
}

// Lexicographically first simple path of exactly q edges starting at `from`
// that avoids every vertex marked in `blocked`.
inline std::optional<std::vector<Vertex>> first_path(const Multigraph& g, Vertex from, int q,
                                                     std::vector<bool> blocked,
                                                     const std::vector<bool>& allowed) {
  std::vector<Vertex> seq{from};
  blocked[from] = true;
  std::function<bool()> extend = [&]() -> bool {
    if (static_cast<int>(seq.size()) == q + 1) return true;
    for (Vertex y : g.neighbors(seq.back())) {
      if (blocked[y] || !allowed[y]) continue;
      blocked[y] = true;
      seq.push_back(y);
      if (extend()) return true;
      seq.pop_back();
      blocked[y] = false;
    }
    return false;
  };
  if (extend()) return seq;
  return std::nullopt;
}

inline std::vector<bool> all_allowed(const Multigraph& g) {
  return std::vector<bool>(static_cast<std::size_t>(g.order()), true);
}

}  // namespace detail

/// Lexicographically smallest canonical s-cycle of g. For s = 2 this is the
/// smallest pair of multiplicity at least 2.
inline std::optional<Cycle> find_cycle_of_length(const Multigraph& g, int s) {
  if (s < 2) throw InvalidArgument("cycle length must be at least 2");
  std::optional<Cycle> found;
  detail::for_each_cycle(g, s, detail::all_allowed(g), [&](const std::vector<Vertex>& c) {
    found = Cycle(c);
    return true;
  });
  return found;
}

/// First (p,q)-lasso of g with exactly the given p and q, restricted to
/// allowed vertices. Cycles are tried in canonical order, attachment
/// vertices in cycle order, and paths lexicographically.
inline std::optional<Lasso> find_lasso_exact(const Multigraph& g, int p, int q,
                                             const std::vector<bool>& allowed) {
  if (p < 2 || q < 1 || p + q > g.order()) return std::nullopt;
  std::optional<Lasso> found;
  detail::for_each_cycle(g, p, allowed, [&](const std::vector<Vertex>& c) {
    std::vector<bool> blocked(static_cast<std::size_t>(g.order()), false);
    for (Vertex x : c) blocked[x] = true;
    for (Vertex a : c) {
      auto path = detail::first_path(g, a, q, blocked, allowed);
      if (path) {
        found = Lasso(Cycle(c), Path(*path));
        return true;
      }
    }
    return false;
  });
  return found;
}

inline std::optional<Lasso> find_lasso_exact(const Multigraph& g, int p, int q) {
  return find_lasso_exact(g, p, q, detail::all_allowed(g));
}

/// Some (p,q)-lasso with p + q >= min_order (p even if requested). The
/// search runs over p ascending and uses the shortest admissible path,
/// q = max(1, min_order - p).
inline std::optional<Lasso> find_lasso(const Multigraph& g, int min_order, bool even_cycle_required) {
  if (min_order < 3) throw InvalidArgument("min_order must be at least 3");
  for (int p = 2; p < g.order(); ++p) {
    if (even_cycle_required && p % 2) continue;
    int q = std::max(1, min_order - p);
    if (auto l = find_lasso_exact(g, p, q)) return l;
  }
  return std::nullopt;
}

}  // namespace cyclepack
