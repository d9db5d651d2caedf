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

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "cyclepack/feasibility.hpp"
#include "cyclepack/multigraph.hpp"

namespace cyclepack {

struct SearchConfig {
  /// Cap on search nodes; absent means unbounded.
  std::optional<std::uint64_t> node_budget;
  /// At the root of a search over the full lambda K_v, try only one cycle
  /// per length through the first pair.
  bool symmetry_reduction = true;
};

/// Reads CYCLEPACK_NODE_BUDGET; falls back to `fallback` when unset or bad.
inline SearchConfig default_search_config(std::optional<std::uint64_t> fallback = std::nullopt) {
  SearchConfig cfg;
  cfg.node_budget = fallback;
  if (const char* env = std::getenv("CYCLEPACK_NODE_BUDGET")) {
    char* end = nullptr;
    unsigned long long n = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && n > 0) cfg.node_budget = n;
  }
  return cfg;
}

enum class SearchStatus { Found, NotFound, BudgetExceeded };

inline const char* status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::NotFound: return "notfound";
    case SearchStatus::BudgetExceeded: return "budget";
  }
  return "?";
}

template <class T>
struct SearchOutcome {
  SearchStatus status = SearchStatus::NotFound;
  std::optional<T> value;
  std::uint64_t nodes = 0;

  bool found() const { return status == SearchStatus::Found; }
};

struct Decomposition {
  std::vector<Cycle> cycles;
  std::optional<std::vector<Pair>> one_factor;
};

/// The matching {0,1},{2,3},...,{v-2,v-1}.
inline std::vector<Pair> one_factor(int v) {
  if (v < 2 || v % 2) throw OddOrder("a 1-factor needs an even order v >= 2, got " + std::to_string(v));
  std::vector<Pair> out;
  for (Vertex x = 0; x < v; x += 2) out.emplace_back(x, x + 1);
  return out;
}

namespace detail {

// Exact search for edge-disjoint cycles of prescribed lengths inside a host
// multigraph, leaving exactly `leave_budget` host edges unused.
//
// Each node picks the smallest pair of the residual graph that still has an
// edge. One copy of that edge is either covered by a cycle of some remaining
// length, or (with budget left) assigned to the leave. Remaining 2-cycles
// are placed by counting once no longer cycle is left. Failed states are
// memoised.
class CycleSearch {
 public:
  CycleSearch(const Multigraph& host, const std::vector<int>& lengths, std::int64_t leave_budget,
              const SearchConfig& cfg, bool host_is_complete)
      : n_(host.order()), cfg_(cfg), root_symmetric_(host_is_complete && cfg.symmetry_reduction) {
    index_.assign(static_cast<std::size_t>(n_ * n_), -1);
    for (int x = 0; x < n_; ++x)
      for (int y = x + 1; y < n_; ++y) {
        index_[x * n_ + y] = index_[y * n_ + x] = static_cast<int>(pairs_.size());
        pairs_.emplace_back(x, y);
      }
    mult_.assign(pairs_.size(), 0);
    for (const auto& [p, m] : host.pairs()) {
      if (m > 255) throw InvalidArgument("search supports multiplicities up to 255");
      mult_[index_[p.u * n_ + p.w]] = static_cast<std::uint8_t>(m);
    }
    count_.assign(static_cast<std::size_t>(std::max(n_, 2) + 1), 0);
    for (int m : lengths) {
      if (m < 2 || m > n_) {
        impossible_ = true;
        continue;
      }
      ++count_[m];
    }
    budget_ = leave_budget;
    if (budget_ < 0) impossible_ = true;
    deg_.assign(static_cast<std::size_t>(n_), 0);
    for (std::size_t i = 0; i < pairs_.size(); ++i) {
      deg_[pairs_[i].u] += mult_[i];
      deg_[pairs_[i].w] += mult_[i];
    }
  }

  SearchStatus run() {
    if (impossible_) return SearchStatus::NotFound;
    try {
      return dfs(true) ? SearchStatus::Found : SearchStatus::NotFound;
    } catch (const BudgetHit&) {
      return SearchStatus::BudgetExceeded;
    }
  }

  const std::vector<Cycle>& cycles() const { return placed_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  struct BudgetHit {};

  int idx(int x, int y) const { return index_[x * n_ + y]; }

  void take(int i, int k) {
    mult_[i] = static_cast<std::uint8_t>(mult_[i] - k);
    deg_[pairs_[i].u] -= k;
    deg_[pairs_[i].w] -= k;
  }
  void give(int i, int k) {
    mult_[i] = static_cast<std::uint8_t>(mult_[i] + k);
    deg_[pairs_[i].u] += k;
    deg_[pairs_[i].w] += k;
  }

  std::string key() const {
    std::string k(mult_.begin(), mult_.end());
    for (std::size_t m = 2; m < count_.size(); ++m) k.push_back(static_cast<char>(count_[m]));
    return k;
  }

  bool prune() const {
    std::int64_t twos_available = 0;
    for (auto m : mult_) twos_available += m / 2;
    if (count_[2] > twos_available) return true;
    int odd = 0;
    for (int d : deg_) odd += d & 1;
    // The final leave is a subgraph of the residual with the same degree
    // parities and exactly budget_ edges.
    if (odd > 2 * budget_) return true;
    if (budget_ == 1 && odd != 2) return true;
    if (budget_ == 2 && odd == 0) {
      bool parallel = false;
      for (auto m : mult_) parallel |= m >= 2;
      if (!parallel) return true;
    }
    return false;
  }

  bool only_twos_left() const {
    for (std::size_t m = 3; m < count_.size(); ++m)
      if (count_[m]) return false;
    return true;
  }

  bool place_twos() {
    int need = count_[2];
    std::vector<int> used;
    for (std::size_t i = 0; i < mult_.size() && need > 0; ++i) {
      while (mult_[i] >= 2 && need > 0) {
        take(static_cast<int>(i), 2);
        used.push_back(static_cast<int>(i));
        --need;
      }
    }
    if (need > 0) {
      for (int i : used) give(i, 2);
      return false;
    }
    for (int i : used) placed_.emplace_back(std::vector<Vertex>{pairs_[i].u, pairs_[i].w});
    count_[2] = 0;
    return true;
  }

  bool dfs(bool root) {
    if (cfg_.node_budget && nodes_ >= *cfg_.node_budget) throw BudgetHit{};
    ++nodes_;
    if (only_twos_left()) {
      if (count_[2] == 0) return true;
      if (prune()) return false;
      int saved = count_[2];
      if (place_twos()) return true;
      count_[2] = saved;
      return false;
    }
    if (prune()) return false;
    std::string k = key();
    if (failed_.count(k)) return false;

    int pivot = -1;
    for (std::size_t i = 0; i < mult_.size(); ++i)
      if (mult_[i]) {
        pivot = static_cast<int>(i);
        break;
      }
    if (pivot < 0) return false;
    const int x = pairs_[pivot].u;
    const int y = pairs_[pivot].w;

    for (int m = static_cast<int>(count_.size()) - 1; m >= 3; --m) {
      if (!count_[m]) continue;
      --count_[m];
      std::vector<int> seq{x, y};
      std::vector<bool> on(static_cast<std::size_t>(n_), false);
      on[x] = on[y] = true;
      take(pivot, 1);
      bool ok = extend(seq, on, m, root);
      give(pivot, 1);
      ++count_[m];
      if (ok) return true;
    }
    if (count_[2] && mult_[pivot] >= 2) {
      --count_[2];
      take(pivot, 2);
      placed_.emplace_back(std::vector<Vertex>{x, y});
      if (dfs(false)) return true;
      placed_.pop_back();
      give(pivot, 2);
      ++count_[2];
    }
    if (budget_ > 0) {
      --budget_;
      take(pivot, 1);
      bool ok = dfs(false);
      give(pivot, 1);
      ++budget_;
      if (ok) return true;
    }
    if (failed_.size() > kMemoCap) failed_.clear();
    failed_.insert(std::move(k));
    return false;
  }

  // Grows seq (which starts x, y) into a cycle of length m.
  bool extend(std::vector<int>& seq, std::vector<bool>& on, int m, bool root) {
    const int last = seq.back();
    if (static_cast<int>(seq.size()) == m) {
      int closing = idx(last, seq.front());
      if (!mult_[closing]) return false;
      take(closing, 1);
      placed_.emplace_back(seq);
      bool ok = dfs(false);
      if (!ok) placed_.pop_back();
      give(closing, 1);
      return ok;
    }
    for (int z = 0; z < n_; ++z) {
      if (on[z]) continue;
      int e = idx(last, z);
      if (!mult_[e]) continue;
      take(e, 1);
      on[z] = true;
      seq.push_back(z);
      bool ok = extend(seq, on, m, root);
      seq.pop_back();
      on[z] = false;
      give(e, 1);
      if (ok) return true;
      if (root && root_symmetric_) return false;
    }
    return false;
  }

  static constexpr std::size_t kMemoCap = 4'000'000;

  int n_;
  SearchConfig cfg_;
  bool root_symmetric_;
  bool impossible_ = false;
  std::vector<int> index_;
  std::vector<Pair> pairs_;
  std::vector<std::uint8_t> mult_;
  std::vector<int> deg_;
  std::vector<int> count_;
  std::int64_t budget_ = 0;
  std::vector<Cycle> placed_;
  std::unordered_set<std::string> failed_;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

/// Searches for an (M)-decomposition of lambda K_v, or of lambda K_v minus the
/// canonical 1-factor. NotFound is returned only after exhausting the space.
inline SearchOutcome<Decomposition> decompose(const Instance& inst, bool remove_one_factor,
                                              const SearchConfig& cfg = {}) {
  const bool lv_odd = (static_cast<std::int64_t>(inst.lambda) * (inst.v - 1)) % 2 == 1;
  if (remove_one_factor && !lv_odd) throw ParityMismatch("1-factor removal requires lambda(v-1) odd");
  Multigraph host = complete_multigraph(inst.lambda, inst.v);
  std::optional<std::vector<Pair>> factor;
  if (remove_one_factor) {
    factor = one_factor(inst.v);
    for (const auto& e : *factor) host.remove(e.u, e.w);
  }
  std::int64_t sum = 0;
  for (int m : inst.lengths) sum += m;
  SearchOutcome<Decomposition> out;
  if (sum != host.edge_count()) {
    out.status = SearchStatus::NotFound;
    return out;
  }
  detail::CycleSearch search(host, inst.lengths, 0, cfg, !remove_one_factor);
  out.status = search.run();
  out.nodes = search.nodes();
  if (out.found()) out.value = Decomposition{search.cycles(), factor};
  return out;
}

/// Independent brute-force packing oracle: finds a packing with exactly the
/// instance's cycle lengths or proves that none exists.
inline SearchOutcome<Packing> brute_force_pack(const Instance& inst, const SearchConfig& cfg = {}) {
  Multigraph host = complete_multigraph(inst.lambda, inst.v);
  std::int64_t sum = 0;
  for (int m : inst.lengths) sum += m;
  SearchOutcome<Packing> out;
  detail::CycleSearch search(host, inst.lengths, host.edge_count() - sum, cfg, true);
  out.status = search.run();
  out.nodes = search.nodes();
  if (out.found()) out.value = Packing(inst, search.cycles());
  return out;
}

}  // namespace cyclepack
