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

// Instance enumeration, seeded sampling and the cross-validation sweep.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "cyclepack/constructor.hpp"
#include "cyclepack/decomposer.hpp"
#include "cyclepack/feasibility.hpp"
#include "cyclepack/multigraph.hpp"

namespace cyclepack {

/// Visits every nondecreasing list with entries in [2, v] and sum at most
/// `max_sum`, in lexicographic order (a list precedes its extensions). The
/// empty list comes first.
inline void for_each_length_list(int v, std::int64_t max_sum,
                                 const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> cur;
  std::function<void(int, std::int64_t)> rec = [&](int lo, std::int64_t room) {
    visit(cur);
    for (int m = lo; m <= v && m <= room; ++m) {
      cur.push_back(m);
      rec(m, room - m);
      cur.pop_back();
    }
  };
  rec(2, max_sum);
}

inline std::vector<std::vector<int>> enumerate_length_lists(int v, std::int64_t max_sum) {
  std::vector<std::vector<int>> out;
  for_each_length_list(v, max_sum, [&](const std::vector<int>& l) { out.push_back(l); });
  return out;
}

/// Lists of a packing domain: sum bounded by lambda * C(v, 2).
inline std::vector<std::vector<int>> enumerate_packing_lists(int lambda, int v) {
  return enumerate_length_lists(v, lambda * choose2(v));
}

/// Lists whose sum is exactly `sum`.
inline std::vector<std::vector<int>> enumerate_exact_lists(int v, std::int64_t sum) {
  std::vector<std::vector<int>> out;
  for_each_length_list(v, sum, [&](const std::vector<int>& l) {
    if (std::accumulate(l.begin(), l.end(), std::int64_t{0}) == sum) out.push_back(l);
  });
  return out;
}

/// Seeded sample of k indices out of [0, n), returned in ascending order.
///
/// Contract: g = std::mt19937_64(seed); a = [0, 1, ..., n-1];
/// for i in 0..min(k,n)-1: j = i + g() mod (n - i); swap(a[i], a[j]).
/// The first min(k,n) entries of a, sorted ascending, form the sample.
/// mt19937_64 output is fixed by the C++ standard, so the sample depends
/// only on (n, k, seed).
inline std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::vector<std::size_t> a(n);
  std::iota(a.begin(), a.end(), std::size_t{0});
  std::mt19937_64 g(seed);
  k = std::min(k, n);
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + static_cast<std::size_t>(g() % (n - i));
    std::swap(a[i], a[j]);
  }
  a.resize(k);
  std::sort(a.begin(), a.end());
  return a;
}

struct SweepRow {
  int lambda = 1;
  int v = 1;
  std::vector<int> lengths;
  std::int64_t delta = 0;
  bool predicate_feasible = false;
  std::optional<SearchStatus> oracle_result;  // absent: oracle not run
  std::optional<bool> constructed;            // absent: construction not attempted
  std::optional<bool> valid;
  std::optional<bool> agree;                  // absent: budget row

  bool budget() const { return !agree.has_value(); }
};

struct SweepOptions {
  bool oracle = false;
  bool construct = false;
  SearchConfig search = {};
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Evaluates one instance. Construction is attempted only for
/// predicate-feasible instances.
inline SweepRow evaluate_row(const Instance& inst, const SweepOptions& opt) {
  SweepRow row;
  row.lambda = inst.lambda;
  row.v = inst.v;
  row.lengths = inst.lengths;
  auto verdict = check_packing_feasibility(inst);
  row.delta = verdict.delta;
  row.predicate_feasible = verdict.feasible;
  bool budget = false;
  bool ok = true;
  if (opt.oracle) {
    row.oracle_result = brute_force_pack(inst, opt.search).status;
    if (*row.oracle_result == SearchStatus::BudgetExceeded)
      budget = true;
    else
      ok = ok && (row.predicate_feasible == (*row.oracle_result == SearchStatus::Found));
  }
  if (opt.construct && row.predicate_feasible) {
    try {
      auto built = build_packing(inst, search_provider(opt.search));
      row.constructed = true;
      row.valid = validate_packing(inst, built.packing.cycles(), true).ok();
    } catch (const ProviderFailure&) {
      budget = true;
    } catch (const Error&) {
      row.constructed = false;
      row.valid = false;
    }
    if (row.constructed) ok = ok && *row.constructed && *row.valid;
  }
  if (!budget) row.agree = ok;
  return row;
}

struct SweepSummary {
  std::size_t rows = 0;
  std::size_t disagreements = 0;
  std::size_t budget_rows = 0;

  /// 1 on any disagreement, else 4 on any budget row, else 0.
  int exit_code() const { return disagreements ? 1 : budget_rows ? 4 : 0; }
};

/// Evaluates instances concurrently; rows come back in input order.
inline std::vector<SweepRow> run_sweep(const std::vector<Instance>& instances, const SweepOptions& opt) {
  std::vector<SweepRow> rows(instances.size());
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, instances.size())));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < instances.size();) rows[i] = evaluate_row(instances[i], opt);
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  return rows;
}

inline SweepSummary summarize(const std::vector<SweepRow>& rows) {
  SweepSummary s;
  s.rows = rows.size();
  for (const auto& r : rows) {
    if (r.budget())
      ++s.budget_rows;
    else if (!*r.agree)
      ++s.disagreements;
  }
  return s;
}

inline const char* kSweepCsvHeader = "lambda,v,lengths,delta,predicate_feasible,oracle_result,constructed,valid,agree";

inline std::string csv_line(const SweepRow& r) {
  auto flag = [](const std::optional<bool>& b) { return b ? std::string(*b ? "1" : "0") : std::string("-"); };
  std::string out = std::to_string(r.lambda) + "," + std::to_string(r.v) + "," + join_lengths(r.lengths, '+') +
                    "," + std::to_string(r.delta) + "," + (r.predicate_feasible ? "1" : "0") + ",";
  out += r.oracle_result ? status_name(*r.oracle_result) : "-";
  out += "," + flag(r.constructed) + "," + flag(r.valid) + ",";
  out += r.agree ? (*r.agree ? "1" : "0") : "budget";
  return out;
}

inline void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : rows) out << csv_line(r) << '\n';
}

}  // namespace cyclepack
