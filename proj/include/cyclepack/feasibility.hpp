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
#include <optional>
#include <string>
#include <vector>

#include "cyclepack/multigraph.hpp"

namespace cyclepack {

enum class Condition { I, II, III, IV };

inline const char* condition_name(Condition c) {
  switch (c) {
    case Condition::I: return "i";
    case Condition::II: return "ii";
    case Condition::III: return "iii";
    case Condition::IV: return "iv";
  }
  return "?";
}

struct FeasibilityVerdict {
  std::int64_t delta = 0;
  bool feasible = true;
  std::vector<Condition> failed_conditions;
  /// Leave size beyond the forced odd-leave minimum; set when lambda is odd.
  std::optional<std::int64_t> epsilon;

  bool failed(Condition c) const {
    for (auto f : failed_conditions)
      if (f == c) return true;
    return false;
  }
};

inline std::int64_t delta_of(const Instance& inst) {
  std::int64_t sum = 0;
  for (int m : inst.lengths) sum += m;
  return inst.host_edges() - sum;
}

inline std::int64_t epsilon_of(const Instance& inst, std::int64_t delta) {
  return inst.v % 2 ? delta : delta - inst.v / 2;
}

inline std::int64_t sum_of_twos(const std::vector<int>& lengths) {
  std::int64_t s = 0;
  for (int m : lengths)
    if (m == 2) s += 2;
  return s;
}

/// Existence of a packing of lambda K_v with the instance's cycle lengths.
/// All four conditions are evaluated; the verdict lists every one that fails.
inline FeasibilityVerdict check_packing_feasibility(const Instance& inst) {
  FeasibilityVerdict out;
  const std::int64_t lambda = inst.lambda;
  const std::int64_t v = inst.v;
  const std::int64_t c2 = choose2(v);
  const std::int64_t delta = delta_of(inst);
  const bool lv_odd = (lambda * (v - 1)) % 2 == 1;
  out.delta = delta;
  if (lambda % 2) out.epsilon = epsilon_of(inst, delta);

  auto fail = [&](Condition c) { out.failed_conditions.push_back(c); };

  // (i)
  for (int m : inst.lengths)
    if (m < 2 || m > v) {
      fail(Condition::I);
      break;
    }

  // (ii): 2*delta >= v is the integer form of delta >= v/2. The delta = 2
  // exclusion for lambda = 1 only bites when the leave must be even: K_4
  // minus a 4-cycle is a packing whose leave is a 2-edge 1-factor.
  bool ii = delta >= 0;
  if (!lv_odd && delta == 1) ii = false;
  if (lambda == 1 && !lv_odd && delta == 2) ii = false;
  if (lv_odd && 2 * delta < v) ii = false;
  if (!ii) fail(Condition::II);

  // (iii): the (lambda, v odd, delta = 2) branch takes precedence.
  if (lambda % 2) {
    std::int64_t bound = (lambda - 1) * c2;
    if (v % 2 && delta == 2) bound -= 2;
    if (sum_of_twos(inst.lengths) > bound) fail(Condition::III);
  }

  // (iv)
  if (lambda % 2 == 0 && inst.tau() > 0) {
    const std::int64_t m_tau = inst.lengths.back();
    const std::int64_t half = (lambda / 2) * c2;
    const std::int64_t tau = inst.tau();
    if (delta == 0 && m_tau > half - tau + 2) fail(Condition::IV);
    if (delta >= 2 && delta < m_tau && m_tau > half - tau + 1) fail(Condition::IV);
  }

  out.feasible = out.failed_conditions.empty();
  return out;
}

/// Existence of a cycle decomposition of lambda K_v, or of lambda K_v minus a
/// 1-factor when `with_one_factor` is set. Asking for the 1-factor variant
/// with lambda(v-1) even throws; the plain variant is simply false when
/// lambda(v-1) is odd.
inline bool check_decomposition_feasibility(const Instance& inst, bool with_one_factor) {
  const std::int64_t lambda = inst.lambda;
  const std::int64_t v = inst.v;
  const std::int64_t c2 = choose2(v);
  const bool lv_odd = (lambda * (v - 1)) % 2 == 1;
  if (with_one_factor && !lv_odd) throw ParityMismatch("1-factor variant requires lambda(v-1) odd");
  if (!with_one_factor && lv_odd) return false;
  for (int m : inst.lengths)
    if (m < 2 || m > v) return false;
  std::int64_t sum = 0;
  for (int m : inst.lengths) sum += m;
  const std::int64_t twos = sum_of_twos(inst.lengths);
  if (with_one_factor) {
    if (sum != lambda * c2 - v / 2) return false;
    return twos <= (lambda - 1) * c2;
  }
  if (sum != lambda * c2) return false;
  if (lambda % 2 == 0 && inst.tau() > 0) {
    if (inst.lengths.back() + inst.tau() - 2 > (lambda / 2) * c2) return false;
  }
  if (lambda % 2 == 1 && twos > (lambda - 1) * c2) return false;
  return true;
}

}  // namespace cyclepack
