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

#include <string>
#include <variant>
#include <vector>

#include "cyclepack/multigraph.hpp"

namespace cyclepack {

namespace trace_step {

struct Base {
  std::vector<Cycle> cycles;
  bool operator==(const Base&) const = default;
};
struct Remove {
  Cycle cycle;
  bool operator==(const Remove&) const = default;
};
struct Add {
  Cycle cycle;
  bool operator==(const Add&) const = default;
};
struct Switch {
  Vertex alpha = 0;
  Vertex beta = 0;
  Vertex origin = 0;
  Vertex terminus = 0;
  bool operator==(const Switch&) const = default;
};
/// Free-form annotation (case taken, surplus list, chosen m, ...). Ignored on replay.
struct Note {
  std::string text;
  bool operator==(const Note&) const = default;
};

}  // namespace trace_step

using TraceStep = std::variant<trace_step::Base, trace_step::Remove, trace_step::Add,
                               trace_step::Switch, trace_step::Note>;

/// Ordered record of everything a build did to reach its packing.
struct BuildTrace {
  std::vector<TraceStep> steps;

  void base(std::vector<Cycle> cycles) { steps.emplace_back(trace_step::Base{std::move(cycles)}); }
  void remove(const Cycle& c) { steps.emplace_back(trace_step::Remove{c}); }
  void add(const Cycle& c) { steps.emplace_back(trace_step::Add{c}); }
  void note(std::string text) { steps.emplace_back(trace_step::Note{std::move(text)}); }
  void switched(Vertex a, Vertex b, Vertex origin, Vertex terminus) {
    steps.emplace_back(trace_step::Switch{a, b, origin, terminus});
  }

  std::size_t switch_count() const {
    std::size_t n = 0;
    for (const auto& s : steps) n += std::holds_alternative<trace_step::Switch>(s);
    return n;
  }

  bool operator==(const BuildTrace&) const = default;
};

}  // namespace cyclepack
