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

// File formats: instance and packing JSON, verdict and decomposition JSON,
// and the line-oriented build trace.

#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "cyclepack/decomposer.hpp"
#include "cyclepack/feasibility.hpp"
#include "cyclepack/multigraph.hpp"
#include "cyclepack/trace.hpp"

namespace cyclepack {

using json = nlohmann::json;

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parses "3,3,4" (whitespace tolerated, empty string = empty list) and
/// returns the entries sorted.
inline std::vector<int> parse_lengths(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  bool any = false;
  while (std::getline(ss, item, ',')) {
    any = true;
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("empty entry in lengths '" + text + "'");
    item = item.substr(b, e - b + 1);
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw ParseError("bad length '" + item + "'");
    }
    if (used != item.size()) throw ParseError("bad length '" + item + "'");
    out.push_back(value);
  }
  if (any && !text.empty() && text.back() == ',') throw ParseError("trailing comma in lengths");
  std::sort(out.begin(), out.end());
  return out;
}

// --- instance ---------------------------------------------------------------

inline json to_json(const Instance& inst) {
  return json{{"lambda", inst.lambda}, {"v", inst.v}, {"lengths", inst.lengths}};
}

inline Instance instance_from_json(const json& j) {
  try {
    auto lengths = j.at("lengths").get<std::vector<int>>();
    std::sort(lengths.begin(), lengths.end());
    return Instance(j.at("lambda").get<int>(), j.at("v").get<int>(), std::move(lengths));
  } catch (const json::exception& e) {
    throw ParseError(std::string("instance: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
}

// --- packing ----------------------------------------------------------------

/// Contents of a packing file as written on disk.
struct PackingFile {
  int lambda = 1;
  int v = 1;
  std::vector<Cycle> cycles;
  std::vector<Pair> leave;

  bool operator==(const PackingFile&) const = default;
};

inline PackingFile to_file(const Packing& pk) {
  PackingFile f;
  f.lambda = pk.instance().lambda;
  f.v = pk.instance().v;
  f.cycles = pk.cycles();
  std::sort(f.cycles.begin(), f.cycles.end());
  f.leave = pk.leave().edge_list();
  return f;
}

inline json to_json(const PackingFile& f) {
  json cycles = json::array();
  for (const auto& c : f.cycles) cycles.push_back(c.vertices());
  json leave = json::array();
  for (const auto& e : f.leave) leave.push_back({e.u, e.w});
  return json{{"lambda", f.lambda}, {"v", f.v}, {"cycles", cycles}, {"leave", leave}};
}

inline json to_json(const Packing& pk) { return to_json(to_file(pk)); }

/// Structural problems (bad JSON, missing fields, wrong types) raise
/// ParseError; malformed cycles raise InvalidArgument.
inline PackingFile packing_from_json(const json& j) {
  PackingFile f;
  std::vector<std::vector<int>> cycles;
  std::vector<std::vector<int>> leave;
  try {
    f.lambda = j.at("lambda").get<int>();
    f.v = j.at("v").get<int>();
    cycles = j.at("cycles").get<std::vector<std::vector<int>>>();
    leave = j.at("leave").get<std::vector<std::vector<int>>>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("packing: ") + e.what());
  }
  for (auto& c : cycles) f.cycles.emplace_back(std::move(c));
  for (const auto& e : leave) {
    if (e.size() != 2) throw ParseError("packing: leave edges must have two endpoints");
    f.leave.emplace_back(e[0], e[1]);
  }
  return f;
}

inline json to_json(const FeasibilityVerdict& v, const Instance& inst) {
  json failed = json::array();
  for (auto c : v.failed_conditions) failed.push_back(condition_name(c));
  json out = to_json(inst);
  out["delta"] = v.delta;
  out["epsilon"] = v.epsilon ? json(*v.epsilon) : json(nullptr);
  out["feasible"] = v.feasible;
  out["failed_conditions"] = failed;
  return out;
}

inline json to_json(const Decomposition& d, const Instance& inst) {
  json out = to_json(inst);
  std::vector<Cycle> cycles = d.cycles;
  std::sort(cycles.begin(), cycles.end());
  json cs = json::array();
  for (const auto& c : cycles) cs.push_back(c.vertices());
  out["cycles"] = cs;
  if (d.one_factor) {
    json f = json::array();
    for (const auto& e : *d.one_factor) f.push_back({e.u, e.w});
    out["one_factor"] = f;
  } else {
    out["one_factor"] = nullptr;
  }
  return out;
}

// --- trace ------------------------------------------------------------------
//
// One step per line: "<index> <op> <args>", indices counting up from 0.
//   base 0,1,2 0,3,4       cycles as comma-joined vertex lists
//   remove 0,1,2
//   add 0,1,2
//   switch alpha=0 beta=1 origin=2 terminus=3
//   note <free text>

namespace detail {

inline std::string cycle_token(const Cycle& c) {
  std::string s;
  for (std::size_t i = 0; i < c.length(); ++i) s += (i ? "," : "") + std::to_string(c.vertices()[i]);
  return s;
}

inline Cycle parse_cycle_token(const std::string& tok) {
  std::vector<Vertex> vs;
  std::stringstream ss(tok);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      vs.push_back(std::stoi(item, &used));
      if (used != item.size()) throw ParseError("bad vertex");
    } catch (const std::exception&) {
      throw ParseError("bad cycle token '" + tok + "'");
    }
  }
  try {
    return Cycle(std::move(vs));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("bad cycle token: ") + e.what());
  }
}

inline int parse_field(const std::string& tok, const std::string& name) {
  if (tok.rfind(name + "=", 0) != 0) throw ParseError("expected " + name + "=..., got '" + tok + "'");
  try {
    return std::stoi(tok.substr(name.size() + 1));
  } catch (const std::exception&) {
    throw ParseError("bad value in '" + tok + "'");
  }
}

}  // namespace detail

inline std::string write_trace(const BuildTrace& trace) {
  std::ostringstream out;
  std::size_t index = 0;
  for (const auto& step : trace.steps) {
    out << index++ << ' ';
    if (auto* b = std::get_if<trace_step::Base>(&step)) {
      out << "base";
      for (const auto& c : b->cycles) out << ' ' << detail::cycle_token(c);
    } else if (auto* r = std::get_if<trace_step::Remove>(&step)) {
      out << "remove " << detail::cycle_token(r->cycle);
    } else if (auto* a = std::get_if<trace_step::Add>(&step)) {
      out << "add " << detail::cycle_token(a->cycle);
    } else if (auto* s = std::get_if<trace_step::Switch>(&step)) {
      out << "switch alpha=" << s->alpha << " beta=" << s->beta << " origin=" << s->origin
          << " terminus=" << s->terminus;
    } else if (auto* n = std::get_if<trace_step::Note>(&step)) {
      out << "note " << n->text;
    }
    out << '\n';
  }
  return out.str();
}

inline BuildTrace read_trace(const std::string& text) {
  BuildTrace trace;
  std::istringstream in(text);
  std::string line;
  long expected = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    long index = -1;
    std::string op;
    if (!(ls >> index >> op)) throw ParseError("bad trace line '" + line + "'");
    if (index != expected) throw ParseError("trace index " + std::to_string(index) + " out of order");
    ++expected;
    std::vector<std::string> args;
    if (op == "note") {
      std::string rest;
      std::getline(ls, rest);
      if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
      trace.note(rest);
      continue;
    }
    for (std::string tok; ls >> tok;) args.push_back(tok);
    if (op == "base") {
      std::vector<Cycle> cycles;
      for (const auto& t : args) cycles.push_back(detail::parse_cycle_token(t));
      trace.base(std::move(cycles));
    } else if (op == "remove" || op == "add") {
      if (args.size() != 1) throw ParseError("'" + op + "' takes one cycle");
      auto c = detail::parse_cycle_token(args[0]);
      op == "add" ? trace.add(c) : trace.remove(c);
    } else if (op == "switch") {
      if (args.size() != 4) throw ParseError("'switch' takes four fields");
      trace.switched(detail::parse_field(args[0], "alpha"), detail::parse_field(args[1], "beta"),
                     detail::parse_field(args[2], "origin"), detail::parse_field(args[3], "terminus"));
    } else {
      throw ParseError("unknown trace op '" + op + "'");
    }
  }
  return trace;
}

}  // namespace cyclepack
