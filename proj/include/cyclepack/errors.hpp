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

#include <stdexcept>
#include <string>

namespace cyclepack {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class OverusedEdge : public Error {
 public:
  OverusedEdge(int x, int y)
      : Error("OverusedEdge{" + std::to_string(x) + "," + std::to_string(y) + "}"), x(x), y(y) {}
  int x;
  int y;
};

class MissingEdge : public Error {
 public:
  MissingEdge(int x, int y)
      : Error("edge {" + std::to_string(x) + "," + std::to_string(y) + "} not present"), x(x), y(y) {}
  int x;
  int y;
};

class ParityMismatch : public Error {
 public:
  using Error::Error;
};

class OddOrder : public Error {
 public:
  using Error::Error;
};

class NoSurplusAtOrigin : public Error {
 public:
  using Error::Error;
};

/// A search that is guaranteed to succeed came up empty. Always a bug.
class InternalExhaustion : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class CaseMismatch : public Error {
 public:
  using Error::Error;
};

class NoQualifyingEntry : public Error {
 public:
  using Error::Error;
};

class InfeasibleInstance : public Error {
 public:
  using Error::Error;
};

class ProviderFailure : public Error {
 public:
  using Error::Error;
};

/// A proof-internal fact did not hold at runtime.
class LogicError : public Error {
 public:
  using Error::Error;
};

}  // namespace cyclepack

#ifdef CYCLEPACK_PROOF_CHECKS
#define CYCLEPACK_ASSERT(cond, msg) \
  do {                              \
    if (!(cond)) throw ::cyclepack::LogicError(std::string("proof check failed: ") + (msg)); \
  } while (0)
#else
#define CYCLEPACK_ASSERT(cond, msg) ((void)sizeof(!(cond)))
#endif
