// Copyright 2026 The spindesign Authors
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

namespace spindesign {

// Target spectrum not reachable by any mixed unitary channel from the source.
class UnreachableTargetError : public std::runtime_error {
 public:
  UnreachableTargetError(const std::string& msg, int violated_k = -1)
      : std::runtime_error(msg), violated_k(violated_k) {}
  // index of the violated majorization partial sum, -1 if not applicable
  int violated_k;
};

// Numerical search did not reach the requested residual.
class SolverFailureError : public std::runtime_error {
 public:
  SolverFailureError(const std::string& msg, double best_residual)
      : std::runtime_error(msg), best_residual(best_residual) {}
  double best_residual;
};

// Unit eigenspace of a channel is degenerate; no unique fixed point.
class NonUniqueFixedPointError : public std::runtime_error {
 public:
  NonUniqueFixedPointError(const std::string& msg, int multiplicity)
      : std::runtime_error(msg), multiplicity(multiplicity) {}
  int multiplicity;
};

// Malformed textual input (operator spec, spin-system file, CLI argument).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg, std::size_t position = 0)
      : std::runtime_error(msg), position(position) {}
  std::size_t position;
};

}  // namespace spindesign
