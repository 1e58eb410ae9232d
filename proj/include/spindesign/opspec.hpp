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

#include <string>

#include "spindesign/operators.hpp"
#include "spindesign/spin_system.hpp"

namespace spindesign {

/// Parses the operator mini-language: weighted sums of Pauli products like
/// "1.0*Z1 + 4.0*Z2" or "Z1Z2 - 0.5*X1Y2", or one of the named presets
/// thermal | pps | lpps. Spin indices are 1-based. Throws ParseError with
/// the offending position.
HermitianOperator parse_operator(const std::string& text, const SpinSystem& system);

/// Canonical textual form (Pauli-basis expansion, labels sorted), chosen so
/// parse(print(parse(s))) reproduces parse(s) exactly.
std::string print_operator(const HermitianOperator& op, const SpinSystem& system);

}  // namespace spindesign
