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

#include "spindesign/opspec.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "spindesign/errors.hpp"

namespace spindesign {

namespace {

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
  }
  bool done() {
    skip_space();
    return pos >= text.size();
  }
  char peek() {
    skip_space();
    return pos < text.size() ? text[pos] : '\0';
  }
};

double parse_number(Cursor& c) {
  c.skip_space();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(c.text.substr(c.pos), &used);
  } catch (const std::exception&) {
    throw ParseError("expected a number at position " + std::to_string(c.pos), c.pos);
  }
  c.pos += used;
  return v;
}

// one Pauli product, e.g. "Z1" or "X1Y2": letter then 1-based spin index
std::string parse_pauli_product(Cursor& c, int n) {
  std::string labels(n, 'I');
  bool any = false;
  while (true) {
    c.skip_space();
    if (c.pos >= c.text.size()) break;
    const char letter = c.text[c.pos];
    if (letter != 'I' && letter != 'X' && letter != 'Y' && letter != 'Z') break;
    const std::size_t letter_pos = c.pos;
    ++c.pos;
    if (c.pos >= c.text.size() || !std::isdigit(static_cast<unsigned char>(c.text[c.pos]))) {
      throw ParseError("Pauli letter must be followed by a spin index at position " +
                           std::to_string(letter_pos),
                       letter_pos);
    }
    int spin = 0;
    while (c.pos < c.text.size() && std::isdigit(static_cast<unsigned char>(c.text[c.pos]))) {
      spin = spin * 10 + (c.text[c.pos] - '0');
      ++c.pos;
    }
    if (spin < 1 || spin > n) {
      throw ParseError("spin index " + std::to_string(spin) + " out of range 1.." +
                           std::to_string(n) + " at position " + std::to_string(letter_pos),
                       letter_pos);
    }
    if (labels[spin - 1] != 'I') {
      throw ParseError("spin " + std::to_string(spin) + " named twice in one product",
                       letter_pos);
    }
    labels[spin - 1] = letter;
    any = true;
  }
  if (!any) {
    throw ParseError("expected a Pauli product at position " + std::to_string(c.pos),
                     c.pos);
  }
  return labels;
}

}  // namespace

HermitianOperator parse_operator(const std::string& text, const SpinSystem& system) {
  {
    std::string trimmed = text;
    trimmed.erase(0, trimmed.find_first_not_of(" \t"));
    trimmed.erase(trimmed.find_last_not_of(" \t") + 1);
    if (trimmed == "thermal") return thermal_deviation(system);
    if (trimmed == "pps") return pps_target(system.n);
    if (trimmed == "lpps") return lpps_target(system.n);
  }

  Cursor c{text};
  HermitianOperator acc = HermitianOperator::zero(system.dim());
  bool first = true;
  while (!c.done()) {
    double sign = 1.0;
    const char op = c.peek();
    if (op == '+' || op == '-') {
      sign = op == '-' ? -1.0 : 1.0;
      ++c.pos;
    } else if (!first) {
      throw ParseError("expected '+' or '-' at position " + std::to_string(c.pos), c.pos);
    }
    first = false;

    double coeff = 1.0;
    const char head = c.peek();
    if (std::isdigit(static_cast<unsigned char>(head)) || head == '.') {
      coeff = parse_number(c);
      if (c.peek() == '*') {
        ++c.pos;
        acc += (sign * coeff) * pauli_string(system, parse_pauli_product(c, system.n));
        continue;
      }
      // bare number: a multiple of the identity
      acc += HermitianOperator::identity(system.dim(), sign * coeff);
      continue;
    }
    acc += (sign * coeff) * pauli_string(system, parse_pauli_product(c, system.n));
  }
  if (first) throw ParseError("empty operator spec", 0);
  return acc;
}

std::string print_operator(const HermitianOperator& op, const SpinSystem& system) {
  const int n = system.n;
  const int dims = system.dim();
  std::ostringstream out;
  bool first = true;
  char buf[64];

  const auto emit = [&](double coeff, const std::string& term) {
    if (std::abs(coeff) < 1e-14) return;
    std::snprintf(buf, sizeof(buf), "%.17g", std::abs(coeff));
    if (!first) out << (coeff < 0 ? " - " : " + ");
    else if (coeff < 0) out << "-";
    out << buf;
    if (!term.empty()) out << "*" << term;
    first = false;
  };

  if (std::abs(op.identity_coeff()) >= 1e-14) emit(op.identity_coeff(), "");

  // enumerate all non-identity Pauli strings in lexicographic label order
  const char letters[4] = {'I', 'X', 'Y', 'Z'};
  std::vector<int> digits(n, 0);
  const Eigen::MatrixXcd dev = op.traceless();
  while (true) {
    std::string labels(n, 'I');
    bool all_identity = true;
    for (int i = 0; i < n; ++i) {
      labels[i] = letters[digits[i]];
      if (digits[i] != 0) all_identity = false;
    }
    if (!all_identity) {
      const Eigen::MatrixXcd p = pauli_matrix(labels);
      const double coeff = (p * dev).trace().real() / dims;
      std::string term;
      for (int i = 0; i < n; ++i) {
        if (labels[i] != 'I') {
          term += labels[i];
          term += std::to_string(i + 1);
        }
      }
      emit(coeff, term);
    }
    int k = n - 1;
    while (k >= 0 && digits[k] == 3) digits[k--] = 0;
    if (k < 0) break;
    ++digits[k];
  }
  if (first) out << "0";
  return out.str();
}

}  // namespace spindesign
