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

#include "spindesign/design.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace spindesign {

int ExperimentDesign::dim() const {
  return entries.empty() ? 0 : static_cast<int>(entries.front().unitary.rows());
}

void ExperimentDesign::validate() const {
  if (entries.empty()) {
    throw std::invalid_argument("experiment design must have at least one entry");
  }
  const int n = dim();
  double weight_sum = 0.0;
  for (const auto& e : entries) {
    if (!(e.weight > 0.0)) {
      throw std::invalid_argument("design weights must be strictly positive");
    }
    weight_sum += e.weight;
    if (e.unitary.rows() != n || e.unitary.cols() != n) {
      throw std::invalid_argument("design entries must share one dimension");
    }
    const double err =
        (e.unitary.adjoint() * e.unitary - Eigen::MatrixXcd::Identity(n, n))
            .cwiseAbs()
            .maxCoeff();
    if (err > kUnitarityTol) {
      throw std::invalid_argument("design entry is not unitary within tolerance");
    }
  }
  if (std::abs(weight_sum - 1.0) > kWeightSumTol * entries.size()) {
    throw std::invalid_argument("design weights must sum to one");
  }
}

Eigen::MatrixXcd ExperimentDesign::permutation_unitary(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (perm[i] < 0 || perm[i] >= n) {
      throw std::invalid_argument("permutation index out of range");
    }
    u(i, perm[i]) = 1.0;
  }
  return u;
}

ExperimentDesign ExperimentDesign::from_permutations(
    const std::vector<std::vector<int>>& perms, const Eigen::VectorXd& weights,
    double target_eta) {
  if (static_cast<int>(perms.size()) != weights.size()) {
    throw std::invalid_argument("one weight per permutation required");
  }
  ExperimentDesign d;
  d.target_eta = target_eta;
  for (std::size_t k = 0; k < perms.size(); ++k) {
    DesignEntry e;
    e.weight = weights(static_cast<int>(k));
    e.permutation = perms[k];
    e.unitary = permutation_unitary(perms[k]);
    d.entries.push_back(std::move(e));
  }
  d.validate();
  return d;
}

std::string cycle_notation(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<bool> seen(n, false);
  std::ostringstream out;
  bool any = false;
  for (int start = 0; start < n; ++start) {
    if (seen[start] || perm[start] == start) {
      seen[start] = true;
      continue;
    }
    out << '(' << start + 1;
    seen[start] = true;
    for (int j = perm[start]; j != start; j = perm[j]) {
      out << ' ' << j + 1;
      seen[j] = true;
    }
    out << ')';
    any = true;
  }
  if (!any) out << "()";
  return out.str();
}

int transposition_count(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<bool> seen(n, false);
  int cycles = 0;
  for (int start = 0; start < n; ++start) {
    if (seen[start]) continue;
    ++cycles;
    for (int j = start; !seen[j]; j = perm[j]) seen[j] = true;
  }
  return n - cycles;
}

std::string ExperimentDesign::to_text() const {
  std::ostringstream out;
  out.precision(12);
  out << "K = " << entries.size() << ", eta = " << target_eta << "\n";
  for (const auto& e : entries) {
    out << "  weight " << e.weight << "  ";
    if (!e.permutation.empty()) {
      out << cycle_notation(e.permutation);
    } else {
      out << "[dense unitary " << e.unitary.rows() << "x" << e.unitary.cols() << "]";
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace spindesign
