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

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace spindesign {

// tolerances from the design invariants: weights sum to 1 within 1e-12,
// entries unitary within 1e-10
inline constexpr double kWeightSumTol = 1e-12;
inline constexpr double kUnitarityTol = 1e-10;

/// One experiment of a mixed unitary channel: apply `unitary` with
/// probability/weight `weight`. When the unitary is a permutation matrix,
/// `permutation` holds its one-line form pi with (U rho U†)_ii =
/// rho_{pi(i) pi(i)}; it is empty otherwise.
struct DesignEntry {
  double weight = 0.0;
  Eigen::MatrixXcd unitary;
  std::vector<int> permutation;
};

/// Weighted list of unitaries realizing a mixed unitary channel
/// sum_k mu_k U_k rho U_k†.
struct ExperimentDesign {
  std::vector<DesignEntry> entries;
  double target_eta = 0.0;

  int dim() const;
  // throws std::invalid_argument on empty entries, nonpositive or
  // non-normalized weights, or non-unitary entries
  void validate() const;

  static Eigen::MatrixXcd permutation_unitary(const std::vector<int>& perm);
  static ExperimentDesign from_permutations(const std::vector<std::vector<int>>& perms,
                                            const Eigen::VectorXd& weights,
                                            double target_eta);

  // one "(weight) cycles" line per entry; cycle notation on 1-based levels
  std::string to_text() const;
};

// cycle notation of a one-line permutation, e.g. "(2 4 3)"; "()" = identity
std::string cycle_notation(const std::vector<int>& perm);

// minimal number of transpositions realizing the permutation
int transposition_count(const std::vector<int>& perm);

}  // namespace spindesign
