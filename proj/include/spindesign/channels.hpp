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
#include <vector>

#include "spindesign/design.hpp"
#include "spindesign/operators.hpp"
#include "spindesign/spin_system.hpp"

namespace spindesign {

/// U rho U†; throws on non-unitary u (tolerance kUnitarityTol).
HermitianOperator apply_unitary(const HermitianOperator& rho,
                                const Eigen::MatrixXcd& u);

/// sum_k mu_k U_k rho U_k†; the identity part is passed through unchanged,
/// so the trace is preserved exactly.
HermitianOperator apply_mixed_unitary(const HermitianOperator& rho,
                                      const ExperimentDesign& design);

/// Ideal z-gradient ensemble average: zeroes every matrix element whose
/// weighted coherence order is nonzero. Heteronuclear weights (the gamma
/// ratios) dephase zero-quantum terms between unlike spins; the diagonal
/// always survives. Idempotent.
HermitianOperator gradient_channel(const HermitianOperator& rho,
                                   const SpinSystem& system,
                                   const Eigen::VectorXd& weights);
// default weights = system.gamma
HermitianOperator gradient_channel(const HermitianOperator& rho,
                                   const SpinSystem& system);

/// Phase cycling scheme: K repetitions with collective z-phase theta_k and
/// receiver sign s_k, averaged with the given weights. A nu-coherence picks
/// up the factor sum_k w_k s_k exp(-i nu theta_k).
struct PhaseCycleScheme {
  std::vector<double> phases;  // radians
  std::vector<int> signs;      // +1 / -1
  std::vector<double> weights;

  void validate() const;
  int size() const { return static_cast<int>(phases.size()); }
  // scale factor applied to the nu = 0 sector (and hence to the trace)
  double trace_factor() const;
  complexd order_factor(double nu) const;

  // uniform scheme with K phases 2 pi k / K, all signs +1, weights 1/K
  static PhaseCycleScheme uniform(int k);
  /// Maximal-coherence selection for n spins: K = n uniform phases for odd
  /// n; K = 2n half-stepped phases with alternating signs for even n.
  static PhaseCycleScheme max_coherence_selection(int n);
};

HermitianOperator phase_cycle_channel(const HermitianOperator& rho,
                                      const SpinSystem& system,
                                      const PhaseCycleScheme& scheme);

// exp(-i theta sum_j w_j Z_j / 2), diagonal collective z rotation
Eigen::MatrixXcd collective_z_rotation(const SpinSystem& system, double theta,
                                       const Eigen::VectorXd& weights);
Eigen::MatrixXcd collective_z_rotation(const SpinSystem& system, double theta);

}  // namespace spindesign
