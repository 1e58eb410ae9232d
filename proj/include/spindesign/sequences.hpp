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
#include <variant>
#include <vector>

#include "spindesign/channels.hpp"
#include "spindesign/operators.hpp"
#include "spindesign/spin_system.hpp"

namespace spindesign {

enum class Axis { X, Y, MinusX, MinusY };

/// Hard pulse R_axis(angle) applied simultaneously to the listed spins
/// (0-based). R_a(theta) = exp(-i theta sigma_a / 2).
struct HardPulse {
  std::vector<int> spins;
  Axis axis = Axis::X;
  double angle_deg = 0.0;
};

/// Free evolution under the scalar-coupling Hamiltonian for `duration`
/// seconds (both experimental systems are on resonance).
struct Delay {
  double duration = 0.0;
};

/// Ideal z-gradient; empty weights mean the system's gamma ratios.
struct GradientPulse {
  Eigen::VectorXd weights;
};

struct PhaseCycleStep {
  PhaseCycleScheme scheme;
};

struct GateStep {
  Eigen::MatrixXcd unitary;
};

using SequenceStep =
    std::variant<HardPulse, Delay, GradientPulse, PhaseCycleStep, GateStep>;

// on-resonance weak-coupling Hamiltonian sum_{i<j} (pi J_ij / 2) Z_i Z_j
HermitianOperator system_hamiltonian(const SpinSystem& system);

Eigen::MatrixXcd rotation_unitary(const SpinSystem& system,
                                  const std::vector<int>& spins, Axis axis,
                                  double angle_deg);
Eigen::MatrixXcd coupling_delay_unitary(const SpinSystem& system, double duration);

/// Rotation of `target` about an xy-plane axis (phi measured from x),
/// applied when `control` is in |1>.
Eigen::MatrixXcd controlled_rotation(const SpinSystem& system, int control,
                                     int target, double angle_deg,
                                     double axis_phi_deg = 0.0);

// diagonal gate exp(sign * i * pi Z_i Z_j / 4)
Eigen::MatrixXcd zz_quarter_gate(const SpinSystem& system, int spin_a, int spin_b,
                                 int sign);

// populations cycle 2 -> 3 -> ... -> N -> 2, level 1 fixed
Eigen::MatrixXcd cyclic_permutation_unitary(int dim);

// level 1 fixed, levels 2..N reversed (the anti-diagonal-with-corner matrix)
Eigen::MatrixXcd level_reversal_unitary(int dim);

HermitianOperator run_sequence(const HermitianOperator& state,
                               const SpinSystem& system,
                               const std::vector<SequenceStep>& steps);

}  // namespace spindesign
