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
#include <utility>
#include <vector>

#include "spindesign/bounds.hpp"
#include "spindesign/lindblad.hpp"
#include "spindesign/operators.hpp"
#include "spindesign/sequences.hpp"
#include "spindesign/spin_system.hpp"

namespace spindesign {

struct TrajectoryPoint {
  double t = 0.0;
  Eigen::VectorXd populations;  // diagonal of the full state
  double eta = 0.0;
};

struct ProtocolResult {
  std::string method;
  std::vector<std::pair<std::string, double>> parameters;
  HermitianOperator final_state;
  TransferReport report;  // eta measured against the protocol's declared target
  std::vector<TrajectoryPoint> trajectory;
  // named intermediate states, for inspection and tests
  std::vector<std::pair<std::string, HermitianOperator>> stages;
  int experiments_used = 0;

  const HermitianOperator& stage(const std::string& name) const;
};

/// Time averaging: the three permutation experiments whose average is the
/// optimal pseudopure transfer.
ProtocolResult ta_method(const SpinSystem& system);

/// Spatial averaging pulse sequence (hard pulses, coupling delays, two
/// gradient pulses).
ProtocolResult sa_method(const SpinSystem& system);

/// Line-selective unitary followed by one gradient. Empty angles ask for the
/// diagonal-matching equation to be solved by derivative-free minimization;
/// throws SolverFailureError when the residual stays above 1e-6.
ProtocolResult ls_method(const SpinSystem& system,
                         const std::vector<double>& angles_deg = {});

/// Controlled-transfer gates: controlled rotation (control spin 1), gradient,
/// controlled rotation (control spin 2), gradient, repeated. Rotation axes sit
/// in the xy plane; the choice does not matter, default x.
ProtocolResult ctg_method(const SpinSystem& system, double theta1_deg,
                          double theta2_deg, int repeats,
                          double axis_phi_deg = 0.0);

/// Periodic control [V - tau]_m: cyclic level permutation interleaved with
/// free relaxation. Reports the trajectory eta per cycle and the map's fixed
/// point (parameter "eta_fixed_point"). cross_rate > 0 adds the dipolar
/// double-quantum cross-relaxation pathway.
ProtocolResult pc_method(const SpinSystem& system, double tau, int loops,
                         double cross_rate = 0.0);

/// Line-selective saturation: weak resonant drives on the two transitions
/// sharing the top level, run under relaxation for `duration`.
ProtocolResult lss_method(const SpinSystem& system, double amplitude,
                          double duration, double cross_rate = 0.0);

/// Conventional labelled-PPS preparation on the three-spin system: gradient
/// reduction to the label spin, coherence-order encode, maximal-order phase
/// cycling, decode. Stages "z2", "encoded", "cycled" are recorded.
ProtocolResult lpps_conventional(const SpinSystem& system);

/// Two-experiment labelled-PPS preparation: average of the identity and the
/// level-reversal permutation, exact for every n >= 2.
ProtocolResult lpps_optimal(int n);

struct SpectralLine {
  double frequency_hz = 0.0;
  complexd amplitude;
};

/// Stick-spectrum emulation: 90-degree readout pulse on the observed spin,
/// one line per single-quantum transition at the J-coupling offsets.
std::vector<SpectralLine> readout_spectrum(const HermitianOperator& rho,
                                           const SpinSystem& system, int observe);

// decoded labelled-PPS form for the three-spin pipeline: |0><0| (x) X (x) |0><0|
HermitianOperator lpps_decoded_target(int n);

}  // namespace spindesign
