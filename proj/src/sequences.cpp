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

#include "spindesign/sequences.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "spindesign/design.hpp"

namespace spindesign {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

Eigen::Matrix2cd axis_pauli(Axis axis) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  const complexd i(0.0, 1.0);
  switch (axis) {
    case Axis::X:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case Axis::MinusX:
      m(0, 1) = -1.0;
      m(1, 0) = -1.0;
      break;
    case Axis::Y:
      m(0, 1) = -i;
      m(1, 0) = i;
      break;
    case Axis::MinusY:
      m(0, 1) = i;
      m(1, 0) = -i;
      break;
  }
  return m;
}

int bit_of(int index, int spin, int n) { return (index >> (n - 1 - spin)) & 1; }

}  // namespace

HermitianOperator system_hamiltonian(const SpinSystem& system) {
  const int dims = system.dim();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dims, dims);
  for (int idx = 0; idx < dims; ++idx) {
    double e = 0.0;
    for (int a = 0; a < system.n; ++a) {
      for (int b = a + 1; b < system.n; ++b) {
        const double za = bit_of(idx, a, system.n) == 0 ? 1.0 : -1.0;
        const double zb = bit_of(idx, b, system.n) == 0 ? 1.0 : -1.0;
        e += 0.5 * M_PI * system.j_coupling(a, b) * za * zb;
      }
    }
    h(idx, idx) = e;
  }
  return HermitianOperator::from_matrix(h);
}

Eigen::MatrixXcd rotation_unitary(const SpinSystem& system,
                                  const std::vector<int>& spins, Axis axis,
                                  double angle_deg) {
  const double half = 0.5 * angle_deg * kDegToRad;
  const Eigen::Matrix2cd sigma = axis_pauli(axis);
  const Eigen::Matrix2cd rot = std::cos(half) * Eigen::Matrix2cd::Identity() -
                               complexd(0.0, 1.0) * std::sin(half) * sigma;
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(1, 1);
  for (int spin = 0; spin < system.n; ++spin) {
    const bool hit = std::find(spins.begin(), spins.end(), spin) != spins.end();
    const Eigen::Matrix2cd factor = hit ? rot : Eigen::Matrix2cd::Identity().eval();
    u = Eigen::kroneckerProduct(u, factor).eval();
  }
  return u;
}

Eigen::MatrixXcd coupling_delay_unitary(const SpinSystem& system, double duration) {
  if (duration < 0.0) throw std::invalid_argument("delay duration must be nonnegative");
  const HermitianOperator h = system_hamiltonian(system);
  const int dims = system.dim();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dims, dims);
  const Eigen::MatrixXcd hm = h.full();
  for (int i = 0; i < dims; ++i) {
    u(i, i) = std::exp(complexd(0.0, -hm(i, i).real() * duration));
  }
  return u;
}

Eigen::MatrixXcd controlled_rotation(const SpinSystem& system, int control,
                                     int target, double angle_deg,
                                     double axis_phi_deg) {
  if (control == target || control < 0 || target < 0 || control >= system.n ||
      target >= system.n) {
    throw std::invalid_argument("controlled_rotation: bad spin indices");
  }
  const double half = 0.5 * angle_deg * kDegToRad;
  const double phi = axis_phi_deg * kDegToRad;
  // sigma_phi = cos(phi) X + sin(phi) Y
  Eigen::Matrix2cd sigma = Eigen::Matrix2cd::Zero();
  sigma(0, 1) = std::exp(complexd(0.0, -phi));
  sigma(1, 0) = std::exp(complexd(0.0, phi));
  const Eigen::Matrix2cd rot = std::cos(half) * Eigen::Matrix2cd::Identity() -
                               complexd(0.0, 1.0) * std::sin(half) * sigma;

  const int dims = system.dim();
  const int t_mask = 1 << (system.n - 1 - target);
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dims, dims);
  for (int i = 0; i < dims; ++i) {
    if (bit_of(i, control, system.n) != 1) continue;
    if (bit_of(i, target, system.n) != 0) continue;
    const int j = i | t_mask;
    u(i, i) = rot(0, 0);
    u(i, j) = rot(0, 1);
    u(j, i) = rot(1, 0);
    u(j, j) = rot(1, 1);
  }
  return u;
}

Eigen::MatrixXcd zz_quarter_gate(const SpinSystem& system, int spin_a, int spin_b,
                                 int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("zz gate sign must be +-1");
  const int dims = system.dim();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dims, dims);
  for (int i = 0; i < dims; ++i) {
    const double za = bit_of(i, spin_a, system.n) == 0 ? 1.0 : -1.0;
    const double zb = bit_of(i, spin_b, system.n) == 0 ? 1.0 : -1.0;
    u(i, i) = std::exp(complexd(0.0, sign * 0.25 * M_PI * za * zb));
  }
  return u;
}

Eigen::MatrixXcd cyclic_permutation_unitary(int dim) {
  if (dim < 2) throw std::invalid_argument("cyclic permutation needs dim >= 2");
  std::vector<int> perm(dim);
  perm[0] = 0;
  perm[1] = dim - 1;
  for (int i = 2; i < dim; ++i) perm[i] = i - 1;
  return ExperimentDesign::permutation_unitary(perm);
}

Eigen::MatrixXcd level_reversal_unitary(int dim) {
  if (dim < 2) throw std::invalid_argument("level reversal needs dim >= 2");
  std::vector<int> perm(dim);
  perm[0] = 0;
  for (int i = 1; i < dim; ++i) perm[i] = dim - i;
  return ExperimentDesign::permutation_unitary(perm);
}

HermitianOperator run_sequence(const HermitianOperator& state,
                               const SpinSystem& system,
                               const std::vector<SequenceStep>& steps) {
  HermitianOperator rho = state;
  for (const SequenceStep& step : steps) {
    if (const auto* pulse = std::get_if<HardPulse>(&step)) {
      rho = apply_unitary(rho, rotation_unitary(system, pulse->spins, pulse->axis,
                                                pulse->angle_deg));
    } else if (const auto* delay = std::get_if<Delay>(&step)) {
      rho = apply_unitary(rho, coupling_delay_unitary(system, delay->duration));
    } else if (const auto* grad = std::get_if<GradientPulse>(&step)) {
      rho = grad->weights.size() == 0
                ? gradient_channel(rho, system)
                : gradient_channel(rho, system, grad->weights);
    } else if (const auto* cycle = std::get_if<PhaseCycleStep>(&step)) {
      rho = phase_cycle_channel(rho, system, cycle->scheme);
    } else if (const auto* gate = std::get_if<GateStep>(&step)) {
      rho = apply_unitary(rho, gate->unitary);
    }
  }
  return rho;
}

}  // namespace spindesign
