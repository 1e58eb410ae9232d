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

#include "spindesign/channels.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spindesign {

HermitianOperator apply_unitary(const HermitianOperator& rho,
                                const Eigen::MatrixXcd& u) {
  const int n = rho.dim();
  if (u.rows() != n || u.cols() != n) {
    throw std::invalid_argument("apply_unitary: dimension mismatch");
  }
  const double err =
      (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (err > kUnitarityTol) {
    throw std::invalid_argument("apply_unitary: matrix is not unitary within tolerance");
  }
  return HermitianOperator::from_parts(u * rho.traceless() * u.adjoint(),
                                       rho.identity_coeff());
}

HermitianOperator apply_mixed_unitary(const HermitianOperator& rho,
                                      const ExperimentDesign& design) {
  design.validate();
  if (design.dim() != rho.dim()) {
    throw std::invalid_argument("apply_mixed_unitary: dimension mismatch");
  }
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
  for (const auto& e : design.entries) {
    acc.noalias() += e.weight * (e.unitary * rho.traceless() * e.unitary.adjoint());
  }
  return HermitianOperator::from_parts(acc, rho.identity_coeff());
}

HermitianOperator gradient_channel(const HermitianOperator& rho,
                                   const SpinSystem& system,
                                   const Eigen::VectorXd& weights) {
  if (rho.dim() != system.dim()) {
    throw std::invalid_argument("gradient_channel: dimension mismatch");
  }
  if (weights.size() != system.n) {
    throw std::invalid_argument("gradient_channel: one weight per spin required");
  }
  Eigen::MatrixXcd filtered = rho.traceless();
  const int dims = rho.dim();
  for (int i = 0; i < dims; ++i) {
    for (int j = 0; j < dims; ++j) {
      if (std::abs(coherence_order(i, j, system.n, weights)) > 1e-9) {
        filtered(i, j) = 0.0;
      }
    }
  }
  return HermitianOperator::from_parts(filtered, rho.identity_coeff());
}

HermitianOperator gradient_channel(const HermitianOperator& rho,
                                   const SpinSystem& system) {
  return gradient_channel(rho, system, system.gamma);
}

void PhaseCycleScheme::validate() const {
  if (phases.empty()) throw std::invalid_argument("phase cycle needs K >= 1");
  if (signs.size() != phases.size() || weights.size() != phases.size()) {
    throw std::invalid_argument("phase cycle: phases, signs, weights must have equal length");
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < phases.size(); ++k) {
    if (signs[k] != 1 && signs[k] != -1) {
      throw std::invalid_argument("phase cycle: signs must be +1 or -1");
    }
    if (!(weights[k] > 0.0)) {
      throw std::invalid_argument("phase cycle: weights must be positive");
    }
    sum += weights[k];
  }
  if (std::abs(sum - 1.0) > 1e-12 * phases.size()) {
    throw std::invalid_argument("phase cycle: weights must sum to one");
  }
}

double PhaseCycleScheme::trace_factor() const {
  double f = 0.0;
  for (std::size_t k = 0; k < phases.size(); ++k) f += weights[k] * signs[k];
  return f;
}

complexd PhaseCycleScheme::order_factor(double nu) const {
  complexd f = 0.0;
  for (std::size_t k = 0; k < phases.size(); ++k) {
    f += weights[k] * static_cast<double>(signs[k]) *
         std::exp(complexd(0.0, -nu * phases[k]));
  }
  return f;
}

PhaseCycleScheme PhaseCycleScheme::uniform(int k) {
  if (k < 1) throw std::invalid_argument("phase cycle needs K >= 1");
  PhaseCycleScheme s;
  for (int j = 1; j <= k; ++j) {
    s.phases.push_back(2.0 * M_PI * j / k);
    s.signs.push_back(1);
    s.weights.push_back(1.0 / k);
  }
  return s;
}

PhaseCycleScheme PhaseCycleScheme::max_coherence_selection(int n) {
  if (n < 1) throw std::invalid_argument("max_coherence_selection: n must be >= 1");
  if (n % 2 == 1) return uniform(n);
  // even n: K = 2n phases, results added for even k and subtracted for odd k
  PhaseCycleScheme s;
  const int k_total = 2 * n;
  for (int j = 1; j <= k_total; ++j) {
    s.phases.push_back(2.0 * M_PI * j / k_total);
    s.signs.push_back(j % 2 == 0 ? 1 : -1);
    s.weights.push_back(1.0 / k_total);
  }
  return s;
}

Eigen::MatrixXcd collective_z_rotation(const SpinSystem& system, double theta,
                                       const Eigen::VectorXd& weights) {
  const int dims = system.dim();
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dims, dims);
  for (int i = 0; i < dims; ++i) {
    double m = 0.0;  // weighted magnetic quantum number of basis state i
    for (int spin = 0; spin < system.n; ++spin) {
      const int bit = (i >> (system.n - 1 - spin)) & 1;
      m += 0.5 * weights(spin) * (bit == 0 ? 1.0 : -1.0);
    }
    u(i, i) = std::exp(complexd(0.0, -theta * m));
  }
  return u;
}

Eigen::MatrixXcd collective_z_rotation(const SpinSystem& system, double theta) {
  return collective_z_rotation(system, theta, Eigen::VectorXd::Ones(system.n));
}

HermitianOperator phase_cycle_channel(const HermitianOperator& rho,
                                      const SpinSystem& system,
                                      const PhaseCycleScheme& scheme) {
  scheme.validate();
  if (rho.dim() != system.dim()) {
    throw std::invalid_argument("phase_cycle_channel: dimension mismatch");
  }
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
  for (int k = 0; k < scheme.size(); ++k) {
    const Eigen::MatrixXcd r = collective_z_rotation(system, scheme.phases[k]);
    acc += scheme.weights[k] * static_cast<double>(scheme.signs[k]) *
           (r * rho.traceless() * r.adjoint());
  }
  HermitianOperator out = HermitianOperator::from_matrix(acc);
  return HermitianOperator::from_parts(
      out.traceless(), out.identity_coeff() + rho.identity_coeff() * scheme.trace_factor());
}

}  // namespace spindesign
