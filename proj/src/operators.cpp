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

#include "spindesign/operators.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spindesign {

namespace {

const complexd kI(0.0, 1.0);

Eigen::Matrix2cd single_pauli(char label) {
  Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
  switch (label) {
    case 'I':
      m(0, 0) = 1.0;
      m(1, 1) = 1.0;
      break;
    case 'X':
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 'Y':
      m(0, 1) = -kI;
      m(1, 0) = kI;
      break;
    case 'Z':
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw std::invalid_argument(std::string("pauli label must be one of I,X,Y,Z, got '") +
                                  label + "'");
  }
  return m;
}

}  // namespace

HermitianOperator HermitianOperator::from_matrix(const Eigen::MatrixXcd& full) {
  if (full.rows() != full.cols() || full.rows() == 0) {
    throw std::invalid_argument("operator must be square and nonempty");
  }
  const double scale = std::max(full.cwiseAbs().maxCoeff(), 1.0);
  const double herm_err = (full - full.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > kHermiticityTol * scale) {
    throw std::invalid_argument("operator is not Hermitian within tolerance");
  }
  HermitianOperator op;
  const int n = static_cast<int>(full.rows());
  Eigen::MatrixXcd sym = 0.5 * (full + full.adjoint());
  op.identity_coeff_ = sym.trace().real() / n;
  sym.diagonal().array() -= op.identity_coeff_;
  op.traceless_ = std::move(sym);
  return op;
}

HermitianOperator HermitianOperator::from_parts(const Eigen::MatrixXcd& traceless,
                                                double identity_coeff) {
  HermitianOperator op = from_matrix(traceless);
  op.identity_coeff_ += identity_coeff;
  return op;
}

HermitianOperator HermitianOperator::zero(int dim) {
  HermitianOperator op;
  op.traceless_ = Eigen::MatrixXcd::Zero(dim, dim);
  op.identity_coeff_ = 0.0;
  return op;
}

HermitianOperator HermitianOperator::identity(int dim, double coeff) {
  HermitianOperator op = zero(dim);
  op.identity_coeff_ = coeff;
  return op;
}

Eigen::MatrixXcd HermitianOperator::full() const {
  Eigen::MatrixXcd m = traceless_;
  m.diagonal().array() += identity_coeff_;
  return m;
}

double HermitianOperator::scale() const {
  return std::max(traceless_.cwiseAbs().maxCoeff(), std::abs(identity_coeff_));
}

HermitianOperator& HermitianOperator::operator+=(const HermitianOperator& other) {
  if (dim() != other.dim()) throw std::invalid_argument("operator dimension mismatch");
  traceless_ += other.traceless_;
  identity_coeff_ += other.identity_coeff_;
  return *this;
}

HermitianOperator& HermitianOperator::operator-=(const HermitianOperator& other) {
  if (dim() != other.dim()) throw std::invalid_argument("operator dimension mismatch");
  traceless_ -= other.traceless_;
  identity_coeff_ -= other.identity_coeff_;
  return *this;
}

HermitianOperator& HermitianOperator::operator*=(double c) {
  traceless_ *= c;
  identity_coeff_ *= c;
  return *this;
}

double overlap(const HermitianOperator& a, const HermitianOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("operator dimension mismatch");
  return (a.traceless().adjoint() * b.traceless()).trace().real();
}

double deviation_norm(const HermitianOperator& a) { return a.traceless().norm(); }

Eigen::MatrixXcd pauli_matrix(std::string_view labels) {
  if (labels.empty()) throw std::invalid_argument("pauli string must name at least one spin");
  // spin 1 is the most significant qubit, so it is the leftmost kron factor
  Eigen::MatrixXcd acc = single_pauli(labels[0]);
  for (std::size_t k = 1; k < labels.size(); ++k) {
    acc = Eigen::kroneckerProduct(acc, single_pauli(labels[k])).eval();
  }
  return acc;
}

HermitianOperator pauli_string(const SpinSystem& system, std::string_view labels) {
  if (static_cast<int>(labels.size()) != system.n) {
    throw std::invalid_argument("pauli string length must equal the spin count");
  }
  return HermitianOperator::from_matrix(pauli_matrix(labels));
}

HermitianOperator thermal_deviation(const SpinSystem& system) {
  system.validate();
  const int dims = system.dim();
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(dims);
  for (int spin = 0; spin < system.n; ++spin) {
    const double c = system.polarization(spin) * system.gamma(spin);
    for (int i = 0; i < dims; ++i) {
      const int bit = (i >> (system.n - 1 - spin)) & 1;
      diag(i) += c * (bit == 0 ? 1.0 : -1.0);
    }
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dims, dims);
  m.diagonal() = diag.cast<complexd>();
  return HermitianOperator::from_matrix(m);
}

HermitianOperator equilibrium_state(const SpinSystem& system) {
  HermitianOperator rho = thermal_deviation(system);
  return HermitianOperator::from_parts(rho.traceless(), 1.0 / system.dim());
}

HermitianOperator pps_target(int n) {
  if (n < 1) throw std::invalid_argument("pps_target: n must be >= 1");
  const int dims = 1 << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dims, dims);
  m.diagonal().array() = -1.0 / dims;
  m(0, 0) += 1.0;
  return HermitianOperator::from_matrix(m);
}

HermitianOperator lpps_target(int n) {
  if (n < 2) throw std::invalid_argument("lpps_target: n must be >= 2");
  const int dims = 1 << n;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dims, dims);
  // Z on the label spin tensored with the ground projector of the rest:
  // only basis states with all trailing bits zero survive
  m(0, 0) = 1.0;
  m(dims / 2, dims / 2) = -1.0;
  return HermitianOperator::from_matrix(m);
}

double coherence_order(int i, int j, int n, const Eigen::VectorXd& weights) {
  double nu = 0.0;
  for (int spin = 0; spin < n; ++spin) {
    const int shift = n - 1 - spin;
    nu += weights(spin) * (((j >> shift) & 1) - ((i >> shift) & 1));
  }
  return nu;
}

std::vector<double> CoherenceDecomposition::orders() const {
  std::vector<double> out;
  out.reserve(components.size());
  for (const auto& [nu, m] : components) out.push_back(nu);
  return out;
}

Eigen::MatrixXcd CoherenceDecomposition::component(double nu, int dim, double tol) const {
  for (const auto& [order, m] : components) {
    if (std::abs(order - nu) <= tol) return m;
  }
  return Eigen::MatrixXcd::Zero(dim, dim);
}

Eigen::MatrixXcd CoherenceDecomposition::reconstruct(int dim) const {
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& [nu, m] : components) sum += m;
  return sum;
}

CoherenceDecomposition coherence_decompose(const HermitianOperator& op,
                                           const SpinSystem& system,
                                           const Eigen::VectorXd& weights) {
  if (op.dim() != system.dim()) {
    throw std::invalid_argument("coherence_decompose: operator does not match system");
  }
  if (weights.size() != system.n) {
    throw std::invalid_argument("coherence_decompose: one weight per spin required");
  }
  const int dims = op.dim();
  const Eigen::MatrixXcd full = op.full();
  const double drop = 1e-14 * std::max(1.0, full.cwiseAbs().maxCoeff());

  std::vector<std::pair<double, Eigen::MatrixXcd>> comps;
  constexpr double order_tol = 1e-9;
  for (int i = 0; i < dims; ++i) {
    for (int j = 0; j < dims; ++j) {
      if (std::abs(full(i, j)) <= drop) continue;
      const double nu = coherence_order(i, j, system.n, weights);
      auto it = std::find_if(comps.begin(), comps.end(), [&](const auto& c) {
        return std::abs(c.first - nu) <= order_tol;
      });
      if (it == comps.end()) {
        comps.emplace_back(nu, Eigen::MatrixXcd::Zero(dims, dims));
        it = std::prev(comps.end());
      }
      it->second(i, j) = full(i, j);
    }
  }
  std::sort(comps.begin(), comps.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  CoherenceDecomposition d;
  d.components = std::move(comps);
  return d;
}

CoherenceDecomposition coherence_decompose(const HermitianOperator& op,
                                           const SpinSystem& system) {
  return coherence_decompose(op, system, Eigen::VectorXd::Ones(system.n));
}

}  // namespace spindesign
