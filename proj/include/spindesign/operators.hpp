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
#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "spindesign/spin_system.hpp"

namespace spindesign {

using complexd = std::complex<double>;

// relative tolerance for the Hermiticity check at construction
inline constexpr double kHermiticityTol = 1e-12;

/// Hermitian N x N operator carried as a (traceless part, identity
/// coefficient) pair: op = traceless + identity_coeff * I. Every state,
/// target and Hamiltonian in the library is one of these; keeping the
/// identity split explicit makes trace bookkeeping exact.
class HermitianOperator {
 public:
  HermitianOperator() = default;

  // splits a full matrix; throws std::invalid_argument if not Hermitian
  // within kHermiticityTol relative to max|A|
  static HermitianOperator from_matrix(const Eigen::MatrixXcd& full);

  // traceless is symmetrized and its trace is folded into the coefficient
  static HermitianOperator from_parts(const Eigen::MatrixXcd& traceless,
                                      double identity_coeff);

  static HermitianOperator zero(int dim);
  static HermitianOperator identity(int dim, double coeff = 1.0);

  const Eigen::MatrixXcd& traceless() const { return traceless_; }
  double identity_coeff() const { return identity_coeff_; }
  Eigen::MatrixXcd full() const;
  int dim() const { return static_cast<int>(traceless_.rows()); }
  double trace() const { return identity_coeff_ * dim(); }

  // max-norm of the traceless part, used for relative tolerances
  double scale() const;

  HermitianOperator& operator+=(const HermitianOperator& other);
  HermitianOperator& operator-=(const HermitianOperator& other);
  HermitianOperator& operator*=(double c);
  friend HermitianOperator operator+(HermitianOperator a, const HermitianOperator& b) {
    return a += b;
  }
  friend HermitianOperator operator-(HermitianOperator a, const HermitianOperator& b) {
    return a -= b;
  }
  friend HermitianOperator operator*(double c, HermitianOperator a) { return a *= c; }

 private:
  Eigen::MatrixXcd traceless_;
  double identity_coeff_ = 0.0;
};

// Tr(a * b) on the traceless parts (real by Hermiticity)
double overlap(const HermitianOperator& a, const HermitianOperator& b);

// Frobenius norm of the traceless part
double deviation_norm(const HermitianOperator& a);

/// Kronecker product of the named single-spin Paulis, in spin-index order.
/// labels is one character per spin from {I, X, Y, Z}, spin 1 first.
HermitianOperator pauli_string(const SpinSystem& system, std::string_view labels);

// 2^n x 2^n matrix form, independent of any SpinSystem
Eigen::MatrixXcd pauli_matrix(std::string_view labels);

/// Traceless thermal equilibrium deviation sum_i eps_i * gamma_i * Z_i.
HermitianOperator thermal_deviation(const SpinSystem& system);

// thermal deviation plus the unit-trace identity part I/2^n
HermitianOperator equilibrium_state(const SpinSystem& system);

/// Traceless pseudopure target -I/2^n + |0..0><0..0| (the operator whose
/// coefficient is the effective purity).
HermitianOperator pps_target(int n);

/// Labelled pseudopure target Z (x) |0><0|^(n-1); requires n >= 2.
HermitianOperator lpps_target(int n);

/// Decomposition of an operator by (weighted) coherence order. The order of
/// element |i><j| is sum_k w_k * (bit_k(j) - bit_k(i)), spin 1 = most
/// significant bit. Orders whose component vanishes are omitted.
struct CoherenceDecomposition {
  std::vector<std::pair<double, Eigen::MatrixXcd>> components;  // sorted by order

  std::vector<double> orders() const;
  // component at the given order (within tol), zero matrix if absent
  Eigen::MatrixXcd component(double nu, int dim, double tol = 1e-9) const;
  Eigen::MatrixXcd reconstruct(int dim) const;
};

double coherence_order(int i, int j, int n, const Eigen::VectorXd& weights);

CoherenceDecomposition coherence_decompose(const HermitianOperator& op,
                                           const SpinSystem& system,
                                           const Eigen::VectorXd& weights);
// all-ones weights: the standard total coherence order
CoherenceDecomposition coherence_decompose(const HermitianOperator& op,
                                           const SpinSystem& system);

}  // namespace spindesign
