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

#include "spindesign/operators.hpp"

namespace spindesign {

// absolute tolerance for majorization partial sums (epsilon = 1 scale)
inline constexpr double kMajorizationTol = 1e-10;

/// Eigenvalues of a Hermitian operator in both sort orders.
struct SpectrumVector {
  Eigen::VectorXd ascending;
  Eigen::VectorXd descending;
  double trace = 0.0;

  int size() const { return static_cast<int>(ascending.size()); }
  static SpectrumVector from_values(const Eigen::VectorXd& values);
};

SpectrumVector spectrum(const HermitianOperator& op);

/// True iff b is majorized by a: every k-partial sum of b-descending is
/// bounded by that of a-descending and the full sums agree. Throws on
/// length or trace mismatch (incomparable inputs).
bool majorizes(const SpectrumVector& a, const SpectrumVector& b);

/// Transfer efficiency Tr(rho_out sigma) / Tr(sigma^2), computed on the
/// traceless parts. sigma must be traceless and nonzero.
double transfer_efficiency(const HermitianOperator& rho_out,
                           const HermitianOperator& sigma);

/// Closed interval of efficiencies reachable by unitary conjugation:
/// lower = asc(rho).desc(sigma) / |desc(sigma)|^2,
/// upper = desc(rho).desc(sigma) / |desc(sigma)|^2.
struct UnitaryBounds {
  double lower = 0.0;
  double upper = 0.0;
};

UnitaryBounds unitary_bounds(const HermitianOperator& rho,
                             const HermitianOperator& sigma);

/// Largest eta such that eta*spectrum(sigma) + (tr rho / N) is majorized by
/// spectrum(rho), i.e. the best exact transfer E(rho) = eta*sigma + tr-part
/// achievable by a mixed unitary channel. Throws UnreachableTargetError when
/// no descending partial sum of sigma is positive.
double exact_transfer_bound(const HermitianOperator& rho,
                            const HermitianOperator& sigma);
double exact_transfer_bound(const Eigen::VectorXd& rho_diag,
                            const Eigen::VectorXd& sigma_diag);

/// Same bound plus the indices k at which the majorization partial-sum
/// constraint is tight; those identify the permutohedron face hit by the
/// target ray.
struct RayHit {
  double eta_max = 0.0;
  std::vector<int> tight_partial_sums;  // 1-based k indices
};

RayHit exact_transfer_bound_detail(const Eigen::VectorXd& rho_diag,
                                   const Eigen::VectorXd& sigma_diag);

/// Summary of one realized transfer: achieved efficiency, residual left over
/// after removing eta*sigma, and the bounds it is measured against.
struct TransferReport {
  double eta = 0.0;
  double residual_norm = 0.0;
  double eta_upper = 0.0;
  double eta_lower = 0.0;
  double exact_bound = 0.0;
};

}  // namespace spindesign
