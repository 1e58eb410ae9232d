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

#include "spindesign/bounds.hpp"
#include "spindesign/design.hpp"
#include "spindesign/operators.hpp"

namespace spindesign {

// vertex enumeration is materialized only up to this dimension (8! vertices);
// larger systems go through birkhoff_design
inline constexpr int kVertexEnumerationLimit = 8;

/// Convex hull of all coordinate permutations of a spectrum. Degenerate
/// eigenvalues collapse vertices, so `vertices` holds distinct points only.
struct Permutohedron {
  SpectrumVector generator;
  std::vector<Eigen::VectorXd> vertices;
};

/// Enumerates the distinct permutations of the generator. Throws a capacity
/// std::invalid_argument for N > kVertexEnumerationLimit.
Permutohedron build_permutohedron(const SpectrumVector& lambda);

/// Intersection of the ray {eta * sigma + center : eta >= 0} with the
/// permutohedron of lambda_rho: the maximal exactly-reachable efficiency and
/// the tight majorization constraints identifying the face it lies on.
RayHit ray_intersection(const SpectrumVector& lambda_rho,
                        const Eigen::VectorXd& sigma_diag);

/// Minimal mixed-unitary design for the diagonal transfer problem: returns
/// permutations P_k and weights mu_k with sum_k mu_k P_k rho P_k† =
/// eta_max * sigma + (tr rho / N) I, using as few experiments as the face
/// geometry allows (rank of the affine system). Among minimal designs,
/// permutations with fewer transpositions are preferred, ties broken
/// lexicographically. N <= kVertexEnumerationLimit.
ExperimentDesign minimal_design(const Eigen::VectorXd& rho_diag,
                                const Eigen::VectorXd& sigma_diag);

/// Fallback for large N: builds a doubly stochastic matrix carrying rho to
/// the optimal target and splits it into at most (N-1)^2 + 1 permutations by
/// iterative maximum-weight matching. Exact but not guaranteed minimal.
ExperimentDesign birkhoff_design(const Eigen::VectorXd& rho_diag,
                                 const Eigen::VectorXd& sigma_diag);

/// Applies the design to rho and measures the outcome against sigma.
TransferReport verify_design(const ExperimentDesign& design,
                             const HermitianOperator& rho,
                             const HermitianOperator& sigma);

}  // namespace spindesign
