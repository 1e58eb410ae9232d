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

#include "spindesign/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "spindesign/errors.hpp"

namespace spindesign {

namespace {

void require_traceless_nonzero(const HermitianOperator& sigma) {
  const double norm = deviation_norm(sigma);
  if (norm <= 0.0) {
    throw std::invalid_argument("target sigma is zero; efficiency undefined");
  }
  if (std::abs(sigma.identity_coeff()) > 1e-9 * std::max(norm, 1.0)) {
    throw std::invalid_argument("target sigma must be traceless");
  }
}

}  // namespace

SpectrumVector SpectrumVector::from_values(const Eigen::VectorXd& values) {
  SpectrumVector s;
  s.ascending = values;
  std::sort(s.ascending.data(), s.ascending.data() + s.ascending.size());
  s.descending = s.ascending.reverse();
  s.trace = values.sum();
  return s;
}

SpectrumVector spectrum(const HermitianOperator& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op.full(),
                                                         Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::invalid_argument("eigenvalue computation failed; operator invalid");
  }
  SpectrumVector s = SpectrumVector::from_values(solver.eigenvalues());
  s.trace = op.trace();
  return s;
}

bool majorizes(const SpectrumVector& a, const SpectrumVector& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("majorizes: spectra of different length are incomparable");
  }
  const double scale = std::max({1.0, a.descending.cwiseAbs().maxCoeff(),
                                 b.descending.cwiseAbs().maxCoeff()});
  if (std::abs(a.trace - b.trace) > 1e-9 * scale * a.size()) {
    throw std::invalid_argument("majorizes: trace mismatch, spectra incomparable");
  }
  double sum_a = 0.0;
  double sum_b = 0.0;
  for (int k = 0; k < a.size(); ++k) {
    sum_a += a.descending(k);
    sum_b += b.descending(k);
    if (sum_b > sum_a + kMajorizationTol) return false;
  }
  return true;
}

double transfer_efficiency(const HermitianOperator& rho_out,
                           const HermitianOperator& sigma) {
  require_traceless_nonzero(sigma);
  return overlap(rho_out, sigma) / overlap(sigma, sigma);
}

UnitaryBounds unitary_bounds(const HermitianOperator& rho,
                             const HermitianOperator& sigma) {
  require_traceless_nonzero(sigma);
  const HermitianOperator rho_dev = HermitianOperator::from_parts(rho.traceless(), 0.0);
  const SpectrumVector lr = spectrum(rho_dev);
  const SpectrumVector ls = spectrum(sigma);
  const double denom = ls.descending.squaredNorm();
  UnitaryBounds b;
  b.lower = lr.ascending.dot(ls.descending) / denom;
  b.upper = lr.descending.dot(ls.descending) / denom;
  return b;
}

RayHit exact_transfer_bound_detail(const Eigen::VectorXd& rho_diag,
                                   const Eigen::VectorXd& sigma_diag) {
  if (rho_diag.size() != sigma_diag.size()) {
    throw std::invalid_argument("exact_transfer_bound: dimension mismatch");
  }
  const int n = static_cast<int>(rho_diag.size());
  const SpectrumVector lr = SpectrumVector::from_values(rho_diag);
  const SpectrumVector ls = SpectrumVector::from_values(sigma_diag);
  const double mean_rho = rho_diag.sum() / n;

  RayHit hit;
  hit.eta_max = std::numeric_limits<double>::infinity();
  double sum_r = 0.0;
  double sum_s = 0.0;
  std::vector<std::pair<int, double>> ratios;
  for (int k = 1; k < n; ++k) {
    sum_r += lr.descending(k - 1);
    sum_s += ls.descending(k - 1);
    if (sum_s > kMajorizationTol) {
      const double eta = (sum_r - k * mean_rho) / sum_s;
      ratios.emplace_back(k, eta);
      hit.eta_max = std::min(hit.eta_max, eta);
    }
  }
  if (ratios.empty()) {
    throw UnreachableTargetError(
        "target is unreachable: no positive partial sum in the target spectrum");
  }
  for (const auto& [k, eta] : ratios) {
    if (eta <= hit.eta_max + kMajorizationTol) hit.tight_partial_sums.push_back(k);
  }
  return hit;
}

double exact_transfer_bound(const Eigen::VectorXd& rho_diag,
                            const Eigen::VectorXd& sigma_diag) {
  return exact_transfer_bound_detail(rho_diag, sigma_diag).eta_max;
}

double exact_transfer_bound(const HermitianOperator& rho,
                            const HermitianOperator& sigma) {
  require_traceless_nonzero(sigma);
  const HermitianOperator rho_dev = HermitianOperator::from_parts(rho.traceless(), 0.0);
  return exact_transfer_bound(spectrum(rho_dev).descending, spectrum(sigma).descending);
}

}  // namespace spindesign
