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

#include "spindesign/permutodesign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "spindesign/channels.hpp"
#include "spindesign/errors.hpp"

namespace spindesign {

namespace {

constexpr double kFaceTol = 1e-9;

// center a target so the ray formulation sees a traceless direction
Eigen::VectorXd centered(const Eigen::VectorXd& v) {
  return v.array() - v.mean();
}

// canonical permutation pi with vertex(i) = rho(pi(i)): fixes coordinates
// where possible, otherwise takes the smallest unused matching source index
std::vector<int> vertex_permutation(const Eigen::VectorXd& rho,
                                    const Eigen::VectorXd& vertex) {
  const int n = static_cast<int>(rho.size());
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i) {
    if (!used[i] && std::abs(rho(i) - vertex(i)) <= kFaceTol) {
      perm[i] = i;
      used[i] = true;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (perm[i] >= 0) continue;
    for (int j = 0; j < n; ++j) {
      if (!used[j] && std::abs(rho(j) - vertex(i)) <= kFaceTol) {
        perm[i] = j;
        used[j] = true;
        break;
      }
    }
    if (perm[i] < 0) throw std::logic_error("vertex is not a permutation of rho");
  }
  return perm;
}

std::vector<Eigen::VectorXd> distinct_permutations(const Eigen::VectorXd& values) {
  std::vector<double> v(values.data(), values.data() + values.size());
  std::sort(v.begin(), v.end());
  std::vector<Eigen::VectorXd> out;
  do {
    out.push_back(Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()));
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

// Lawson-Hanson nonnegative least squares: min ||A x - b||, x >= 0
Eigen::VectorXd nnls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                     int max_iter = 0) {
  const int n = static_cast<int>(a.cols());
  if (max_iter <= 0) max_iter = 10 * n + 100;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(n, false);
  Eigen::VectorXd w = a.transpose() * (b - a * x);
  const double tol = 1e-12 * std::max(1.0, b.norm());
  for (int iter = 0; iter < max_iter; ++iter) {
    int best = -1;
    double best_w = tol;
    for (int j = 0; j < n; ++j) {
      if (!passive[j] && w(j) > best_w) {
        best_w = w(j);
        best = j;
      }
    }
    if (best < 0) break;
    passive[best] = true;
    while (true) {
      std::vector<int> p;
      for (int j = 0; j < n; ++j) {
        if (passive[j]) p.push_back(j);
      }
      Eigen::MatrixXd ap(a.rows(), p.size());
      for (std::size_t k = 0; k < p.size(); ++k) ap.col(k) = a.col(p[k]);
      const Eigen::VectorXd z = ap.colPivHouseholderQr().solve(b);
      bool all_positive = true;
      double alpha = 1.0;
      for (std::size_t k = 0; k < p.size(); ++k) {
        if (z(k) <= tol) {
          all_positive = false;
          const double step = x(p[k]) / (x(p[k]) - z(k));
          alpha = std::min(alpha, step);
        }
      }
      if (all_positive) {
        x.setZero();
        for (std::size_t k = 0; k < p.size(); ++k) x(p[k]) = z(k);
        break;
      }
      for (std::size_t k = 0; k < p.size(); ++k) {
        x(p[k]) += alpha * (z(k) - x(p[k]));
      }
      for (int j = 0; j < n; ++j) {
        if (passive[j] && x(j) <= tol) {
          passive[j] = false;
          x(j) = 0.0;
        }
      }
    }
    w = a.transpose() * (b - a * x);
  }
  return x;
}

// Hungarian assignment (shortest augmenting paths with potentials),
// minimizing total cost over perfect matchings
std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, std::numeric_limits<double>::infinity());
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      int j1 = 0;
      double delta = std::numeric_limits<double>::infinity();
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= n; ++j) {
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  }
  return row_to_col;
}

// chain of T-transforms carrying a onto b (b majorized by a, both given in
// matching descending order); returns the doubly stochastic product
Eigen::MatrixXd t_transform_chain(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const int n = static_cast<int>(a.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd c = a;
  const double tol = 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff());
  for (int step = 0; step < n; ++step) {
    int j = -1;
    for (int i = 0; i < n; ++i) {
      if (std::abs(c(i) - b(i)) > tol) {
        j = i;
        break;
      }
    }
    if (j < 0) return m;
    int k = -1;
    for (int i = j + 1; i < n; ++i) {
      if (c(i) < b(i) - tol) {
        k = i;
        break;
      }
    }
    if (k < 0 || c(j) <= b(j)) {
      throw std::logic_error("t-transform chain: majorization invariant violated");
    }
    const double delta = std::min(c(j) - b(j), b(k) - c(k));
    const double theta = delta / (c(j) - c(k));
    Eigen::MatrixXd t = Eigen::MatrixXd::Identity(n, n);
    t(j, j) = t(k, k) = 1.0 - theta;
    t(j, k) = t(k, j) = theta;
    c = t * c;
    m = t * m;
  }
  return m;
}

struct RayTarget {
  double eta = 0.0;
  std::vector<int> tight;
  Eigen::VectorXd point;  // eta * centered sigma + mean(rho)
};

RayTarget ray_target(const Eigen::VectorXd& rho_diag, const Eigen::VectorXd& sigma_diag) {
  const Eigen::VectorXd sigma_c = centered(sigma_diag);
  if (sigma_c.cwiseAbs().maxCoeff() <= 0.0) {
    throw std::invalid_argument("target sigma is zero; design undefined");
  }
  const RayHit hit = exact_transfer_bound_detail(rho_diag, sigma_c);
  RayTarget t;
  t.eta = hit.eta_max;
  t.tight = hit.tight_partial_sums;
  t.point = hit.eta_max * sigma_c;
  t.point.array() += rho_diag.mean();
  return t;
}

}  // namespace

Permutohedron build_permutohedron(const SpectrumVector& lambda) {
  const int n = lambda.size();
  if (n > kVertexEnumerationLimit) {
    throw std::invalid_argument(
        "permutohedron vertex enumeration is limited to N <= 8; "
        "use birkhoff_design for larger systems");
  }
  Permutohedron p;
  p.generator = lambda;
  p.vertices = distinct_permutations(lambda.descending);
  return p;
}

RayHit ray_intersection(const SpectrumVector& lambda_rho,
                        const Eigen::VectorXd& sigma_diag) {
  return exact_transfer_bound_detail(lambda_rho.descending, sigma_diag);
}

ExperimentDesign minimal_design(const Eigen::VectorXd& rho_diag,
                                const Eigen::VectorXd& sigma_diag) {
  const int n = static_cast<int>(rho_diag.size());
  if (n != sigma_diag.size()) {
    throw std::invalid_argument("minimal_design: dimension mismatch");
  }
  if (n > kVertexEnumerationLimit) {
    throw std::invalid_argument(
        "minimal_design is limited to N <= 8; use birkhoff_design");
  }
  const RayTarget target = ray_target(rho_diag, sigma_diag);
  const double scale = std::max(1.0, rho_diag.cwiseAbs().maxCoeff());

  // descending partial sums of the generator
  Eigen::VectorXd desc = rho_diag;
  std::sort(desc.data(), desc.data() + n, std::greater<double>());
  Eigen::VectorXd top_sum(n + 1);
  top_sum(0) = 0.0;
  for (int k = 0; k < n; ++k) top_sum(k + 1) = top_sum(k) + desc(k);

  // constraints active at the target point: subsets A with
  // sum_A t = sum of the |A| largest generator values
  std::vector<unsigned> active;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    double sum = 0.0;
    int bits = 0;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        sum += target.point(i);
        ++bits;
      }
    }
    if (std::abs(sum - top_sum(bits)) <= kFaceTol * scale) active.push_back(mask);
  }

  // vertices on the minimal face containing the target
  std::vector<Eigen::VectorXd> face;
  for (const Eigen::VectorXd& v : distinct_permutations(rho_diag)) {
    bool on_face = true;
    for (const unsigned mask : active) {
      double sum = 0.0;
      int bits = 0;
      for (int i = 0; i < n; ++i) {
        if (mask & (1u << i)) {
          sum += v(i);
          ++bits;
        }
      }
      if (std::abs(sum - top_sum(bits)) > kFaceTol * scale) {
        on_face = false;
        break;
      }
    }
    if (on_face) face.push_back(v);
  }
  if (face.empty()) throw std::logic_error("minimal_design: empty face");

  // minimal experiment count from the affine rank of the face around the target
  Eigen::MatrixXd diffs(n, face.size());
  for (std::size_t k = 0; k < face.size(); ++k) diffs.col(k) = face[k] - target.point;
  int rank = 0;
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs);
    const double thresh = kFaceTol * scale * std::max<std::size_t>(face.size(), n);
    for (int i = 0; i < svd.singularValues().size(); ++i) {
      if (svd.singularValues()(i) > thresh) ++rank;
    }
  }
  const int k_min = rank + 1;

  // preference order: fewest transpositions, then lexicographic permutation
  std::vector<std::vector<int>> perms(face.size());
  for (std::size_t k = 0; k < face.size(); ++k) {
    perms[k] = vertex_permutation(rho_diag, face[k]);
  }
  std::vector<int> order(face.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const int ta = transposition_count(perms[a]);
    const int tb = transposition_count(perms[b]);
    if (ta != tb) return ta < tb;
    return perms[a] < perms[b];
  });

  // stacked system [vertices; ones] mu = [target; 1]
  auto solve_subset = [&](const std::vector<int>& subset, Eigen::VectorXd* mu) {
    Eigen::MatrixXd a(n + 1, subset.size());
    for (std::size_t c = 0; c < subset.size(); ++c) {
      a.col(c).head(n) = face[order[subset[c]]];
      a(n, c) = 1.0;
    }
    Eigen::VectorXd b(n + 1);
    b.head(n) = target.point;
    b(n) = 1.0;
    Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
    if ((a * x - b).cwiseAbs().maxCoeff() > kFaceTol * scale) return false;
    for (int i = 0; i < x.size(); ++i) {
      if (x(i) < -1e-10) return false;
      x(i) = std::max(x(i), 0.0);
    }
    x /= x.sum();
    *mu = x;
    return true;
  };

  // search K-subsets in preference order; Caratheodory guarantees a feasible
  // one exists, the cap only bounds pathological tie structures
  std::vector<int> chosen;
  Eigen::VectorXd mu;
  const int m = static_cast<int>(face.size());
  long budget = 200000;
  std::vector<int> idx(k_min);
  std::function<bool(int, int)> search = [&](int pos, int start) {
    if (budget-- <= 0) return false;
    if (pos == k_min) {
      if (solve_subset(idx, &mu)) {
        chosen = idx;
        return true;
      }
      return false;
    }
    for (int i = start; i < m - (k_min - pos - 1); ++i) {
      idx[pos] = i;
      if (search(pos + 1, i + 1)) return true;
      if (budget <= 0) return false;
    }
    return false;
  };
  search(0, 0);

  if (chosen.empty()) {
    // fallback: NNLS over the whole face, then Caratheodory pruning to k_min
    Eigen::MatrixXd a(n + 1, m);
    for (int c = 0; c < m; ++c) {
      a.col(c).head(n) = face[order[c]];
      a(n, c) = 1.0;
    }
    Eigen::VectorXd b(n + 1);
    b.head(n) = target.point;
    b(n) = 1.0;
    Eigen::VectorXd full = nnls(a, b);
    if ((a * full - b).cwiseAbs().maxCoeff() > 1e-8 * scale) {
      throw std::logic_error("minimal_design: NNLS failed to reach the target");
    }
    std::vector<int> support;
    for (int i = 0; i < m; ++i) {
      if (full(i) > 1e-12) support.push_back(i);
    }
    while (static_cast<int>(support.size()) > k_min) {
      Eigen::MatrixXd as(n + 1, support.size());
      for (std::size_t c = 0; c < support.size(); ++c) as.col(c) = a.col(support[c]);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(as, Eigen::ComputeFullV);
      Eigen::VectorXd alpha = svd.matrixV().col(static_cast<int>(support.size()) - 1);
      if (alpha.maxCoeff() < -alpha.minCoeff()) alpha = -alpha;
      double step = std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < support.size(); ++c) {
        if (alpha(c) > 1e-14) step = std::min(step, full(support[c]) / alpha(c));
      }
      if (!std::isfinite(step)) {
        throw std::logic_error("minimal_design: degenerate pruning direction");
      }
      for (std::size_t c = 0; c < support.size(); ++c) {
        full(support[c]) -= step * alpha(c);
      }
      support.clear();
      for (int i = 0; i < m; ++i) {
        if (full(i) > 1e-12) support.push_back(i);
      }
    }
    chosen = support;
    mu.resize(support.size());
    for (std::size_t c = 0; c < support.size(); ++c) mu(c) = full(support[c]);
    mu /= mu.sum();
  }

  std::vector<std::vector<int>> selected;
  for (const int i : chosen) selected.push_back(perms[order[i]]);
  return ExperimentDesign::from_permutations(selected, mu, target.eta);
}

ExperimentDesign birkhoff_design(const Eigen::VectorXd& rho_diag,
                                 const Eigen::VectorXd& sigma_diag) {
  const int n = static_cast<int>(rho_diag.size());
  if (n != sigma_diag.size()) {
    throw std::invalid_argument("birkhoff_design: dimension mismatch");
  }
  const RayTarget target = ray_target(rho_diag, sigma_diag);
  const double scale = std::max(1.0, rho_diag.cwiseAbs().maxCoeff());

  // sort both sides descending and build the doubly stochastic carrier there
  std::vector<int> rho_order(n), tgt_order(n);
  std::iota(rho_order.begin(), rho_order.end(), 0);
  std::iota(tgt_order.begin(), tgt_order.end(), 0);
  std::sort(rho_order.begin(), rho_order.end(),
            [&](int a, int b) { return rho_diag(a) > rho_diag(b); });
  std::sort(tgt_order.begin(), tgt_order.end(),
            [&](int a, int b) { return target.point(a) > target.point(b); });
  Eigen::VectorXd a_sorted(n), b_sorted(n);
  for (int i = 0; i < n; ++i) {
    a_sorted(i) = rho_diag(rho_order[i]);
    b_sorted(i) = target.point(tgt_order[i]);
  }
  const Eigen::MatrixXd m_sorted = t_transform_chain(a_sorted, b_sorted);

  // undo the sorting: D(original) = P_t^T M P_r with P x = sorted x
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      d(tgt_order[i], rho_order[j]) = m_sorted(i, j);
    }
  }
  if ((d * rho_diag - target.point).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw std::logic_error("birkhoff_design: carrier matrix misses the target");
  }

  // Birkhoff-von Neumann: peel off permutations by maximum-weight matching
  std::vector<std::vector<int>> perms;
  std::vector<double> weights;
  const double support_tol = 1e-12;
  const int max_terms = (n - 1) * (n - 1) + 1;
  for (int term = 0; term <= max_terms; ++term) {
    double mass = d.sum() / n;
    if (mass < 1e-10) break;
    if (term == max_terms) {
      throw std::logic_error("birkhoff decomposition exceeded the Birkhoff bound");
    }
    Eigen::MatrixXd cost(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        cost(i, j) = d(i, j) > support_tol ? -d(i, j) : 1e6;
      }
    }
    const std::vector<int> match = min_cost_assignment(cost);
    double theta = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) theta = std::min(theta, d(i, match[i]));
    if (!(theta > support_tol)) {
      throw std::logic_error("birkhoff decomposition found no positive matching");
    }
    // conjugation convention: (P rho P†)_i = rho_{perm(i)}
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = match[i];
    for (int i = 0; i < n; ++i) {
      d(i, match[i]) -= theta;
      if (d(i, match[i]) < support_tol) d(i, match[i]) = 0.0;
    }
    perms.push_back(perm);
    weights.push_back(theta);
  }
  Eigen::VectorXd w = Eigen::Map<Eigen::VectorXd>(weights.data(), weights.size());
  w /= w.sum();
  return ExperimentDesign::from_permutations(perms, w, target.eta);
}

TransferReport verify_design(const ExperimentDesign& design,
                             const HermitianOperator& rho,
                             const HermitianOperator& sigma) {
  const HermitianOperator out = apply_mixed_unitary(rho, design);
  TransferReport report;
  report.eta = transfer_efficiency(out, sigma);
  const HermitianOperator residual = out - report.eta * sigma;
  report.residual_norm = deviation_norm(residual);
  const UnitaryBounds ub = unitary_bounds(rho, sigma);
  report.eta_lower = ub.lower;
  report.eta_upper = ub.upper;
  report.exact_bound = exact_transfer_bound(rho, sigma);
  return report;
}

}  // namespace spindesign
