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

#include "spindesign/lindblad.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "spindesign/channels.hpp"
#include "spindesign/errors.hpp"

namespace spindesign {

namespace {

Eigen::Map<const Eigen::VectorXcd> vec(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, int n) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), n, n);
}

// superoperator of rho -> a rho b
Eigen::MatrixXcd sandwich(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return Eigen::kroneckerProduct(b.transpose(), a);
}

// 2 L rho L† - L†L rho - rho L†L, the paper's dissipator convention
Eigen::MatrixXcd dissipator_super(const Eigen::MatrixXcd& l) {
  const int n = static_cast<int>(l.rows());
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd ll = l.adjoint() * l;
  return 2.0 * sandwich(l, l.adjoint()) - sandwich(ll, id) - sandwich(id, ll);
}

HermitianOperator hermitize_checked(const Eigen::MatrixXcd& m, double tol) {
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
  const double err = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (err > tol * scale) {
    throw std::runtime_error("propagation lost Hermiticity beyond tolerance");
  }
  return HermitianOperator::from_matrix(0.5 * (m + m.adjoint()));
}

}  // namespace

void LindbladModel::validate() const {
  const int n = dim();
  if (n < 1) throw std::invalid_argument("lindblad model: empty drift Hamiltonian");
  for (const auto& c : controls) {
    if (c.hamiltonian.dim() != n) {
      throw std::invalid_argument("lindblad model: control dimension mismatch");
    }
    if (!c.amplitude) {
      throw std::invalid_argument("lindblad model: control without amplitude schedule");
    }
  }
  for (const auto& d : dissipators) {
    if (d.op.rows() != n || d.op.cols() != n) {
      throw std::invalid_argument("lindblad model: dissipator dimension mismatch");
    }
    if (d.rate < 0.0) {
      throw std::invalid_argument("lindblad model: dissipator rates must be nonnegative");
    }
  }
}

Eigen::MatrixXcd lowering_operator(const SpinSystem& system, int spin) {
  if (spin < 0 || spin >= system.n) {
    throw std::invalid_argument("lowering_operator: spin index out of range");
  }
  Eigen::Matrix2cd sm = Eigen::Matrix2cd::Zero();
  sm(0, 1) = 1.0;  // |0><1|
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Identity(1, 1);
  for (int k = 0; k < system.n; ++k) {
    const Eigen::Matrix2cd factor =
        (k == spin) ? sm : Eigen::Matrix2cd::Identity().eval();
    acc = Eigen::kroneckerProduct(acc, factor).eval();
  }
  return acc;
}

std::vector<Dissipator> standard_relaxation(const SpinSystem& system) {
  system.validate();
  const int n_levels = system.dim();
  std::vector<Dissipator> out;
  for (int spin = 0; spin < system.n; ++spin) {
    const double t1 = system.t1(spin);
    const double t2 = system.t2(spin);
    if (std::isfinite(t1)) {
      Dissipator flip;
      flip.op = lowering_operator(system, spin);
      flip.rate = 1.0 / (4.0 * t1);
      flip.bias = n_levels * system.polarization(spin) * system.gamma(spin);
      out.push_back(std::move(flip));
    }
    // pure dephasing on top of the flip-induced 1/(2T1) coherence decay;
    // rate halved relative to the standard-convention value because the
    // factor-2 dissipator form doubles its effect
    const double t1_part = std::isfinite(t1) ? 1.0 / (8.0 * t1) : 0.0;
    const double rate_z = (std::isfinite(t2) ? 1.0 / (4.0 * t2) : 0.0) - t1_part;
    if (rate_z < -1e-15) {
      throw std::invalid_argument("standard_relaxation: t2 > 2*t1 (negative dephasing)");
    }
    if (rate_z > 1e-15) {
      Dissipator deph;
      std::string labels(system.n, 'I');
      labels[spin] = 'Z';
      deph.op = pauli_matrix(labels);
      deph.rate = rate_z;
      deph.bias = 0.0;
      out.push_back(std::move(deph));
    }
  }
  return out;
}

Dissipator cross_relaxation(const SpinSystem& system, int spin_a, int spin_b,
                            double rate) {
  if (spin_a == spin_b) {
    throw std::invalid_argument("cross_relaxation: needs two distinct spins");
  }
  if (rate < 0.0) throw std::invalid_argument("cross_relaxation: rate must be >= 0");
  Dissipator d;
  d.op = lowering_operator(system, spin_a) * lowering_operator(system, spin_b);
  d.rate = rate;
  d.bias = system.dim() * (system.polarization(spin_a) * system.gamma(spin_a) +
                           system.polarization(spin_b) * system.gamma(spin_b));
  return d;
}

HermitianOperator Superoperator::apply(const HermitianOperator& op) const {
  return hermitize_checked(apply_raw(op.full()), 1e-10);
}

Eigen::MatrixXcd Superoperator::apply_raw(const Eigen::MatrixXcd& op) const {
  if (op.rows() != dim || op.cols() != dim) {
    throw std::invalid_argument("superoperator: dimension mismatch");
  }
  return unvec(matrix * vec(op), dim);
}

Superoperator Superoperator::identity(int dim) {
  Superoperator s;
  s.dim = dim;
  s.matrix = Eigen::MatrixXcd::Identity(dim * dim, dim * dim);
  return s;
}

Superoperator Superoperator::conjugation(const Eigen::MatrixXcd& u) {
  const int n = static_cast<int>(u.rows());
  const double err =
      (u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (err > kUnitarityTol) {
    throw std::invalid_argument("conjugation superoperator: matrix is not unitary");
  }
  Superoperator s;
  s.dim = n;
  s.matrix = sandwich(u, u.adjoint());
  return s;
}

Superoperator Superoperator::exp_scaled(double t) const {
  Superoperator s;
  s.dim = dim;
  s.matrix = (matrix * t).exp();
  return s;
}

Superoperator operator*(const Superoperator& a, const Superoperator& b) {
  if (a.dim != b.dim) throw std::invalid_argument("superoperator: dimension mismatch");
  Superoperator s;
  s.dim = a.dim;
  s.matrix = a.matrix * b.matrix;
  return s;
}

Superoperator build_liouvillian(const LindbladModel& model, double t) {
  model.validate();
  const int n = model.dim();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);

  Eigen::MatrixXcd h = model.h_drift.full();
  for (const auto& c : model.controls) h += c.amplitude(t) * c.hamiltonian.full();

  const complexd minus_i(0.0, -1.0);
  Eigen::MatrixXcd gen = minus_i * (sandwich(h, id) - sandwich(id, h));

  for (const auto& d : model.dissipators) {
    if (d.rate == 0.0) continue;
    if (d.bias == 0.0) {
      gen += d.rate * dissipator_super(d.op);
    } else {
      const Eigen::MatrixXcd l_dag = d.op.adjoint().eval();
      gen += d.rate * (dissipator_super(d.op) + dissipator_super(l_dag));
      // bias pump: acts on the identity component of the state only
      const Eigen::MatrixXcd pump_op =
          d.rate * d.bias * (4.0 / n) * (d.op * l_dag - l_dag * d.op);
      gen += vec(pump_op) * vec(id).transpose();
    }
  }
  Superoperator s;
  s.dim = n;
  s.matrix = std::move(gen);
  return s;
}

HermitianOperator propagate(const HermitianOperator& rho, const LindbladModel& model,
                            double duration, int steps) {
  if (duration < 0.0) throw std::invalid_argument("propagate: negative duration");
  if (rho.dim() != model.dim()) {
    throw std::invalid_argument("propagate: state does not match model dimension");
  }
  if (duration == 0.0) return rho;
  if (steps < 1) throw std::invalid_argument("propagate: steps must be >= 1");

  const double dt = duration / steps;
  Eigen::MatrixXcd state = rho.full();
  if (model.controls.empty()) {
    const Superoperator step = build_liouvillian(model, 0.0).exp_scaled(dt);
    for (int k = 0; k < steps; ++k) state = step.apply_raw(state);
  } else {
    for (int k = 0; k < steps; ++k) {
      const double t_mid = (k + 0.5) * dt;
      state = build_liouvillian(model, t_mid).exp_scaled(dt).apply_raw(state);
    }
  }
  HermitianOperator out = hermitize_checked(state, 1e-10);
  if (std::abs(out.trace() - rho.trace()) > 1e-10 * std::max(1.0, std::abs(rho.trace()))) {
    throw std::runtime_error("propagation lost the trace beyond tolerance");
  }
  return out;
}

Superoperator periodic_map(const Eigen::MatrixXcd& v, double tau,
                           const LindbladModel& model) {
  if (!(tau > 0.0)) throw std::invalid_argument("periodic_map: tau must be positive");
  LindbladModel free = model;
  free.controls.clear();
  const Superoperator relax = build_liouvillian(free, 0.0).exp_scaled(tau);
  return relax * Superoperator::conjugation(v);
}

HermitianOperator fixed_point(const Superoperator& map) {
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(map.matrix);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("fixed_point: eigendecomposition failed");
  }
  constexpr double unit_tol = 1e-8;
  int count = 0;
  int best = -1;
  double best_dist = std::numeric_limits<double>::infinity();
  for (int i = 0; i < solver.eigenvalues().size(); ++i) {
    const double dist = std::abs(solver.eigenvalues()(i) - complexd(1.0, 0.0));
    if (dist < unit_tol) ++count;
    if (dist < best_dist) {
      best_dist = dist;
      best = i;
    }
  }
  if (count == 0 || best_dist > unit_tol) {
    throw std::runtime_error("fixed_point: map has no eigenvalue-1 eigenvector");
  }
  if (count > 1) {
    throw NonUniqueFixedPointError(
        "fixed_point: unit eigenspace has multiplicity " + std::to_string(count), count);
  }

  Eigen::MatrixXcd m = unvec(solver.eigenvectors().col(best), map.dim);
  Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
  if (herm.norm() < 1e-8 * m.norm()) {
    herm = complexd(0.0, 0.5) * (m - m.adjoint());
  }
  const double tr = herm.trace().real();
  if (std::abs(tr) < 1e-12 * std::max(1.0, herm.norm())) {
    throw std::runtime_error("fixed_point: fixed point has zero trace");
  }
  herm /= tr;
  const HermitianOperator rho = HermitianOperator::from_matrix(herm);
  const double residual = (map.apply_raw(herm) - herm).norm();
  if (residual > 1e-9 * std::max(1.0, herm.norm())) {
    throw std::runtime_error("fixed_point: candidate is not fixed within 1e-9");
  }
  return rho;
}

}  // namespace spindesign
