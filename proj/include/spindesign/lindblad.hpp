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
#include <functional>
#include <vector>

#include "spindesign/operators.hpp"
#include "spindesign/spin_system.hpp"

namespace spindesign {

/// One Lindblad term. With bias == 0 the generator contribution is the
/// plain rate * (2 L rho L† - L†L rho - rho L†L).
///
/// With bias != 0 the entry stands for the detailed-balance pair
/// {L at rate*(1+bias), L† at rate*(1-bias)} in its high-temperature form:
/// the symmetric part rate*(D[L] + D[L†]) acts on rho as printed, while the
/// asymmetric part acts on the identity component only, i.e. it contributes
/// the constant pump rate*bias*(4/N)*(L L† - L†L)*tr(rho). This keeps the
/// relaxation fixed point exactly on the thermal deviation at any symbolic
/// polarization scale.
struct Dissipator {
  Eigen::MatrixXcd op;
  double rate = 0.0;
  double bias = 0.0;
};

struct ControlTerm {
  HermitianOperator hamiltonian;
  std::function<double(double)> amplitude;  // schedule over time, seconds
};

/// Drift Hamiltonian + control schedule + dissipators (angular frequency
/// units, rates in 1/s).
struct LindbladModel {
  HermitianOperator h_drift;
  std::vector<ControlTerm> controls;
  std::vector<Dissipator> dissipators;

  int dim() const { return h_drift.dim(); }
  void validate() const;
};

/// Per-spin relaxation of the standard T1/T2 model: a biased flip pair
/// (sigma- at rate (1+b)/4T1, sigma+ at rate (1-b)/4T1, b chosen so the
/// fixed point is the thermal deviation) plus a pure-dephasing Z dissipator
/// sized so off-diagonal elements decay exactly as exp(-t/T2). Infinite
/// T1 and T2 produce an empty list.
std::vector<Dissipator> standard_relaxation(const SpinSystem& system);

/// Dipolar double-quantum cross-relaxation between two spins: the flip pair
/// |0a 0b><1a 1b| at the given rate, thermally biased by the sum of the two
/// spins' equilibrium polarizations. Feeds ground-state population growth in
/// the relaxation-assisted protocols.
Dissipator cross_relaxation(const SpinSystem& system, int spin_a, int spin_b,
                            double rate);

// lowering operator |0><1| on one spin, identity elsewhere
Eigen::MatrixXcd lowering_operator(const SpinSystem& system, int spin);

/// Linear map on vectorized operators (column stacking), N^2 x N^2.
struct Superoperator {
  int dim = 0;  // N
  Eigen::MatrixXcd matrix;

  HermitianOperator apply(const HermitianOperator& op) const;
  Eigen::MatrixXcd apply_raw(const Eigen::MatrixXcd& op) const;

  static Superoperator identity(int dim);
  static Superoperator conjugation(const Eigen::MatrixXcd& u);
  Superoperator exp_scaled(double t) const;  // exp(matrix * t)

  // composition: (a * b)(rho) = a(b(rho))
  friend Superoperator operator*(const Superoperator& a, const Superoperator& b);
};

/// Generator of Eq.-of-motion form d rho/dt = -i[H_S + H_C(t), rho] + R rho
/// with the dissipator part assembled exactly in the factor-2 convention,
/// control amplitudes sampled at time t.
Superoperator build_liouvillian(const LindbladModel& model, double t);

/// Piecewise-constant exponential integrator: `steps` slices, control
/// amplitudes sampled at slice midpoints. Trace and Hermiticity preserved
/// within 1e-10 (checked).
HermitianOperator propagate(const HermitianOperator& rho, const LindbladModel& model,
                            double duration, int steps);

/// E_tau ∘ E_V: V conjugation followed by free relaxation for tau under the
/// model's drift and dissipators with controls off.
Superoperator periodic_map(const Eigen::MatrixXcd& v, double tau,
                           const LindbladModel& model);

/// Unit-trace Hermitian fixed point from the eigenvalue-1 eigenvector of the
/// superoperator matrix. Throws NonUniqueFixedPointError when the unit
/// eigenspace is degenerate.
HermitianOperator fixed_point(const Superoperator& map);

}  // namespace spindesign
