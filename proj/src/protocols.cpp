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

#include "spindesign/protocols.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "spindesign/channels.hpp"
#include "spindesign/design.hpp"
#include "spindesign/errors.hpp"
#include "spindesign/permutodesign.hpp"

namespace spindesign {

namespace {

constexpr double kDegToRad = M_PI / 180.0;

TransferReport make_report(const HermitianOperator& rho_in,
                           const HermitianOperator& out,
                           const HermitianOperator& sigma) {
  TransferReport r;
  r.eta = transfer_efficiency(out, sigma);
  r.residual_norm = deviation_norm(out - r.eta * sigma);
  const UnitaryBounds b = unitary_bounds(rho_in, sigma);
  r.eta_lower = b.lower;
  r.eta_upper = b.upper;
  r.exact_bound = exact_transfer_bound(rho_in, sigma);
  return r;
}

Eigen::VectorXd populations(const HermitianOperator& rho) {
  return rho.full().diagonal().real();
}

// Nelder-Mead simplex minimization, used for the line-selective angle solve
double nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                   Eigen::VectorXd& x, double step, int max_iter) {
  const int n = static_cast<int>(x.size());
  std::vector<Eigen::VectorXd> pts(n + 1, x);
  std::vector<double> val(n + 1);
  for (int i = 1; i <= n; ++i) pts[i](i - 1) += step;
  for (int i = 0; i <= n; ++i) val[i] = f(pts[i]);

  for (int iter = 0; iter < max_iter; ++iter) {
    std::vector<int> ord(n + 1);
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(), [&](int a, int b) { return val[a] < val[b]; });
    std::vector<Eigen::VectorXd> p2(n + 1);
    std::vector<double> v2(n + 1);
    for (int i = 0; i <= n; ++i) {
      p2[i] = pts[ord[i]];
      v2[i] = val[ord[i]];
    }
    pts.swap(p2);
    val.swap(v2);
    if (val[n] - val[0] < 1e-16 * std::max(1.0, std::abs(val[0])) ||
        val[0] < 1e-26) {
      break;
    }

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) centroid += pts[i];
    centroid /= n;

    const Eigen::VectorXd refl = centroid + (centroid - pts[n]);
    const double f_refl = f(refl);
    if (f_refl < val[0]) {
      const Eigen::VectorXd expand = centroid + 2.0 * (centroid - pts[n]);
      const double f_exp = f(expand);
      if (f_exp < f_refl) {
        pts[n] = expand;
        val[n] = f_exp;
      } else {
        pts[n] = refl;
        val[n] = f_refl;
      }
    } else if (f_refl < val[n - 1]) {
      pts[n] = refl;
      val[n] = f_refl;
    } else {
      const Eigen::VectorXd contract = centroid + 0.5 * (pts[n] - centroid);
      const double f_con = f(contract);
      if (f_con < val[n]) {
        pts[n] = contract;
        val[n] = f_con;
      } else {
        for (int i = 1; i <= n; ++i) {
          pts[i] = pts[0] + 0.5 * (pts[i] - pts[0]);
          val[i] = f(pts[i]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i) {
    if (val[i] < val[best]) best = i;
  }
  x = pts[best];
  return val[best];
}

// transition generators for the line-selective unitary; for two spins these
// are the operators IX - ZX and XI - XZ acting on the |10>-|11| and
// |01>-|11> pairs, for larger systems a chain over adjacent excited levels
std::vector<Eigen::MatrixXcd> ls_transition_ops(const SpinSystem& system) {
  std::vector<Eigen::MatrixXcd> ops;
  if (system.n == 2) {
    ops.push_back(pauli_matrix("IX") - pauli_matrix("ZX"));
    ops.push_back(pauli_matrix("XI") - pauli_matrix("XZ"));
    return ops;
  }
  const int dims = system.dim();
  for (int level = 1; level + 1 < dims; ++level) {
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(dims, dims);
    t(level, level + 1) = 2.0;
    t(level + 1, level) = 2.0;
    ops.push_back(std::move(t));
  }
  return ops;
}

Eigen::MatrixXcd ls_unitary(const std::vector<Eigen::MatrixXcd>& ops,
                            const Eigen::VectorXd& angles_rad) {
  Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(ops[0].rows(), ops[0].cols());
  for (std::size_t k = 0; k < ops.size(); ++k) gen += angles_rad(k) * ops[k];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gen);
  const Eigen::VectorXd ev = es.eigenvalues();
  Eigen::VectorXcd phases(ev.size());
  for (int i = 0; i < ev.size(); ++i) phases(i) = std::exp(complexd(0.0, -ev(i)));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

LindbladModel relaxation_model(const SpinSystem& system, double cross_rate) {
  LindbladModel model;
  model.h_drift = system_hamiltonian(system);
  model.dissipators = standard_relaxation(system);
  if (cross_rate > 0.0) {
    model.dissipators.push_back(cross_relaxation(system, 0, 1, cross_rate));
  }
  return model;
}

}  // namespace

const HermitianOperator& ProtocolResult::stage(const std::string& name) const {
  for (const auto& [key, state] : stages) {
    if (key == name) return state;
  }
  throw std::invalid_argument("protocol result has no stage named '" + name + "'");
}

ProtocolResult ta_method(const SpinSystem& system) {
  system.validate();
  const HermitianOperator rho = equilibrium_state(system);
  const HermitianOperator sigma = pps_target(system.n);

  ExperimentDesign design;
  if (system.n == 2) {
    // the displayed three-experiment average: identity and the two cyclic
    // permutations of the excited levels
    const std::vector<std::vector<int>> perms = {
        {0, 1, 2, 3}, {0, 3, 1, 2}, {0, 2, 3, 1}};
    design = ExperimentDesign::from_permutations(
        perms, Eigen::Vector3d::Constant(1.0 / 3.0),
        exact_transfer_bound(rho, sigma));
  } else {
    design = minimal_design(thermal_deviation(system).full().diagonal().real(),
                            pps_target(system.n).full().diagonal().real());
  }

  ProtocolResult result;
  result.method = "ta";
  result.final_state = apply_mixed_unitary(rho, design);
  result.report = make_report(rho, result.final_state, sigma);
  result.experiments_used = static_cast<int>(design.entries.size());
  return result;
}

ProtocolResult sa_method(const SpinSystem& system) {
  system.validate();
  if (system.n != 2) throw std::invalid_argument("sa_method expects a two-spin system");
  const double j = system.j_coupling(0, 1);
  if (!(j > 0.0)) throw std::invalid_argument("sa_method needs a positive J coupling");
  const std::vector<int> both = {0, 1};
  const std::vector<SequenceStep> steps = {
      HardPulse{both, Axis::X, 90.0},      Delay{1.0 / (4.0 * j)},
      HardPulse{both, Axis::Y, 90.0},      Delay{1.0 / (4.0 * j)},
      HardPulse{both, Axis::MinusX, 90.0}, GradientPulse{},
      HardPulse{both, Axis::X, 45.0},      Delay{1.0 / (2.0 * j)},
      HardPulse{both, Axis::MinusY, 30.0}, GradientPulse{},
  };
  const HermitianOperator rho = equilibrium_state(system);

  ProtocolResult result;
  result.method = "sa";
  result.final_state = run_sequence(rho, system, steps);
  result.report = make_report(rho, result.final_state, pps_target(system.n));
  result.experiments_used = 1;
  return result;
}

ProtocolResult ls_method(const SpinSystem& system,
                         const std::vector<double>& angles_deg) {
  system.validate();
  const HermitianOperator rho = equilibrium_state(system);
  const HermitianOperator sigma = pps_target(system.n);
  const std::vector<Eigen::MatrixXcd> ops = ls_transition_ops(system);
  const int n_angles = static_cast<int>(ops.size());

  const Eigen::VectorXd rho_diag = rho.traceless().diagonal().real();
  const double eta_max = exact_transfer_bound(rho, sigma);
  const Eigen::VectorXd target_diag =
      eta_max * sigma.traceless().diagonal().real();

  Eigen::VectorXd angles_rad(n_angles);
  if (!angles_deg.empty()) {
    if (static_cast<int>(angles_deg.size()) != n_angles) {
      throw std::invalid_argument("ls_method: expected " + std::to_string(n_angles) +
                                  " angles");
    }
    for (int i = 0; i < n_angles; ++i) angles_rad(i) = angles_deg[i] * kDegToRad;
  } else {
    // diagonal-matching equation diag[U rho U†] = eta_max diag[sigma],
    // solved by multi-start Nelder-Mead over the transition angles
    const auto objective = [&](const Eigen::VectorXd& x) {
      const Eigen::MatrixXcd u = ls_unitary(ops, x);
      const Eigen::VectorXd d =
          (u * rho.traceless() * u.adjoint()).diagonal().real();
      return (d - target_diag).squaredNorm();
    };
    double best_val = std::numeric_limits<double>::infinity();
    Eigen::VectorXd best_x = Eigen::VectorXd::Zero(n_angles);
    const std::vector<double> starts = {0.2, 0.5, 0.8, 1.1, 1.4};
    for (const double s0 : starts) {
      for (const double s1 : starts) {
        Eigen::VectorXd x = Eigen::VectorXd::Constant(n_angles, s0);
        if (n_angles > 1) x(1) = s1;
        double v = nelder_mead(objective, x, 0.2, 400);
        if (v < best_val) {
          best_val = v;
          best_x = x;
        }
        if (n_angles <= 1) break;
      }
    }
    // polish the winner
    best_val = nelder_mead(objective, best_x, 0.01, 400);
    if (std::sqrt(best_val) > 1e-6) {
      throw SolverFailureError("ls_method: diagonal matching did not converge",
                               std::sqrt(best_val));
    }
    angles_rad = best_x;
  }

  const Eigen::MatrixXcd u = ls_unitary(ops, angles_rad);
  ProtocolResult result;
  result.method = "ls";
  for (int i = 0; i < n_angles; ++i) {
    result.parameters.emplace_back("x" + std::to_string(i + 1) + "_deg",
                                   angles_rad(i) / kDegToRad);
  }
  result.final_state = gradient_channel(apply_unitary(rho, u), system);
  result.report = make_report(rho, result.final_state, sigma);
  result.experiments_used = 1;
  return result;
}

ProtocolResult ctg_method(const SpinSystem& system, double theta1_deg,
                          double theta2_deg, int repeats, double axis_phi_deg) {
  system.validate();
  if (system.n != 2) throw std::invalid_argument("ctg_method expects a two-spin system");
  if (repeats < 1) throw std::invalid_argument("ctg_method: repeats must be >= 1");
  const Eigen::MatrixXcd cr1 =
      controlled_rotation(system, 0, 1, theta1_deg, axis_phi_deg);
  const Eigen::MatrixXcd cr2 =
      controlled_rotation(system, 1, 0, theta2_deg, axis_phi_deg);

  const HermitianOperator rho = equilibrium_state(system);
  HermitianOperator state = rho;
  for (int r = 0; r < repeats; ++r) {
    state = gradient_channel(apply_unitary(state, cr1), system);
    state = gradient_channel(apply_unitary(state, cr2), system);
  }

  ProtocolResult result;
  result.method = "ctg";
  result.parameters = {{"theta1_deg", theta1_deg},
                       {"theta2_deg", theta2_deg},
                       {"repeats", static_cast<double>(repeats)}};
  result.final_state = state;
  result.report = make_report(rho, state, pps_target(system.n));
  result.experiments_used = 1;
  return result;
}

ProtocolResult pc_method(const SpinSystem& system, double tau, int loops,
                         double cross_rate) {
  system.validate();
  if (loops < 1) throw std::invalid_argument("pc_method: loops must be >= 1");
  const LindbladModel model = relaxation_model(system, cross_rate);
  const Eigen::MatrixXcd v = cyclic_permutation_unitary(system.dim());
  const Superoperator map = periodic_map(v, tau, model);

  const HermitianOperator sigma = pps_target(system.n);
  const HermitianOperator rho = equilibrium_state(system);
  HermitianOperator state = rho;

  ProtocolResult result;
  result.method = "pc";
  result.trajectory.reserve(loops);
  for (int k = 1; k <= loops; ++k) {
    state = map.apply(state);
    TrajectoryPoint pt;
    pt.t = k * tau;
    pt.populations = populations(state);
    pt.eta = transfer_efficiency(state, sigma);
    result.trajectory.push_back(std::move(pt));
  }
  const HermitianOperator fp = fixed_point(map);
  result.parameters = {{"tau", tau},
                       {"loops", static_cast<double>(loops)},
                       {"cross_rate", cross_rate},
                       {"eta_fixed_point", transfer_efficiency(fp, sigma)}};
  result.final_state = state;
  result.report = make_report(rho, state, sigma);
  result.stages.emplace_back("fixed_point", fp);
  result.experiments_used = 1;
  return result;
}

ProtocolResult lss_method(const SpinSystem& system, double amplitude,
                          double duration, double cross_rate) {
  system.validate();
  if (system.n != 2) throw std::invalid_argument("lss_method expects a two-spin system");
  if (amplitude < 0.0 || duration < 0.0) {
    throw std::invalid_argument("lss_method: amplitude and duration must be >= 0");
  }
  // resonant drives on |10><11| and |01><11|, written in the coupling
  // interaction frame where they are time independent
  const int dims = system.dim();
  Eigen::MatrixXcd drive = Eigen::MatrixXcd::Zero(dims, dims);
  drive(2, 3) = drive(3, 2) = 0.5 * amplitude;
  drive(1, 3) = drive(3, 1) = 0.5 * amplitude;

  LindbladModel model;
  model.h_drift = HermitianOperator::from_matrix(drive);
  model.dissipators = standard_relaxation(system);
  if (cross_rate > 0.0) {
    model.dissipators.push_back(cross_relaxation(system, 0, 1, cross_rate));
  }

  const HermitianOperator rho = equilibrium_state(system);
  const HermitianOperator sigma = pps_target(system.n);

  ProtocolResult result;
  result.method = "lss";
  const int segments = 60;
  HermitianOperator state = rho;
  for (int k = 1; k <= segments; ++k) {
    state = propagate(state, model, duration / segments, 1);
    TrajectoryPoint pt;
    pt.t = duration * k / segments;
    pt.populations = populations(state);
    pt.eta = transfer_efficiency(state, sigma);
    result.trajectory.push_back(std::move(pt));
  }
  result.parameters = {{"amplitude", amplitude},
                       {"duration", duration},
                       {"cross_rate", cross_rate}};
  result.final_state = state;
  result.report = make_report(rho, state, sigma);
  result.experiments_used = 1;
  return result;
}

HermitianOperator lpps_decoded_target(int n) {
  if (n != 3) {
    throw std::invalid_argument("lpps_decoded_target is defined for the 3-spin pipeline");
  }
  Eigen::Matrix2cd p0 = Eigen::Matrix2cd::Zero();
  p0(0, 0) = 1.0;
  const Eigen::MatrixXcd t =
      Eigen::kroneckerProduct(p0, Eigen::kroneckerProduct(pauli_matrix("X"), p0).eval())
          .eval();
  return HermitianOperator::from_matrix(t);
}

ProtocolResult lpps_conventional(const SpinSystem& system) {
  system.validate();
  if (system.n != 3) {
    throw std::invalid_argument("lpps_conventional expects the three-spin system");
  }
  const HermitianOperator rho = equilibrium_state(system);
  ProtocolResult result;
  result.method = "lpps-conventional";

  // (i) keep only the label spin's polarization: rotate spins 1 and 3 into
  // the transverse plane and dephase them
  HermitianOperator state = run_sequence(
      rho, system, {HardPulse{{0, 2}, Axis::X, 90.0}, GradientPulse{}});
  result.stages.emplace_back("z2", state);

  // (ii) encode Z2 into Y1 Y2 X3 (one and three quantum coherences only)
  const std::vector<SequenceStep> encode = {
      HardPulse{{1}, Axis::Y, 90.0}, GateStep{zz_quarter_gate(system, 0, 1, +1)},
      HardPulse{{0}, Axis::Y, 90.0}, GateStep{zz_quarter_gate(system, 0, 2, +1)},
      HardPulse{{2}, Axis::Y, 90.0}};
  state = run_sequence(state, system, encode);
  result.stages.emplace_back("encoded", state);

  // (iii) phase cycling keeps only the maximal coherences
  const PhaseCycleScheme scheme = PhaseCycleScheme::max_coherence_selection(system.n);
  state = phase_cycle_channel(state, system, scheme);
  result.stages.emplace_back("cycled", state);

  // (iv) decode the three-coherence into the labelled pseudopure form
  const std::vector<SequenceStep> decode = {
      HardPulse{{2}, Axis::MinusY, 90.0}, GateStep{zz_quarter_gate(system, 0, 2, +1)},
      HardPulse{{0}, Axis::MinusY, 90.0}, GateStep{zz_quarter_gate(system, 0, 1, +1)},
      HardPulse{{0, 2}, Axis::X, 90.0}};
  state = run_sequence(state, system, decode);

  result.final_state = state;
  result.report = make_report(rho, state, lpps_decoded_target(system.n));
  result.experiments_used = scheme.size();
  return result;
}

ProtocolResult lpps_optimal(int n) {
  if (n < 2) throw std::invalid_argument("lpps_optimal: n must be >= 2");
  const int dims = 1 << n;
  std::vector<int> ident(dims), reversal(dims);
  for (int i = 0; i < dims; ++i) ident[i] = i;
  reversal[0] = 0;
  for (int i = 1; i < dims; ++i) reversal[i] = dims - i;

  std::string labels(n, 'I');
  labels[0] = 'Z';
  const HermitianOperator rho0 = HermitianOperator::from_matrix(pauli_matrix(labels));
  const HermitianOperator sigma = lpps_target(n);

  const ExperimentDesign design = ExperimentDesign::from_permutations(
      {ident, reversal}, Eigen::Vector2d(0.5, 0.5), 1.0);

  ProtocolResult result;
  result.method = "lpps-optimal";
  result.parameters = {{"n", static_cast<double>(n)}};
  result.final_state = apply_mixed_unitary(rho0, design);
  result.report = make_report(rho0, result.final_state, sigma);
  result.experiments_used = 2;
  return result;
}

std::vector<SpectralLine> readout_spectrum(const HermitianOperator& rho,
                                           const SpinSystem& system, int observe) {
  if (observe < 0 || observe >= system.n) {
    throw std::invalid_argument("readout_spectrum: spin index out of range");
  }
  if (rho.dim() != system.dim()) {
    throw std::invalid_argument("readout_spectrum: dimension mismatch");
  }
  const HermitianOperator rotated = apply_unitary(
      rho, rotation_unitary(system, {observe}, Axis::Y, 90.0));
  const Eigen::MatrixXcd m = rotated.traceless();

  const int obs_mask = 1 << (system.n - 1 - observe);
  const double drop = 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff());
  std::vector<SpectralLine> lines;
  for (int i = 0; i < system.dim(); ++i) {
    if (i & obs_mask) continue;  // observed spin must be |0> in the bra
    const int j = i | obs_mask;
    const complexd amp = m(i, j);
    if (std::abs(amp) <= drop) continue;
    double freq = 0.0;
    for (int partner = 0; partner < system.n; ++partner) {
      if (partner == observe) continue;
      const int bit = (i >> (system.n - 1 - partner)) & 1;
      freq += 0.5 * system.j_coupling(observe, partner) * (bit == 0 ? 1.0 : -1.0);
    }
    lines.push_back(SpectralLine{freq, amp});
  }
  std::sort(lines.begin(), lines.end(), [](const SpectralLine& a, const SpectralLine& b) {
    return a.frequency_hz < b.frequency_hz;
  });
  return lines;
}

}  // namespace spindesign
