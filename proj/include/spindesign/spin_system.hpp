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
#include <string>

namespace spindesign {

/// Static description of an n-spin-1/2 ensemble. Spin 1 is the most
/// significant qubit; |0> is the lower-energy state aligned with the field.
/// gamma holds dimensionless gyromagnetic weights (ratios to a reference
/// nucleus), j_coupling is in Hz, t1/t2 in seconds (infinity allowed),
/// polarization holds the per-spin equilibrium polarization in units of the
/// symbolic thermal factor epsilon.
struct SpinSystem {
  int n = 0;
  Eigen::VectorXd gamma;
  Eigen::MatrixXd j_coupling;
  Eigen::VectorXd polarization;
  Eigen::VectorXd t1;
  Eigen::VectorXd t2;

  int dim() const { return 1 << n; }

  // throws std::invalid_argument on any violated invariant
  void validate() const;

  // 13C-labeled chloroform: C = spin 1, H = spin 2, gamma_H/gamma_C = 4,
  // J = 214.5 Hz. T1/T2 are configuration placeholders.
  static SpinSystem chcl3();

  // Three 13C nuclei of labeled alanine, equal gamma,
  // J12 = 53.97 Hz, J23 = 34.9 Hz, J13 = -1.31 Hz.
  static SpinSystem alanine();

  // named preset ("chcl3" | "alanine"); throws ParseError otherwise
  static SpinSystem preset(const std::string& name);

  // key-value spin-system file, format documented in the README
  static SpinSystem load(const std::string& path);
  static SpinSystem parse(const std::string& text);
  std::string to_text() const;
};

}  // namespace spindesign
