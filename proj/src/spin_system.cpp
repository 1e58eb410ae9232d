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

#include "spindesign/spin_system.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

#include "spindesign/errors.hpp"

namespace spindesign {

void SpinSystem::validate() const {
  if (n < 1) throw std::invalid_argument("spin system: n must be >= 1");
  if (gamma.size() != n || polarization.size() != n || t1.size() != n ||
      t2.size() != n) {
    throw std::invalid_argument("spin system: per-spin arrays must have length n");
  }
  if (j_coupling.rows() != n || j_coupling.cols() != n) {
    throw std::invalid_argument("spin system: j_coupling must be n x n");
  }
  for (int i = 0; i < n; ++i) {
    if (std::abs(j_coupling(i, i)) > 0.0) {
      throw std::invalid_argument("spin system: j_coupling diagonal must be zero");
    }
    for (int j = 0; j < n; ++j) {
      if (j_coupling(i, j) != j_coupling(j, i)) {
        throw std::invalid_argument("spin system: j_coupling must be symmetric");
      }
    }
    if (!(t1(i) > 0.0) || !(t2(i) > 0.0)) {
      throw std::invalid_argument("spin system: t1 and t2 must be strictly positive");
    }
    if (t2(i) > 2.0 * t1(i)) {
      throw std::invalid_argument(
          "spin system: t2 <= 2*t1 violated (negative dephasing rate)");
    }
    if (!(polarization(i) > 0.0)) {
      throw std::invalid_argument("spin system: polarization must be strictly positive");
    }
  }
}

SpinSystem SpinSystem::chcl3() {
  SpinSystem s;
  s.n = 2;
  s.gamma = Eigen::Vector2d(1.0, 4.0);
  s.j_coupling = Eigen::Matrix2d::Zero();
  s.j_coupling(0, 1) = s.j_coupling(1, 0) = 214.5;
  s.polarization = Eigen::Vector2d(1.0, 1.0);
  s.t1 = Eigen::Vector2d(18.0, 5.0);
  s.t2 = Eigen::Vector2d(0.3, 0.8);
  return s;
}

SpinSystem SpinSystem::alanine() {
  SpinSystem s;
  s.n = 3;
  s.gamma = Eigen::Vector3d(1.0, 1.0, 1.0);
  s.j_coupling = Eigen::Matrix3d::Zero();
  s.j_coupling(0, 1) = s.j_coupling(1, 0) = 53.97;
  s.j_coupling(1, 2) = s.j_coupling(2, 1) = 34.9;
  s.j_coupling(0, 2) = s.j_coupling(2, 0) = -1.31;
  s.polarization = Eigen::Vector3d(1.0, 1.0, 1.0);
  s.t1 = Eigen::Vector3d(5.0, 5.0, 5.0);
  s.t2 = Eigen::Vector3d(0.5, 0.5, 0.5);
  return s;
}

SpinSystem SpinSystem::preset(const std::string& name) {
  if (name == "chcl3") return chcl3();
  if (name == "alanine") return alanine();
  throw ParseError("unknown spin-system preset '" + name +
                   "' (expected chcl3 or alanine)");
}

namespace {

double parse_value(const std::string& tok, const std::string& key) {
  if (tok == "inf" || tok == "Inf" || tok == "INF") {
    return std::numeric_limits<double>::infinity();
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError("spin-system file: bad number '" + tok + "' for key " + key);
  }
}

std::vector<double> parse_row(const std::string& text, const std::string& key) {
  std::istringstream is(text);
  std::vector<double> vals;
  std::string tok;
  while (is >> tok) vals.push_back(parse_value(tok, key));
  return vals;
}

}  // namespace

SpinSystem SpinSystem::parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::map<std::string, std::vector<std::vector<double>>> table;
  std::string current_key;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq != std::string::npos) {
      current_key = line.substr(0, eq);
      current_key.erase(0, current_key.find_first_not_of(" \t"));
      current_key.erase(current_key.find_last_not_of(" \t") + 1);
      table[current_key].push_back(parse_row(line.substr(eq + 1), current_key));
    } else if (!current_key.empty()) {
      // continuation row of a matrix-valued key
      table[current_key].push_back(parse_row(line, current_key));
    } else {
      throw ParseError("spin-system file: stray data before any key", lineno);
    }
  }

  auto scalar = [&](const std::string& key) {
    auto it = table.find(key);
    if (it == table.end() || it->second.empty() || it->second[0].empty()) {
      throw ParseError("spin-system file: missing key '" + key + "'");
    }
    return it->second[0][0];
  };
  auto vec = [&](const std::string& key, int len) {
    auto it = table.find(key);
    if (it == table.end()) throw ParseError("spin-system file: missing key '" + key + "'");
    std::vector<double> flat;
    for (const auto& row : it->second) flat.insert(flat.end(), row.begin(), row.end());
    if (static_cast<int>(flat.size()) != len) {
      throw ParseError("spin-system file: key '" + key + "' needs " +
                       std::to_string(len) + " values");
    }
    return Eigen::Map<Eigen::VectorXd>(flat.data(), len).eval();
  };

  SpinSystem s;
  s.n = static_cast<int>(scalar("n"));
  s.gamma = vec("gamma", s.n);
  s.polarization = vec("polarization", s.n);
  s.t1 = vec("t1", s.n);
  s.t2 = vec("t2", s.n);
  const Eigen::VectorXd flat_j = vec("j_coupling", s.n * s.n);
  s.j_coupling = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                Eigen::RowMajor>>(flat_j.data(), s.n, s.n);
  s.validate();
  return s;
}

SpinSystem SpinSystem::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open spin-system file: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

std::string SpinSystem::to_text() const {
  std::ostringstream out;
  out.precision(17);
  auto row = [&](const Eigen::VectorXd& v) {
    for (int i = 0; i < v.size(); ++i) out << (i ? " " : "") << v(i);
  };
  out << "n = " << n << "\n";
  out << "gamma = ";
  row(gamma);
  out << "\npolarization = ";
  row(polarization);
  out << "\nt1 = ";
  row(t1);
  out << "\nt2 = ";
  row(t2);
  out << "\nj_coupling =";
  for (int i = 0; i < n; ++i) {
    out << "\n  ";
    row(j_coupling.row(i));
  }
  out << "\n";
  return out.str();
}

}  // namespace spindesign
