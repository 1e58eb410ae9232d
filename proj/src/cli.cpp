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

#include "spindesign/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <thread>

#include "spindesign/bounds.hpp"
#include "spindesign/errors.hpp"
#include "spindesign/opspec.hpp"
#include "spindesign/permutodesign.hpp"
#include "spindesign/protocols.hpp"
#include "spindesign/spin_system.hpp"

namespace spindesign {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kPhysicalEpsilon = 1e-5;

struct CommonOptions {
  std::string system_preset = "chcl3";
  std::string system_path;
  std::string output = "text";
  unsigned long long seed = 0;
  bool physical_epsilon = false;
  std::string out_dir;
};

SpinSystem resolve_system(const CommonOptions& opt) {
  if (!opt.system_path.empty()) return SpinSystem::load(opt.system_path);
  return SpinSystem::preset(opt.system_preset);
}

void add_common(CLI::App* cmd, CommonOptions* opt) {
  cmd->add_option("--system", opt->system_preset,
                  "spin-system preset (chcl3 | alanine)");
  cmd->add_option("--system-file", opt->system_path, "spin-system definition file");
  cmd->add_option("--output", opt->output, "output format: json | csv | text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  cmd->add_option("--seed", opt->seed, "random seed recorded in reports");
  cmd->add_flag("--physical-epsilon", opt->physical_epsilon,
                "also report eta scaled by the physical thermal factor 1e-5");
  cmd->add_option("--out-dir", opt->out_dir,
                  "directory for trajectory / spectrum CSV files");
}

ordered_json report_json(const TransferReport& r) {
  ordered_json j;
  j["eta"] = r.eta;
  j["eta_lower"] = r.eta_lower;
  j["eta_upper"] = r.eta_upper;
  j["exact_bound"] = r.exact_bound;
  j["residual_norm"] = r.residual_norm;
  return j;
}

void emit_json(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

std::string trajectory_csv(const ProtocolResult& result) {
  std::ostringstream os;
  os.precision(17);
  os << "t";
  if (!result.trajectory.empty()) {
    for (int i = 0; i < result.trajectory.front().populations.size(); ++i) {
      os << ",p" << i + 1;
    }
  }
  os << ",eta\n";
  for (const auto& pt : result.trajectory) {
    os << pt.t;
    for (int i = 0; i < pt.populations.size(); ++i) os << "," << pt.populations(i);
    os << "," << pt.eta << "\n";
  }
  return os.str();
}

std::string spectrum_csv(const std::vector<SpectralLine>& lines) {
  std::ostringstream os;
  os.precision(17);
  os << "frequency_hz,amplitude_re,amplitude_im\n";
  for (const auto& line : lines) {
    os << line.frequency_hz << "," << line.amplitude.real() << ","
       << line.amplitude.imag() << "\n";
  }
  return os.str();
}

void write_file(const std::string& dir, const std::string& name,
                const std::string& content) {
  const std::string path = dir + "/" + name;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

int cmd_bound(const CommonOptions& opt, const std::string& rho_spec,
              const std::string& sigma_spec, std::ostream& out) {
  const SpinSystem system = resolve_system(opt);
  const HermitianOperator rho = parse_operator(rho_spec, system);
  const HermitianOperator sigma = parse_operator(sigma_spec, system);
  const UnitaryBounds b = unitary_bounds(rho, sigma);
  const double exact = exact_transfer_bound(rho, sigma);

  if (opt.output == "json") {
    ordered_json j;
    j["command"] = "bound";
    j["seed"] = opt.seed;
    j["rho"] = print_operator(rho, system);
    j["sigma"] = print_operator(sigma, system);
    j["eta_lower"] = b.lower;
    j["eta_upper"] = b.upper;
    j["exact_bound"] = exact;
    if (opt.physical_epsilon) j["eta_upper_physical"] = b.upper * kPhysicalEpsilon;
    emit_json(out, j);
  } else if (opt.output == "csv") {
    out.precision(17);
    out << "eta_lower,eta_upper,exact_bound\n"
        << b.lower << "," << b.upper << "," << exact << "\n";
  } else {
    out.precision(12);
    out << "rho         : " << print_operator(rho, system) << "\n";
    out << "sigma       : " << print_operator(sigma, system) << "\n";
    out << "eta_lower   : " << b.lower << "\n";
    out << "eta_upper   : " << b.upper << "\n";
    out << "exact_bound : " << exact << "\n";
    if (opt.physical_epsilon) {
      out << "eta_upper (physical) : " << b.upper * kPhysicalEpsilon << "\n";
    }
  }
  return 0;
}

int cmd_design(const CommonOptions& opt, const std::string& rho_spec,
               const std::string& sigma_spec, std::ostream& out) {
  const SpinSystem system = resolve_system(opt);
  const HermitianOperator rho = parse_operator(rho_spec, system);
  const HermitianOperator sigma = parse_operator(sigma_spec, system);
  const auto require_diagonal = [](const HermitianOperator& op, const char* name) {
    Eigen::MatrixXcd off = op.traceless();
    off.diagonal().setZero();
    if (off.cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, op.scale())) {
      throw std::invalid_argument(std::string("design requires a diagonal ") + name +
                                  " (rotate into the shared eigenbasis first)");
    }
  };
  require_diagonal(rho, "rho");
  require_diagonal(sigma, "sigma");
  const Eigen::VectorXd rho_diag = rho.full().diagonal().real();
  const Eigen::VectorXd sigma_diag = sigma.full().diagonal().real();

  const ExperimentDesign design = rho.dim() <= kVertexEnumerationLimit
                                      ? minimal_design(rho_diag, sigma_diag)
                                      : birkhoff_design(rho_diag, sigma_diag);
  const TransferReport report = verify_design(design, rho, sigma);

  if (opt.output == "json") {
    ordered_json j;
    j["command"] = "design";
    j["seed"] = opt.seed;
    j["K"] = design.entries.size();
    j["eta"] = design.target_eta;
    j["report"] = report_json(report);
    ordered_json entries = ordered_json::array();
    for (const auto& e : design.entries) {
      ordered_json je;
      je["weight"] = e.weight;
      je["cycles"] = cycle_notation(e.permutation);
      entries.push_back(je);
    }
    j["entries"] = entries;
    emit_json(out, j);
  } else {
    out << design.to_text();
    out.precision(12);
    out << "verification residual: " << report.residual_norm << "\n";
  }
  return 0;
}

struct ProtocolRequest {
  std::string method;
  double theta1 = 99.59;
  double theta2 = 90.0;
  int repeats = 1;
  double tau = 0.3;
  int loops = 60;
  double amplitude = 50.0;
  double duration = 3.0;
  double cross_rate = 0.0;
  int lpps_n = 3;
  std::vector<double> angles;
  int spectrum_spin = 0;  // 1-based; 0 = no spectrum output
};

ProtocolResult run_protocol(const SpinSystem& system, const ProtocolRequest& req) {
  if (req.method == "ta") return ta_method(system);
  if (req.method == "sa") return sa_method(system);
  if (req.method == "ls") return ls_method(system, req.angles);
  if (req.method == "ctg") {
    return ctg_method(system, req.theta1, req.theta2, req.repeats);
  }
  if (req.method == "pc") return pc_method(system, req.tau, req.loops, req.cross_rate);
  if (req.method == "lss") {
    return lss_method(system, req.amplitude, req.duration, req.cross_rate);
  }
  if (req.method == "lpps-conventional") return lpps_conventional(system);
  if (req.method == "lpps-optimal") return lpps_optimal(req.lpps_n);
  throw ParseError("unknown protocol method '" + req.method + "'");
}

void apply_sweep_value(ProtocolRequest* req, const std::string& param, double value) {
  if (param == "theta1") req->theta1 = value;
  else if (param == "theta2") req->theta2 = value;
  else if (param == "repeats") req->repeats = static_cast<int>(std::lround(value));
  else if (param == "tau") req->tau = value;
  else if (param == "loops") req->loops = static_cast<int>(std::lround(value));
  else if (param == "amplitude") req->amplitude = value;
  else if (param == "duration") req->duration = value;
  else if (param == "cross-rate") req->cross_rate = value;
  else throw ParseError("unknown sweep parameter '" + param + "'");
}

struct SweepSpec {
  std::string param;
  double start = 0.0;
  double stop = 0.0;
  int steps = 0;
};

SweepSpec parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw ParseError("sweep must look like param=a:b:steps", 0);
  }
  SweepSpec s;
  s.param = text.substr(0, eq);
  const std::string range = text.substr(eq + 1);
  const auto c1 = range.find(':');
  const auto c2 = range.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw ParseError("sweep must look like param=a:b:steps", eq + 1);
  }
  try {
    s.start = std::stod(range.substr(0, c1));
    s.stop = std::stod(range.substr(c1 + 1, c2 - c1 - 1));
    s.steps = std::stoi(range.substr(c2 + 1));
  } catch (const std::exception&) {
    throw ParseError("bad sweep range '" + range + "'", eq + 1);
  }
  if (s.steps < 2) throw ParseError("sweep needs at least 2 steps", eq + 1);
  return s;
}

ordered_json protocol_json(const ProtocolResult& r, const CommonOptions& opt) {
  ordered_json j;
  j["command"] = "protocol";
  j["method"] = r.method;
  j["seed"] = opt.seed;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  j["eta"] = r.report.eta;
  j["eta_units"] = "epsilon";
  if (opt.physical_epsilon) j["eta_physical"] = r.report.eta * kPhysicalEpsilon;
  j["bounds"] = ordered_json{{"lower", r.report.eta_lower},
                             {"upper", r.report.eta_upper},
                             {"exact", r.report.exact_bound}};
  j["experiments"] = r.experiments_used;
  j["residual_norm"] = r.report.residual_norm;
  return j;
}

void protocol_text(std::ostream& out, const ProtocolResult& r,
                   const CommonOptions& opt) {
  out.precision(12);
  out << "method      : " << r.method << "\n";
  for (const auto& [k, v] : r.parameters) out << "  " << k << " = " << v << "\n";
  out << "eta         : " << r.report.eta << " (in units of epsilon)\n";
  if (opt.physical_epsilon) {
    out << "eta physical: " << r.report.eta * kPhysicalEpsilon << "\n";
  }
  out << "bounds      : [" << r.report.eta_lower << ", " << r.report.eta_upper
      << "], exact " << r.report.exact_bound << "\n";
  out << "experiments : " << r.experiments_used << "\n";
  out << "residual    : " << r.report.residual_norm << "\n";
}

int cmd_protocol(const CommonOptions& opt, const ProtocolRequest& req,
                 const std::string& sweep_text, std::ostream& out) {
  const SpinSystem system = resolve_system(opt);

  if (sweep_text.empty()) {
    const ProtocolResult result = run_protocol(system, req);
    if (opt.output == "json") {
      emit_json(out, protocol_json(result, opt));
    } else if (opt.output == "csv") {
      out.precision(17);
      out << "method,eta,eta_lower,eta_upper,exact_bound,experiments,residual\n";
      out << result.method << "," << result.report.eta << ","
          << result.report.eta_lower << "," << result.report.eta_upper << ","
          << result.report.exact_bound << "," << result.experiments_used << ","
          << result.report.residual_norm << "\n";
    } else {
      protocol_text(out, result, opt);
    }
    if (!opt.out_dir.empty()) {
      if (!result.trajectory.empty()) {
        write_file(opt.out_dir, result.method + "_trajectory.csv",
                   trajectory_csv(result));
      }
      if (req.spectrum_spin > 0) {
        const auto lines =
            readout_spectrum(result.final_state, system, req.spectrum_spin - 1);
        write_file(opt.out_dir, result.method + "_spectrum.csv", spectrum_csv(lines));
      }
    }
    return 0;
  }

  // parameter sweep: bounded worker pool, output ordered by sweep index
  const SweepSpec sweep = parse_sweep(sweep_text);
  std::vector<double> values(sweep.steps);
  for (int i = 0; i < sweep.steps; ++i) {
    values[i] = sweep.start + (sweep.stop - sweep.start) * i / (sweep.steps - 1);
  }
  std::vector<ProtocolResult> results(sweep.steps);
  std::vector<std::string> failures(sweep.steps);
  std::atomic<int> next{0};
  const unsigned workers =
      std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()), 8u);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= sweep.steps) return;
        try {
          ProtocolRequest point = req;
          apply_sweep_value(&point, sweep.param, values[i]);
          results[i] = run_protocol(system, point);
        } catch (const std::exception& e) {
          failures[i] = e.what();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& f : failures) {
    if (!f.empty()) throw std::runtime_error("sweep point failed: " + f);
  }

  if (opt.output == "json") {
    ordered_json arr = ordered_json::array();
    for (int i = 0; i < sweep.steps; ++i) {
      ordered_json j = protocol_json(results[i], opt);
      j["sweep"] = ordered_json{{"param", sweep.param}, {"value", values[i]}};
      arr.push_back(j);
    }
    ordered_json root;
    root["command"] = "protocol-sweep";
    root["seed"] = opt.seed;
    root["points"] = arr;
    emit_json(out, root);
  } else {
    out.precision(17);
    out << sweep.param << ",eta,eta_fixed_point,exact_bound\n";
    for (int i = 0; i < sweep.steps; ++i) {
      double eta_fp = std::numeric_limits<double>::quiet_NaN();
      for (const auto& [k, v] : results[i].parameters) {
        if (k == "eta_fixed_point") eta_fp = v;
      }
      out << values[i] << "," << results[i].report.eta << "," << eta_fp << ","
          << results[i].report.exact_bound << "\n";
    }
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"state transfer bounds, experiment design and pseudopure-state "
               "protocol simulation for coupled spin systems"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string rho_spec = "thermal";
  std::string sigma_spec = "pps";
  ProtocolRequest req;
  std::string sweep_text;

  CLI::App* bound = app.add_subcommand("bound", "transfer-efficiency bounds");
  add_common(bound, &opt);
  bound->add_option("--rho", rho_spec, "initial operator (preset or Pauli sum)");
  bound->add_option("--sigma", sigma_spec, "target operator (preset or Pauli sum)");

  CLI::App* design = app.add_subcommand("design", "minimal mixed-unitary design");
  add_common(design, &opt);
  design->add_option("--rho", rho_spec, "initial operator (preset or Pauli sum)");
  design->add_option("--sigma", sigma_spec, "target operator (preset or Pauli sum)");

  CLI::App* protocol = app.add_subcommand("protocol", "run a preparation protocol");
  add_common(protocol, &opt);
  protocol
      ->add_option("method", req.method,
                   "ta | sa | ls | ctg | pc | lss | lpps-conventional | lpps-optimal")
      ->required();
  protocol->add_option("--theta1", req.theta1, "first controlled-rotation angle, deg");
  protocol->add_option("--theta2", req.theta2, "second controlled-rotation angle, deg");
  protocol->add_option("--repeats", req.repeats, "controlled-transfer repetitions");
  protocol->add_option("--tau", req.tau, "free-relaxation period per cycle, s");
  protocol->add_option("--loops", req.loops, "periodic-control cycles");
  protocol->add_option("--amplitude", req.amplitude, "saturation drive, rad/s");
  protocol->add_option("--duration", req.duration, "saturation duration, s");
  protocol->add_option("--cross-rate", req.cross_rate, "cross-relaxation rate, 1/s");
  protocol->add_option("--n", req.lpps_n, "spin count for lpps-optimal");
  protocol->add_option("--angles", req.angles,
                       "line-selective angles in degrees (solved when omitted)");
  protocol->add_option("--spectrum", req.spectrum_spin,
                       "emit a stick spectrum observed on this spin (1-based)");
  protocol->add_option("--sweep", sweep_text, "parameter sweep, param=a:b:steps");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help and friends
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (bound->parsed()) return cmd_bound(opt, rho_spec, sigma_spec, out);
    if (design->parsed()) return cmd_design(opt, rho_spec, sigma_spec, out);
    return cmd_protocol(opt, req, sweep_text, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UnreachableTargetError& e) {
    err << "unreachable target: " << e.what() << "\n";
    return 3;
  } catch (const SolverFailureError& e) {
    err << "solver failure: " << e.what() << " (best residual " << e.best_residual
        << ")\n";
    return 4;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace spindesign
