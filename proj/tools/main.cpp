// Copyright 2026 The linoq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: heralded-qubit operating points, (gamma, phi)
// sweeps as machine-readable grids, closed-form-vs-simulation verification,
// and constrained design search.
//
// Exit codes: 0 success, 1 verification failure, 2 I/O error,
// 3 infeasible design, 64 usage error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "linoq/sweep.hpp"
#include "linoq/verify.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitIoError = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 70;

constexpr double kPi = std::numbers::pi;

struct RangeSpec {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 0;
};

RangeSpec parse_range(const std::string& text) {
  RangeSpec r;
  std::istringstream in(text);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(in, part, ':')) parts.push_back(part);
  if (parts.size() != 3) {
    throw CLI::ValidationError("range", "expected MIN:MAX:STEPS, got '" +
                                            text + "'");
  }
  try {
    std::size_t used = 0;
    r.lo = std::stod(parts[0], &used);
    if (used != parts[0].size()) throw std::invalid_argument(parts[0]);
    r.hi = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    r.steps = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
  } catch (const std::exception&) {
    throw CLI::ValidationError("range", "expected MIN:MAX:STEPS, got '" +
                                            text + "'");
  }
  if (r.steps < 1 || r.lo > r.hi) {
    throw CLI::ValidationError("range", "need MIN <= MAX and STEPS >= 1");
  }
  return r;
}

int parse_cutoff(const std::string& text) {
  if (text == "auto") return linoq::kAutoCutoff;
  try {
    std::size_t used = 0;
    const int c = std::stoi(text, &used);
    if (used != text.size() || c < 2) throw std::invalid_argument(text);
    return c;
  } catch (const std::exception&) {
    throw CLI::ValidationError("cutoff", "expected 'auto' or an integer >= 2");
  }
}

void print_rho(const Eigen::MatrixXcd& rho) {
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      std::cout << "  rho" << i << j << " = "
                << linoq::format_double(rho(i, j).real()) << " + "
                << linoq::format_double(rho(i, j).imag()) << "i\n";
    }
  }
}

int cmd_point(double eta, double gamma, double phi, linoq::HeraldOutcome out,
              linoq::EvalMode mode, int cutoff) {
  const double shift =
      out == linoq::HeraldOutcome::NoYes ? kPi / 2.0 : 0.0;
  const double p_a = linoq::p_yn_analytic(eta, gamma, phi + shift);
  const bool defined = p_a >= linoq::kZeroProbabilityTol;

  if (mode != linoq::EvalMode::Numeric) {
    std::cout << "analytic:\n  P = " << linoq::format_double(p_a) << "\n";
    if (defined) {
      const auto rho = linoq::rho_yn_analytic(eta, gamma, phi + shift, 2);
      print_rho(rho.matrix());
      std::cout << "  F = "
                << linoq::format_double(
                       linoq::fidelity_analytic(eta, gamma, phi + shift))
                << "\n";
    } else {
      std::cout << "  conditional state undefined (zero-probability outcome)\n";
    }
  }
  if (mode != linoq::EvalMode::Analytic) {
    if (defined) {
      const auto res =
          linoq::run_numeric(linoq::SchemeParams{eta, gamma, phi, cutoff}, out);
      std::cout << "numeric:\n  P = " << linoq::format_double(res.probability)
                << "\n";
      print_rho(res.rho.matrix());
      std::cout << "  F = " << linoq::format_double(res.fidelity) << "\n";
      if (mode == linoq::EvalMode::Both) {
        const double f_a = linoq::fidelity_analytic(eta, gamma, phi + shift);
        std::cout << "deltas:\n  dP = "
                  << linoq::format_double(res.probability - p_a)
                  << "\n  dF = " << linoq::format_double(res.fidelity - f_a)
                  << "\n";
      }
    } else {
      std::cout << "numeric:\n"
                << "  conditional state undefined (zero-probability outcome)\n";
    }
  }
  return 0;
}

int cmd_sweep(const linoq::SweepSpec& spec, const std::string& out_path,
              const std::string& format) {
  const auto records = linoq::run_sweep(spec);
  const bool with_deltas = spec.mode == linoq::EvalMode::Both;

  std::ostringstream body;
  if (format == "json") {
    linoq::write_records_json(body, records, with_deltas);
  } else {
    linoq::write_records_csv(body, records, with_deltas);
  }

  if (out_path.empty() || out_path == "-") {
    std::cout << body.str();
    return 0;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open '" << out_path << "' for writing\n";
    return kExitIoError;
  }
  file << body.str();
  file.close();
  if (!file) {
    std::cerr << "error: failed writing '" << out_path << "'\n";
    return kExitIoError;
  }
  return 0;
}

int cmd_verify(const linoq::VerifyOptions& options) {
  const linoq::VerifyReport report = linoq::run_verification(options);
  std::cout << linoq::format_report(report);
  if (report.passed()) {
    std::cout << "verification: PASS\n";
    return 0;
  }
  std::cout << "verification: FAIL\n";
  return kExitVerifyFailed;
}

int cmd_design(const linoq::DesignQuery& query) {
  const linoq::DesignResult res = linoq::design_search(query);
  if (!res.feasible) {
    std::cout << "infeasible: no point reaches P >= "
              << linoq::format_double(query.p_min)
              << "; maximum achievable P = "
              << linoq::format_double(res.max_p_yn) << "\n";
    return kExitInfeasible;
  }
  std::cout << "gamma* = " << linoq::format_double(res.gamma) << "\n"
            << "phi*   = " << linoq::format_double(res.phi) << "\n"
            << "F*     = " << linoq::format_double(res.fidelity) << "\n"
            << "P_YN*  = " << linoq::format_double(res.p_yn) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "linoq: heralded vacuum/one-photon qubit preparation with an "
      "interferometer and binary photodetectors"};
  app.require_subcommand(1);

  const std::map<std::string, linoq::HeraldOutcome> outcome_names{
      {"yn", linoq::HeraldOutcome::YesNo}, {"ny", linoq::HeraldOutcome::NoYes}};
  const std::map<std::string, linoq::EvalMode> mode_names{
      {"analytic", linoq::EvalMode::Analytic},
      {"numeric", linoq::EvalMode::Numeric},
      {"both", linoq::EvalMode::Both}};

  // point
  auto* point = app.add_subcommand(
      "point", "Evaluate one operating point: P, the 2x2 state, and F");
  double pt_eta = 0.8, pt_gamma = 0.0, pt_phi = 0.0;
  linoq::HeraldOutcome pt_outcome = linoq::HeraldOutcome::YesNo;
  linoq::EvalMode pt_mode = linoq::EvalMode::Both;
  std::string pt_cutoff = "auto";
  point->add_option("--eta", pt_eta, "quantum efficiency")
      ->check(CLI::Range(0.0, 1.0));
  point->add_option("--gamma", pt_gamma, "coherent amplitude (real, >= 0)")
      ->check(CLI::NonNegativeNumber);
  point->add_option("--phi", pt_phi, "interferometer shift (radians)");
  point->add_option("--outcome", pt_outcome, "heralding pattern")
      ->transform(CLI::CheckedTransformer(outcome_names));
  point->add_option("--mode", pt_mode, "evaluation mode")
      ->transform(CLI::CheckedTransformer(mode_names));
  point->add_option("--cutoff", pt_cutoff, "'auto' or a Fock cutoff >= 2");

  // sweep
  auto* sweep = app.add_subcommand(
      "sweep", "Emit P and F over a (gamma, phi) grid as CSV or JSON");
  double sw_eta = 0.8;
  std::string sw_grange, sw_prange;
  double sw_gamma = 0.0, sw_phi = 0.0;
  linoq::HeraldOutcome sw_outcome = linoq::HeraldOutcome::YesNo;
  linoq::EvalMode sw_mode = linoq::EvalMode::Analytic;
  std::string sw_cutoff = "auto";
  std::string sw_format = "csv", sw_out;
  sweep->add_option("--eta", sw_eta, "quantum efficiency")
      ->check(CLI::Range(0.0, 1.0));
  auto* grange = sweep->add_option("--gamma-range", sw_grange,
                                   "gamma grid MIN:MAX:STEPS [0:2:41]");
  auto* prange = sweep->add_option(
      "--phi-range", sw_prange, "phi grid MIN:MAX:STEPS [0:pi:41]");
  auto* gpoint = sweep->add_option("--gamma", sw_gamma,
                                   "single gamma value (instead of a range)")
                     ->check(CLI::NonNegativeNumber);
  auto* ppoint =
      sweep->add_option("--phi", sw_phi, "single phi value (instead of a range)");
  grange->excludes(gpoint);
  prange->excludes(ppoint);
  sweep->add_option("--outcome", sw_outcome, "heralding pattern")
      ->transform(CLI::CheckedTransformer(outcome_names));
  sweep->add_option("--mode", sw_mode, "evaluation mode")
      ->transform(CLI::CheckedTransformer(mode_names));
  sweep->add_option("--cutoff", sw_cutoff, "'auto' or a Fock cutoff >= 2");
  sweep->add_option("--format", sw_format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", sw_out, "output path ('-' for stdout)");

  // verify
  auto* verify = app.add_subcommand(
      "verify", "Reconcile the closed forms against the simulation");
  std::vector<double> vf_etas;
  int vf_grid = 12;
  double vf_fault = 0.0;
  verify->add_option("--eta", vf_etas, "efficiencies to cover (repeatable)")
      ->check(CLI::Range(0.0, 1.0));
  verify->add_option("--grid", vf_grid, "grid points per axis [12]")
      ->check(CLI::Range(2, 64));
  verify
      ->add_option("--inject-fault", vf_fault,
                   "perturb the simulated arm's eta (self-test; must FAIL)")
      ->check(CLI::Range(0.0, 0.5));

  // design
  auto* design = app.add_subcommand(
      "design", "Best operating point subject to a probability floor");
  double dg_eta = 0.8, dg_pmin = 0.0;
  std::string dg_target;
  design->add_option("--eta", dg_eta, "quantum efficiency")
      ->check(CLI::Range(0.0, 1.0));
  design->add_option("--p-min", dg_pmin, "heralding probability floor")
      ->required()
      ->check(CLI::Range(1e-12, 1.0));
  design->add_option("--target", dg_target,
                     "target qubit amplitudes 'a0,a1' to realize");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (point->parsed()) {
      return cmd_point(pt_eta, pt_gamma, pt_phi, pt_outcome, pt_mode,
                       parse_cutoff(pt_cutoff));
    }
    if (sweep->parsed()) {
      linoq::SweepSpec spec;
      spec.eta = sw_eta;
      spec.outcome = sw_outcome;
      spec.mode = sw_mode;
      spec.cutoff = parse_cutoff(sw_cutoff);
      if (gpoint->count() > 0) {
        spec.gamma_min = spec.gamma_max = sw_gamma;
        spec.gamma_steps = 1;
      } else if (grange->count() > 0) {
        const RangeSpec r = parse_range(sw_grange);
        spec.gamma_min = r.lo;
        spec.gamma_max = r.hi;
        spec.gamma_steps = r.steps;
      }
      if (ppoint->count() > 0) {
        spec.phi_min = spec.phi_max = sw_phi;
        spec.phi_steps = 1;
      } else if (prange->count() > 0) {
        const RangeSpec r = parse_range(sw_prange);
        spec.phi_min = r.lo;
        spec.phi_max = r.hi;
        spec.phi_steps = r.steps;
      }
      if (spec.gamma_min < 0.0) {
        throw CLI::ValidationError("--gamma-range", "gamma must be >= 0");
      }
      return cmd_sweep(spec, sw_out, sw_format);
    }
    if (verify->parsed()) {
      linoq::VerifyOptions options;
      if (!vf_etas.empty()) options.etas = vf_etas;
      options.grid = vf_grid;
      options.inject_eta_fault = vf_fault;
      return cmd_verify(options);
    }
    if (design->parsed()) {
      linoq::DesignQuery query;
      query.eta = dg_eta;
      query.p_min = dg_pmin;
      if (!dg_target.empty()) {
        std::istringstream in(dg_target);
        double a0 = 0.0, a1 = 0.0;
        char comma = 0;
        if (!(in >> a0 >> comma >> a1) || comma != ',' || !(in >> std::ws).eof()) {
          throw CLI::ValidationError("--target", "expected 'a0,a1'");
        }
        query.target = std::array<double, 2>{a0, a1};
      }
      return cmd_design(query);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const linoq::TruncationError& e) {
    // Requested cutoff cannot hold the requested amplitude.
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
