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

#include "linoq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>

#include "linoq/detail/parallel.hpp"

namespace linoq {

namespace {

constexpr double kPi = std::numbers::pi;

std::string point_label(double eta, double gamma, double phi) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "eta=%.4g gamma=%.4g phi=%.4g", eta, gamma,
                phi);
  return buf;
}

// Tracks the largest violation and where it happened.
struct Worst {
  double value = 0.0;
  std::string where;

  void update(double v, double eta, double gamma, double phi) {
    if (v > value || where.empty()) {
      value = v;
      where = point_label(eta, gamma, phi);
    }
  }
};

VerifyCheck make_check(const std::string& name, const Worst& w, double tol) {
  return VerifyCheck{name, w.value, tol, w.value <= tol, w.where};
}

}  // namespace

VerifyReport run_verification(const VerifyOptions& options) {
  if (options.grid < 2) {
    throw std::invalid_argument("verification grid must have at least 2 points");
  }
  for (double eta : options.etas) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
      throw std::invalid_argument("quantum efficiency must lie in [0,1]");
    }
  }
  const int n = options.grid;
  std::vector<double> gammas(n), phis(n);
  for (int i = 0; i < n; ++i) {
    gammas[i] = 0.05 + i * (2.0 - 0.05) / (n - 1);
    phis[i] = kPi * (i + 1) / (n + 1);  // interior of (0, pi)
  }
  // The simulated arm may be deliberately detuned to prove the suite fails.
  const auto faulty_eta = [&](double eta) {
    const double bumped = eta + options.inject_eta_fault;
    return bumped <= 1.0 ? bumped : eta - options.inject_eta_fault;
  };

  Worst w_p, w_rho, w_f, w_sum, w_complete, w_herm, w_eig, w_trace, w_support,
      w_symmetry;
  std::mutex mu;

  struct Point {
    double eta, gamma, phi;
    int index;  // position in the (gamma, phi) grid
  };
  std::vector<Point> points;
  for (double eta : options.etas) {
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        points.push_back(Point{eta, gammas[i], phis[j], j * n + i});
      }
    }
  }

  detail::parallel_for(points.size(), [&](std::size_t k) {
    const Point pt = points[k];
    const double p_a = p_yn_analytic(pt.eta, pt.gamma, pt.phi);
    const double f_a = fidelity_analytic(pt.eta, pt.gamma, pt.phi);
    const DensityOperator rho_a =
        rho_yn_analytic(pt.eta, pt.gamma, pt.phi, 2);
    const QubitCoefficients q =
        coefficients_analytic(pt.eta, pt.gamma, pt.phi);

    const SchemeParams params{faulty_eta(pt.eta), pt.gamma, pt.phi,
                              kAutoCutoff};
    const SchemeResult num = run_numeric(params, HeraldOutcome::YesNo);

    const double dp = std::abs(num.probability - p_a);
    const double drho =
        (num.rho.matrix() - rho_a.matrix()).cwiseAbs().maxCoeff();
    const double df = std::abs(num.fidelity - f_a);
    const double dsum = std::abs(q.d00 + q.d11 - p_a);
    const double dherm = num.rho.hermiticity_defect();
    const double deig = std::max(0.0, -num.rho.min_eigenvalue());
    const double dtrace = std::abs(num.rho.trace() - 1.0);
    const double dsupport = num.diagnostics.high_level_population;

    // Completeness and the two-pattern symmetry are sampled on subgrids to
    // keep the run quick.
    double dcomplete = -1.0, dsym = -1.0;
    if (pt.index % 3 == 0) {
      const int d = params.resolve_cutoff();
      const FockState psi = build_circuit_state(pt.gamma, pt.phi, d);
      const DetectorModel det(params.eta, d);
      const auto dist = outcome_distribution(psi, {{1, det}, {2, det}});
      double sum = 0.0;
      for (const auto& [pattern, prob] : dist) sum += prob;
      dcomplete = std::abs(sum - 1.0);
    }
    if (pt.index % 9 == 0) {
      const SchemeResult ny = run_numeric(params, HeraldOutcome::NoYes);
      const SchemeParams shifted{params.eta, pt.gamma, pt.phi + kPi / 2.0,
                                 kAutoCutoff};
      const SchemeResult yn = run_numeric(shifted, HeraldOutcome::YesNo);
      dsym = std::max({std::abs(ny.probability - yn.probability),
                       (ny.rho.matrix() - yn.rho.matrix())
                           .cwiseAbs()
                           .maxCoeff(),
                       std::abs(ny.fidelity - yn.fidelity)});
    }

    std::lock_guard<std::mutex> lock(mu);
    w_p.update(dp, pt.eta, pt.gamma, pt.phi);
    w_rho.update(drho, pt.eta, pt.gamma, pt.phi);
    w_f.update(df, pt.eta, pt.gamma, pt.phi);
    w_sum.update(dsum, pt.eta, pt.gamma, pt.phi);
    w_herm.update(dherm, pt.eta, pt.gamma, pt.phi);
    w_eig.update(deig, pt.eta, pt.gamma, pt.phi);
    w_trace.update(dtrace, pt.eta, pt.gamma, pt.phi);
    w_support.update(dsupport, pt.eta, pt.gamma, pt.phi);
    if (dcomplete >= 0.0) w_complete.update(dcomplete, pt.eta, pt.gamma, pt.phi);
    if (dsym >= 0.0) w_symmetry.update(dsym, pt.eta, pt.gamma, pt.phi);
  });

  // Boundary identities, closed form (tight tolerance) and simulation.
  Worst wa_gamma0, wa_phi90, wa_phi0, wa_f90, wa_flimit;
  Worst wn_gamma0, wn_phi90, wn_phi0, wn_f90, wn_flimit;
  const std::vector<double> phi_samples{0.3, 0.9, 1.5, 2.2, 2.8};
  const std::vector<double> gamma_samples{0.3, 0.9, 1.4, 1.9};
  for (double eta : options.etas) {
    for (double phi : phi_samples) {
      const double expect = 0.5 * eta * std::sin(phi) * std::sin(phi);
      wa_gamma0.update(std::abs(p_yn_analytic(eta, 0.0, phi) - expect), eta,
                       0.0, phi);
      const SchemeResult num =
          run_numeric(SchemeParams{faulty_eta(eta), 0.0, phi},
                      HeraldOutcome::YesNo);
      wn_gamma0.update(std::abs(num.probability - expect), eta, 0.0, phi);
    }
    for (double gamma : gamma_samples) {
      const double g2 = gamma * gamma;
      const double expect90 = 0.5 * eta * std::exp(-eta * g2);
      wa_phi90.update(
          std::abs(p_yn_analytic(eta, gamma, kPi / 2.0) - expect90), eta,
          gamma, kPi / 2.0);
      wa_f90.update(std::abs(fidelity_analytic(eta, gamma, kPi / 2.0) - 1.0),
                    eta, gamma, kPi / 2.0);
      const double expect0 =
          (1.0 - std::exp(-eta * g2)) * (1.0 - 0.5 * eta);
      wa_phi0.update(std::abs(p_yn_analytic(eta, gamma, 0.0) - expect0), eta,
                     gamma, 0.0);

      const SchemeResult num90 = run_numeric(
          SchemeParams{faulty_eta(eta), gamma, kPi / 2.0}, HeraldOutcome::YesNo);
      wn_phi90.update(std::abs(num90.probability - expect90), eta, gamma,
                      kPi / 2.0);
      wn_f90.update(std::abs(num90.fidelity - 1.0), eta, gamma, kPi / 2.0);
      const SchemeResult num0 = run_numeric(
          SchemeParams{faulty_eta(eta), gamma, 0.0}, HeraldOutcome::YesNo);
      wn_phi0.update(std::abs(num0.probability - expect0), eta, gamma, 0.0);
    }
    // gamma -> 0 limit of the fidelity.
    wa_flimit.update(std::abs(fidelity_analytic(eta, 1e-4, 0.7) - 1.0), eta,
                     1e-4, 0.7);
    const SchemeResult numl = run_numeric(
        SchemeParams{faulty_eta(eta), 1e-4, 0.7}, HeraldOutcome::YesNo);
    wn_flimit.update(std::abs(numl.fidelity - 1.0), eta, 1e-4, 0.7);
  }

  // Detector-model structure.
  Worst w_povm, w_projector, w_vacuum_cond, w_monotone;
  for (double eta : options.etas) {
    const DetectorModel det(eta, 9);
    const Eigen::VectorXd sum = det.no_click_diagonal() + det.click_diagonal();
    w_povm.update((sum.array() - 1.0).abs().maxCoeff(), eta, 0.0, 0.0);
  }
  {
    const DetectorModel perfect(1.0, 9);
    Eigen::VectorXd expect = Eigen::VectorXd::Zero(9);
    expect(0) = 1.0;
    w_projector.update(
        (perfect.no_click_diagonal() - expect).cwiseAbs().maxCoeff(), 1.0,
        0.0, 0.0);

    // Perfect-detector no-click conditioning equals vacuum projection.
    const int d = auto_cutoff(0.9);
    const FockState psi = build_circuit_state(0.9, 0.8, d);
    const ConditionalResult cond =
        condition(psi, {{2, {DetectorModel(1.0, d), Outcome::No}}});
    Eigen::VectorXcd projected(d * d);
    for (int i = 0; i < d * d; ++i) {
      projected(i) = psi.amplitudes()(i * d);  // keep n_c = 0 slice
    }
    const double p = projected.squaredNorm();
    const Eigen::MatrixXcd direct = projected * projected.adjoint() / p;
    w_vacuum_cond.update(
        (cond.state.matrix() - direct).cwiseAbs().maxCoeff(), 1.0, 0.9, 0.8);
  }
  {
    // Click probability on the photon-carrying mode never drops as the
    // detector efficiency rises.
    const int d = auto_cutoff(1.0);
    const FockState psi = build_circuit_state(1.0, 0.6, d);
    double previous = -1.0;
    for (double eta : {0.2, 0.4, 0.6, 0.8, 1.0}) {
      const DetectorModel det(eta, d);
      const auto dist = outcome_distribution(psi, {{1, det}, {2, det}});
      const double yes_b =
          dist.at(OutcomePattern{Outcome::Yes, Outcome::No}) +
          dist.at(OutcomePattern{Outcome::Yes, Outcome::Yes});
      if (previous >= 0.0) {
        w_monotone.update(std::max(0.0, previous - yes_b), eta, 1.0, 0.6);
      }
      previous = yes_b;
    }
  }

  VerifyReport report;
  report.checks.push_back(make_check("oracle |p_num - p_analytic|", w_p, 1e-8));
  report.checks.push_back(
      make_check("oracle max|rho_num - rho_analytic|", w_rho, 1e-8));
  report.checks.push_back(make_check("oracle |F_num - F_analytic|", w_f, 1e-8));
  report.checks.push_back(
      make_check("coefficients |d00+d11-P|", w_sum, 1e-12));
  report.checks.push_back(
      make_check("outcome completeness |sum-1|", w_complete, 1e-9));
  report.checks.push_back(
      make_check("conditional hermiticity", w_herm, 1e-10));
  report.checks.push_back(
      make_check("conditional negativity", w_eig, 1e-8));
  report.checks.push_back(make_check("conditional |trace-1|", w_trace, 1e-9));
  report.checks.push_back(
      make_check("support above one photon", w_support, 1e-10));
  report.checks.push_back(
      make_check("NY equals YN at phi+pi/2", w_symmetry, 1e-8));
  report.checks.push_back(
      make_check("analytic P(eta,0,phi) identity", wa_gamma0, 1e-10));
  report.checks.push_back(
      make_check("analytic P(eta,gamma,pi/2) identity", wa_phi90, 1e-10));
  report.checks.push_back(
      make_check("analytic P(eta,gamma,0) identity", wa_phi0, 1e-10));
  report.checks.push_back(
      make_check("analytic F(eta,gamma,pi/2)=1", wa_f90, 1e-10));
  report.checks.push_back(
      make_check("analytic F limit gamma->0", wa_flimit, 1e-6));
  report.checks.push_back(
      make_check("numeric P(eta,0,phi) identity", wn_gamma0, 1e-8));
  report.checks.push_back(
      make_check("numeric P(eta,gamma,pi/2) identity", wn_phi90, 1e-8));
  report.checks.push_back(
      make_check("numeric P(eta,gamma,0) identity", wn_phi0, 1e-8));
  report.checks.push_back(
      make_check("numeric F(eta,gamma,pi/2)=1", wn_f90, 1e-8));
  report.checks.push_back(
      make_check("numeric F limit gamma->0", wn_flimit, 1e-6));
  report.checks.push_back(make_check("POVM completeness", w_povm, 0.0));
  report.checks.push_back(
      make_check("eta=1 no-click = vacuum projector", w_projector, 0.0));
  report.checks.push_back(
      make_check("eta=1 no-click conditioning", w_vacuum_cond, 1e-12));
  report.checks.push_back(
      make_check("click marginal monotone in eta", w_monotone, 1e-12));
  return report;
}

std::string format_report(const VerifyReport& report) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-38s %12s %10s  %s\n", "check",
                "worst", "tol", "status");
  out += line;
  for (const auto& c : report.checks) {
    std::snprintf(line, sizeof(line), "%-38s %12.3e %10.0e  %s  %s\n",
                  c.name.c_str(), c.worst, c.tolerance,
                  c.passed ? "PASS" : "FAIL",
                  c.passed ? "" : c.worst_point.c_str());
    out += line;
  }
  return out;
}

}  // namespace linoq
