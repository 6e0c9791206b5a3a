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

#include "linoq/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace linoq {

namespace {

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("quantum efficiency must lie in [0,1], got " +
                                std::to_string(eta));
  }
}

// Shared trigonometric/exponential factors of the closed forms.
struct Factors {
  double s, c, s2, c2;  // sin, cos and squares
  double g2;            // |gamma|^2
  double es, ec;        // exp(-eta g2 s2), exp(-eta g2 c2)
};

Factors make_factors(double eta, Complex gamma, double phi) {
  Factors f;
  f.s = std::sin(phi);
  f.c = std::cos(phi);
  f.s2 = f.s * f.s;
  f.c2 = f.c * f.c;
  f.g2 = std::norm(gamma);
  f.es = std::exp(-eta * f.g2 * f.s2);
  f.ec = std::exp(-eta * f.g2 * f.c2);
  return f;
}

}  // namespace

int SchemeParams::resolve_cutoff() const {
  check_eta(eta);
  if (cutoff == kAutoCutoff) return auto_cutoff(std::abs(gamma));
  if (cutoff < 2) {
    throw InvalidDimensionError("explicit cutoff must be at least 2");
  }
  return cutoff;
}

double p_yn_analytic(double eta, Complex gamma, double phi) {
  check_eta(eta);
  const Factors f = make_factors(eta, gamma, phi);
  const double p =
      f.es * (1.0 - f.ec +
              0.5 * eta * (f.ec + f.c2 * (eta * f.g2 * f.s2 - 1.0)));
  return std::clamp(p, 0.0, 1.0);
}

QubitCoefficients coefficients_analytic(double eta, Complex gamma,
                                        double phi) {
  check_eta(eta);
  const Factors f = make_factors(eta, gamma, phi);
  QubitCoefficients q;
  q.d11 = 0.5 * f.es * (1.0 - f.ec);
  // <0|rho|1> carries the conjugate amplitude: the heralded-mode one-photon
  // component inherits gamma's phase, so the coherence term pairs it with
  // gamma-bar.
  q.d01 = f.es * 0.5 * eta * std::conj(gamma) * f.s * f.c;
  q.d00 = 0.5 * f.es *
          (1.0 - (1.0 - eta) * f.ec + eta * f.c2 * (eta * f.g2 * f.s2 - 1.0));
  return q;
}

DensityOperator rho_yn_analytic(double eta, Complex gamma, double phi,
                                int cutoff) {
  const double p = p_yn_analytic(eta, gamma, phi);
  if (p < kZeroProbabilityTol) {
    throw ZeroProbabilityError("heralding probability " + std::to_string(p) +
                               " vanishes; no conditional state");
  }
  if (cutoff < 2) throw InvalidDimensionError("cutoff must be at least 2");
  const QubitCoefficients q = coefficients_analytic(eta, gamma, phi);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(cutoff, cutoff);
  m(0, 0) = q.d00 / p;
  m(1, 1) = q.d11 / p;
  m(0, 1) = q.d01 / p;
  m(1, 0) = std::conj(q.d01) / p;
  return DensityOperator(1, cutoff, std::move(m));
}

TargetQubit target_state(Complex gamma, double phi) {
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double n2 = s * s + std::norm(gamma) * c * c;
  if (n2 <= 1e-15) {
    throw UndefinedTargetError(
        "target qubit undefined: gamma = 0 with phi = 0 mod pi");
  }
  const double inv = 1.0 / std::sqrt(n2);
  return TargetQubit{s * inv, gamma * c * inv};
}

double fidelity_analytic(double eta, Complex gamma, double phi) {
  const double p = p_yn_analytic(eta, gamma, phi);
  if (p < kZeroProbabilityTol) {
    throw ZeroProbabilityError("heralding probability " + std::to_string(p) +
                               " vanishes; no conditional state");
  }
  const Factors f = make_factors(eta, gamma, phi);
  const double n2 = f.s2 + f.g2 * f.c2;
  const double braces =
      f.g2 * f.c2 * (1.0 - f.ec) + 2.0 * eta * f.g2 * f.s2 * f.c2 +
      f.s2 * (1.0 - (1.0 - eta) * f.ec +
              eta * f.c2 * (eta * f.g2 * f.s2 - 1.0));
  const double value = f.es * braces / (2.0 * p * n2);
  return std::clamp(value, 0.0, 1.0);
}

SchemeResult run_numeric(const SchemeParams& params, HeraldOutcome outcome) {
  const int d = params.resolve_cutoff();

  SchemeResult::Diagnostics diag;
  diag.coherent_tail_mass = coherent_tail_mass(std::abs(params.gamma), d);
  const FockState psi =
      build_circuit_state(params.gamma, params.phi, d,
                          &diag.transform_leakage);

  const DetectorModel det(params.eta, d);
  const Outcome on_b = outcome == HeraldOutcome::YesNo ? Outcome::Yes
                                                       : Outcome::No;
  const Outcome on_c = outcome == HeraldOutcome::YesNo ? Outcome::No
                                                       : Outcome::Yes;
  const std::map<int, MeasuredMode> measured{{1, {det, on_b}},
                                             {2, {det, on_c}}};
  const ConditionalResult cond = condition(psi, measured);

  // The single input photon bounds the heralded mode at one excitation;
  // anything above is numerical debris and must stay below 1e-10.
  const Eigen::MatrixXcd& m = cond.state.matrix();
  double high = 0.0;
  for (Eigen::Index i = 2; i < m.rows(); ++i) high += m(i, i).real();
  if (!(high < 1e-10)) {
    throw NumericalInconsistencyError(
        "heralded mode has population " + std::to_string(high) +
        " above the one-photon level");
  }
  diag.high_level_population = high;
  DensityOperator rho2(1, 2, m.topLeftCorner(2, 2));

  const double phi_target =
      params.phi +
      (outcome == HeraldOutcome::NoYes ? std::numbers::pi / 2.0 : 0.0);
  const TargetQubit t = target_state(params.gamma, phi_target);
  Eigen::VectorXcd tv(2);
  tv << t.a0, t.a1;
  const double fid = fidelity_pure(FockState(1, 2, std::move(tv)), rho2);

  return SchemeResult{cond.probability, std::move(rho2), fid, diag};
}

}  // namespace linoq
