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

#include "linoq/sweep.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "linoq/detail/parallel.hpp"

namespace linoq {

namespace {

constexpr double kPi = std::numbers::pi;

double grid_value(double lo, double hi, int steps, int i) {
  if (steps <= 1) return lo;
  if (i == steps - 1) return hi;
  return lo + i * (hi - lo) / (steps - 1);
}

struct PointValues {
  double p = 0.0;
  double f = 0.0;
};

PointValues eval_analytic(double eta, double gamma, double phi_eff) {
  PointValues v;
  v.p = p_yn_analytic(eta, gamma, phi_eff);
  v.f = v.p >= kZeroProbabilityTol ? fidelity_analytic(eta, gamma, phi_eff)
                                   : 0.0;
  return v;
}

PointValues eval_numeric(double eta, double gamma, double phi,
                         HeraldOutcome outcome, int cutoff) {
  SchemeParams params{eta, gamma, phi, cutoff};
  try {
    const SchemeResult r = run_numeric(params, outcome);
    return PointValues{r.probability, r.fidelity};
  } catch (const ZeroProbabilityError&) {
    // No conditional state at this point; still report the simulated
    // pattern probability.
    const int d = params.resolve_cutoff();
    const FockState psi = build_circuit_state(gamma, phi, d);
    const DetectorModel det(eta, d);
    const auto dist = outcome_distribution(psi, {{1, det}, {2, det}});
    const OutcomePattern pattern =
        outcome == HeraldOutcome::YesNo
            ? OutcomePattern{Outcome::Yes, Outcome::No}
            : OutcomePattern{Outcome::No, Outcome::Yes};
    return PointValues{dist.at(pattern), 0.0};
  }
}

void check_spec(const SweepSpec& spec) {
  if (spec.gamma_steps < 1 || spec.phi_steps < 1) {
    throw std::invalid_argument("sweep needs at least one step per axis");
  }
  if (!(spec.gamma_min <= spec.gamma_max) ||
      !(spec.phi_min <= spec.phi_max)) {
    throw std::invalid_argument("sweep range minimum exceeds maximum");
  }
  if (!(spec.eta >= 0.0 && spec.eta <= 1.0)) {
    throw std::invalid_argument("quantum efficiency must lie in [0,1]");
  }
  if (spec.cutoff != kAutoCutoff && spec.cutoff < 2) {
    throw InvalidDimensionError("explicit cutoff must be at least 2");
  }
}

}  // namespace

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
  check_spec(spec);
  const std::size_t total = static_cast<std::size_t>(spec.gamma_steps) *
                            static_cast<std::size_t>(spec.phi_steps);
  std::vector<SweepRecord> records(total);
  const double shift =
      spec.outcome == HeraldOutcome::NoYes ? kPi / 2.0 : 0.0;

  detail::parallel_for(total, [&](std::size_t idx) {
    const int j = static_cast<int>(idx) / spec.gamma_steps;  // phi index
    const int i = static_cast<int>(idx) % spec.gamma_steps;  // gamma index
    const double gamma =
        grid_value(spec.gamma_min, spec.gamma_max, spec.gamma_steps, i);
    const double phi =
        grid_value(spec.phi_min, spec.phi_max, spec.phi_steps, j);

    SweepRecord rec;
    rec.gamma = gamma;
    rec.phi = phi;
    rec.eta = spec.eta;
    switch (spec.mode) {
      case EvalMode::Analytic: {
        const PointValues a = eval_analytic(spec.eta, gamma, phi + shift);
        rec.p_yn = a.p;
        rec.fidelity = a.f;
        break;
      }
      case EvalMode::Numeric: {
        const PointValues n =
            eval_numeric(spec.eta, gamma, phi, spec.outcome, spec.cutoff);
        rec.p_yn = n.p;
        rec.fidelity = n.f;
        break;
      }
      case EvalMode::Both: {
        const PointValues a = eval_analytic(spec.eta, gamma, phi + shift);
        const PointValues n =
            eval_numeric(spec.eta, gamma, phi, spec.outcome, spec.cutoff);
        rec.p_yn = a.p;
        rec.fidelity = a.f;
        rec.dp = n.p - a.p;
        rec.df = n.f - a.f;
        break;
      }
    }
    records[idx] = rec;
  });
  return records;
}

std::string format_double(double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value,
                                 std::chars_format::scientific, 16);
  return std::string(buf, res.ptr);
}

void write_records_csv(std::ostream& out,
                       const std::vector<SweepRecord>& records,
                       bool with_deltas) {
  out << "gamma,phi,eta,p_yn,fidelity";
  if (with_deltas) out << ",dp,dF";
  out << '\n';
  for (const SweepRecord& r : records) {
    out << format_double(r.gamma) << ',' << format_double(r.phi) << ','
        << format_double(r.eta) << ',' << format_double(r.p_yn) << ','
        << format_double(r.fidelity);
    if (with_deltas) {
      out << ',' << format_double(r.dp) << ',' << format_double(r.df);
    }
    out << '\n';
  }
}

void write_records_json(std::ostream& out,
                        const std::vector<SweepRecord>& records,
                        bool with_deltas) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SweepRecord& r : records) {
    nlohmann::ordered_json obj;
    obj["gamma"] = r.gamma;
    obj["phi"] = r.phi;
    obj["eta"] = r.eta;
    obj["p_yn"] = r.p_yn;
    obj["fidelity"] = r.fidelity;
    if (with_deltas) {
      obj["dp"] = r.dp;
      obj["dF"] = r.df;
    }
    arr.push_back(std::move(obj));
  }
  out << arr.dump(2) << '\n';
}

std::vector<SweepRecord> parse_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("empty CSV input");
  }
  bool with_deltas;
  if (line == "gamma,phi,eta,p_yn,fidelity") {
    with_deltas = false;
  } else if (line == "gamma,phi,eta,p_yn,fidelity,dp,dF") {
    with_deltas = true;
  } else {
    throw std::invalid_argument("unrecognized CSV header: " + line);
  }
  std::vector<SweepRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(row, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') {
        throw std::invalid_argument("bad CSV number: " + cell);
      }
      values.push_back(v);
    }
    const std::size_t expect = with_deltas ? 7 : 5;
    if (values.size() != expect) {
      throw std::invalid_argument("bad CSV row width");
    }
    SweepRecord r;
    r.gamma = values[0];
    r.phi = values[1];
    r.eta = values[2];
    r.p_yn = values[3];
    r.fidelity = values[4];
    if (with_deltas) {
      r.dp = values[5];
      r.df = values[6];
    }
    records.push_back(r);
  }
  return records;
}

namespace {

struct Candidate {
  double gamma = 0.0;
  double phi = 0.0;
  double p = 0.0;
  double f = 0.0;
  bool valid = false;
};

// Feasible candidates are ranked by fidelity; near-ties (1e-12) go to the
// higher heralding probability so flat fidelity plateaus pick the most
// productive point.
bool improves(const Candidate& cand, const Candidate& incumbent) {
  if (!cand.valid) return false;
  if (!incumbent.valid) return true;
  if (cand.f > incumbent.f + 1e-12) return true;
  if (std::abs(cand.f - incumbent.f) <= 1e-12 && cand.p > incumbent.p) {
    return true;
  }
  return false;
}

}  // namespace

DesignResult design_search(const DesignQuery& query) {
  if (!(query.eta >= 0.0 && query.eta <= 1.0)) {
    throw std::invalid_argument("quantum efficiency must lie in [0,1]");
  }
  if (!(query.p_min > 0.0 && query.p_min < 1.0)) {
    throw std::invalid_argument("probability floor must lie in (0,1)");
  }

  DesignResult result;
  Candidate best;

  const auto consider = [&](double gamma, double phi) {
    const PointValues v = eval_analytic(query.eta, gamma, phi);
    result.max_p_yn = std::max(result.max_p_yn, v.p);
    Candidate cand{gamma, phi, v.p, v.f, v.p >= query.p_min};
    if (improves(cand, best)) best = cand;
  };

  if (!query.target.has_value()) {
    constexpr double kGammaLo = 0.0, kGammaHi = 2.0;
    constexpr int kCoarse = 64;
    for (int j = 0; j < kCoarse; ++j) {
      const double phi = grid_value(0.0, kPi, kCoarse, j);
      for (int i = 0; i < kCoarse; ++i) {
        consider(grid_value(kGammaLo, kGammaHi, kCoarse, i), phi);
      }
    }
    result.round_best_fidelity.push_back(best.valid ? best.f : 0.0);
    if (best.valid) {
      double hg = (kGammaHi - kGammaLo) / (kCoarse - 1);
      double hp = kPi / (kCoarse - 1);
      for (int round = 0; round < 3; ++round) {
        const double glo = std::max(kGammaLo, best.gamma - hg);
        const double ghi = std::min(kGammaHi, best.gamma + hg);
        const double plo = std::max(0.0, best.phi - hp);
        const double phi_hi = std::min(kPi, best.phi + hp);
        for (int j = 0; j < 8; ++j) {
          const double phi = grid_value(plo, phi_hi, 8, j);
          for (int i = 0; i < 8; ++i) consider(grid_value(glo, ghi, 8, i), phi);
        }
        result.round_best_fidelity.push_back(best.f);
        hg /= 4.0;
        hp /= 4.0;
      }
    }
  } else {
    const double a0 = (*query.target)[0];
    const double a1 = (*query.target)[1];
    if (std::abs(a0) < 1e-15 && std::abs(a1) < 1e-15) {
      throw std::invalid_argument("target qubit must be nonzero");
    }
    constexpr int kScan = 256;
    constexpr double kGammaCap = 8.0;

    // The family realizing a0/a1: either a fixed-phi line with free gamma,
    // or gamma(phi) = (a1/a0) tan(phi).
    double phi_lo = 0.0, phi_hi = 0.0;
    bool gamma_free = false;
    double phi_fixed = 0.0;
    double ratio = 0.0;
    if (std::abs(a1) < 1e-15 * std::abs(a0)) {
      gamma_free = true;
      phi_fixed = kPi / 2.0;  // pure-vacuum target
    } else if (std::abs(a0) < 1e-15 * std::abs(a1)) {
      gamma_free = true;
      phi_fixed = 0.0;  // pure one-photon target
    } else {
      ratio = a1 / a0;
      if (ratio > 0.0) {
        phi_lo = 0.0;
        phi_hi = kPi / 2.0;
      } else {
        phi_lo = kPi / 2.0;
        phi_hi = kPi;
      }
    }

    const auto family_gamma = [&](double phi) {
      return gamma_free ? -1.0 : ratio * std::tan(phi);
    };
    const auto consider_param = [&](double x) {
      // x is gamma on gamma-free families, phi otherwise.
      if (gamma_free) {
        consider(x, phi_fixed);
      } else {
        const double g = family_gamma(x);
        if (g >= 0.0 && g <= kGammaCap) consider(g, x);
      }
    };

    const double lo = gamma_free ? 0.0 : phi_lo;
    const double hi = gamma_free ? 2.0 : phi_hi;
    // The phi interval is scanned open (its endpoints are tan poles/zeros);
    // a free gamma axis includes its endpoints.
    for (int i = 0; i < kScan; ++i) {
      consider_param(gamma_free ? grid_value(lo, hi, kScan, i)
                                : lo + (i + 1) * (hi - lo) / (kScan + 1));
    }
    result.round_best_fidelity.push_back(best.valid ? best.f : 0.0);
    if (best.valid) {
      double h = (hi - lo) / (kScan + 1);
      for (int round = 0; round < 3; ++round) {
        const double center = gamma_free ? best.gamma : best.phi;
        const double wlo = std::max(lo, center - h);
        const double whi = std::min(hi, center + h);
        for (int i = 0; i < 64; ++i) {
          consider_param(gamma_free ? grid_value(wlo, whi, 64, i)
                                    : wlo + (i + 1) * (whi - wlo) / 65.0);
        }
        result.round_best_fidelity.push_back(best.f);
        h /= 4.0;
      }
    }
  }

  result.feasible = best.valid;
  if (best.valid) {
    result.gamma = best.gamma;
    result.phi = best.phi;
    result.fidelity = best.f;
    result.p_yn = best.p;
  }
  return result;
}

}  // namespace linoq
