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

#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "linoq/scheme.hpp"

namespace linoq {

enum class EvalMode { Analytic, Numeric, Both };

// Rectangular (gamma, phi) grid at fixed eta. Ranges are inclusive; a
// single-step range pins its value to the minimum.
struct SweepSpec {
  double gamma_min = 0.0;
  double gamma_max = 2.0;
  int gamma_steps = 41;
  double phi_min = 0.0;
  double phi_max = 3.14159265358979323846;
  int phi_steps = 41;
  double eta = 0.8;
  HeraldOutcome outcome = HeraldOutcome::YesNo;
  EvalMode mode = EvalMode::Analytic;
  int cutoff = kAutoCutoff;
};

// One grid point. In Both mode p_yn/fidelity hold the closed-form values and
// dp/df the numeric-minus-analytic deviations. Grid points whose heralding
// probability vanishes have no conditional state; their fidelity is recorded
// as 0.
struct SweepRecord {
  double gamma = 0.0;
  double phi = 0.0;
  double eta = 0.0;
  double p_yn = 0.0;
  double fidelity = 0.0;
  double dp = 0.0;
  double df = 0.0;
};

// Evaluates the grid (phi outer, gamma inner) on a worker pool; results are
// written into per-point slots so the row order never depends on scheduling.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

// Locale-independent scientific notation with 17 significant digits; CSV
// written this way parses back bit-exactly.
std::string format_double(double value);

void write_records_csv(std::ostream& out,
                       const std::vector<SweepRecord>& records,
                       bool with_deltas);
void write_records_json(std::ostream& out,
                        const std::vector<SweepRecord>& records,
                        bool with_deltas);
std::vector<SweepRecord> parse_records_csv(std::istream& in);

// Best operating point: maximize fidelity subject to a heralding-probability
// floor, optionally restricted to the one-parameter family that realizes a
// given target qubit.
struct DesignQuery {
  double eta = 0.8;
  double p_min = 0.1;
  std::optional<std::array<double, 2>> target;  // (a0, a1), real pair
};

struct DesignResult {
  bool feasible = false;
  double gamma = 0.0;
  double phi = 0.0;
  double fidelity = 0.0;
  double p_yn = 0.0;
  double max_p_yn = 0.0;  // best probability seen, reported when infeasible
  // Incumbent fidelity after the coarse pass and each refinement round;
  // nondecreasing by construction.
  std::vector<double> round_best_fidelity;
};

DesignResult design_search(const DesignQuery& query);

}  // namespace linoq
