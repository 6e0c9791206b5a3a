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

#include "linoq/detection.hpp"
#include "linoq/fock.hpp"
#include "linoq/optics.hpp"

namespace linoq {

// Heralding pattern on the two detected interferometer outputs: which of
// (mode b, mode c) clicked. The NoYes case reproduces YesNo with the shift
// phi -> phi + pi/2.
enum class HeraldOutcome { YesNo, NoYes };

inline constexpr int kAutoCutoff = 0;

struct SchemeParams {
  double eta = 0.8;
  Complex gamma = 0.0;
  double phi = 0.0;
  int cutoff = kAutoCutoff;

  // Auto cutoff follows the coherent tail rule; explicit cutoffs are taken
  // as given (downstream construction still enforces the tail rule).
  int resolve_cutoff() const;
};

// Unnormalized entries of the heralded single-mode state: populations d00,
// d11 and the |0><1| entry d01. d00 + d11 equals the heralding probability.
struct QubitCoefficients {
  double d00 = 0.0;
  double d11 = 0.0;
  Complex d01 = 0.0;
};

// Normalized vacuum/one-photon superposition a0|0> + a1|1>.
struct TargetQubit {
  Complex a0;
  Complex a1;
};

struct SchemeResult {
  double probability = 0.0;
  DensityOperator rho;  // heralded mode, {|0>,|1>} block (cutoff 2)
  double fidelity = 0.0;
  struct Diagnostics {
    double coherent_tail_mass = 0.0;    // discarded by the input truncation
    double transform_leakage = 0.0;     // norm^2 lost in the interferometer
    double high_level_population = 0.0; // heralded-mode mass above level 1
  } diagnostics;
};

// Closed-form probability of a click on mode b and none on mode c.
double p_yn_analytic(double eta, Complex gamma, double phi);

// Closed-form unnormalized entries of the heralded state.
QubitCoefficients coefficients_analytic(double eta, Complex gamma, double phi);

// Closed-form heralded state, embedded in a single-mode truncated space.
DensityOperator rho_yn_analytic(double eta, Complex gamma, double phi,
                                int cutoff = 2);

// Ideal heralded qubit: the conditional output of perfect number-resolving
// detection, proportional to sin(phi)|0> + gamma cos(phi)|1>. Undefined when
// both amplitudes vanish (gamma = 0 and phi = 0 mod pi).
TargetQubit target_state(Complex gamma, double phi);

// Closed-form overlap of the heralded state with the ideal target. Agrees
// with fidelity_pure(target_state, rho_yn_analytic) to 1e-12.
double fidelity_analytic(double eta, Complex gamma, double phi);

// Full truncated-space pipeline: build the circuit state, condition the two
// detected modes on the heralding pattern, reduce to the heralded mode,
// check its support is confined to levels {0,1}, and score against the
// ideal target (shifted by pi/2 for the NoYes pattern).
SchemeResult run_numeric(const SchemeParams& params, HeraldOutcome outcome);

}  // namespace linoq
