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

#include <map>
#include <vector>

#include <Eigen/Dense>

#include "linoq/fock.hpp"

namespace linoq {

// Below this probability an outcome is treated as impossible and no
// conditional state is produced.
inline constexpr double kZeroProbabilityTol = 1e-12;

enum class Outcome { No, Yes };

// Binary (click / no-click) photodetector with quantum efficiency eta.
// Both measurement elements are diagonal in the Fock basis: the no-click
// weight at level p is (1-eta)^p, the click weight is its complement, so the
// two elements sum to the identity exactly.
class DetectorModel {
 public:
  DetectorModel(double eta, int cutoff);

  double eta() const { return eta_; }
  int cutoff() const { return cutoff_; }

  const Eigen::VectorXd& no_click_diagonal() const { return no_click_; }
  Eigen::VectorXd click_diagonal() const {
    return Eigen::VectorXd::Ones(cutoff_) - no_click_;
  }

  double outcome_weight(Outcome o, int level) const {
    const double w = no_click_(level);
    return o == Outcome::No ? w : 1.0 - w;
  }

 private:
  double eta_;
  int cutoff_;
  Eigen::VectorXd no_click_;
};

// Free-function constructor for the two-element measurement.
inline DetectorModel povm_elements(double eta, int cutoff) {
  return DetectorModel(eta, cutoff);
}

struct MeasuredMode {
  DetectorModel detector;
  Outcome outcome;
};

struct ConditionalResult {
  double probability;
  DensityOperator state;  // over the unmeasured modes, unit trace
};

// Projects the pure state onto the given detector outcomes and reduces to
// the unmeasured modes. Exact for these detectors: both elements are
// diagonal, so conditioning with the weights themselves equals conditioning
// with their positive square roots. Throws ZeroProbabilityError when the
// outcome probability falls below kZeroProbabilityTol.
ConditionalResult condition(const FockState& state,
                            const std::map<int, MeasuredMode>& measured);

// One tag per measured mode, ascending mode order.
using OutcomePattern = std::vector<Outcome>;

// Probability of every click/no-click pattern over the measured modes.
std::map<OutcomePattern, double> outcome_distribution(
    const FockState& state, const std::map<int, DetectorModel>& detectors);

}  // namespace linoq
