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

#include <string>
#include <vector>

#include "linoq/scheme.hpp"

namespace linoq {

// Options for the closed-form-vs-simulation reconciliation suite. The fault
// term perturbs the simulated arm's quantum efficiency; it exists so the
// suite can prove it catches a deliberate mismatch.
struct VerifyOptions {
  std::vector<double> etas{0.4, 0.8, 1.0};
  int grid = 12;
  double inject_eta_fault = 0.0;
};

struct VerifyCheck {
  std::string name;
  double worst = 0.0;      // largest violation observed
  double tolerance = 0.0;
  bool passed = false;
  std::string worst_point;
};

struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

VerifyReport run_verification(const VerifyOptions& options);

// Fixed-width summary table, one line per check.
std::string format_report(const VerifyReport& report);

}  // namespace linoq
