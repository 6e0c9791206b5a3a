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

#include <Eigen/Dense>

#include "linoq/fock.hpp"

namespace linoq {

// Norm-squared mass an apply_transform call may push past the cutoff before
// it refuses the result.
inline constexpr double kLeakageTol = 1e-9;

// The induced pair unitary is stored dense (cutoff^2 x cutoff^2); this cap
// keeps it within desk-scale memory and covers coherent amplitudes well
// beyond the weak-drive regime.
inline constexpr int kMaxPairCutoff = 48;

// Passive linear transform of one mode pair. The 2x2 matrix S mixes the
// pair's creation operators,
//   b+ -> S11 b+ + S12 c+,   c+ -> S21 b+ + S22 c+,
// so coherent amplitudes map as (b, c) -> (S11 b + S21 c, S12 b + S22 c).
class ModeTransform {
 public:
  // Throws std::invalid_argument when S is not unitary within 1e-12.
  explicit ModeTransform(const Eigen::Matrix2cd& matrix);

  const Eigen::Matrix2cd& matrix() const { return s_; }

  friend ModeTransform operator*(const ModeTransform& a,
                                 const ModeTransform& b) {
    return ModeTransform(a.s_ * b.s_);
  }

 private:
  Eigen::Matrix2cd s_;
};

// Interferometer with internal shift phi:
//   S(phi) = [[sin phi, -cos phi], [cos phi, sin phi]].
// A photon entering the first mode exits with amplitude sin(phi) there and
// -cos(phi) on the second; a coherent |g> entering the second mode exits as
// |g cos(phi)> x |g sin(phi)>.
ModeTransform mz_transform(double phi);

// Unitary induced by t on the truncated two-mode space, basis index
// n1*cutoff + n2. Built block-by-block over the total photon number; blocks
// reaching past the cutoff are restrictions of the exact unitary (mass moved
// beyond the kept levels is dropped).
Eigen::MatrixXcd two_mode_unitary(const ModeTransform& t, int cutoff);

// Applies t to the selected mode pair. Norm and the total photon-number
// distribution are preserved up to truncation leakage; leakage above
// kLeakageTol raises TruncationError. The observed leakage (norm-squared
// lost) is reported if requested.
FockState apply_transform(const FockState& state, const ModeTransform& t,
                          int mode1, int mode2, double* leakage = nullptr);

// Two-mode single-photon path-entangled state (|0,1> + |1,0>)/sqrt(2), the
// output of a balanced beam splitter fed by one photon.
FockState prepare_entangled(int cutoff);

// Three-mode state of the full preparation circuit: mode 0 entangled with
// mode 1, mode 2 seeded with coherent amplitude gamma, then the
// interferometer S(phi) applied to modes (1, 2).
FockState build_circuit_state(Complex gamma, double phi, int cutoff,
                              double* leakage = nullptr);

}  // namespace linoq
