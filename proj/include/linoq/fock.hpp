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

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "linoq/errors.hpp"

namespace linoq {

using Complex = std::complex<double>;

// Truncated coherent states must discard less than this much photon-number
// mass; auto_cutoff() picks the smallest cutoff satisfying it.
inline constexpr double kCoherentTailTol = 1e-12;

// Poisson mass sum_{n >= cutoff} e^{-|g|^2} |g|^{2n} / n!, i.e. the photon
// statistics of |g> beyond the kept Fock levels.
double coherent_tail_mass(double abs_gamma, int cutoff);

// Smallest cutoff, at least 4, whose coherent tail mass is below
// kCoherentTailTol for the given amplitude.
int auto_cutoff(double abs_gamma);

// Pure state of num_modes bosonic modes, each truncated to Fock levels
// 0..cutoff-1. Amplitudes are stored row-major with mode 0 slowest:
//   flat = (...(n_0 * d + n_1) * d + ...) + n_{M-1},  d = cutoff.
// Values are immutable after construction.
class FockState {
 public:
  FockState(int num_modes, int cutoff, Eigen::VectorXcd amplitudes);

  int num_modes() const { return num_modes_; }
  int cutoff() const { return cutoff_; }
  Eigen::Index dim() const { return amps_.size(); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }

  // Amplitude of one basis ket, given one occupation number per mode.
  Complex amplitude(std::span<const int> levels) const;
  Complex amplitude(std::initializer_list<int> levels) const {
    return amplitude(std::span<const int>(levels.begin(), levels.size()));
  }

  double squared_norm() const { return amps_.squaredNorm(); }
  double norm() const { return amps_.norm(); }

  // Expectation of the total photon number over all modes.
  double mean_photon_number() const;

  // Probability of finding exactly N photons in total, N = 0..M*(d-1).
  std::vector<double> total_photon_distribution() const;

 private:
  int num_modes_;
  int cutoff_;
  Eigen::VectorXcd amps_;
};

// Operator over the same truncated basis as FockState. The constructor only
// checks shape; Hermiticity, positivity and trace are properties of the
// operations that produce density operators, exposed here for verification.
class DensityOperator {
 public:
  DensityOperator(int num_modes, int cutoff, Eigen::MatrixXcd matrix);

  int num_modes() const { return num_modes_; }
  int cutoff() const { return cutoff_; }
  Eigen::Index dim() const { return mat_.rows(); }
  const Eigen::MatrixXcd& matrix() const { return mat_; }

  double trace() const { return mat_.trace().real(); }
  // max elementwise |rho - rho^dagger|
  double hermiticity_defect() const;
  double min_eigenvalue() const;
  double purity() const;

 private:
  int num_modes_;
  int cutoff_;
  Eigen::MatrixXcd mat_;
};

// All-modes-empty basis state. cutoff must be at least 2.
FockState vacuum(int num_modes, int cutoff);

// Single-mode number state |n>, n < cutoff.
FockState number_state(int n, int cutoff);

// Single-mode coherent state, truncated and renormalized. Throws
// TruncationError when the discarded tail mass reaches kCoherentTailTol.
// The discarded mass (before renormalization) is reported if requested.
FockState coherent_state(Complex gamma, int cutoff,
                         double* discarded_mass = nullptr);

// Outer product; s1's modes come first. Cutoffs must match.
FockState tensor(const FockState& s1, const FockState& s2);

// |psi><psi|.
DensityOperator to_density(const FockState& s);

// Reduction onto the kept modes (original relative order preserved).
DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<int>& keep);

// <target|rho|target> for a normalized pure target. The result is clamped to
// [0,1] when it strays past a boundary by at most 1e-10; larger excursions or
// an imaginary part beyond 1e-10 raise NumericalInconsistencyError.
double fidelity_pure(const FockState& target, const DensityOperator& rho);

}  // namespace linoq
