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

#include "linoq/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "linoq/detail/indexing.hpp"

namespace linoq {

namespace {

void check_cutoff(int cutoff) {
  if (cutoff < 2) {
    throw InvalidDimensionError("cutoff must be at least 2, got " +
                                std::to_string(cutoff));
  }
}

void check_num_modes(int num_modes) {
  if (num_modes < 1) {
    throw InvalidDimensionError("num_modes must be positive, got " +
                                std::to_string(num_modes));
  }
}

}  // namespace

double coherent_tail_mass(double abs_gamma, int cutoff) {
  if (cutoff < 1) throw InvalidDimensionError("cutoff must be positive");
  const double lambda = abs_gamma * abs_gamma;
  if (lambda == 0.0) return 0.0;
  if (lambda > 700.0) {
    // e^{-lambda} underflows; amplitudes this large are out of scope.
    throw InvalidDimensionError("coherent amplitude too large");
  }
  // Walk the Poisson pmf up to the cutoff, then sum the tail directly.
  long double term = std::exp(static_cast<long double>(-lambda));
  for (int n = 1; n <= cutoff; ++n) term *= lambda / n;
  // term now holds the pmf at n = cutoff.
  long double tail = 0.0L;
  int n = cutoff;
  while (term > 0.0L) {
    tail += term;
    ++n;
    term *= lambda / n;
    if (term < tail * 1e-22L && n > lambda) break;
  }
  return static_cast<double>(tail);
}

int auto_cutoff(double abs_gamma) {
  int d = 4;
  while (coherent_tail_mass(abs_gamma, d) >= kCoherentTailTol) ++d;
  return d;
}

FockState::FockState(int num_modes, int cutoff, Eigen::VectorXcd amplitudes)
    : num_modes_(num_modes), cutoff_(cutoff), amps_(std::move(amplitudes)) {
  check_num_modes(num_modes_);
  check_cutoff(cutoff_);
  const Eigen::Index dim = detail::pow_dim(cutoff_, num_modes_);
  if (amps_.size() != dim) {
    throw IncompatibilityError(
        "amplitude vector has length " + std::to_string(amps_.size()) +
        ", expected " + std::to_string(dim));
  }
}

Complex FockState::amplitude(std::span<const int> levels) const {
  if (static_cast<int>(levels.size()) != num_modes_) {
    throw IncompatibilityError("expected one occupation number per mode");
  }
  Eigen::Index flat = 0;
  for (int n : levels) {
    if (n < 0 || n >= cutoff_) {
      throw std::out_of_range("occupation number outside 0..cutoff-1");
    }
    flat = flat * cutoff_ + n;
  }
  return amps_(flat);
}

double FockState::mean_photon_number() const {
  double mean = 0.0;
  for (Eigen::Index i = 0; i < amps_.size(); ++i) {
    Eigen::Index rem = i;
    int total = 0;
    for (int k = 0; k < num_modes_; ++k) {
      total += static_cast<int>(rem % cutoff_);
      rem /= cutoff_;
    }
    mean += std::norm(amps_(i)) * total;
  }
  return mean;
}

std::vector<double> FockState::total_photon_distribution() const {
  std::vector<double> dist(
      static_cast<std::size_t>(num_modes_ * (cutoff_ - 1) + 1), 0.0);
  for (Eigen::Index i = 0; i < amps_.size(); ++i) {
    Eigen::Index rem = i;
    int total = 0;
    for (int k = 0; k < num_modes_; ++k) {
      total += static_cast<int>(rem % cutoff_);
      rem /= cutoff_;
    }
    dist[static_cast<std::size_t>(total)] += std::norm(amps_(i));
  }
  return dist;
}

DensityOperator::DensityOperator(int num_modes, int cutoff,
                                 Eigen::MatrixXcd matrix)
    : num_modes_(num_modes), cutoff_(cutoff), mat_(std::move(matrix)) {
  check_num_modes(num_modes_);
  check_cutoff(cutoff_);
  const Eigen::Index dim = detail::pow_dim(cutoff_, num_modes_);
  if (mat_.rows() != dim || mat_.cols() != dim) {
    throw IncompatibilityError("matrix must be square of side " +
                               std::to_string(dim));
  }
}

double DensityOperator::hermiticity_defect() const {
  return (mat_ - mat_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityOperator::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      0.5 * (mat_ + mat_.adjoint()), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double DensityOperator::purity() const {
  return (mat_ * mat_).trace().real();
}

FockState vacuum(int num_modes, int cutoff) {
  check_num_modes(num_modes);
  check_cutoff(cutoff);
  Eigen::VectorXcd amps =
      Eigen::VectorXcd::Zero(detail::pow_dim(cutoff, num_modes));
  amps(0) = 1.0;
  return FockState(num_modes, cutoff, std::move(amps));
}

FockState number_state(int n, int cutoff) {
  check_cutoff(cutoff);
  if (n < 0 || n >= cutoff) {
    throw std::out_of_range("number state " + std::to_string(n) +
                            " does not fit below cutoff " +
                            std::to_string(cutoff));
  }
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(cutoff);
  amps(n) = 1.0;
  return FockState(1, cutoff, std::move(amps));
}

FockState coherent_state(Complex gamma, int cutoff, double* discarded_mass) {
  check_cutoff(cutoff);
  const double tail = coherent_tail_mass(std::abs(gamma), cutoff);
  if (tail >= kCoherentTailTol) {
    throw TruncationError(
        "coherent state discards " + std::to_string(tail) +
        " of its mass at cutoff " + std::to_string(cutoff) +
        "; need at least " + std::to_string(auto_cutoff(std::abs(gamma))));
  }
  Eigen::VectorXcd amps(cutoff);
  Complex c = std::exp(-0.5 * std::norm(gamma));
  amps(0) = c;
  for (int n = 1; n < cutoff; ++n) {
    c *= gamma / std::sqrt(static_cast<double>(n));
    amps(n) = c;
  }
  amps /= amps.norm();
  if (discarded_mass != nullptr) *discarded_mass = tail;
  return FockState(1, cutoff, std::move(amps));
}

FockState tensor(const FockState& s1, const FockState& s2) {
  if (s1.cutoff() != s2.cutoff()) {
    throw IncompatibilityError("tensor requires equal cutoffs");
  }
  const Eigen::Index d1 = s1.dim();
  const Eigen::Index d2 = s2.dim();
  Eigen::VectorXcd amps(d1 * d2);
  for (Eigen::Index i = 0; i < d1; ++i) {
    amps.segment(i * d2, d2) = s1.amplitudes()(i) * s2.amplitudes();
  }
  return FockState(s1.num_modes() + s2.num_modes(), s1.cutoff(),
                   std::move(amps));
}

DensityOperator to_density(const FockState& s) {
  Eigen::MatrixXcd mat = s.amplitudes() * s.amplitudes().adjoint();
  return DensityOperator(s.num_modes(), s.cutoff(), std::move(mat));
}

DensityOperator partial_trace(const DensityOperator& rho,
                              const std::vector<int>& keep) {
  if (keep.empty()) {
    throw std::invalid_argument("partial_trace requires a nonempty keep set");
  }
  std::vector<int> kept = keep;
  std::sort(kept.begin(), kept.end());
  if (std::unique(kept.begin(), kept.end()) != kept.end()) {
    throw std::invalid_argument("duplicate mode index in keep set");
  }
  if (kept.front() < 0 || kept.back() >= rho.num_modes()) {
    throw std::out_of_range("mode index outside 0..num_modes-1");
  }
  std::vector<int> traced;
  for (int k = 0; k < rho.num_modes(); ++k) {
    if (!std::binary_search(kept.begin(), kept.end(), k)) traced.push_back(k);
  }
  const auto keep_off =
      detail::subindex_offsets(kept, rho.num_modes(), rho.cutoff());
  const auto trace_off =
      detail::subindex_offsets(traced, rho.num_modes(), rho.cutoff());
  const Eigen::Index dim_keep = static_cast<Eigen::Index>(keep_off.size());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim_keep, dim_keep);
  const auto& m = rho.matrix();
  for (Eigen::Index i = 0; i < dim_keep; ++i) {
    for (Eigen::Index j = 0; j < dim_keep; ++j) {
      Complex sum = 0.0;
      for (const Eigen::Index t : trace_off) {
        sum += m(keep_off[static_cast<std::size_t>(i)] + t,
                 keep_off[static_cast<std::size_t>(j)] + t);
      }
      out(i, j) = sum;
    }
  }
  return DensityOperator(static_cast<int>(kept.size()), rho.cutoff(),
                         std::move(out));
}

double fidelity_pure(const FockState& target, const DensityOperator& rho) {
  if (target.num_modes() != rho.num_modes() ||
      target.cutoff() != rho.cutoff()) {
    throw IncompatibilityError("target and state live in different spaces");
  }
  if (std::abs(target.squared_norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("fidelity target must be normalized");
  }
  const Complex f =
      target.amplitudes().dot(rho.matrix() * target.amplitudes());
  constexpr double kTol = 1e-10;
  if (std::abs(f.imag()) > kTol) {
    throw NumericalInconsistencyError(
        "fidelity has imaginary part " + std::to_string(f.imag()));
  }
  double value = f.real();
  if (value < -kTol || value > 1.0 + kTol) {
    throw NumericalInconsistencyError("fidelity " + std::to_string(value) +
                                      " outside [0,1]");
  }
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace linoq
