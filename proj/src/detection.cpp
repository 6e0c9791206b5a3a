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

#include "linoq/detection.hpp"

#include <string>

#include "linoq/detail/indexing.hpp"

namespace linoq {

DetectorModel::DetectorModel(double eta, int cutoff)
    : eta_(eta), cutoff_(cutoff) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("quantum efficiency must lie in [0,1], got " +
                                std::to_string(eta));
  }
  if (cutoff < 2) throw InvalidDimensionError("cutoff must be at least 2");
  no_click_.resize(cutoff);
  double w = 1.0;
  for (int p = 0; p < cutoff; ++p) {
    no_click_(p) = w;
    w *= 1.0 - eta;
  }
}

namespace {

std::vector<int> measured_mode_list(const FockState& state, int n_measured,
                                    const std::vector<int>& indices) {
  if (n_measured == 0) {
    throw std::invalid_argument("at least one mode must be measured");
  }
  if (n_measured >= state.num_modes()) {
    throw std::invalid_argument("at least one unmeasured mode must remain");
  }
  for (int m : indices) {
    if (m < 0 || m >= state.num_modes()) {
      throw std::out_of_range("measured mode index outside 0..num_modes-1");
    }
  }
  return indices;
}

}  // namespace

ConditionalResult condition(const FockState& state,
                            const std::map<int, MeasuredMode>& measured) {
  std::vector<int> meas_modes;
  for (const auto& [mode, mm] : measured) {
    if (mm.detector.cutoff() != state.cutoff()) {
      throw IncompatibilityError("detector cutoff differs from state cutoff");
    }
    meas_modes.push_back(mode);
  }
  measured_mode_list(state, static_cast<int>(meas_modes.size()), meas_modes);

  std::vector<int> kept;
  for (int k = 0; k < state.num_modes(); ++k) {
    if (measured.find(k) == measured.end()) kept.push_back(k);
  }
  const int d = state.cutoff();
  const auto keep_off =
      detail::subindex_offsets(kept, state.num_modes(), d);
  const auto meas_off =
      detail::subindex_offsets(meas_modes, state.num_modes(), d);
  const Eigen::Index dim_keep = static_cast<Eigen::Index>(keep_off.size());
  const Eigen::Index dim_meas = static_cast<Eigen::Index>(meas_off.size());

  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim_keep, dim_keep);
  Eigen::VectorXcd v(dim_keep);
  double prob = 0.0;
  for (Eigen::Index t = 0; t < dim_meas; ++t) {
    // Weight of this measured-mode configuration: product of the per-mode
    // diagonal element at the configuration's occupation numbers.
    double w = 1.0;
    Eigen::Index rem = t;
    for (int i = static_cast<int>(meas_modes.size()) - 1; i >= 0; --i) {
      const int level = static_cast<int>(rem % d);
      rem /= d;
      const auto& mm = measured.at(meas_modes[static_cast<std::size_t>(i)]);
      w *= mm.detector.outcome_weight(mm.outcome, level);
    }
    if (w == 0.0) continue;
    for (Eigen::Index i = 0; i < dim_keep; ++i) {
      v(i) = state.amplitudes()(keep_off[static_cast<std::size_t>(i)] +
                                meas_off[static_cast<std::size_t>(t)]);
    }
    prob += w * v.squaredNorm();
    rho.noalias() += w * (v * v.adjoint());
  }
  if (prob < kZeroProbabilityTol) {
    throw ZeroProbabilityError("outcome probability " + std::to_string(prob) +
                               " below " + std::to_string(kZeroProbabilityTol));
  }
  rho /= prob;
  return ConditionalResult{
      prob, DensityOperator(static_cast<int>(kept.size()), d, std::move(rho))};
}

std::map<OutcomePattern, double> outcome_distribution(
    const FockState& state, const std::map<int, DetectorModel>& detectors) {
  std::vector<int> meas_modes;
  for (const auto& [mode, det] : detectors) {
    if (det.cutoff() != state.cutoff()) {
      throw IncompatibilityError("detector cutoff differs from state cutoff");
    }
    meas_modes.push_back(mode);
  }
  measured_mode_list(state, static_cast<int>(meas_modes.size()), meas_modes);

  const int d = state.cutoff();
  const int k = static_cast<int>(meas_modes.size());
  const auto strides = detail::mode_strides(state.num_modes(), d);

  // Occupation number of each measured mode at every flat index.
  std::vector<std::vector<int>> digits(
      static_cast<std::size_t>(k),
      std::vector<int>(static_cast<std::size_t>(state.dim())));
  for (Eigen::Index flat = 0; flat < state.dim(); ++flat) {
    for (int i = 0; i < k; ++i) {
      digits[static_cast<std::size_t>(i)][static_cast<std::size_t>(flat)] =
          static_cast<int>(
              (flat / strides[static_cast<std::size_t>(meas_modes[i])]) % d);
    }
  }

  std::map<OutcomePattern, double> dist;
  for (unsigned mask = 0; mask < (1u << k); ++mask) {
    OutcomePattern pattern(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      pattern[static_cast<std::size_t>(i)] =
          (mask >> i) & 1u ? Outcome::Yes : Outcome::No;
    }
    double p = 0.0;
    for (Eigen::Index flat = 0; flat < state.dim(); ++flat) {
      const double a2 = std::norm(state.amplitudes()(flat));
      if (a2 == 0.0) continue;
      double w = 1.0;
      for (int i = 0; i < k; ++i) {
        w *= detectors.at(meas_modes[static_cast<std::size_t>(i)])
                 .outcome_weight(pattern[static_cast<std::size_t>(i)],
                                 digits[static_cast<std::size_t>(i)]
                                       [static_cast<std::size_t>(flat)]);
      }
      p += a2 * w;
    }
    dist.emplace(std::move(pattern), p);
  }
  return dist;
}

}  // namespace linoq
