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

#include <vector>

#include <Eigen/Dense>

#include "linoq/errors.hpp"

namespace linoq::detail {

// d^m with an overflow guard; truncated spaces here are always dense.
inline Eigen::Index pow_dim(int cutoff, int num_modes) {
  Eigen::Index dim = 1;
  for (int k = 0; k < num_modes; ++k) {
    if (dim > (Eigen::Index{1} << 26) / cutoff) {
      throw InvalidDimensionError("truncated space too large for dense storage");
    }
    dim *= cutoff;
  }
  return dim;
}

// Stride of each mode in the row-major flat index (mode 0 slowest).
inline std::vector<Eigen::Index> mode_strides(int num_modes, int cutoff) {
  std::vector<Eigen::Index> strides(num_modes);
  Eigen::Index s = 1;
  for (int k = num_modes - 1; k >= 0; --k) {
    strides[k] = s;
    s *= cutoff;
  }
  return strides;
}

// Flat-index offsets of every multi-index over the listed modes, the first
// listed mode varying slowest. offsets.size() == cutoff^modes.size().
inline std::vector<Eigen::Index> subindex_offsets(
    const std::vector<int>& modes, int num_modes, int cutoff) {
  const auto strides = mode_strides(num_modes, cutoff);
  const Eigen::Index count = pow_dim(cutoff, static_cast<int>(modes.size()));
  std::vector<Eigen::Index> offsets(static_cast<std::size_t>(count), 0);
  std::vector<int> digits(modes.size(), 0);
  for (Eigen::Index t = 0; t < count; ++t) {
    Eigen::Index off = 0;
    for (std::size_t i = 0; i < modes.size(); ++i) {
      off += digits[i] * strides[static_cast<std::size_t>(modes[i])];
    }
    offsets[static_cast<std::size_t>(t)] = off;
    for (int i = static_cast<int>(modes.size()) - 1; i >= 0; --i) {
      if (++digits[static_cast<std::size_t>(i)] < cutoff) break;
      digits[static_cast<std::size_t>(i)] = 0;
    }
  }
  return offsets;
}

}  // namespace linoq::detail
