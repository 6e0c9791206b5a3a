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

#include "linoq/optics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "linoq/detail/indexing.hpp"

namespace linoq {

ModeTransform::ModeTransform(const Eigen::Matrix2cd& matrix) : s_(matrix) {
  const double defect =
      (s_.adjoint() * s_ - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  if (defect > 1e-12) {
    throw std::invalid_argument("mode transform is not unitary (defect " +
                                std::to_string(defect) + ")");
  }
}

ModeTransform mz_transform(double phi) {
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  Eigen::Matrix2cd m;
  m << s, -c, c, s;
  return ModeTransform(m);
}

Eigen::MatrixXcd two_mode_unitary(const ModeTransform& t, int cutoff) {
  if (cutoff < 2) throw InvalidDimensionError("cutoff must be at least 2");
  if (cutoff > kMaxPairCutoff) {
    throw InvalidDimensionError(
        "cutoff " + std::to_string(cutoff) + " exceeds the dense pair-"
        "transform cap of " + std::to_string(kMaxPairCutoff));
  }
  using CLD = std::complex<long double>;
  const int d = cutoff;
  const int max_n = 2 * (d - 1);

  std::vector<long double> fact(static_cast<std::size_t>(max_n) + 1, 1.0L);
  for (int n = 1; n <= max_n; ++n) fact[n] = fact[n - 1] * n;
  // Pascal triangle up to max_n.
  std::vector<std::vector<long double>> binom(fact.size());
  for (int n = 0; n <= max_n; ++n) {
    binom[n].assign(static_cast<std::size_t>(n) + 1, 1.0L);
    for (int k = 1; k < n; ++k) binom[n][k] = binom[n - 1][k - 1] + binom[n - 1][k];
  }
  // Entry powers S_ab^j for j = 0..max_n.
  const Eigen::Matrix2cd& s = t.matrix();
  std::array<std::vector<CLD>, 4> pw;
  for (int e = 0; e < 4; ++e) {
    pw[e].assign(fact.size(), CLD(1.0L));
    const CLD base(s(e / 2, e % 2).real(), s(e / 2, e % 2).imag());
    for (int j = 1; j <= max_n; ++j) pw[e][j] = pw[e][j - 1] * base;
  }
  const auto& p11 = pw[0];
  const auto& p12 = pw[1];
  const auto& p21 = pw[2];
  const auto& p22 = pw[3];

  // Matrix element between |m, n> and |p, q> with m+n = p+q = N comes from
  // expanding (S11 b+ + S12 c+)^m (S21 b+ + S22 c+)^n on the pair vacuum.
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (int total = 0; total <= max_n; ++total) {
    const int lo = std::max(0, total - (d - 1));
    const int hi = std::min(total, d - 1);
    for (int m = lo; m <= hi; ++m) {
      const int n = total - m;
      for (int p = lo; p <= hi; ++p) {
        const int q = total - p;
        CLD sum(0.0L);
        const int jlo = std::max(0, p - n);
        const int jhi = std::min(m, p);
        for (int j = jlo; j <= jhi; ++j) {
          const int k = p - j;
          sum += binom[m][j] * binom[n][k] * p11[j] * p12[m - j] * p21[k] *
                 p22[n - k];
        }
        const long double pref =
            std::sqrt(fact[p] / fact[m] * (fact[q] / fact[n]));
        sum *= pref;
        u(p * d + q, m * d + n) = Complex(static_cast<double>(sum.real()),
                                          static_cast<double>(sum.imag()));
      }
    }
  }
  return u;
}

FockState apply_transform(const FockState& state, const ModeTransform& t,
                          int mode1, int mode2, double* leakage) {
  const int modes = state.num_modes();
  if (mode1 < 0 || mode1 >= modes || mode2 < 0 || mode2 >= modes) {
    throw std::out_of_range("mode index outside 0..num_modes-1");
  }
  if (mode1 == mode2) {
    throw std::invalid_argument("apply_transform needs two distinct modes");
  }
  const int d = state.cutoff();
  const Eigen::MatrixXcd u = two_mode_unitary(t, d);

  const auto strides = detail::mode_strides(modes, d);
  const Eigen::Index s1 = strides[static_cast<std::size_t>(mode1)];
  const Eigen::Index s2 = strides[static_cast<std::size_t>(mode2)];
  std::vector<int> rest;
  for (int k = 0; k < modes; ++k) {
    if (k != mode1 && k != mode2) rest.push_back(k);
  }
  const auto rest_off = detail::subindex_offsets(rest, modes, d);

  Eigen::VectorXcd out(state.dim());
  Eigen::VectorXcd slice(d * d);
  for (const Eigen::Index base : rest_off) {
    for (int n1 = 0; n1 < d; ++n1) {
      for (int n2 = 0; n2 < d; ++n2) {
        slice(n1 * d + n2) = state.amplitudes()(base + n1 * s1 + n2 * s2);
      }
    }
    const Eigen::VectorXcd mixed = u * slice;
    for (int n1 = 0; n1 < d; ++n1) {
      for (int n2 = 0; n2 < d; ++n2) {
        out(base + n1 * s1 + n2 * s2) = mixed(n1 * d + n2);
      }
    }
  }

  const double leak = state.squared_norm() - out.squaredNorm();
  if (leakage != nullptr) *leakage = std::max(leak, 0.0);
  if (leak > kLeakageTol) {
    throw TruncationError("transform pushed " + std::to_string(leak) +
                          " of the state past the cutoff; raise it");
  }
  return FockState(modes, d, std::move(out));
}

FockState prepare_entangled(int cutoff) {
  if (cutoff < 2) throw InvalidDimensionError("cutoff must be at least 2");
  Eigen::VectorXcd amps =
      Eigen::VectorXcd::Zero(detail::pow_dim(cutoff, 2));
  const double w = 1.0 / std::sqrt(2.0);
  amps(0 * cutoff + 1) = w;
  amps(1 * cutoff + 0) = w;
  return FockState(2, cutoff, std::move(amps));
}

FockState build_circuit_state(Complex gamma, double phi, int cutoff,
                              double* leakage) {
  const FockState joint =
      tensor(prepare_entangled(cutoff), coherent_state(gamma, cutoff));
  return apply_transform(joint, mz_transform(phi), 1, 2, leakage);
}

}  // namespace linoq
