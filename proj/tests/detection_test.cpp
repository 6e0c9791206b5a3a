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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "linoq/optics.hpp"

using namespace linoq;

namespace {

FockState random_state(int num_modes, int cutoff, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  Eigen::Index dim = 1;
  for (int k = 0; k < num_modes; ++k) dim *= cutoff;
  Eigen::VectorXcd amps(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    amps(i) = Complex(dist(rng), dist(rng));
  }
  amps /= amps.norm();
  return FockState(num_modes, cutoff, std::move(amps));
}

}  // namespace

TEST(DetectorModel, PerfectDetectorProjectsOntoVacuum) {
  const DetectorModel det = povm_elements(1.0, 5);
  Eigen::VectorXd expect = Eigen::VectorXd::Zero(5);
  expect(0) = 1.0;
  EXPECT_EQ(det.no_click_diagonal(), expect);
}

TEST(DetectorModel, BlindDetectorNeverClicks) {
  const DetectorModel det = povm_elements(0.0, 5);
  EXPECT_EQ(det.no_click_diagonal(), Eigen::VectorXd::Ones(5));
  EXPECT_EQ(det.click_diagonal(), Eigen::VectorXd::Zero(5));
}

TEST(DetectorModel, NoClickWeights) {
  const DetectorModel det = povm_elements(0.8, 5);
  EXPECT_NEAR(det.no_click_diagonal()(2), 0.04, 1e-15);
  EXPECT_NEAR(det.no_click_diagonal()(1), 0.2, 1e-15);
  EXPECT_DOUBLE_EQ(det.no_click_diagonal()(0), 1.0);
}

TEST(DetectorModel, CompletenessIsExact) {
  for (double eta : {0.0, 0.13, 0.5, 0.8, 0.999, 1.0}) {
    const DetectorModel det = povm_elements(eta, 12);
    const Eigen::VectorXd sum = det.no_click_diagonal() + det.click_diagonal();
    for (int p = 0; p < 12; ++p) {
      EXPECT_EQ(sum(p), 1.0) << "eta=" << eta << " p=" << p;
    }
  }
}

TEST(DetectorModel, WeightsWithinUnitInterval) {
  const DetectorModel det = povm_elements(0.37, 16);
  EXPECT_GE(det.no_click_diagonal().minCoeff(), 0.0);
  EXPECT_LE(det.no_click_diagonal().maxCoeff(), 1.0);
  EXPECT_GE(det.click_diagonal().minCoeff(), 0.0);
  EXPECT_LE(det.click_diagonal().maxCoeff(), 1.0);
}

TEST(DetectorModel, RejectsBadEfficiency) {
  EXPECT_THROW(povm_elements(-0.1, 4), std::invalid_argument);
  EXPECT_THROW(povm_elements(1.1, 4), std::invalid_argument);
}

TEST(Condition, PerfectDetectorClicksOnOnePhoton) {
  // One photon in the measured mode, vacuum spectator kept.
  const FockState s = tensor(number_state(1, 3), vacuum(1, 3));
  const ConditionalResult res =
      condition(s, {{0, {povm_elements(1.0, 3), Outcome::Yes}}});
  EXPECT_NEAR(res.probability, 1.0, 1e-15);
  EXPECT_NEAR(res.state.trace(), 1.0, 1e-12);
}

TEST(Condition, NoClickProbabilityOnOnePhoton) {
  const double eta = 0.73;
  const FockState s = tensor(number_state(1, 3), vacuum(1, 3));
  const ConditionalResult res =
      condition(s, {{0, {povm_elements(eta, 3), Outcome::No}}});
  EXPECT_NEAR(res.probability, 1.0 - eta, 1e-15);
}

TEST(Condition, ImpossibleOutcomeRefused) {
  const FockState s = tensor(vacuum(1, 3), vacuum(1, 3));
  EXPECT_THROW(
      condition(s, {{0, {povm_elements(0.9, 3), Outcome::Yes}}}),
      ZeroProbabilityError);
}

TEST(Condition, RequiresAnUnmeasuredMode) {
  const FockState s = random_state(2, 3, 5);
  EXPECT_THROW(condition(s, {{0, {povm_elements(0.9, 3), Outcome::No}},
                             {1, {povm_elements(0.9, 3), Outcome::No}}}),
               std::invalid_argument);
}

TEST(Condition, RejectsCutoffMismatch) {
  const FockState s = random_state(2, 3, 6);
  EXPECT_THROW(condition(s, {{0, {povm_elements(0.9, 4), Outcome::No}}}),
               IncompatibilityError);
}

TEST(Condition, PerfectNoClickEqualsVacuumProjection) {
  const FockState s = random_state(2, 4, 7);
  const ConditionalResult res =
      condition(s, {{1, {povm_elements(1.0, 4), Outcome::No}}});
  // Project mode 1 onto vacuum by hand and reduce.
  Eigen::VectorXcd kept(4);
  for (int i = 0; i < 4; ++i) kept(i) = s.amplitudes()(i * 4);
  const double p = kept.squaredNorm();
  EXPECT_NEAR(res.probability, p, 1e-14);
  const Eigen::MatrixXcd direct = kept * kept.adjoint() / p;
  EXPECT_LT((res.state.matrix() - direct).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Condition, ProducesValidDensityOperator) {
  const FockState s = random_state(3, 3, 8);
  const ConditionalResult res =
      condition(s, {{0, {povm_elements(0.6, 3), Outcome::Yes}},
                    {2, {povm_elements(0.4, 3), Outcome::No}}});
  EXPECT_GT(res.probability, 0.0);
  EXPECT_LE(res.probability, 1.0 + 1e-12);
  EXPECT_LT(res.state.hermiticity_defect(), 1e-10);
  EXPECT_GE(res.state.min_eigenvalue(), -1e-8);
  EXPECT_NEAR(res.state.trace(), 1.0, 1e-9);
  EXPECT_EQ(res.state.num_modes(), 1);
}

TEST(OutcomeDistribution, VacuumNeverClicks) {
  const FockState s = vacuum(3, 3);
  const auto dist = outcome_distribution(
      s, {{1, povm_elements(0.8, 3)}, {2, povm_elements(0.5, 3)}});
  EXPECT_NEAR(dist.at(OutcomePattern{Outcome::No, Outcome::No}), 1.0, 1e-15);
  EXPECT_NEAR(dist.at(OutcomePattern{Outcome::Yes, Outcome::No}), 0.0, 1e-15);
  EXPECT_NEAR(dist.at(OutcomePattern{Outcome::No, Outcome::Yes}), 0.0, 1e-15);
  EXPECT_NEAR(dist.at(OutcomePattern{Outcome::Yes, Outcome::Yes}), 0.0,
              1e-15);
}

TEST(OutcomeDistribution, OnePhotonSplitsByEfficiency) {
  const double eta = 0.62;
  const FockState s = tensor(number_state(1, 3), vacuum(1, 3));
  const auto dist = outcome_distribution(s, {{0, povm_elements(eta, 3)}});
  EXPECT_NEAR(dist.at(OutcomePattern{Outcome::Yes}), eta, 1e-15);
  EXPECT_NEAR(dist.at(OutcomePattern{Outcome::No}), 1.0 - eta, 1e-15);
}

TEST(OutcomeDistribution, SumsToOneOnCircuitState) {
  const int d = auto_cutoff(1.0);
  const FockState psi = build_circuit_state(1.0, 0.6, d);
  const DetectorModel det = povm_elements(0.8, d);
  const auto dist = outcome_distribution(psi, {{1, det}, {2, det}});
  ASSERT_EQ(dist.size(), 4u);
  double sum = 0.0;
  for (const auto& [pattern, p] : dist) sum += p;
  EXPECT_NEAR(sum, 1.0, 1e-9);
}

TEST(OutcomeDistribution, ConsistentWithCondition) {
  const FockState s = random_state(3, 3, 9);
  const DetectorModel det = povm_elements(0.7, 3);
  const auto dist = outcome_distribution(s, {{0, det}, {1, det}});
  const ConditionalResult yn = condition(
      s, {{0, {det, Outcome::Yes}}, {1, {det, Outcome::No}}});
  EXPECT_NEAR(dist.at(OutcomePattern{Outcome::Yes, Outcome::No}),
              yn.probability, 1e-13);
}
