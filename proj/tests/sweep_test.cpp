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

#include "linoq/sweep.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "linoq/verify.hpp"

using namespace linoq;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST(RunSweep, SinglePointValue) {
  SweepSpec spec;
  spec.gamma_min = spec.gamma_max = 0.0;
  spec.gamma_steps = 1;
  spec.phi_min = spec.phi_max = kPi / 3.0;
  spec.phi_steps = 1;
  spec.eta = 0.5;
  const auto records = run_sweep(spec);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_NEAR(records[0].p_yn, 0.1875, 1e-15);
}

TEST(RunSweep, RowOrderPhiOuterGammaInner) {
  SweepSpec spec;
  spec.gamma_min = 0.0;
  spec.gamma_max = 1.0;
  spec.gamma_steps = 2;
  spec.phi_min = 0.2;
  spec.phi_max = 0.8;
  spec.phi_steps = 3;
  const auto records = run_sweep(spec);
  ASSERT_EQ(records.size(), 6u);
  EXPECT_DOUBLE_EQ(records[0].gamma, 0.0);
  EXPECT_DOUBLE_EQ(records[0].phi, 0.2);
  EXPECT_DOUBLE_EQ(records[1].gamma, 1.0);
  EXPECT_DOUBLE_EQ(records[1].phi, 0.2);
  EXPECT_DOUBLE_EQ(records[2].gamma, 0.0);
  EXPECT_DOUBLE_EQ(records[2].phi, 0.5);
  EXPECT_DOUBLE_EQ(records[5].gamma, 1.0);
  EXPECT_DOUBLE_EQ(records[5].phi, 0.8);
}

TEST(RunSweep, GridEndpointsExact) {
  SweepSpec spec;
  spec.gamma_min = 0.0;
  spec.gamma_max = 2.0;
  spec.gamma_steps = 41;
  spec.phi_min = 0.0;
  spec.phi_max = kPi;
  spec.phi_steps = 5;
  const auto records = run_sweep(spec);
  EXPECT_DOUBLE_EQ(records.front().gamma, 0.0);
  EXPECT_DOUBLE_EQ(records[40].gamma, 2.0);
  EXPECT_DOUBLE_EQ(records.back().phi, kPi);
}

TEST(RunSweep, DegeneratePointsYieldFiniteRecords) {
  SweepSpec spec;
  spec.gamma_min = 0.0;
  spec.gamma_max = 0.0;
  spec.gamma_steps = 1;
  spec.phi_min = 0.0;
  spec.phi_max = kPi;
  spec.phi_steps = 3;
  spec.mode = EvalMode::Both;
  const auto records = run_sweep(spec);
  for (const auto& r : records) {
    EXPECT_TRUE(std::isfinite(r.p_yn));
    EXPECT_TRUE(std::isfinite(r.fidelity));
    EXPECT_TRUE(std::isfinite(r.dp));
    EXPECT_TRUE(std::isfinite(r.df));
  }
  // phi = 0 with no drive heralds nothing.
  EXPECT_NEAR(records[0].p_yn, 0.0, 1e-15);
  EXPECT_EQ(records[0].fidelity, 0.0);
}

TEST(RunSweep, BothModeDeltasAreTiny) {
  SweepSpec spec;
  spec.gamma_min = 0.1;
  spec.gamma_max = 1.5;
  spec.gamma_steps = 5;
  spec.phi_min = 0.3;
  spec.phi_max = 2.8;
  spec.phi_steps = 5;
  spec.mode = EvalMode::Both;
  const auto records = run_sweep(spec);
  for (const auto& r : records) {
    EXPECT_LE(std::abs(r.dp), 1e-8) << "gamma=" << r.gamma << " phi=" << r.phi;
    EXPECT_LE(std::abs(r.df), 1e-8) << "gamma=" << r.gamma << " phi=" << r.phi;
  }
}

TEST(RunSweep, NoYesOutcomeMatchesShiftedAnalytic) {
  SweepSpec spec;
  spec.gamma_min = 0.4;
  spec.gamma_max = 1.2;
  spec.gamma_steps = 3;
  spec.phi_min = 0.2;
  spec.phi_max = 1.4;
  spec.phi_steps = 3;
  spec.outcome = HeraldOutcome::NoYes;
  spec.mode = EvalMode::Both;
  const auto records = run_sweep(spec);
  for (const auto& r : records) {
    EXPECT_NEAR(r.p_yn, p_yn_analytic(spec.eta, r.gamma, r.phi + kPi / 2.0),
                1e-15);
    EXPECT_LE(std::abs(r.dp), 1e-8);
    EXPECT_LE(std::abs(r.df), 1e-8);
  }
}

TEST(RunSweep, RejectsBadSpecs) {
  SweepSpec spec;
  spec.gamma_steps = 0;
  EXPECT_THROW(run_sweep(spec), std::invalid_argument);
  spec = SweepSpec{};
  spec.gamma_min = 2.0;
  spec.gamma_max = 1.0;
  EXPECT_THROW(run_sweep(spec), std::invalid_argument);
  spec = SweepSpec{};
  spec.eta = 1.4;
  EXPECT_THROW(run_sweep(spec), std::invalid_argument);
}

TEST(FormatDouble, SeventeenSignificantDigits) {
  EXPECT_EQ(format_double(0.1875), "1.8750000000000000e-01");
  EXPECT_EQ(format_double(1.0 / 3.0), "3.3333333333333331e-01");
  EXPECT_EQ(format_double(0.0), "0.0000000000000000e+00");
}

TEST(CsvRoundTrip, BitExact) {
  SweepSpec spec;
  spec.gamma_min = 0.0;
  spec.gamma_max = 1.7;
  spec.gamma_steps = 7;
  spec.phi_min = 0.1;
  spec.phi_max = 2.9;
  spec.phi_steps = 5;
  const auto records = run_sweep(spec);
  std::stringstream io;
  write_records_csv(io, records, false);
  const auto parsed = parse_records_csv(io);
  ASSERT_EQ(parsed.size(), records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    EXPECT_EQ(parsed[i].gamma, records[i].gamma);
    EXPECT_EQ(parsed[i].phi, records[i].phi);
    EXPECT_EQ(parsed[i].eta, records[i].eta);
    EXPECT_EQ(parsed[i].p_yn, records[i].p_yn);
    EXPECT_EQ(parsed[i].fidelity, records[i].fidelity);
  }
}

TEST(CsvWriter, HeaderMatchesSchema) {
  std::stringstream plain, both;
  write_records_csv(plain, {}, false);
  write_records_csv(both, {}, true);
  EXPECT_EQ(plain.str(), "gamma,phi,eta,p_yn,fidelity\n");
  EXPECT_EQ(both.str(), "gamma,phi,eta,p_yn,fidelity,dp,dF\n");
}

TEST(Determinism, RepeatedSweepsAreByteIdentical) {
  SweepSpec spec;
  spec.gamma_min = 0.0;
  spec.gamma_max = 2.0;
  spec.gamma_steps = 9;
  spec.phi_min = 0.0;
  spec.phi_max = kPi;
  spec.phi_steps = 9;
  spec.mode = EvalMode::Both;
  std::stringstream a, b;
  write_records_csv(a, run_sweep(spec), true);
  write_records_csv(b, run_sweep(spec), true);
  EXPECT_EQ(a.str(), b.str());
}

TEST(JsonWriter, FieldNamesMatchCsv) {
  SweepSpec spec;
  spec.gamma_min = spec.gamma_max = 0.5;
  spec.gamma_steps = 1;
  spec.phi_min = spec.phi_max = 1.0;
  spec.phi_steps = 1;
  spec.mode = EvalMode::Both;
  std::stringstream out;
  write_records_json(out, run_sweep(spec), true);
  const std::string text = out.str();
  for (const char* key :
       {"\"gamma\"", "\"phi\"", "\"eta\"", "\"p_yn\"", "\"fidelity\"",
        "\"dp\"", "\"dF\""}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
}

TEST(DesignSearch, MeetsReportedOperatingRegion) {
  DesignQuery query;
  query.eta = 0.8;
  query.p_min = 0.195;
  const DesignResult res = design_search(query);
  ASSERT_TRUE(res.feasible);
  EXPECT_GE(res.fidelity, 0.9);
  EXPECT_GE(res.p_yn, 0.195);
}

TEST(DesignSearch, IncumbentNeverDecreases) {
  DesignQuery query;
  query.eta = 0.8;
  query.p_min = 0.15;
  const DesignResult res = design_search(query);
  ASSERT_TRUE(res.feasible);
  ASSERT_EQ(res.round_best_fidelity.size(), 4u);
  for (std::size_t r = 1; r < res.round_best_fidelity.size(); ++r) {
    EXPECT_GE(res.round_best_fidelity[r], res.round_best_fidelity[r - 1]);
  }
}

TEST(DesignSearch, VacuumTargetFamily) {
  DesignQuery query;
  query.eta = 1.0;
  query.p_min = 0.4;
  query.target = std::array<double, 2>{1.0, 0.0};
  const DesignResult res = design_search(query);
  ASSERT_TRUE(res.feasible);
  EXPECT_NEAR(res.phi, kPi / 2.0, 1e-12);
  EXPECT_NEAR(res.gamma, 0.0, 1e-12);
  EXPECT_NEAR(res.fidelity, 1.0, 1e-12);
  EXPECT_NEAR(res.p_yn, 0.5, 1e-12);
}

TEST(DesignSearch, GeneralTargetFamilyStaysOnFamily) {
  DesignQuery query;
  query.eta = 0.8;
  query.p_min = 0.05;
  query.target = std::array<double, 2>{1.0 / std::sqrt(2.0),
                                       1.0 / std::sqrt(2.0)};
  const DesignResult res = design_search(query);
  ASSERT_TRUE(res.feasible);
  // All family points realize the requested amplitude ratio.
  EXPECT_NEAR(std::tan(res.phi) / res.gamma, 1.0, 1e-9);
  const TargetQubit t = target_state(res.gamma, res.phi);
  EXPECT_NEAR(std::abs(t.a0 / t.a1 - 1.0), 0.0, 1e-9);
}

TEST(DesignSearch, InfeasibleFloorReportsMaximum) {
  DesignQuery query;
  query.eta = 0.8;
  query.p_min = 0.99;
  const DesignResult res = design_search(query);
  EXPECT_FALSE(res.feasible);
  EXPECT_GT(res.max_p_yn, 0.0);
  EXPECT_LT(res.max_p_yn, 0.99);
}

TEST(DesignSearch, RejectsBadQuery) {
  DesignQuery query;
  query.p_min = 0.0;
  EXPECT_THROW(design_search(query), std::invalid_argument);
  query.p_min = 1.0;
  EXPECT_THROW(design_search(query), std::invalid_argument);
}

TEST(Verification, HealthyBuildPasses) {
  VerifyOptions options;
  options.etas = {0.8};
  options.grid = 4;
  const VerifyReport report = run_verification(options);
  EXPECT_TRUE(report.passed()) << format_report(report);
}

TEST(Verification, InjectedFaultIsCaught) {
  VerifyOptions options;
  options.etas = {0.8};
  options.grid = 3;
  options.inject_eta_fault = 1e-3;
  const VerifyReport report = run_verification(options);
  EXPECT_FALSE(report.passed());
}
