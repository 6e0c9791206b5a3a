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

// Exercises the installed command-line binary end to end. The binary path
// arrives via the LINOQ_CLI environment variable (set by ctest).

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include <sys/wait.h>

namespace {

std::string cli_path() {
  const char* path = std::getenv("LINOQ_CLI");
  if (path == nullptr) {
    ADD_FAILURE() << "LINOQ_CLI not set";
    return {};
  }
  return path;
}

int run(const std::string& args, std::string* output = nullptr) {
  const std::string out_file =
      ::testing::TempDir() + "/linoq_cli_out.txt";
  const std::string cmd =
      cli_path() + " " + args + " > " + out_file + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (output != nullptr) {
    std::ifstream in(out_file);
    std::ostringstream buf;
    buf << in.rdbuf();
    *output = buf.str();
  }
  std::remove(out_file.c_str());
  if (WIFEXITED(status)) return WEXITSTATUS(status);
  return -1;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST(Cli, PointPrintsAllQuantities) {
  std::string out;
  const int code =
      run("point --eta 0.8 --gamma 1.0 --phi 0.6 --mode both", &out);
  EXPECT_EQ(code, 0) << out;
  EXPECT_NE(out.find("analytic:"), std::string::npos);
  EXPECT_NE(out.find("numeric:"), std::string::npos);
  EXPECT_NE(out.find("rho01"), std::string::npos);
  EXPECT_NE(out.find("F = "), std::string::npos);
}

TEST(Cli, PointAtZeroProbability) {
  std::string out;
  const int code = run("point --eta 0.8 --gamma 0 --phi 0", &out);
  EXPECT_EQ(code, 0) << out;
  EXPECT_NE(out.find("undefined"), std::string::npos);
}

TEST(Cli, SweepWritesCsvFile) {
  const std::string path = ::testing::TempDir() + "/linoq_sweep.csv";
  const int code = run("sweep --eta 0.5 --gamma-range 0:1:3 --phi-range "
                       "0.2:1.2:3 --out " + path);
  EXPECT_EQ(code, 0);
  const std::string text = slurp(path);
  EXPECT_NE(text.find("gamma,phi,eta,p_yn,fidelity"), std::string::npos);
  // header + 9 rows
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 10);
  std::remove(path.c_str());
}

TEST(Cli, SweepSinglePointFlags) {
  std::string out;
  const int code =
      run("sweep --eta 0.5 --gamma 0 --phi 1.0471975511965976", &out);
  EXPECT_EQ(code, 0) << out;
  // header + one record; p_yn is the fourth column
  std::istringstream lines(out);
  std::string header, row;
  ASSERT_TRUE(std::getline(lines, header));
  ASSERT_TRUE(std::getline(lines, row)) << out;
  std::istringstream cells(row);
  std::string cell;
  for (int i = 0; i < 4; ++i) ASSERT_TRUE(std::getline(cells, cell, ','));
  EXPECT_NEAR(std::strtod(cell.c_str(), nullptr), 0.1875, 1e-15) << out;
}

TEST(Cli, SweepJsonFormat) {
  std::string out;
  const int code = run(
      "sweep --gamma-range 0:1:2 --phi-range 0.3:0.9:2 --format json", &out);
  EXPECT_EQ(code, 0);
  EXPECT_NE(out.find("\"p_yn\""), std::string::npos);
}

TEST(Cli, SweepUnwritablePathExitsTwo) {
  const int code =
      run("sweep --out /nonexistent-dir/foo.csv --gamma-range 0:1:2 "
          "--phi-range 0:1:2");
  EXPECT_EQ(code, 2);
}

TEST(Cli, UnknownFlagExitsUsage) {
  EXPECT_EQ(run("sweep --no-such-flag 1"), 64);
  EXPECT_EQ(run("frobnicate"), 64);
  EXPECT_EQ(run("point --eta 1.5"), 64);
  EXPECT_EQ(run("sweep --gamma-range 2:1:5"), 64);
  EXPECT_EQ(run("sweep --gamma-range 0:1:3 --gamma 0.5"), 64);
}

TEST(Cli, CutoffTooSmallForAmplitudeExitsUsage) {
  EXPECT_EQ(run("point --gamma 2 --phi 0.6 --cutoff 5 --mode numeric"), 64);
}

TEST(Cli, DesignReportsOperatingPoint) {
  std::string out;
  const int code = run("design --eta 0.8 --p-min 0.195", &out);
  EXPECT_EQ(code, 0) << out;
  EXPECT_NE(out.find("gamma*"), std::string::npos);
  EXPECT_NE(out.find("F*"), std::string::npos);
}

TEST(Cli, DesignInfeasibleExitsThree) {
  std::string out;
  const int code = run("design --eta 0.8 --p-min 0.99", &out);
  EXPECT_EQ(code, 3);
  EXPECT_NE(out.find("maximum achievable"), std::string::npos);
}

TEST(Cli, DesignWithTarget) {
  std::string out;
  const int code =
      run("design --eta 1.0 --p-min 0.4 --target 1,0", &out);
  EXPECT_EQ(code, 0) << out;
  EXPECT_NE(out.find("P_YN*"), std::string::npos);
}

TEST(Cli, HelpExitsZero) {
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run("sweep --help"), 0);
}
