//
// Copyright 2026 The dpboot Authors
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
//

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"

namespace {

struct Output {
  int exit_code = -1;
  std::string text;
};

Output Cli(const std::string& args) {
  const std::string cmd = std::string(DPBOOT_CLI_PATH) + " " + args + " 2>&1";
  Output out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return out;
  std::array<char, 512> buf;
  while (fgets(buf.data(), buf.size(), pipe) != nullptr) out.text += buf.data();
  const int status = pclose(pipe);
  out.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string Slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(CliTest, MomentsOfDefaultPopulation) {
  const Output o = Cli("moments --mu 0 --var 4 --lo -6 --hi 4");
  ASSERT_EQ(o.exit_code, 0) << o.text;
  EXPECT_NE(o.text.find("mean"), std::string::npos);
  EXPECT_NE(o.text.find("variance"), std::string::npos);
  EXPECT_NE(o.text.find("median"), std::string::npos);
}

TEST(CliTest, MissingConfigExitsOne) {
  const Output o = Cli("run --config does_not_exist.json");
  EXPECT_EQ(o.exit_code, 1);
  EXPECT_NE(o.text.find("does_not_exist.json"), std::string::npos);
}

TEST(CliTest, UnknownFlagExitsTwo) {
  EXPECT_EQ(Cli("run --config mean_small --bogus").exit_code, 2);
  EXPECT_EQ(Cli("frobnicate").exit_code, 2);
}

TEST(CliTest, RunIsReproducibleAndReportReadsItBack) {
  const auto root = std::filesystem::temp_directory_path() / "dpboot_cli_test";
  std::filesystem::remove_all(root);
  const std::string flags = " --config mean_small --trials 2 --seed 11 --out ";
  ASSERT_EQ(Cli("run" + flags + (root / "a").string()).exit_code, 0);
  ASSERT_EQ(Cli("run" + flags + (root / "b").string()).exit_code, 0);
  const std::string a = Slurp(root / "a" / "mean_small_trials.csv");
  ASSERT_FALSE(a.empty());
  EXPECT_EQ(a, Slurp(root / "b" / "mean_small_trials.csv"));
  EXPECT_TRUE(std::filesystem::exists(root / "a" / "mean_small_report.json"));
  EXPECT_TRUE(std::filesystem::exists(root / "a" / "mean_small_plot.csv"));

  const Output rep = Cli("report --trials " +
                         (root / "a" / "mean_small_trials.csv").string());
  EXPECT_EQ(rep.exit_code, 0) << rep.text;
  EXPECT_NE(rep.text.find("blbvar"), std::string::npos);
}

}  // namespace
