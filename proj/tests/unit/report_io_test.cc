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

#include "dpboot/harness/report_io.h"

#include <filesystem>
#include <string>

#include "gtest/gtest.h"
#include "json.hpp"

namespace dpboot::harness {
namespace {

TEST(TrialsCsvTest, RoundTripIsExact) {
  std::vector<TrialRecord> records(2);
  records[0] = {0, Method::kBlbQuant, 1000, 8.0, -0.1 / 3, 0.2 / 7,
                0.2 / 7 + 0.1 / 3, 0.952, false, 1234567890123ull};
  records[1] = {1, Method::kLaplaceVariance, 300, 8.0, 0.0, 0.0, 0.0, 0.0,
                true, 7};
  const std::string csv = FormatTrialsCsv(records);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kTrialsHeader);
  const std::vector<TrialRecord> back = *ParseTrialsCsv(csv);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].lo, records[0].lo);
  EXPECT_EQ(back[0].hi, records[0].hi);
  EXPECT_EQ(back[0].seed, records[0].seed);
  EXPECT_EQ(back[1].method, Method::kLaplaceVariance);
  EXPECT_TRUE(back[1].failed);
  EXPECT_EQ(FormatTrialsCsv(back), csv);
}

TEST(TrialsCsvTest, RejectsMalformedInput) {
  EXPECT_FALSE(ParseTrialsCsv("bad header\n").ok());
  const std::string header = std::string(kTrialsHeader) + "\n";
  EXPECT_FALSE(ParseTrialsCsv(header + "1,blbquant,3\n").ok());
  EXPECT_FALSE(ParseTrialsCsv(header + "1,gvdp,3,8,0,0,0,0,0,1\n").ok());
  EXPECT_TRUE(ParseTrialsCsv(header).ok());
}

TEST(ConfigJsonTest, RoundTripsPresets) {
  for (const std::string& name : PresetNames()) {
    const ExperimentConfig c = *Preset(name);
    const ExperimentConfig back = *ConfigFromJson(ConfigToJson(c));
    EXPECT_EQ(ConfigToJson(back), ConfigToJson(c)) << name;
  }
}

TEST(ConfigJsonTest, ParsesSchemaAndRejectsUnknownKeys) {
  const ExperimentConfig c = *ConfigFromJson(R"({
    "task": "median", "n_grid": [100, 200], "eps_total": 4, "alpha": 0.1,
    "trials": 7, "resamp": 9, "methods": ["blbquant", "blbvar"],
    "blb": {"K": 6, "c": 0.5, "rho": 0.01, "sigma_max_sq": 50},
    "data": {"kind": "truncated_gaussian", "mu": 1, "var": 2, "lo": -3, "hi": 3},
    "master_seed": 5})");
  EXPECT_EQ(c.task, Task::kMedian);
  EXPECT_EQ(c.n_grid, (std::vector<std::size_t>{100, 200}));
  EXPECT_EQ(c.blb.K, 6.0);
  EXPECT_EQ(*c.blb.sigma_max_sq, 50.0);
  EXPECT_EQ(c.data.var, 2.0);
  EXPECT_EQ(c.master_seed, 5u);
  EXPECT_FALSE(ConfigFromJson(R"({"task": "mean", "trails": 3})").ok());
  EXPECT_FALSE(ConfigFromJson(R"({"blb": {"k": 3}})").ok());
  EXPECT_FALSE(ConfigFromJson(R"({"trials": 0})").ok());
  EXPECT_FALSE(ConfigFromJson(R"({"trials": "many"})").ok());
  EXPECT_FALSE(ConfigFromJson("not json").ok());
}

TEST(LoadConfigTest, PresetOrFile) {
  EXPECT_EQ(LoadConfig("mean_small")->name, "mean_small");
  EXPECT_EQ(LoadConfig("missing.toml").status().code(),
            absl::StatusCode::kNotFound);
  const std::string path =
      (std::filesystem::temp_directory_path() / "dpboot_cfg.json").string();
  ASSERT_TRUE(WriteFile(path, R"({"name": "from_file", "trials": 2})").ok());
  EXPECT_EQ(LoadConfig(path)->trials, 2u);
}

TEST(ReportJsonTest, EmbedsConfigAndGroups) {
  CoverageReport report;
  report.config_name = "x";
  report.master_seed = 3;
  CoverageGroup g;
  g.method = Method::kBlbVar;
  g.n = 10;
  g.width_histogram = {{0.05, 2}};
  report.groups = {g};
  report.interval_counts = {{10, 60}};
  const nlohmann::json j =
      nlohmann::json::parse(ReportToJson(report, *Preset("mean_small")));
  EXPECT_EQ(j["master_seed"], 3);
  EXPECT_EQ(j["config"]["name"], "mean_small");
  EXPECT_EQ(j["groups"][0]["method"], "blbvar");
  EXPECT_EQ(j["groups"][0]["width_histogram"][0]["count"], 2);
  EXPECT_EQ(j["interval_counts"][0]["T"], 60);
}

TEST(PlotCsvTest, LongFormat) {
  CoverageGroup g;
  g.method = Method::kBlbQuant;
  g.n = 1000;
  g.eps_total = 8;
  g.mean_coverage = 0.5;
  const std::string csv = FormatPlotCsv({g});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "metric,x,y,series");
  EXPECT_NE(csv.find("mean_coverage,1000,0.5,mean/blbquant/eps=8"),
            std::string::npos);
}

}  // namespace
}  // namespace dpboot::harness
