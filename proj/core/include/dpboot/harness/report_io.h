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

#ifndef DPBOOT_HARNESS_REPORT_IO_H_
#define DPBOOT_HARNESS_REPORT_IO_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpboot/harness/experiment.h"

namespace dpboot::harness {

// Trials CSV: one row per (trial, method); doubles printed with %.17g so a
// round trip is exact.
inline constexpr std::string_view kTrialsHeader =
    "trial_id,method,n,eps_total,lo,hi,width,coverage_freq,failed,seed";

std::string FormatTrialsCsv(const std::vector<TrialRecord>& records);
absl::StatusOr<std::vector<TrialRecord>> ParseTrialsCsv(std::string_view text);

std::string ConfigToJson(const ExperimentConfig& config);
absl::StatusOr<ExperimentConfig> ConfigFromJson(std::string_view text);

// `name_or_path` is a preset name or a JSON config file.
absl::StatusOr<ExperimentConfig> LoadConfig(const std::string& name_or_path);

// Report JSON with the config embedded for provenance.
std::string ReportToJson(const CoverageReport& report,
                         const ExperimentConfig& config);

// Long-format table (metric, x, y, series) ready for plotting.
std::string FormatPlotCsv(const std::vector<CoverageGroup>& groups);

// Console summary table.
std::string FormatSummary(const std::vector<CoverageGroup>& groups);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, std::string_view contents);

}  // namespace dpboot::harness

#endif  // DPBOOT_HARNESS_REPORT_IO_H_
