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

#include "dpboot/harness/datasets.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "dpboot/noise.h"

namespace dpboot::harness {

namespace {

constexpr std::size_t kFeatureColumns = 4;
constexpr std::size_t kMaxReportedRows = 20;

bool ParseDouble(absl::string_view text, double& out) {
  text = absl::StripAsciiWhitespace(text);
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end && std::isfinite(out);
}

}  // namespace

absl::StatusOr<Sample> LoadAdultCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));

  std::string line;
  if (!std::getline(in, line)) {
    return absl::InvalidArgumentError(absl::StrCat(path, ": empty file"));
  }
  std::vector<std::string> header = absl::StrSplit(line, ',');
  for (std::string& h : header) {
    h = std::string(absl::StripAsciiWhitespace(h));
  }
  const std::vector<std::string> expected(std::begin(kAdultColumns),
                                          std::end(kAdultColumns));
  if (header != expected) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": header must be '", absl::StrJoin(expected, ","),
                     "', got '", line, "'"));
  }

  RegressionData data;
  data.dim = kFeatureColumns + 1;
  std::vector<std::size_t> bad_rows;
  std::size_t bad_count = 0;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (absl::StripAsciiWhitespace(line).empty()) continue;
    std::vector<absl::string_view> fields = absl::StrSplit(line, ',');
    bool ok = fields.size() == kFeatureColumns + 1;
    double values[kFeatureColumns + 1] = {};
    for (std::size_t j = 0; ok && j < fields.size(); ++j) {
      ok = ParseDouble(fields[j], values[j]);
    }
    for (std::size_t j = 0; ok && j < kFeatureColumns; ++j) {
      ok = values[j] >= 0.0 && values[j] <= 1.0;
    }
    ok = ok && (values[kFeatureColumns] == 0.0 || values[kFeatureColumns] == 1.0);
    if (!ok) {
      ++bad_count;
      if (bad_rows.size() < kMaxReportedRows) bad_rows.push_back(row);
      continue;
    }
    for (std::size_t j = 0; j < kFeatureColumns; ++j) {
      data.features.push_back(values[j]);
    }
    data.features.push_back(1.0);
    data.labels.push_back(values[kFeatureColumns]);
  }
  if (bad_count > 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        path, ": ", bad_count, " malformed or out-of-range row(s): ",
        absl::StrJoin(bad_rows, ", "), bad_count > bad_rows.size() ? ", ..." : ""));
  }
  if (data.labels.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(path, ": no data rows"));
  }
  return Sample::Regression(std::move(data));
}

double PositiveFraction(const Sample& sample) {
  const auto labels = sample.labels();
  if (labels.empty()) return 0.0;
  double positives = 0.0;
  for (double y : labels) positives += y;
  return positives / static_cast<double>(labels.size());
}

std::vector<double> DefaultSyntheticTheta() {
  return {1.2, 1.5, 0.8, -0.9, -0.6};
}

absl::StatusOr<Sample> GenerateSyntheticLogistic(
    std::size_t n, std::span<const double> theta_star, RngStream& rng) {
  if (theta_star.size() != kFeatureColumns + 1) {
    return absl::InvalidArgumentError(absl::StrCat(
        "synthetic logistic model needs ", kFeatureColumns + 1,
        " coefficients, got ", theta_star.size()));
  }
  RegressionData data;
  data.dim = kFeatureColumns + 1;
  data.features.reserve(n * data.dim);
  data.labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    double z = theta_star[kFeatureColumns];
    for (std::size_t j = 0; j < kFeatureColumns; ++j) {
      const double x =
          std::clamp(0.5 + 0.25 * StandardNormalSample(rng), 0.0, 1.0);
      data.features.push_back(x);
      z += theta_star[j] * x;
    }
    data.features.push_back(1.0);
    const double p = 1.0 / (1.0 + std::exp(-z));
    data.labels.push_back(rng.UniformOpen() < p ? 1.0 : 0.0);
  }
  return Sample::Regression(std::move(data));
}

}  // namespace dpboot::harness
