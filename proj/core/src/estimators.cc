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

#include "dpboot/estimators.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpboot/noise.h"
#include "dpboot/stats.h"

namespace dpboot {

namespace {

absl::Status CheckScalar(const Sample& sample, const char* who) {
  if (sample.kind() != Sample::Kind::kScalar) {
    return absl::InvalidArgumentError(
        absl::StrCat(who, ": requires a scalar sample"));
  }
  return absl::OkStatus();
}

absl::Status CheckBudget(double b, double epsilon, const char* who) {
  if (!(b > 0.0) || !std::isfinite(b)) {
    return absl::InvalidArgumentError(
        absl::StrCat(who, ": clip bound must be positive, got ", b));
  }
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat(who, ": epsilon must be positive, got ", epsilon));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Theta> MeanPlugin(const Sample& sample) {
  if (absl::Status s = CheckScalar(sample, "MeanPlugin"); !s.ok()) return s;
  double sum = 0.0;
  for (double x : sample.scalars()) sum += x;
  return Theta{{sum / static_cast<double>(sample.size())}};
}

absl::StatusOr<Theta> MedianPlugin(const Sample& sample) {
  if (absl::Status s = CheckScalar(sample, "MedianPlugin"); !s.ok()) return s;
  absl::StatusOr<double> median = LowerMedian(sample.scalars());
  if (!median.ok()) return median.status();
  return Theta{{*median}};
}

absl::StatusOr<Theta> LaplaceMeanMech(const Sample& sample, double b,
                                      double epsilon, RngStream& rng) {
  if (absl::Status s = CheckScalar(sample, "LaplaceMeanMech"); !s.ok()) return s;
  if (absl::Status s = CheckBudget(b, epsilon, "LaplaceMeanMech"); !s.ok()) {
    return s;
  }
  const auto n = static_cast<double>(sample.size());
  double sum = 0.0;
  for (double x : sample.scalars()) sum += std::clamp(x, -b, b);
  const double noise = LaplaceSampleUnchecked(0.0, 2.0 * b / (n * epsilon), rng);
  return Theta{{sum / n + noise}};
}

absl::StatusOr<PrivateVariance> LaplaceVarianceMech(const Sample& sample,
                                                    double b, double epsilon,
                                                    RngStream& rng) {
  if (absl::Status s = CheckScalar(sample, "LaplaceVarianceMech"); !s.ok()) {
    return s;
  }
  if (absl::Status s = CheckBudget(b, epsilon, "LaplaceVarianceMech");
      !s.ok()) {
    return s;
  }
  const auto n = static_cast<double>(sample.size());
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : sample.scalars()) {
    const double c = std::clamp(x, -b, b);
    sum += c;
    sum_sq += c * c;
  }
  const double mean = sum / n;
  const double variance = std::max(0.0, sum_sq / n - mean * mean);
  const double noisy =
      variance + LaplaceSampleUnchecked(0.0, 8.0 * b * b / (n * epsilon), rng);
  if (noisy < 0.0) return PrivateVariance{0.0, true};
  return PrivateVariance{noisy, false};
}

absl::StatusOr<Theta> InvSensMedianMech(const Sample& sample,
                                        const MedianConfig& config,
                                        RngStream& rng) {
  if (absl::Status s = CheckScalar(sample, "InvSensMedianMech"); !s.ok()) {
    return s;
  }
  absl::StatusOr<double> median = PrivMedian(sample.scalars(), config, rng);
  if (!median.ok()) return median.status();
  return Theta{{*median}};
}

}  // namespace dpboot
