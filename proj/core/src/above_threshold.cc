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

#include "dpboot/above_threshold.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpboot/noise.h"
#include "dpboot/stats.h"

namespace dpboot {

AboveThrNoise AboveThrNoise::AtMean(std::size_t k, std::size_t count) {
  AboveThrNoise noise;
  noise.xi0 = static_cast<double>(k) / 2.0;
  noise.xi.assign(count, 0.0);
  return noise;
}

AboveThrNoise AboveThrNoise::AtLowerMedian(std::size_t k, std::size_t count) {
  AboveThrNoise noise;
  noise.xi0 = static_cast<double>((k + 1) / 2);
  noise.xi.assign(count, 0.0);
  return noise;
}

absl::StatusOr<AboveThrNoise> DrawAboveThrNoise(std::size_t k,
                                                std::size_t count,
                                                double epsilon,
                                                RngStream& rng) {
  if (k == 0 || count == 0) {
    return absl::InvalidArgumentError(
        "DrawAboveThrNoise: k and T must both be >= 1");
  }
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "DrawAboveThrNoise: epsilon must be positive, got ", epsilon));
  }
  AboveThrNoise noise;
  noise.xi0 = LaplaceSampleUnchecked(static_cast<double>(k) / 2.0,
                                     2.0 / epsilon, rng);
  noise.xi.resize(count);
  for (double& x : noise.xi) x = LaplaceSampleUnchecked(0.0, 4.0 / epsilon, rng);
  return noise;
}

absl::StatusOr<std::optional<std::size_t>> AboveThr(
    std::span<const std::vector<double>> queries, double tau,
    const AboveThrNoise& noise) {
  if (queries.empty()) {
    return absl::InvalidArgumentError("AboveThr: no queries");
  }
  if (noise.xi.size() != queries.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "AboveThr: ", queries.size(), " queries but ", noise.xi.size(),
        " noise offsets"));
  }
  const std::size_t k = queries.front().size();
  if (k == 0) return absl::InvalidArgumentError("AboveThr: empty query vector");
  for (std::size_t t = 0; t < queries.size(); ++t) {
    if (queries[t].size() != k) {
      return absl::InvalidArgumentError(absl::StrCat(
          "AboveThr: query ", t + 1, " has length ", queries[t].size(),
          ", expected ", k));
    }
  }
  return AboveThrLazy(
      queries.size(), k,
      [&](std::size_t t, std::vector<double>& out) {
        std::copy(queries[t - 1].begin(), queries[t - 1].end(), out.begin());
      },
      tau, noise);
}

}  // namespace dpboot
