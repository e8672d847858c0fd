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

#ifndef DPBOOT_PRIVATE_MEDIAN_H_
#define DPBOOT_PRIVATE_MEDIAN_H_

#include <cstddef>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpboot/rng.h"

namespace dpboot {

// Inverse-sensitivity median.
//
// Let v_hat be the lower median v_(ceil(n/2)) and
//   len(y) = #{i : v_i in (y, v_hat] or v_i in [v_hat, y)},
// the number of records that must change to move the median to y (duplicates
// count with multiplicity). The rho-smoothed score is
//   len_rho(y) = inf_{|z - y| < rho} len(z),
// which is zero on (v_hat - rho, v_hat + rho). The mechanism draws
// y in [range_lo, range_hi] with density proportional to
// exp(-epsilon * len_rho(y) / 2), which is epsilon-DP under replace-one
// adjacency.
struct MedianConfig {
  double epsilon = 1.0;
  double rho = 1e-3;
  double range_lo = 0.0;
  double range_hi = 1.0;

  absl::Status Validate() const;
};

// Exact rho-smoothed length len_rho(y; values). Fails on empty values or
// non-positive rho.
absl::StatusOr<std::size_t> SmoothedLength(std::span<const double> values,
                                           double y, double rho);

// A maximal run [lo, hi) on which len_rho is constant.
struct LevelPiece {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t level = 0;
};

// The level sets I_l = {y in [range_lo, range_hi] : len_rho(y) = l}, as a
// left-to-right list of positive-length pieces that tile the range. Built
// from the sorted breakpoints {v_i - rho} and {v_i + rho}; no grid.
struct LevelSets {
  double median = 0.0;
  std::vector<LevelPiece> pieces;

  // |I_l| for l = 0, 1, ..., max level (zero where the level is empty).
  std::vector<double> Measures() const;
};

// Level sets for `values`, which are clipped into the configured range first.
absl::StatusOr<LevelSets> ComputeLevelSets(std::span<const double> values,
                                           const MedianConfig& config);

// Draws the private median: level l with probability proportional to
// |I_l| exp(-l epsilon / 2) (computed in log space), then a uniform point of
// I_l. Values outside [range_lo, range_hi] are clipped.
absl::StatusOr<double> PrivMedian(std::span<const double> values,
                                  const MedianConfig& config, RngStream& rng);

}  // namespace dpboot

#endif  // DPBOOT_PRIVATE_MEDIAN_H_
