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

#ifndef DPBOOT_STATS_H_
#define DPBOOT_STATS_H_

#include <cstddef>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dpboot/rng.h"
#include "dpboot/sample.h"

namespace dpboot {

// The floor(xi)-th order statistic (1-based) of `y`, with limiting extremes:
// -inf when xi < 1 and +inf when xi > k = y.size(). Fails on empty `y`.
absl::StatusOr<double> OrdSt(std::span<const double> y, double xi);

// Same as OrdSt for an already sorted, nonempty vector.
double OrdStSorted(std::span<const double> sorted, double xi);

// Left-continuous empirical quantile inf{v : F_n(v) >= beta}, no
// interpolation. beta must lie in (0, 1].
absl::StatusOr<double> Quantile(std::span<const double> values, double beta);

// Lower-middle order statistic v_(ceil(n/2)).
absl::StatusOr<double> LowerMedian(std::span<const double> values);

// `n_out` records drawn i.i.d. uniformly (with replacement) from `sample`.
absl::StatusOr<Sample> ResampleWithReplacement(const Sample& sample,
                                               std::size_t n_out,
                                               RngStream& rng);

// s = floor(n / m) disjoint blocks of exactly m records each, plus the
// n - s * m leftover records. Blocks come from one uniform permutation of the
// parent indices; `indices` records the parent positions for auditing.
struct Partition {
  std::vector<Sample> subsamples;
  std::vector<std::vector<std::size_t>> indices;
  std::vector<std::size_t> leftover;
};

absl::StatusOr<Partition> PartitionDisjoint(const Sample& sample,
                                            std::size_t m, RngStream& rng);

// Uniform random permutation of [0, n) (Fisher-Yates driven by `rng`).
std::vector<std::size_t> RandomPermutation(std::size_t n, RngStream& rng);

}  // namespace dpboot

#endif  // DPBOOT_STATS_H_
