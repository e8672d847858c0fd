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

#ifndef DPBOOT_ABOVE_THRESHOLD_H_
#define DPBOOT_ABOVE_THRESHOLD_H_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "dpboot/rng.h"

namespace dpboot {

// Noise for the median-above-threshold scan over T vectors of length k:
// one shared offset xi0 ~ Laplace(k/2, 2/eps) and per-query offsets
// xi_t ~ Laplace(0, 4/eps), all drawn up front.
struct AboveThrNoise {
  double xi0 = 0.0;
  std::vector<double> xi;

  // The mean-noise point xi0 = k/2, xi = 0. Under this noise the scan reads
  // the floor(k/2)-th order statistic.
  static AboveThrNoise AtMean(std::size_t k, std::size_t count);

  // Noise-free scan on the lower median v_(ceil(k/2)).
  static AboveThrNoise AtLowerMedian(std::size_t k, std::size_t count);
};

absl::StatusOr<AboveThrNoise> DrawAboveThrNoise(std::size_t k,
                                                std::size_t count,
                                                double epsilon,
                                                RngStream& rng);

// Returns the first 1-based index t with OrdSt(queries[t-1], xi0 + xi_t) >=
// tau, or std::nullopt when no query clears the threshold. With noise from
// DrawAboveThrNoise the map from queries to output is epsilon-DP when each
// query vector may change in at most one coordinate.
absl::StatusOr<std::optional<std::size_t>> AboveThr(
    std::span<const std::vector<double>> queries, double tau,
    const AboveThrNoise& noise);

// Lazily-evaluated form used by the bootstrap, where query t is produced on
// demand. `query(t, out)` fills `out` (length k) for 1-based t.
template <typename QueryFn>
std::optional<std::size_t> AboveThrLazy(std::size_t count, std::size_t k,
                                        QueryFn&& query, double tau,
                                        const AboveThrNoise& noise);

}  // namespace dpboot

#include "dpboot/above_threshold_inl.h"

#endif  // DPBOOT_ABOVE_THRESHOLD_H_
