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

#ifndef DPBOOT_ESTIMATORS_H_
#define DPBOOT_ESTIMATORS_H_

#include <functional>
#include <vector>

#include "absl/status/statusor.h"
#include "dpboot/private_median.h"
#include "dpboot/rng.h"
#include "dpboot/sample.h"

namespace dpboot {

// A parameter estimate; length 1 for scalar tasks.
struct Theta {
  std::vector<double> value;

  double scalar() const { return value.front(); }
};

// theta(.): a deterministic plug-in estimator.
using PointEstimator = std::function<absl::StatusOr<Theta>(const Sample&)>;
// theta~(.): a randomized (private) estimator; all of its noise comes from
// the stream it is handed.
using PrivateEstimator =
    std::function<absl::StatusOr<Theta>(const Sample&, RngStream&)>;

absl::StatusOr<Theta> MeanPlugin(const Sample& sample);

// Lower-middle order statistic, matching PrivMedian's convention.
absl::StatusOr<Theta> MedianPlugin(const Sample& sample);

// Mean of the values clipped to [-b, b] plus Laplace(0, 2b / (n eps)) noise.
// epsilon-DP under replace-one adjacency.
absl::StatusOr<Theta> LaplaceMeanMech(const Sample& sample, double b,
                                      double epsilon, RngStream& rng);

struct PrivateVariance {
  double variance = 0.0;
  bool clamped = false;  // the noisy value was negative and set to 0
};

// P_n X^2 - (P_n X)^2 over values clipped to [-b, b], plus
// Laplace(0, 8 b^2 / (n eps)) noise. Negative outputs are clamped to zero.
absl::StatusOr<PrivateVariance> LaplaceVarianceMech(const Sample& sample,
                                                    double b, double epsilon,
                                                    RngStream& rng);

// PrivMedian on the raw observations.
absl::StatusOr<Theta> InvSensMedianMech(const Sample& sample,
                                        const MedianConfig& config,
                                        RngStream& rng);

}  // namespace dpboot

#endif  // DPBOOT_ESTIMATORS_H_
