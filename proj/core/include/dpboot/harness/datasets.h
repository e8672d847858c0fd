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

#ifndef DPBOOT_HARNESS_DATASETS_H_
#define DPBOOT_HARNESS_DATASETS_H_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpboot/rng.h"
#include "dpboot/sample.h"

namespace dpboot::harness {

// Column order of the prepared Adult CSV. The header must list exactly these
// names; features are pre-normalized to [0, 1] and label is 0 or 1.
inline constexpr const char* kAdultColumns[] = {"age", "school", "hours", "sex",
                                                "label"};
// Index of the sex coefficient in the loaded feature vector.
inline constexpr std::size_t kAdultSexCoordinate = 3;

// Loads the prepared Adult CSV as a regression sample with features
// (age, school, hours, sex, 1). Rows with missing, malformed, or out-of-range
// fields are rejected; the error lists the offending row numbers (1-based,
// header excluded).
absl::StatusOr<Sample> LoadAdultCsv(const std::string& path);

// Fraction of positive labels.
double PositiveFraction(const Sample& sample);

// Hermetic stand-in for Adult: four features drawn as N(0.5, 0.25^2) clipped
// to [0, 1], an intercept, and y ~ Bernoulli(sigmoid(<x, theta_star>)). The
// model is well specified, so the population risk minimizer is theta_star.
absl::StatusOr<Sample> GenerateSyntheticLogistic(
    std::size_t n, std::span<const double> theta_star, RngStream& rng);

// Default coefficients for the synthetic task (age, school, hours, sex,
// intercept).
std::vector<double> DefaultSyntheticTheta();

}  // namespace dpboot::harness

#endif  // DPBOOT_HARNESS_DATASETS_H_
