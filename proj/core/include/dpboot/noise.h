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

#ifndef DPBOOT_NOISE_H_
#define DPBOOT_NOISE_H_

#include <cstddef>
#include <vector>

#include "absl/status/statusor.h"
#include "dpboot/rng.h"

namespace dpboot {

// Laplace(location, scale): density exp(-|x - location| / scale) / (2 scale).
struct LaplaceSpec {
  double location = 0.0;
  double scale = 1.0;
};

// Inverse-CDF draw from Laplace(spec). Fails on non-positive or non-finite
// scale.
absl::StatusOr<double> LaplaceSample(const LaplaceSpec& spec, RngStream& rng);

// Unchecked variant for inner loops where the scale was validated upstream.
double LaplaceSampleUnchecked(double location, double scale, RngStream& rng);

// P(X <= x) for X ~ Laplace(spec).
double LaplaceCdf(const LaplaceSpec& spec, double x);

// P(|X| > t) = exp(-t / scale) for a centered Laplace.
absl::StatusOr<double> LaplaceTail(double scale, double t);

// P(|X1 + X2| > t) for independent centered Laplaces with distinct scales b1,
// b2:
//   b1^2 / (b1^2 - b2^2) exp(-t / b1) + b2^2 / (b2^2 - b1^2) exp(-t / b2).
// Equal scales are rejected; the closed form is singular there.
absl::StatusOr<double> LaplaceSumTail(double b1, double b2, double t);

// `dim` independent N(0, sigma^2) coordinates (Box-Muller).
absl::StatusOr<std::vector<double>> GaussianVectorSample(std::size_t dim,
                                                         double sigma,
                                                         RngStream& rng);

// One N(0, 1) draw.
double StandardNormalSample(RngStream& rng);

// Standard normal distribution function and its inverse.
double NormalCdf(double x);
double NormalQuantile(double p);
double NormalDensity(double x);

}  // namespace dpboot

#endif  // DPBOOT_NOISE_H_
