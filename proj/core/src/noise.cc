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

#include "dpboot/noise.h"

#include <cmath>
#include <numbers>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "boost/math/distributions/normal.hpp"

namespace dpboot {

namespace {

absl::Status CheckScale(double scale) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale must be finite and positive, got ", scale));
  }
  return absl::OkStatus();
}

}  // namespace

double LaplaceSampleUnchecked(double location, double scale, RngStream& rng) {
  const double u = rng.UniformOpen() - 0.5;
  // log1p keeps resolution for |u| near 0; |u| < 1/2 keeps the argument
  // strictly above -1.
  const double magnitude = -scale * std::log1p(-2.0 * std::fabs(u));
  return u < 0.0 ? location - magnitude : location + magnitude;
}

absl::StatusOr<double> LaplaceSample(const LaplaceSpec& spec, RngStream& rng) {
  if (absl::Status s = CheckScale(spec.scale); !s.ok()) return s;
  return LaplaceSampleUnchecked(spec.location, spec.scale, rng);
}

double LaplaceCdf(const LaplaceSpec& spec, double x) {
  const double z = (x - spec.location) / spec.scale;
  return z < 0.0 ? 0.5 * std::exp(z) : 1.0 - 0.5 * std::exp(-z);
}

absl::StatusOr<double> LaplaceTail(double scale, double t) {
  if (absl::Status s = CheckScale(scale); !s.ok()) return s;
  if (!(t >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("tail threshold must be nonnegative, got ", t));
  }
  return std::exp(-t / scale);
}

absl::StatusOr<double> LaplaceSumTail(double b1, double b2, double t) {
  if (absl::Status s = CheckScale(b1); !s.ok()) return s;
  if (absl::Status s = CheckScale(b2); !s.ok()) return s;
  if (b1 == b2) {
    return absl::InvalidArgumentError(
        "LaplaceSumTail: equal scales make the closed form singular");
  }
  if (!(t >= 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("tail threshold must be nonnegative, got ", t));
  }
  const double b1_sq = b1 * b1;
  const double b2_sq = b2 * b2;
  return b1_sq / (b1_sq - b2_sq) * std::exp(-t / b1) +
         b2_sq / (b2_sq - b1_sq) * std::exp(-t / b2);
}

double StandardNormalSample(RngStream& rng) {
  // Box-Muller; the sine branch is discarded so each call consumes exactly
  // two uniforms.
  const double u1 = rng.UniformOpen();
  const double u2 = rng.UniformOpen();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

absl::StatusOr<std::vector<double>> GaussianVectorSample(std::size_t dim,
                                                         double sigma,
                                                         RngStream& rng) {
  if (dim == 0) {
    return absl::InvalidArgumentError("GaussianVectorSample: dim must be >= 1");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    return absl::InvalidArgumentError(
        absl::StrCat("GaussianVectorSample: sigma must be >= 0, got ", sigma));
  }
  std::vector<double> out(dim);
  for (double& x : out) x = sigma * StandardNormalSample(rng);
  return out;
}

double NormalCdf(double x) {
  return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double NormalQuantile(double p) {
  static const boost::math::normal_distribution<double> kStandard(0.0, 1.0);
  return boost::math::quantile(kStandard, p);
}

double NormalDensity(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace dpboot
