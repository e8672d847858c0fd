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

#include "dpboot/harness/truncated_gaussian.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpboot/noise.h"

namespace dpboot::harness {

TruncatedGaussian::TruncatedGaussian(double mu, double sigma, double lo,
                                     double hi)
    : mu_(mu),
      sigma_(sigma),
      lo_(lo),
      hi_(hi),
      upper_(lo + hi > 2.0 * mu) {
  // Windows above the mean are handled through the mirror image about mu,
  // where Phi is accurate in the tail.
  const double a = (lo - mu) / sigma;
  const double b = (hi - mu) / sigma;
  cdf_lo_ = upper_ ? NormalCdf(-b) : NormalCdf(a);
  mass_ = upper_ ? NormalCdf(-a) - cdf_lo_ : NormalCdf(b) - cdf_lo_;
}

absl::StatusOr<TruncatedGaussian> TruncatedGaussian::Create(double mu,
                                                            double sigma2,
                                                            double lo,
                                                            double hi) {
  if (!(lo < hi)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "truncation window must satisfy lo < hi, got [", lo, ", ", hi, "]"));
  }
  if (!(sigma2 > 0.0) || !std::isfinite(sigma2) || !std::isfinite(mu)) {
    return absl::InvalidArgumentError(
        absl::StrCat("need finite mu and sigma2 > 0, got sigma2 = ", sigma2));
  }
  TruncatedGaussian dist(mu, std::sqrt(sigma2), lo, hi);
  if (!(dist.mass_ >= 1e-12)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "truncation window [", lo, ", ", hi, "] holds probability ", dist.mass_,
        " < 1e-12"));
  }
  return dist;
}

TruncatedMoments TruncatedGaussian::Moments() const {
  const double a = (lo_ - mu_) / sigma_;
  const double b = (hi_ - mu_) / sigma_;
  const double phi_a = std::isfinite(a) ? NormalDensity(a) : 0.0;
  const double phi_b = std::isfinite(b) ? NormalDensity(b) : 0.0;
  const double a_phi_a = std::isfinite(a) ? a * phi_a : 0.0;
  const double b_phi_b = std::isfinite(b) ? b * phi_b : 0.0;
  const double shift = (phi_a - phi_b) / mass_;
  TruncatedMoments m;
  m.mean = mu_ + sigma_ * shift;
  m.variance =
      sigma_ * sigma_ * (1.0 + (a_phi_a - b_phi_b) / mass_ - shift * shift);
  m.median = Quantile(0.5);
  return m;
}

double TruncatedGaussian::Cdf(double x) const {
  if (x <= lo_) return 0.0;
  if (x >= hi_) return 1.0;
  const double z = (x - mu_) / sigma_;
  if (upper_) return 1.0 - (NormalCdf(-z) - cdf_lo_) / mass_;
  return (NormalCdf(z) - cdf_lo_) / mass_;
}

double TruncatedGaussian::Density(double x) const {
  if (x < lo_ || x > hi_) return 0.0;
  return NormalDensity((x - mu_) / sigma_) / (sigma_ * mass_);
}

double TruncatedGaussian::Quantile(double u) const {
  const double v = upper_ ? 1.0 - u : u;
  const double p = std::clamp(cdf_lo_ + v * mass_, 1e-300, 1.0 - 1e-16);
  const double z = NormalQuantile(p);
  return std::clamp(upper_ ? mu_ - sigma_ * z : mu_ + sigma_ * z, lo_, hi_);
}

double TruncatedGaussian::Draw(RngStream& rng) const {
  return Quantile(rng.UniformOpen());
}

absl::StatusOr<Sample> TruncatedGaussian::DrawSample(std::size_t n,
                                                     RngStream& rng) const {
  std::vector<double> values(n);
  for (double& v : values) v = Draw(rng);
  return Sample::Scalar(std::move(values));
}

absl::StatusOr<TruncatedMoments> TruncatedGaussianMoments(double mu,
                                                          double sigma2,
                                                          double lo,
                                                          double hi) {
  absl::StatusOr<TruncatedGaussian> dist =
      TruncatedGaussian::Create(mu, sigma2, lo, hi);
  if (!dist.ok()) return dist.status();
  return dist->Moments();
}

}  // namespace dpboot::harness
