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

#ifndef DPBOOT_HARNESS_TRUNCATED_GAUSSIAN_H_
#define DPBOOT_HARNESS_TRUNCATED_GAUSSIAN_H_

#include <cstddef>

#include "absl/status/statusor.h"
#include "dpboot/rng.h"
#include "dpboot/sample.h"

namespace dpboot::harness {

struct TruncatedMoments {
  double mean = 0.0;
  double variance = 0.0;
  double median = 0.0;
};

// N(mu, sigma2) conditioned on [lo, hi].
class TruncatedGaussian {
 public:
  // Fails unless lo < hi, sigma2 > 0, and the window holds probability mass
  // of at least 1e-12.
  static absl::StatusOr<TruncatedGaussian> Create(double mu, double sigma2,
                                                  double lo, double hi);

  double mu() const { return mu_; }
  double sigma() const { return sigma_; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

  // Closed-form mean and variance (Mills-ratio formulas); median by inverting
  // the truncated distribution function at 1/2.
  TruncatedMoments Moments() const;

  double Cdf(double x) const;
  double Density(double x) const;
  double Quantile(double u) const;  // u in (0, 1)

  // Inverse-CDF draw restricted to [Phi(alpha), Phi(beta)].
  double Draw(RngStream& rng) const;
  absl::StatusOr<Sample> DrawSample(std::size_t n, RngStream& rng) const;

 private:
  TruncatedGaussian(double mu, double sigma, double lo, double hi);

  double mu_;
  double sigma_;
  double lo_;
  double hi_;
  bool upper_;     // window center lies above mu
  double cdf_lo_;  // Phi at the window edge nearer the far tail
  double mass_;    // probability of the window
};

absl::StatusOr<TruncatedMoments> TruncatedGaussianMoments(double mu,
                                                          double sigma2,
                                                          double lo, double hi);

}  // namespace dpboot::harness

#endif  // DPBOOT_HARNESS_TRUNCATED_GAUSSIAN_H_
