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

#include <algorithm>
#include <cmath>
#include <vector>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace dpboot {
namespace {

using ::dpboot::testing::KolmogorovPValue;
using ::dpboot::testing::KsStatistic;

TEST(LaplaceSampleTest, ReplayIsDeterministic) {
  RngStream a(1, 0), b(1, 0);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(*LaplaceSample({0.0, 1.0}, a), *LaplaceSample({0.0, 1.0}, b));
  }
}

TEST(LaplaceSampleTest, RejectsBadScale) {
  RngStream rng(1, 0);
  EXPECT_FALSE(LaplaceSample({0.0, 0.0}, rng).ok());
  EXPECT_FALSE(LaplaceSample({0.0, -1.0}, rng).ok());
  EXPECT_FALSE(LaplaceSample({0.0, NAN}, rng).ok());
}

TEST(LaplaceSampleTest, MomentsOfStandardLaplace) {
  RngStream rng(17, 0);
  const int n = 1000000;
  double sum = 0, sum2 = 0;
  for (int i = 0; i < n; ++i) {
    const double x = LaplaceSampleUnchecked(0.0, 1.0, rng);
    sum += x;
    sum2 += x * x;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.0, 0.01);
  EXPECT_NEAR(sum2 / n - mean * mean, 2.0, 0.05);
}

TEST(LaplaceSampleTest, MedianIsLocation) {
  RngStream rng(18, 0);
  std::vector<double> x(100000);
  for (double& v : x) v = *LaplaceSample({5.0, 2.0}, rng);
  std::nth_element(x.begin(), x.begin() + 50000, x.end());
  EXPECT_NEAR(x[50000], 5.0, 0.05);
}

TEST(LaplaceSampleTest, PassesKolmogorovSmirnov) {
  RngStream rng(19, 0);
  const LaplaceSpec spec{1.5, 0.7};
  std::vector<double> x(100000);
  for (double& v : x) v = *LaplaceSample(spec, rng);
  const double d = KsStatistic(x, [&](double t) { return LaplaceCdf(spec, t); });
  EXPECT_GT(KolmogorovPValue(d, x.size()), 1e-3);
}

TEST(LaplaceCdfTest, KnownValues) {
  EXPECT_DOUBLE_EQ(LaplaceCdf({0, 1}, 0.0), 0.5);
  EXPECT_NEAR(LaplaceCdf({0, 1}, std::log(2.0)), 0.75, 1e-15);
  EXPECT_NEAR(LaplaceCdf({2, 3}, 2.0 - 3.0), 0.5 * std::exp(-1.0), 1e-15);
}

TEST(LaplaceTailTest, Examples) {
  EXPECT_DOUBLE_EQ(*LaplaceTail(1.0, 0.0), 1.0);
  EXPECT_NEAR(*LaplaceTail(1.0, std::log(2.0)), 0.5, 1e-15);
  EXPECT_NEAR(*LaplaceTail(2.0, 2.0), std::exp(-1.0), 1e-15);
  EXPECT_FALSE(LaplaceTail(1.0, -0.1).ok());
  EXPECT_FALSE(LaplaceTail(0.0, 1.0).ok());
}

TEST(LaplaceTailTest, MatchesMonteCarlo) {
  RngStream rng(20, 0);
  const int n = 1000000;
  int hits = 0;
  for (int i = 0; i < n; ++i) {
    hits += std::fabs(LaplaceSampleUnchecked(0.0, 2.0, rng)) > 2.0;
  }
  EXPECT_NEAR(static_cast<double>(hits) / n, std::exp(-1.0), 3e-3);
}

TEST(LaplaceSumTailTest, Examples) {
  EXPECT_NEAR(*LaplaceSumTail(2.0, 1.0, 0.0), 1.0, 1e-15);
  const double expected =
      4.0 / 3.0 * std::exp(-1.0) - 1.0 / 3.0 * std::exp(-2.0);
  EXPECT_NEAR(*LaplaceSumTail(2.0, 1.0, 2.0), expected, 1e-15);
  EXPECT_NEAR(expected, 0.4454, 1e-4);
  EXPECT_FALSE(LaplaceSumTail(1.0, 1.0, 1.0).ok());
  EXPECT_FALSE(LaplaceSumTail(1.0, 2.0, -1.0).ok());
  EXPECT_FALSE(LaplaceSumTail(0.0, 2.0, 1.0).ok());
}

TEST(LaplaceSumTailTest, SymmetricMonotoneAndVanishing) {
  double prev = 1.0;
  for (double t = 0.0; t <= 40.0; t += 0.25) {
    const double a = *LaplaceSumTail(0.7, 1.9, t);
    EXPECT_NEAR(a, *LaplaceSumTail(1.9, 0.7, t), 1e-14);
    EXPECT_LE(a, prev + 1e-15);
    prev = a;
  }
  EXPECT_LT(prev, 1e-8);
}

TEST(LaplaceSumTailTest, MatchesSampledSums) {
  RngStream rng(21, 0);
  const int n = 1000000;
  const double ts[] = {0.5, 1.0, 2.0, 4.0};
  int hits[4] = {};
  for (int i = 0; i < n; ++i) {
    const double s = std::fabs(LaplaceSampleUnchecked(0, 2.0, rng) +
                               LaplaceSampleUnchecked(0, 1.0, rng));
    for (int j = 0; j < 4; ++j) hits[j] += s > ts[j];
  }
  for (int j = 0; j < 4; ++j) {
    const double p = *LaplaceSumTail(2.0, 1.0, ts[j]);
    EXPECT_NEAR(static_cast<double>(hits[j]) / n, p, 3e-3)
        << "t=" << ts[j];
  }
}

TEST(GaussianVectorSampleTest, ZeroSigmaGivesZeroVector) {
  RngStream rng(1, 1);
  EXPECT_THAT(*GaussianVectorSample(3, 0.0, rng),
              ::testing::ElementsAre(0.0, 0.0, 0.0));
}

TEST(GaussianVectorSampleTest, RejectsBadArguments) {
  RngStream rng(1, 1);
  EXPECT_FALSE(GaussianVectorSample(0, 1.0, rng).ok());
  EXPECT_FALSE(GaussianVectorSample(2, -1.0, rng).ok());
}

TEST(GaussianVectorSampleTest, PassesKolmogorovSmirnov) {
  RngStream rng(22, 0);
  std::vector<double> x(1000000);
  for (double& v : x) v = (*GaussianVectorSample(1, 1.0, rng))[0];
  // Oracle CDF from erfc, not the library's NormalCdf.
  const double d = KsStatistic(
      x, [](double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); });
  EXPECT_GT(KolmogorovPValue(d, x.size()), 1e-3);
}

TEST(GaussianVectorSampleTest, CovarianceIsScaledIdentity) {
  RngStream rng(23, 0);
  const int n = 200000;
  double s00 = 0, s11 = 0, s01 = 0, m0 = 0, m1 = 0;
  for (int i = 0; i < n; ++i) {
    const std::vector<double> g = *GaussianVectorSample(2, 2.0, rng);
    m0 += g[0];
    m1 += g[1];
    s00 += g[0] * g[0];
    s11 += g[1] * g[1];
    s01 += g[0] * g[1];
  }
  m0 /= n;
  m1 /= n;
  EXPECT_NEAR(s00 / n - m0 * m0, 4.0, 0.05);
  EXPECT_NEAR(s11 / n - m1 * m1, 4.0, 0.05);
  EXPECT_NEAR(s01 / n - m0 * m1, 0.0, 0.05);
}

TEST(GaussianVectorSampleTest, ReplayIsDeterministic) {
  RngStream a(4, 4), b(4, 4);
  EXPECT_EQ(*GaussianVectorSample(5, 1.3, a), *GaussianVectorSample(5, 1.3, b));
}

TEST(NormalTest, QuantileInvertsCdf) {
  EXPECT_NEAR(NormalQuantile(0.975), 1.959963984540054, 1e-12);
  EXPECT_NEAR(NormalQuantile(0.5), 0.0, 1e-15);
  for (double p : {1e-6, 0.01, 0.3, 0.7, 0.99}) {
    EXPECT_NEAR(NormalCdf(NormalQuantile(p)), p, 1e-12 + 1e-10 * p);
  }
  EXPECT_NEAR(NormalDensity(0.0), 1.0 / std::sqrt(2.0 * M_PI), 1e-15);
}

}  // namespace
}  // namespace dpboot
