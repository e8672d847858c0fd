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

#include "dpboot/private_median.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "gtest/gtest.h"
#include "oracles.h"

namespace dpboot {
namespace {

using ::dpboot::testing::BruteSmoothedLength;

TEST(SmoothedLengthTest, ZeroAtMedian) {
  const std::vector<double> v = {1, 2, 3};
  for (double rho : {1e-6, 0.1, 5.0}) EXPECT_EQ(*SmoothedLength(v, 2.0, rho), 0u);
}

TEST(SmoothedLengthTest, CountsRecordsBetweenWindowAndMedian) {
  const std::vector<double> v = {1, 2, 3};
  // Moving the median to 3.4 requires replacing both 2 and 3.
  EXPECT_EQ(*SmoothedLength(v, 3.5, 0.1), 2u);
  EXPECT_EQ(BruteSmoothedLength(v, 3.5, 0.1), 2u);
  // 2.96 is inside the window; replacing 2 suffices.
  EXPECT_EQ(*SmoothedLength(v, 3.05, 0.1), 1u);
  EXPECT_EQ(BruteSmoothedLength(v, 3.05, 0.1), 1u);
  EXPECT_EQ(*SmoothedLength(v, 0.5, 0.1), 2u);
  EXPECT_EQ(*SmoothedLength(v, 1.5, 0.1), 1u);
}

TEST(SmoothedLengthTest, RejectsBadInput) {
  EXPECT_FALSE(SmoothedLength({}, 0.0, 0.1).ok());
  EXPECT_FALSE(SmoothedLength(std::vector<double>{1}, 0.0, 0.0).ok());
}

TEST(SmoothedLengthTest, MatchesBruteForceOnRandomInstances) {
  RngStream rng(31, 0);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t n = 1 + rng.UniformIndex(7);
    std::vector<double> v(n);
    // Integer data so ties and coincident breakpoints show up.
    for (double& x : v) x = static_cast<double>(rng.UniformIndex(6));
    const double rho = 0.3 + rng.UniformOpen();
    const double y = -1.0 + 8.0 * rng.UniformOpen();
    ASSERT_EQ(*SmoothedLength(v, y, rho), BruteSmoothedLength(v, y, rho))
        << "rep " << rep << " y=" << y << " rho=" << rho << " values "
        << ::testing::PrintToString(v);
  }
}

TEST(SmoothedLengthTest, NeverExceedsUnsmoothedLength) {
  RngStream rng(32, 0);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> v(1 + rng.UniformIndex(9));
    for (double& x : v) x = rng.UniformOpen() * 10;
    std::vector<double> s = v;
    std::sort(s.begin(), s.end());
    const double med = s[(s.size() + 1) / 2 - 1];
    const double y = rng.UniformOpen() * 12 - 1;
    std::size_t len = 0;
    for (double x : v) len += (x > y && x <= med) || (x >= med && x < y);
    const double rho = 0.5 * rng.UniformOpen() + 1e-3;
    EXPECT_LE(*SmoothedLength(v, y, rho), len);
    if (std::fabs(y - med) < rho) EXPECT_EQ(*SmoothedLength(v, y, rho), 0u);
  }
}

TEST(MedianConfigTest, Validation) {
  EXPECT_TRUE((MedianConfig{1.0, 0.1, 0.0, 1.0}).Validate().ok());
  EXPECT_FALSE((MedianConfig{0.0, 0.1, 0.0, 1.0}).Validate().ok());
  EXPECT_FALSE((MedianConfig{1.0, 0.0, 0.0, 1.0}).Validate().ok());
  EXPECT_FALSE((MedianConfig{1.0, 0.1, 1.0, 1.0}).Validate().ok());
  EXPECT_FALSE((MedianConfig{1.0, 0.1, 2.0, 1.0}).Validate().ok());
}

TEST(LevelSetsTest, TileTheRangeAndAgreeWithSmoothedLength) {
  RngStream rng(33, 0);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> v(1 + rng.UniformIndex(15));
    for (double& x : v) x = rng.UniformOpen() * 6 - 2;
    const MedianConfig cfg{1.0, 0.05 + rng.UniformOpen(), -1.0, 3.0};
    const LevelSets sets = *ComputeLevelSets(v, cfg);
    ASSERT_FALSE(sets.pieces.empty());
    EXPECT_EQ(sets.pieces.front().lo, cfg.range_lo);
    EXPECT_EQ(sets.pieces.back().hi, cfg.range_hi);
    for (std::size_t i = 0; i < sets.pieces.size(); ++i) {
      const LevelPiece& p = sets.pieces[i];
      ASSERT_LT(p.lo, p.hi);
      if (i > 0) ASSERT_EQ(p.lo, sets.pieces[i - 1].hi);
      std::vector<double> clipped = v;
      for (double& x : clipped) x = std::clamp(x, cfg.range_lo, cfg.range_hi);
      EXPECT_EQ(p.level, *SmoothedLength(clipped, 0.5 * (p.lo + p.hi), cfg.rho));
    }
    const std::vector<double> m = sets.Measures();
    EXPECT_NEAR(std::accumulate(m.begin(), m.end(), 0.0),
                cfg.range_hi - cfg.range_lo, 1e-12);
  }
}

TEST(LevelSetsTest, DegenerateConstantData) {
  const std::vector<double> v(5, 0.0);
  const LevelSets sets = *ComputeLevelSets(v, {1.0, 0.1, -1.0, 1.0});
  const std::vector<double> m = sets.Measures();
  // Moving the lower median (rank 3 of 5) anywhere takes three changes.
  EXPECT_EQ(BruteSmoothedLength(v, 0.5, 0.1), 3u);
  EXPECT_EQ(BruteSmoothedLength(v, -0.5, 0.1), 3u);
  ASSERT_EQ(m.size(), 4u);
  EXPECT_NEAR(m[0], 0.2, 1e-12);
  EXPECT_NEAR(m[3], 1.8, 1e-12);
  for (int l = 1; l < 3; ++l) EXPECT_EQ(m[l], 0.0);
}

TEST(PrivMedianTest, LargeEpsilonCollapsesOntoMedianWindow) {
  RngStream rng(34, 0);
  const std::vector<double> v = {1, 2, 3};
  for (int i = 0; i < 1000; ++i) {
    const double y = *PrivMedian(v, {1e6, 0.01, 0.0, 10.0}, rng);
    ASSERT_GT(y, 2.0 - 0.01);
    ASSERT_LT(y, 2.0 + 0.01);
  }
}

TEST(PrivMedianTest, ConstantDataHitsCentralWindowAtAnalyticRate) {
  RngStream rng(35, 0);
  const std::vector<double> v(5, 0.0);
  const MedianConfig cfg{1.0, 0.1, -1.0, 1.0};
  // |I_0| = 0.2 and |I_3| = 1.8, so the window probability is
  // 0.2 / (0.2 + 1.8 exp(-3 / 2)).
  const double p = 0.2 / (0.2 + 1.8 * std::exp(-1.5));
  const int n = 200000;
  int inside = 0;
  for (int i = 0; i < n; ++i) {
    const double y = *PrivMedian(v, cfg, rng);
    ASSERT_GE(y, -1.0);
    ASSERT_LE(y, 1.0);
    inside += std::fabs(y) < 0.1;
  }
  EXPECT_NEAR(static_cast<double>(inside) / n, p, 4 * std::sqrt(p * (1 - p) / n));
}

TEST(PrivMedianTest, EmpiricalDensityMatchesBruteForceDensity) {
  const std::vector<double> v = {1, 2, 3};
  const MedianConfig cfg{1.0, 0.25, 0.0, 4.0};
  // Breakpoints are multiples of 0.25, so the oracle density is constant on
  // each 0.05-wide bin.
  const int bins = 80;
  const double width = 0.05;
  std::vector<double> expected(bins);
  for (int b = 0; b < bins; ++b) {
    const double mid = (b + 0.5) * width;
    expected[b] = width * std::exp(-cfg.epsilon *
                                   BruteSmoothedLength(v, mid, cfg.rho) / 2.0);
  }
  const double z = std::accumulate(expected.begin(), expected.end(), 0.0);
  for (double& e : expected) e /= z;

  RngStream rng(36, 0);
  const int n = 1000000;
  std::vector<int> counts(bins, 0);
  for (int i = 0; i < n; ++i) {
    const double y = *PrivMedian(v, cfg, rng);
    ++counts[std::min(bins - 1, static_cast<int>(y / width))];
  }
  double tv = 0;
  for (int b = 0; b < bins; ++b) {
    tv += std::fabs(static_cast<double>(counts[b]) / n - expected[b]);
  }
  EXPECT_LT(0.5 * tv, 0.01);
}

// Exact density of the mechanism from its level sets.
double Density(const LevelSets& sets, double epsilon, double y) {
  double z = 0;
  double at = 0;
  for (const LevelPiece& p : sets.pieces) {
    const double w = std::exp(-epsilon * static_cast<double>(p.level) / 2.0);
    z += w * (p.hi - p.lo);
    if (y >= p.lo && y < p.hi) at = w;
  }
  return at / z;
}

TEST(PrivMedianTest, ExactDensityRatioBoundedOnAdjacentInputs) {
  RngStream rng(37, 0);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> a(1 + rng.UniformIndex(8));
    for (double& x : a) x = rng.UniformOpen() * 4;
    std::vector<double> b = a;
    b[rng.UniformIndex(b.size())] = rng.UniformOpen() * 4;
    const MedianConfig cfg{0.5 + rng.UniformOpen(), 0.1, 0.0, 4.0};
    const LevelSets sa = *ComputeLevelSets(a, cfg);
    const LevelSets sb = *ComputeLevelSets(b, cfg);
    for (double y = 0.0005; y < 4.0; y += 0.001) {
      const double pa = Density(sa, cfg.epsilon, y);
      const double pb = Density(sb, cfg.epsilon, y);
      ASSERT_LE(pa, std::exp(cfg.epsilon) * pb * (1 + 1e-12))
          << "rep " << rep << " y=" << y;
    }
  }
}

TEST(PrivMedianTest, ExactDensityRatioBoundedWithTiedValues) {
  RngStream rng(41, 0);
  for (int rep = 0; rep < 300; ++rep) {
    std::vector<double> a(1 + rng.UniformIndex(8));
    for (double& x : a) x = static_cast<double>(rng.UniformIndex(5));
    std::vector<double> b = a;
    b[rng.UniformIndex(b.size())] = static_cast<double>(rng.UniformIndex(5));
    const MedianConfig cfg{1.0, 0.3, -1.0, 5.0};
    const LevelSets sa = *ComputeLevelSets(a, cfg);
    const LevelSets sb = *ComputeLevelSets(b, cfg);
    for (double y = -0.9995; y < 5.0; y += 0.001) {
      ASSERT_LE(Density(sa, cfg.epsilon, y),
                std::exp(cfg.epsilon) * Density(sb, cfg.epsilon, y) *
                    (1 + 1e-12))
          << "rep " << rep << " y=" << y;
    }
  }
}

TEST(PrivMedianTest, ClipsAndStaysInRange) {
  RngStream rng(38, 0);
  const std::vector<double> v = {-50, 100, 200, 300};
  for (int i = 0; i < 1000; ++i) {
    const double y = *PrivMedian(v, {0.1, 0.01, -1.0, 1.0}, rng);
    ASSERT_GE(y, -1.0);
    ASSERT_LE(y, 1.0);
  }
}

TEST(PrivMedianTest, SmallEpsilonLongDataDoesNotUnderflow) {
  RngStream rng(39, 0);
  std::vector<double> v(20001);
  std::iota(v.begin(), v.end(), 0.0);
  const double y = *PrivMedian(v, {1e-3, 0.5, -1e6, 1e6}, rng);
  EXPECT_TRUE(std::isfinite(y));
  const double z = *PrivMedian(v, {50.0, 0.5, -1e6, 1e6}, rng);
  EXPECT_NEAR(z, 10000.0, 0.5);
}

TEST(PrivMedianTest, ReplayAndErrors) {
  RngStream a(40, 0), b(40, 0);
  const std::vector<double> v = {0.1, 0.7, 0.3};
  EXPECT_EQ(*PrivMedian(v, {1, 0.01, 0, 1}, a), *PrivMedian(v, {1, 0.01, 0, 1}, b));
  EXPECT_FALSE(PrivMedian(v, {1, 0.01, 1, 0}, a).ok());
  EXPECT_FALSE(PrivMedian({}, {1, 0.01, 0, 1}, a).ok());
}

}  // namespace
}  // namespace dpboot
