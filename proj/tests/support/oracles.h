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

// Independent reference implementations used as test oracles. None of these
// call into the library code they check.

#ifndef DPBOOT_TESTS_SUPPORT_ORACLES_H_
#define DPBOOT_TESTS_SUPPORT_ORACLES_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace dpboot::testing {

// Two-sided one-sample Kolmogorov-Smirnov statistic sup |F_n - F|.
double KsStatistic(std::vector<double> draws,
                   const std::function<double(double)>& cdf);

// Asymptotic Kolmogorov p-value P(D_n >= d) with Stephens' small-sample
// correction: lambda = (sqrt(n) + 0.12 + 0.11 / sqrt(n)) d and
// Q(lambda) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 lambda^2).
double KolmogorovPValue(double d, std::size_t n);

// min over z with |z - y| < rho of the minimum number of records to replace
// so that the lower median becomes exactly z. Enumerates replacement subsets;
// only for n <= 10.
std::size_t BruteSmoothedLength(std::span<const double> values, double y,
                                double rho);

// Laplace(loc, scale) as loc + scale * (E1 - E2), E_i ~ Exp(1), from a plain
// std::mt19937_64.
double ReferenceLaplace(double loc, double scale, std::mt19937_64& gen);

// Direct simulation of the median-above-threshold scan: draws the shared and
// per-query noise, sorts each query, reads the floor(xi0 + xi_t)-th order
// statistic. Returns 0 for "no index".
std::size_t ReferenceAboveThr(const std::vector<std::vector<double>>& queries,
                              double tau, double epsilon,
                              std::mt19937_64& gen);

// Largest violation of p(bin) <= e^eps q(bin) + se_mult * se over bins where
// both histograms have at least `min_hits` counts. se is the standard error
// of the difference p - e^eps q under binomial sampling. Returns <= 0 when
// every bin passes.
struct RatioAudit {
  double worst_excess = 0.0;  // in standard errors
  std::size_t bins_checked = 0;
};
RatioAudit AuditPrivacyRatio(std::span<const std::size_t> counts_a,
                             std::span<const std::size_t> counts_b,
                             std::size_t draws, double epsilon,
                             std::size_t min_hits);

// Central difference gradient of f at x with step h.
std::vector<double> CentralDifference(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, double h);

}  // namespace dpboot::testing

#endif  // DPBOOT_TESTS_SUPPORT_ORACLES_H_
