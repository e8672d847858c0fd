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

#include "oracles.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dpboot::testing {

double KsStatistic(std::vector<double> draws,
                   const std::function<double(double)>& cdf) {
  std::sort(draws.begin(), draws.end());
  const double n = static_cast<double>(draws.size());
  double d = 0.0;
  for (std::size_t i = 0; i < draws.size(); ++i) {
    const double f = cdf(draws[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f,
                  f - static_cast<double>(i) / n});
  }
  return d;
}

double KolmogorovPValue(double d, std::size_t n) {
  const double sn = std::sqrt(static_cast<double>(n));
  const double lambda = (sn + 0.12 + 0.11 / sn) * d;
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

// Lower median of `v` after replacing the records flagged in `mask` by z.
double MedianAfter(std::span<const double> v, unsigned mask, double z) {
  std::vector<double> w(v.begin(), v.end());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (mask & (1u << i)) w[i] = z;
  }
  std::sort(w.begin(), w.end());
  return w[(w.size() + 1) / 2 - 1];
}

std::size_t MinChangesToMedian(std::span<const double> v, double z) {
  const unsigned n = static_cast<unsigned>(v.size());
  std::size_t best = n;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    const auto k = static_cast<std::size_t>(__builtin_popcount(mask));
    if (k < best && MedianAfter(v, mask, z) == z) best = k;
  }
  return best;
}

}  // namespace

std::size_t BruteSmoothedLength(std::span<const double> values, double y,
                                double rho) {
  // The change count is piecewise constant in z and only jumps at data
  // values, so the infimum over the open window is attained at a data value
  // inside it, at y itself, or just inside either end.
  const double inset = rho * 1e-6;
  std::vector<double> candidates = {y, y - rho + inset, y + rho - inset};
  for (double v : values) {
    if (std::fabs(v - y) < rho) candidates.push_back(v);
  }
  std::size_t best = values.size();
  for (double z : candidates) {
    best = std::min(best, MinChangesToMedian(values, z));
  }
  return best;
}

double ReferenceLaplace(double loc, double scale, std::mt19937_64& gen) {
  std::exponential_distribution<double> exp1(1.0);
  const double e1 = exp1(gen);
  const double e2 = exp1(gen);
  return loc + scale * (e1 - e2);
}

std::size_t ReferenceAboveThr(const std::vector<std::vector<double>>& queries,
                              double tau, double epsilon,
                              std::mt19937_64& gen) {
  const double k = static_cast<double>(queries.front().size());
  const double xi0 = ReferenceLaplace(k / 2.0, 2.0 / epsilon, gen);
  std::vector<double> xi(queries.size());
  for (double& x : xi) x = ReferenceLaplace(0.0, 4.0 / epsilon, gen);
  for (std::size_t t = 0; t < queries.size(); ++t) {
    std::vector<double> y = queries[t];
    std::sort(y.begin(), y.end());
    const double r = std::floor(xi0 + xi[t]);
    double stat;
    if (r < 1.0) {
      stat = -std::numeric_limits<double>::infinity();
    } else if (r > k) {
      stat = std::numeric_limits<double>::infinity();
    } else {
      stat = y[static_cast<std::size_t>(r) - 1];
    }
    if (stat >= tau) return t + 1;
  }
  return 0;
}

RatioAudit AuditPrivacyRatio(std::span<const std::size_t> counts_a,
                             std::span<const std::size_t> counts_b,
                             std::size_t draws, double epsilon,
                             std::size_t min_hits) {
  RatioAudit audit;
  audit.worst_excess = -std::numeric_limits<double>::infinity();
  const double n = static_cast<double>(draws);
  const double e = std::exp(epsilon);
  for (std::size_t i = 0; i < counts_a.size(); ++i) {
    if (counts_a[i] < min_hits || counts_b[i] < min_hits) continue;
    const double p = static_cast<double>(counts_a[i]) / n;
    const double q = static_cast<double>(counts_b[i]) / n;
    const double se =
        std::sqrt(p * (1.0 - p) / n + e * e * q * (1.0 - q) / n);
    audit.worst_excess = std::max(audit.worst_excess, (p - e * q) / se);
    ++audit.bins_checked;
  }
  return audit;
}

std::vector<double> CentralDifference(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, double h) {
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + h;
    const double up = f(x);
    x[i] = saved - h;
    const double down = f(x);
    x[i] = saved;
    grad[i] = (up - down) / (2.0 * h);
  }
  return grad;
}

}  // namespace dpboot::testing
