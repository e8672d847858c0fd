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

#include "dpboot/stats.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpboot {

double OrdStSorted(std::span<const double> sorted, double xi) {
  const auto k = static_cast<double>(sorted.size());
  if (xi < 1.0) return -std::numeric_limits<double>::infinity();
  if (xi > k) return std::numeric_limits<double>::infinity();
  const auto rank = static_cast<std::size_t>(std::floor(xi));
  return sorted[rank - 1];
}

absl::StatusOr<double> OrdSt(std::span<const double> y, double xi) {
  if (y.empty()) {
    return absl::InvalidArgumentError("OrdSt: empty input vector");
  }
  if (std::isnan(xi)) {
    return absl::InvalidArgumentError("OrdSt: NaN index");
  }
  const auto k = static_cast<double>(y.size());
  if (xi < 1.0) return -std::numeric_limits<double>::infinity();
  if (xi > k) return std::numeric_limits<double>::infinity();
  const auto rank = static_cast<std::size_t>(std::floor(xi));
  std::vector<double> work(y.begin(), y.end());
  auto nth = work.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(work.begin(), nth, work.end());
  return *nth;
}

absl::StatusOr<double> Quantile(std::span<const double> values, double beta) {
  if (values.empty()) {
    return absl::InvalidArgumentError("Quantile: empty input");
  }
  if (!(beta > 0.0 && beta <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Quantile: beta must lie in (0, 1], got ", beta));
  }
  // Smallest rank r with r / n >= beta. The subtraction guards against
  // beta * n landing a rounding error above an exact integer.
  const auto n = static_cast<double>(values.size());
  double r = std::ceil(beta * n - 1e-9 * n);
  r = std::clamp(r, 1.0, n);
  std::vector<double> work(values.begin(), values.end());
  auto nth = work.begin() + static_cast<std::ptrdiff_t>(r - 1);
  std::nth_element(work.begin(), nth, work.end());
  return *nth;
}

absl::StatusOr<double> LowerMedian(std::span<const double> values) {
  if (values.empty()) {
    return absl::InvalidArgumentError("LowerMedian: empty input");
  }
  const std::size_t rank = (values.size() + 1) / 2;
  std::vector<double> work(values.begin(), values.end());
  auto nth = work.begin() + static_cast<std::ptrdiff_t>(rank - 1);
  std::nth_element(work.begin(), nth, work.end());
  return *nth;
}

absl::StatusOr<Sample> ResampleWithReplacement(const Sample& sample,
                                               std::size_t n_out,
                                               RngStream& rng) {
  if (n_out == 0) {
    return absl::InvalidArgumentError(
        "ResampleWithReplacement: n_out must be >= 1");
  }
  const std::size_t n = sample.size();
  std::vector<std::size_t> indices(n_out);
  for (std::size_t& i : indices) i = rng.UniformIndex(n);
  return sample.Select(indices);
}

std::vector<std::size_t> RandomPermutation(std::size_t n, RngStream& rng) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.UniformIndex(i)]);
  }
  return perm;
}

absl::StatusOr<Partition> PartitionDisjoint(const Sample& sample,
                                            std::size_t m, RngStream& rng) {
  const std::size_t n = sample.size();
  if (m == 0 || m > n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "PartitionDisjoint: block size must satisfy 1 <= m <= n = ", n,
        ", got ", m));
  }
  const std::vector<std::size_t> perm = RandomPermutation(n, rng);
  const std::size_t s = n / m;
  Partition out;
  out.subsamples.reserve(s);
  out.indices.reserve(s);
  for (std::size_t i = 0; i < s; ++i) {
    std::vector<std::size_t> block(
        perm.begin() + static_cast<std::ptrdiff_t>(i * m),
        perm.begin() + static_cast<std::ptrdiff_t>((i + 1) * m));
    out.subsamples.push_back(sample.Select(block));
    out.indices.push_back(std::move(block));
  }
  out.leftover.assign(perm.begin() + static_cast<std::ptrdiff_t>(s * m),
                      perm.end());
  return out;
}

}  // namespace dpboot
