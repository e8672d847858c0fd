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
#include <limits>

#include "absl/strings/str_cat.h"

namespace dpboot {

absl::Status MedianConfig::Validate() const {
  if (!(epsilon > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("PrivMedian: epsilon must be positive, got ", epsilon));
  }
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    return absl::InvalidArgumentError(
        absl::StrCat("PrivMedian: rho must be positive, got ", rho));
  }
  if (!(range_lo < range_hi) || !std::isfinite(range_lo) ||
      !std::isfinite(range_hi)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "PrivMedian: need finite range_lo < range_hi, got [", range_lo, ", ",
        range_hi, "]"));
  }
  return absl::OkStatus();
}

namespace {

double SortedLowerMedian(std::span<const double> sorted) {
  return sorted[(sorted.size() + 1) / 2 - 1];
}

}  // namespace

absl::StatusOr<std::size_t> SmoothedLength(std::span<const double> values,
                                           double y, double rho) {
  if (values.empty()) {
    return absl::InvalidArgumentError("SmoothedLength: empty input");
  }
  if (!(rho > 0.0)) {
    return absl::InvalidArgumentError("SmoothedLength: rho must be positive");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double median = SortedLowerMedian(sorted);
  if (std::fabs(y - median) < rho) return 0;
  // The lower median has rank m. Moving it to z < median takes
  // m - #{v <= z} changes, and to z > median takes #{v < z} - (m - 1); the
  // infimum over the open window sits at the edge nearest the median.
  const auto m = static_cast<std::ptrdiff_t>((sorted.size() + 1) / 2);
  if (y < median) {
    const double edge = y + rho;
    return static_cast<std::size_t>(
        m - (std::lower_bound(sorted.begin(), sorted.end(), edge) -
             sorted.begin()));
  }
  const double edge = y - rho;
  return static_cast<std::size_t>(
      (std::upper_bound(sorted.begin(), sorted.end(), edge) - sorted.begin()) -
      (m - 1));
}

std::vector<double> LevelSets::Measures() const {
  std::size_t max_level = 0;
  for (const LevelPiece& p : pieces) max_level = std::max(max_level, p.level);
  std::vector<double> out(max_level + 1, 0.0);
  for (const LevelPiece& p : pieces) out[p.level] += p.hi - p.lo;
  return out;
}

absl::StatusOr<LevelSets> ComputeLevelSets(std::span<const double> values,
                                           const MedianConfig& config) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  if (values.empty()) {
    return absl::InvalidArgumentError("PrivMedian: empty input");
  }
  std::vector<double> sorted(values.size());
  std::transform(values.begin(), values.end(), sorted.begin(), [&](double v) {
    return std::clamp(v, config.range_lo, config.range_hi);
  });
  std::sort(sorted.begin(), sorted.end());

  const double median = SortedLowerMedian(sorted);
  const double rho = config.rho;
  const double inf = std::numeric_limits<double>::infinity();

  LevelSets out;
  out.median = median;
  std::vector<LevelPiece> left;
  auto emit = [&](std::vector<LevelPiece>& dst, double lo, double hi,
                  std::size_t level) {
    lo = std::max(lo, config.range_lo);
    hi = std::min(hi, config.range_hi);
    if (hi > lo) dst.push_back({lo, hi, level});
  };

  // The lower median is sorted[m - 1]. Left of it, with u_j = sorted[m - j],
  // len_rho = j on (u_{j+1} - rho, u_j - rho] and m below u_m - rho.
  const std::size_t m = (sorted.size() + 1) / 2;
  emit(left, -inf, sorted[0] - rho, m);
  for (std::size_t j = m - 1; j >= 1; --j) {
    emit(left, sorted[m - j - 1] - rho, sorted[m - j] - rho, j);
  }
  out.pieces = std::move(left);

  emit(out.pieces, median - rho, median + rho, 0);

  // Right of it, with w_j = sorted[m - 2 + j] (so w_1 is the median),
  // len_rho = j on [w_j + rho, w_{j+1} + rho) and n - m + 1 above the last.
  const std::span<const double> w(sorted.data() + (m - 1),
                                  sorted.size() - (m - 1));
  for (std::size_t j = 1; j < w.size(); ++j) {
    emit(out.pieces, w[j - 1] + rho, w[j] + rho, j);
  }
  emit(out.pieces, w.back() + rho, inf, w.size());
  return out;
}

absl::StatusOr<double> PrivMedian(std::span<const double> values,
                                  const MedianConfig& config, RngStream& rng) {
  absl::StatusOr<LevelSets> sets = ComputeLevelSets(values, config);
  if (!sets.ok()) return sets.status();
  const std::vector<double> measures = sets->Measures();

  // Categorical draw over levels with log weights log|I_l| - l * eps / 2.
  std::vector<double> log_weights(measures.size(),
                                  -std::numeric_limits<double>::infinity());
  double max_log = -std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < measures.size(); ++l) {
    if (measures[l] <= 0.0) continue;
    log_weights[l] = std::log(measures[l]) -
                     static_cast<double>(l) * config.epsilon / 2.0;
    max_log = std::max(max_log, log_weights[l]);
  }
  std::vector<double> cumulative(measures.size());
  double total = 0.0;
  for (std::size_t l = 0; l < measures.size(); ++l) {
    total += std::exp(log_weights[l] - max_log);
    cumulative[l] = total;
  }
  const double target = rng.UniformOpen() * total;
  std::size_t level = static_cast<std::size_t>(
      std::upper_bound(cumulative.begin(), cumulative.end(), target) -
      cumulative.begin());
  if (level >= measures.size()) level = measures.size() - 1;
  while (measures[level] <= 0.0) --level;  // rounding at a zero-weight step

  // Uniform point of I_level: pick a piece by length, then a point in it.
  double offset = rng.UniformOpen() * measures[level];
  for (const LevelPiece& piece : sets->pieces) {
    if (piece.level != level) continue;
    const double len = piece.hi - piece.lo;
    if (offset <= len) return piece.lo + offset;
    offset -= len;
  }
  // Accumulated rounding pushed the offset past the last piece.
  for (auto it = sets->pieces.rbegin(); it != sets->pieces.rend(); ++it) {
    if (it->level == level) return it->hi;
  }
  return sets->median;
}

}  // namespace dpboot
