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

#ifndef DPBOOT_SAMPLE_H_
#define DPBOOT_SAMPLE_H_

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"

namespace dpboot {

// Feature/label observations stored row-major: row i occupies
// features[i * dim, (i + 1) * dim).
struct RegressionData {
  std::size_t dim = 0;
  std::vector<double> features;
  std::vector<double> labels;  // each in {0, 1}
};

// An ordered multiset of observations standing in for the empirical
// distribution. A Sample holds either scalar reals or regression records,
// never both, and is immutable after construction.
class Sample {
 public:
  enum class Kind { kScalar, kRegression };

  static absl::StatusOr<Sample> Scalar(std::vector<double> values);
  static absl::StatusOr<Sample> Regression(RegressionData data);

  Kind kind() const {
    return std::holds_alternative<std::vector<double>>(records_)
               ? Kind::kScalar
               : Kind::kRegression;
  }
  std::size_t size() const;

  // Scalar view. Empty for regression samples.
  std::span<const double> scalars() const;

  // Regression views. Empty for scalar samples.
  std::size_t dim() const;
  std::span<const double> features() const;
  std::span<const double> labels() const;
  std::span<const double> row(std::size_t i) const;

  // New sample made of the records at `indices` (repeats allowed). Indices
  // must be < size(); this is not checked.
  Sample Select(std::span<const std::size_t> indices) const;

 private:
  explicit Sample(std::vector<double> values) : records_(std::move(values)) {}
  explicit Sample(RegressionData data) : records_(std::move(data)) {}

  std::variant<std::vector<double>, RegressionData> records_;
};

}  // namespace dpboot

#endif  // DPBOOT_SAMPLE_H_
