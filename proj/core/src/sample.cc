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

#include "dpboot/sample.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpboot {

absl::StatusOr<Sample> Sample::Scalar(std::vector<double> values) {
  if (values.empty()) {
    return absl::InvalidArgumentError("Sample must contain at least one record");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      return absl::InvalidArgumentError(
          absl::StrCat("non-finite observation at index ", i));
    }
  }
  return Sample(std::move(values));
}

absl::StatusOr<Sample> Sample::Regression(RegressionData data) {
  if (data.dim == 0) {
    return absl::InvalidArgumentError("regression features need dim >= 1");
  }
  if (data.labels.empty()) {
    return absl::InvalidArgumentError("Sample must contain at least one record");
  }
  if (data.features.size() != data.labels.size() * data.dim) {
    return absl::InvalidArgumentError(absl::StrCat(
        "feature matrix has ", data.features.size(), " entries, expected ",
        data.labels.size(), " x ", data.dim));
  }
  for (std::size_t i = 0; i < data.labels.size(); ++i) {
    if (data.labels[i] != 0.0 && data.labels[i] != 1.0) {
      return absl::InvalidArgumentError(
          absl::StrCat("label at row ", i, " is not 0 or 1"));
    }
  }
  for (double x : data.features) {
    if (!std::isfinite(x)) {
      return absl::InvalidArgumentError("non-finite feature value");
    }
  }
  return Sample(std::move(data));
}

std::size_t Sample::size() const {
  if (const auto* v = std::get_if<std::vector<double>>(&records_)) {
    return v->size();
  }
  return std::get<RegressionData>(records_).labels.size();
}

std::span<const double> Sample::scalars() const {
  if (const auto* v = std::get_if<std::vector<double>>(&records_)) return *v;
  return {};
}

std::size_t Sample::dim() const {
  if (const auto* r = std::get_if<RegressionData>(&records_)) return r->dim;
  return 0;
}

std::span<const double> Sample::features() const {
  if (const auto* r = std::get_if<RegressionData>(&records_)) {
    return r->features;
  }
  return {};
}

std::span<const double> Sample::labels() const {
  if (const auto* r = std::get_if<RegressionData>(&records_)) return r->labels;
  return {};
}

std::span<const double> Sample::row(std::size_t i) const {
  const auto& r = std::get<RegressionData>(records_);
  return std::span<const double>(r.features).subspan(i * r.dim, r.dim);
}

Sample Sample::Select(std::span<const std::size_t> indices) const {
  if (const auto* v = std::get_if<std::vector<double>>(&records_)) {
    std::vector<double> out(indices.size());
    for (std::size_t j = 0; j < indices.size(); ++j) out[j] = (*v)[indices[j]];
    return Sample(std::move(out));
  }
  const auto& r = std::get<RegressionData>(records_);
  RegressionData out;
  out.dim = r.dim;
  out.features.resize(indices.size() * r.dim);
  out.labels.resize(indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) {
    const std::size_t i = indices[j];
    std::copy_n(r.features.begin() + static_cast<std::ptrdiff_t>(i * r.dim),
                r.dim,
                out.features.begin() + static_cast<std::ptrdiff_t>(j * r.dim));
    out.labels[j] = r.labels[i];
  }
  return Sample(std::move(out));
}

}  // namespace dpboot
