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

#ifndef DPBOOT_ABOVE_THRESHOLD_INL_H_
#define DPBOOT_ABOVE_THRESHOLD_INL_H_

#include <algorithm>
#include <optional>
#include <vector>

#include "dpboot/stats.h"

namespace dpboot {

template <typename QueryFn>
std::optional<std::size_t> AboveThrLazy(std::size_t count, std::size_t k,
                                        QueryFn&& query, double tau,
                                        const AboveThrNoise& noise) {
  std::vector<double> y(k);
  for (std::size_t t = 1; t <= count; ++t) {
    query(t, y);
    std::sort(y.begin(), y.end());
    if (OrdStSorted(y, noise.xi0 + noise.xi[t - 1]) >= tau) return t;
  }
  return std::nullopt;
}

}  // namespace dpboot

#endif  // DPBOOT_ABOVE_THRESHOLD_INL_H_
