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

#ifndef DPBOOT_STATUS_MACROS_H_
#define DPBOOT_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define DPBOOT_STATUS_CONCAT_INNER_(x, y) x##y
#define DPBOOT_STATUS_CONCAT_(x, y) DPBOOT_STATUS_CONCAT_INNER_(x, y)

// Evaluates an expression yielding absl::Status and returns it from the
// enclosing function when it is not OK.
#define RETURN_IF_ERROR(expr)                  \
  do {                                         \
    const absl::Status _status = (expr);       \
    if (!_status.ok()) return _status;         \
  } while (0)

#define ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                           \
  if (!statusor.ok()) return statusor.status();      \
  lhs = std::move(statusor).value()

// ASSIGN_OR_RETURN(auto x, MaybeX()); binds the value or propagates the error.
#define ASSIGN_OR_RETURN(lhs, rexpr) \
  ASSIGN_OR_RETURN_IMPL_(            \
      DPBOOT_STATUS_CONCAT_(_statusor_, __LINE__), lhs, rexpr)

#endif  // DPBOOT_STATUS_MACROS_H_
