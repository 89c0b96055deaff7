// Copyright 2026 The Pseudoaudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PSEUDOAUDIT_UTIL_STATUS_MACROS_H_
#define PSEUDOAUDIT_UTIL_STATUS_MACROS_H_

#include <utility>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define PA_STATUS_CONCAT_INNER_(x, y) x##y
#define PA_STATUS_CONCAT_(x, y) PA_STATUS_CONCAT_INNER_(x, y)

// Returns early from the enclosing function if `expr` is not OK.
#define PA_RETURN_IF_ERROR(expr)                 \
  do {                                           \
    const absl::Status pa_status_ = (expr);      \
    if (!pa_status_.ok()) return pa_status_;     \
  } while (false)

#define PA_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, rexpr) \
  auto tmp = (rexpr);                              \
  if (!tmp.ok()) return tmp.status();              \
  lhs = std::move(tmp).value()

// `lhs` may be a declaration: PA_ASSIGN_OR_RETURN(auto x, Foo());
#define PA_ASSIGN_OR_RETURN(lhs, rexpr) \
  PA_ASSIGN_OR_RETURN_IMPL_(PA_STATUS_CONCAT_(pa_statusor_, __LINE__), lhs, rexpr)

#endif  // PSEUDOAUDIT_UTIL_STATUS_MACROS_H_
