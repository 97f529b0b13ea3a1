//
// Copyright 2026 The dp2s Authors
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

#ifndef DP2S_STATUS_MACROS_H_
#define DP2S_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define DP2S_RETURN_IF_ERROR(expr)              \
  do {                                          \
    const absl::Status _dp2s_status = (expr);   \
    if (!_dp2s_status.ok()) return _dp2s_status; \
  } while (0)

#define DP2S_CONCAT_INNER_(a, b) a##b
#define DP2S_CONCAT_(a, b) DP2S_CONCAT_INNER_(a, b)

#define DP2S_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                \
  if (!statusor.ok()) return statusor.status();           \
  lhs = std::move(statusor).value()

// Evaluates `rexpr` (an absl::StatusOr<T>) and either returns its error or
// assigns the value to `lhs`.
#define DP2S_ASSIGN_OR_RETURN(lhs, rexpr) \
  DP2S_ASSIGN_OR_RETURN_IMPL_(            \
      DP2S_CONCAT_(_dp2s_statusor_, __LINE__), lhs, rexpr)

#endif  // DP2S_STATUS_MACROS_H_
