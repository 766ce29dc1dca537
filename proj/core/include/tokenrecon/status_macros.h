// Copyright 2026 The tokenrecon Authors
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

#ifndef TOKENRECON_STATUS_MACROS_H_
#define TOKENRECON_STATUS_MACROS_H_

#include "absl/status/status.h"
#include "absl/status/statusor.h"

#define TOKENRECON_STATUS_CONCAT_INNER_(a, b) a##b
#define TOKENRECON_STATUS_CONCAT_(a, b) TOKENRECON_STATUS_CONCAT_INNER_(a, b)

#define TOKENRECON_RETURN_IF_ERROR(expr)             \
  do {                                               \
    ::absl::Status _tokenrecon_status = (expr);      \
    if (!_tokenrecon_status.ok()) {                  \
      return _tokenrecon_status;                     \
    }                                                \
  } while (false)

#define TOKENRECON_ASSIGN_OR_RETURN_IMPL_(statusor, lhs, rexpr) \
  auto statusor = (rexpr);                                      \
  if (!statusor.ok()) {                                         \
    return std::move(statusor).status();                        \
  }                                                             \
  lhs = *std::move(statusor)

// Evaluates `rexpr` (an absl::StatusOr<T>) and either assigns its value to
// `lhs` or returns the error from the enclosing function.
#define TOKENRECON_ASSIGN_OR_RETURN(lhs, rexpr) \
  TOKENRECON_ASSIGN_OR_RETURN_IMPL_(            \
      TOKENRECON_STATUS_CONCAT_(_tokenrecon_statusor_, __LINE__), lhs, rexpr)

#endif  // TOKENRECON_STATUS_MACROS_H_
