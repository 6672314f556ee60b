// Copyright 2026 The LayoutMorph Authors
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

#ifndef LAYOUTMORPH_STATUS_H_
#define LAYOUTMORPH_STATUS_H_

#include <optional>
#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace layoutmorph {

// Domain error kinds. Each is carried as a payload on an absl::Status so
// callers can branch on the precise failure while still propagating the
// status through generic code.
enum class ErrorKind {
  kEmptyMask,
  kShapeError,
  kPaletteMismatch,
  kBackendError,
  kThrottled,
  kUnknownTarget,
  kExtractionFailed,
  kConstraintViolation,
  kNoLegalMove,
  kDegenerateTransform,
  kEditExhausted,
  kMissingCandidates,
  kCorpusError,
  kPrecondition,
};

std::string_view ErrorKindName(ErrorKind kind);

absl::Status MakeError(ErrorKind kind, std::string_view message);

// Returns the domain kind attached by MakeError, if any.
std::optional<ErrorKind> ErrorKindOf(const absl::Status& status);

// The status message as a std::string.
inline std::string MessageOf(const absl::Status& status) {
  return std::string(status.message());
}

inline bool IsKind(const absl::Status& status, ErrorKind kind) {
  return ErrorKindOf(status) == kind;
}

}  // namespace layoutmorph

#define LM_RETURN_IF_ERROR(expr)            \
  do {                                      \
    absl::Status lm_status_ = (expr);       \
    if (!lm_status_.ok()) return lm_status_; \
  } while (0)

#define LM_CONCAT_INNER_(a, b) a##b
#define LM_CONCAT_(a, b) LM_CONCAT_INNER_(a, b)
#define LM_ASSIGN_OR_RETURN_IMPL_(tmp, lhs, expr) \
  auto tmp = (expr);                              \
  if (!tmp.ok()) return tmp.status();             \
  lhs = std::move(tmp).value()

#define LM_ASSIGN_OR_RETURN(lhs, expr) \
  LM_ASSIGN_OR_RETURN_IMPL_(LM_CONCAT_(lm_statusor_, __LINE__), lhs, expr)

#endif  // LAYOUTMORPH_STATUS_H_
