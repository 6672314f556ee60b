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

#include "layoutmorph/status.h"

#include <array>
#include <string>

#include "absl/strings/cord.h"
#include "layoutmorph/strings.h"

namespace layoutmorph {
namespace {

constexpr std::string_view kKindPayloadUrl = "layoutmorph.dev/error-kind";

struct KindInfo {
  ErrorKind kind;
  std::string_view name;
  absl::StatusCode code;
};

constexpr std::array<KindInfo, 14> kKinds = {{
    {ErrorKind::kEmptyMask, "EmptyMask", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kShapeError, "ShapeError", absl::StatusCode::kInvalidArgument},
    {ErrorKind::kPaletteMismatch, "PaletteMismatch",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kBackendError, "BackendError", absl::StatusCode::kUnavailable},
    {ErrorKind::kThrottled, "Throttled", absl::StatusCode::kResourceExhausted},
    {ErrorKind::kUnknownTarget, "UnknownTarget", absl::StatusCode::kNotFound},
    {ErrorKind::kExtractionFailed, "ExtractionFailed",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kConstraintViolation, "ConstraintViolation",
     absl::StatusCode::kOutOfRange},
    {ErrorKind::kNoLegalMove, "NoLegalMove",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kDegenerateTransform, "DegenerateTransform",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kEditExhausted, "EditExhausted",
     absl::StatusCode::kResourceExhausted},
    {ErrorKind::kMissingCandidates, "MissingCandidates",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kCorpusError, "CorpusError", absl::StatusCode::kDataLoss},
    {ErrorKind::kPrecondition, "Precondition",
     absl::StatusCode::kInvalidArgument},
}};

const KindInfo& Lookup(ErrorKind kind) {
  for (const auto& info : kKinds) {
    if (info.kind == kind) return info;
  }
  return kKinds.back();
}

}  // namespace

std::string_view ErrorKindName(ErrorKind kind) { return Lookup(kind).name; }

absl::Status MakeError(ErrorKind kind, std::string_view message) {
  const KindInfo& info = Lookup(kind);
  absl::Status status(info.code, StrCat(info.name, ": ", message));
  status.SetPayload(std::string(kKindPayloadUrl), absl::Cord(std::string(info.name)));
  return status;
}

std::optional<ErrorKind> ErrorKindOf(const absl::Status& status) {
  if (status.ok()) return std::nullopt;
  auto payload = status.GetPayload(std::string(kKindPayloadUrl));
  if (!payload.has_value()) return std::nullopt;
  const std::string name(*payload);
  for (const auto& info : kKinds) {
    if (info.name == name) return info.kind;
  }
  return std::nullopt;
}

}  // namespace layoutmorph
